#include <algorithm>
#include <random>

#include "doctest.h"
#include "je/errors.hpp"
#include "je/lattice.hpp"

using namespace je;

namespace {

Errc code_of(const IntMatrix& g) {
    try {
        validate_lattice(g);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::InvalidArgument;
}

std::size_t count_at(const Lattice& L, long long maxq, long long n) {
    auto m = enumerate_by_norm(L, maxq);
    return m.count(n) ? m.at(n).size() : 0;
}

}  // namespace

TEST_CASE("validate_lattice examples") {
    auto a1 = validate_lattice({{2}});
    CHECK(a1.rank() == 1);
    CHECK(a1.det() == 2);
    CHECK(a1.level() == 4);

    auto l4 = preset_lattice("4A1");
    CHECK(l4.det() == 16);
    CHECK(l4.level() == 4);

    auto e8 = preset_lattice("E8");
    CHECK(e8.det() == 1);
    CHECK(e8.level() == 1);
    CHECK(e8.is_unimodular());

    auto d4 = preset_lattice("D4");
    CHECK(d4.det() == 4);
    CHECK(d4.level() == 2);
}

TEST_CASE("validate_lattice errors") {
    CHECK(code_of({{2, 1}, {0, 2}}) == Errc::NotSymmetric);
    CHECK(code_of({{3}}) == Errc::NotEven);
    CHECK(code_of({{2, 3}, {3, 2}}) == Errc::NotPositiveDefinite);
    CHECK(code_of({{2, 0}, {0, 0}}) == Errc::NotPositiveDefinite);
}

TEST_CASE("quadratic_value") {
    auto l4 = preset_lattice("4A1");
    CHECK(quadratic_value(l4, {1, 0, 0, 0}) == 1);
    CHECK(quadratic_value(l4, {1, 1, 1, 1}) == 4);
    CHECK(quadratic_value(preset_lattice("E8"), IntVec(8, 0)) == 0);
    CHECK_THROWS_AS(quadratic_value(l4, {1, 0}), Error);
}

TEST_CASE("enumerate_by_norm") {
    auto e8 = preset_lattice("E8");
    auto z = enumerate_by_norm(e8, 0);
    REQUIRE(z.size() == 1);
    CHECK(z.at(0) == std::vector<IntVec>{IntVec(8, 0)});

    auto byn = enumerate_by_norm(e8, 4);
    const std::size_t expected[] = {1, 240, 2160, 6720, 17520};
    for (long long n = 0; n <= 4; ++n) {
        CHECK(byn.at(n).size() == expected[n]);
        // 240 sigma_3(n)
        if (n > 0) CHECK(Rational(static_cast<long long>(byn.at(n).size())) == Rational(240) * divisor_sigma(3, n));
        for (const auto& x : byn.at(n)) CHECK(quadratic_value(e8, x) == n);
        CHECK(std::is_sorted(byn.at(n).begin(), byn.at(n).end()));
    }
    CHECK(count_at(validate_lattice({{2, 0}, {0, 2}}), 1, 1) == 4);
}

TEST_CASE("enumeration matches a box search") {
    // independent route: all x in a generous box
    auto d4 = preset_lattice("D4");
    auto byn = enumerate_by_norm(d4, 3);
    std::map<long long, std::size_t> box;
    IntVec x(4);
    for (x[0] = -5; x[0] <= 5; ++x[0])
        for (x[1] = -5; x[1] <= 5; ++x[1])
            for (x[2] = -5; x[2] <= 5; ++x[2])
                for (x[3] = -5; x[3] <= 5; ++x[3]) {
                    long long q = quadratic_value(d4, x);
                    if (q <= 3) ++box[q];
                }
    for (long long n = 0; n <= 3; ++n) CHECK(byn[n].size() == box[n]);
    // D4 theta: 1 + 24 q + 24 q^2 + 96 q^3
    CHECK(box[1] == 24);
    CHECK(box[2] == 24);
    CHECK(box[3] == 96);
}

TEST_CASE("counts invariant under coordinate permutation") {
    auto d4 = preset_lattice("D4");
    std::vector<int> perm{2, 0, 3, 1};
    IntMatrix g(4, IntVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = d4.gram()[perm[i]][perm[j]];
    auto pd = validate_lattice(g);
    auto a = enumerate_by_norm(d4, 4), b = enumerate_by_norm(pd, 4);
    for (long long n = 0; n <= 4; ++n) CHECK(a[n].size() == b[n].size());
}

TEST_CASE("level divides 2 det on random even lattices") {
    std::mt19937 rng(20261019);
    std::uniform_int_distribution<int> off(-3, 3), diag(1, 3);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 150; ++trial) {
        int n = 1 + trial % 4;
        IntMatrix g(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) {
            g[i][i] = 2 * diag(rng);
            for (int j = 0; j < i; ++j) g[i][j] = g[j][i] = off(rng);
        }
        try {
            auto L = validate_lattice(g);
            ++tested;
            CHECK((2 * L.det()) % L.level() == 0);
            // level * S^{-1} is even integral and level is minimal
            auto ok = [&](long long mu) {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        Rational v = Rational(mu) * L.dual_gram()[i][j];
                        if (!v.is_integer()) return false;
                        if (i == j && v.num() % 2 != 0) return false;
                    }
                return true;
            };
            CHECK(ok(L.level()));
            for (long long mu = 1; mu < L.level(); ++mu) CHECK_FALSE(ok(mu));
            auto reps = discriminant_representatives(L);
            CHECK(static_cast<long long>(reps.size()) == L.det());
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotPositiveDefinite);
        }
    }
    CHECK(tested > 50);
    for (const auto& name : preset_names()) {
        auto L = preset_lattice(name);
        CHECK((2 * L.det()) % L.level() == 0);
    }
}

TEST_CASE("dual vectors") {
    auto l4 = preset_lattice("4A1");
    auto v = l4.dual_from_integer({1, 0, 0, 0});
    CHECK(v.denominator() == 2);
    CHECK(l4.is_dual(v));
    CHECK(l4.norm(v) == Rational(1, 2));
    CHECK_FALSE(l4.is_dual(DualVector({1, 0, 0, 0}, 3)));
    CHECK(discriminant_representatives(l4).size() == 16);
}

TEST_CASE("lattice files") {
    auto L = lattice_from_json_text(R"({"name": "A2", "gram": [[2, -1], [-1, 2]]})");
    CHECK(L.name() == "A2");
    CHECK(L.det() == 3);
    CHECK(L.level() == 3);
    try {
        lattice_from_json_text(R"({"name": "bad", "gram": [[2, 1], [0, 2]]})");
        FAIL("expected NotSymmetric");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotSymmetric);
    }
    CHECK_THROWS_AS(lattice_from_json_text("{not json"), Error);
    CHECK_THROWS_AS(preset_lattice("nope"), Error);
}
