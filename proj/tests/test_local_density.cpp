#include <cmath>

#include "doctest.h"
#include "je/errors.hpp"
#include "je/local_density.hpp"
#include "je/rep_count.hpp"

using namespace je;

namespace {

const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kOdd3{{2, 1, 0}, {1, 4, 1}, {0, 1, 6}};
const IntMatrix kA4{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};

std::vector<IntVec> parity_patterns(int N) {
    std::vector<IntVec> out;
    for (std::uint64_t mask = 0; mask < (1ull << N); ++mask) {
        IntVec lam(N);
        for (int i = 0; i < N; ++i) lam[i] = (mask >> i) & 1;
        out.push_back(lam);
    }
    return out;
}

}  // namespace

TEST_CASE("density_counting examples") {
    auto e8 = preset_lattice("E8");
    auto r = density_counting(e8, 3, 1);
    CHECK(r.value == PiRational(Rational(80, 81)));
    CHECK(r.stabilization_exponent == 1);
    CHECK(density_counting(e8, 2, 1).value == PiRational(Rational(15, 16)));
    CHECK(density_counting(e8, 2, 1).stabilization_exponent == 3);
    CHECK(density_counting(preset_lattice("4A1"), 3, 1).value == PiRational(Rational(8, 9)));
    CHECK_THROWS_AS(density_counting(e8, 4, 1), Error);
}

TEST_CASE("good prime examples") {
    auto e8 = preset_lattice("E8");
    CHECK(density_good_prime(e8, 3, 1) == Rational(80, 81));
    auto l4 = preset_lattice("4A1");
    // eps = ((+1) 16 / 3) = 1
    CHECK(density_good_prime(l4, 3, 9) == Rational(104, 81));
    CHECK(density_counting(l4, 3, 9).value == PiRational(Rational(104, 81)));
    try {
        density_good_prime(l4, 2, 1);
        FAIL("expected BadPrime");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadPrime);
    }
    // odd N, l_p = 0: (1 - p^{1-N}) / (1 - eps p^{(1-N)/2})
    auto a1 = validate_lattice({{2}});
    for (long long p : {3, 5, 7})
        for (long long t = 1; t < p; ++t) {
            int eps = kronecker(4 * t, p);
            CHECK(density_good_prime(a1, p, t) == Rational(1 + eps));
        }
}

TEST_CASE("good prime closed form equals counting, even rank") {
    std::vector<Lattice> lats{validate_lattice(kA2), preset_lattice("D4"), preset_lattice("2A1"),
                              preset_lattice("4A1"), validate_lattice(kA4),
                              validate_lattice({{2, 1, 0, 0}, {1, 4, 0, 0}, {0, 0, 4, 1}, {0, 0, 1, 6}})};
    int checked = 0;
    for (const auto& L : lats)
        for (long long p : {3, 5, 7, 11}) {
            if (L.det() % p == 0) continue;
            for (long long t = 1; t <= 50; ++t) {
                if (std::pow(double(p), (2 * ord_p(2 * t, p) + 2) * L.rank()) > 1e8) continue;
                CHECK(density_good_prime(L, p, t) == density_counting(L, p, t).value.coeff());
                ++checked;
            }
        }
    CHECK(checked > 400);
}

TEST_CASE("good prime closed form equals counting, odd rank") {
    std::vector<Lattice> lats{validate_lattice({{2}}), validate_lattice(kOdd3), preset_lattice("3A1"),
                              validate_lattice({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})};
    int checked = 0;
    for (const auto& L : lats)
        for (long long p : {3, 5, 7}) {
            if (L.det() % p == 0) continue;
            for (long long t = 1; t <= 60; ++t) {
                if (std::pow(double(p), (2 * ord_p(2 * t, p) + 2) * L.rank()) > 1e8) continue;
                CHECK(density_good_prime(L, p, t) == density_counting(L, p, t).value.coeff());
                ++checked;
            }
        }
    CHECK(checked > 200);
}

TEST_CASE("density_infty") {
    CHECK(density_infty(preset_lattice("E8"), 1) == PiRational(Rational(8, 3), 4));
    CHECK(density_infty(preset_lattice("4A1"), 1) == PiRational(Rational(1), 2));
    for (const auto& name : {"E8", "4A1", "D4"}) {
        auto L = preset_lattice(name);
        auto q = density_infty(L, 4) / density_infty(L, 1);
        CHECK(q == PiRational(pow(Rational(4), L.rank() / 2 - 1)));
    }
    try {
        density_infty(preset_lattice("3A1"), 1);
        FAIL("expected OddRankUnsupported");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OddRankUnsupported);
    }
    CHECK_THROWS_AS(density_infty(validate_lattice(kA2), 1), Error);
}

TEST_CASE("unimodular lemma equals counting on E8") {
    auto e8 = preset_lattice("E8");
    CHECK(density_unimodular(8, 2, 1, 2) == Rational(17, 16));
    CHECK(density_unimodular(8, 3, 2, 3) ==
          (Rational(1) - pow(Rational(3), -4)) * (Rational(1) - pow(Rational(3), -6)) / (Rational(1) - pow(Rational(3), -3)));
    CHECK(density_unimodular(8, 5, 1, 7) == Rational(1) - pow(Rational(5), -4));
    for (long long p : {2, 3, 5})
        for (int l = 1; l <= (p == 5 ? 1 : 2); ++l)
            for (long long Delta = -24; Delta <= 24; ++Delta)
                CHECK(density_unimodular(8, p, l, Delta) == density_at_level(e8, p, l, Delta));
    // third case matches the good-prime formula at l_p = 0
    for (long long p : {3, 5, 7, 11})
        for (long long t : {1, 2, 4, 13}) {
            if (t % p == 0) continue;
            CHECK(density_good_prime(e8, p, t) == density_unimodular(8, p, 1, t));
        }
}

TEST_CASE("NA1 odd-p proposition equals counting") {
    CHECK(density_na1_odd(4, 3, 1, 1) == Rational(8, 9));
    CHECK(density_na1_odd(2, 5, 1, 1) == Rational(4, 5));
    CHECK(density_na1_odd(4, 3, 1, 9) == Rational(count_sum_squares(4, -9, 3, 1)) * pow(Rational(3), -3));
    for (int N : {2, 4, 6})
        for (long long p : {3, 5, 7})
            for (int l = 1; l <= 3; ++l) {
                if (std::pow(double(p), l * N) > 2e7) continue;
                for (long long Delta = -24; Delta <= 24; ++Delta) {
                    Rational c = Rational(count_sum_squares(N, -Delta, p, l)) *
                                 pow(Rational(p), static_cast<long long>(l) * (1 - N));
                    CHECK(density_na1_odd(N, p, l, Delta) == c);
                }
            }
}

TEST_CASE("NA1 p = 2 proposition equals counting") {
    CHECK(density_na1_two(4, {1, 1, 1, 0}, 3, 1) == 1);
    CHECK(density_na1_two(4, {1, 1, 1, 1}, 2, 0) == 0);  // n = 1
    CHECK(density_na1_two(4, {1, 1, 1, 1}, 2, 4) == 2);  // n = 2
    CHECK(density_na1_two(4, {0, 0, 0, 0}, 3, 4) == 1);   // kappa = -1, N = 0 mod 4
    try {
        density_na1_two(4, {0, 0, 0, 0}, 2, 2);
        FAIL("expected InconsistentInput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InconsistentInput);
    }
    int checked = 0;
    for (int N : {2, 4, 6, 8})
        for (const auto& lam : parity_patterns(N)) {
            long long s = 0;
            for (auto v : lam) s += v * v;
            for (long long n = -6; n <= 12; ++n) {
                long long Delta = 4 * n - s;
                if (std::abs(Delta) > 24) continue;
                for (int l = 0; l <= 6; ++l) {
                    if (l * N > 40) continue;
                    Rational c = Rational(count_D_NA1(N, lam, Delta, 1ull << l)) *
                                 pow(Rational(2), static_cast<long long>(l) * (1 - N));
                    CHECK(density_na1_two(N, lam, l, Delta) == c);
                    ++checked;
                }
            }
        }
    CHECK(checked > 1000);
}

TEST_CASE("NA1 p = 2 depends on lambda only through parity") {
    for (int N : {2, 4}) {
        for (const auto& base : parity_patterns(N)) {
            IntVec shifted = base;
            for (int i = 0; i < N; ++i) shifted[i] += 2 * (i + 1) - 4;
            long long s = 0;
            for (auto v : shifted) s += v * v;
            for (long long n = 0; n <= 8; ++n) {
                long long Delta = 4 * n - s;
                for (int l = 1; l <= 4; ++l) {
                    Rational c = Rational(count_D_NA1(N, shifted, Delta, 1ull << l)) *
                                 pow(Rational(2), static_cast<long long>(l) * (1 - N));
                    CHECK(density_na1_two(N, base, l, Delta) == c);
                }
            }
        }
    }
}

TEST_CASE("rescaling to L(2)") {
    // odd p: delta_p(2t, L(2)) = delta_p(t, L); p = 2: delta_2(2t, L(2)) = 2 delta_2(t, L)
    for (const auto& L : {preset_lattice("D4"), validate_lattice(kA2), preset_lattice("2A1"), preset_lattice("3A1")}) {
        auto L2 = scaled_lattice(L, 2);
        for (long long t = 1; t <= 12; ++t) {
            for (long long p : {3, 5}) {
                if (std::pow(double(p), (2 * ord_p(4 * t, p) + 2) * L.rank()) > 1e8) continue;
                CHECK(density_counting(L2, p, 2 * t).value == density_counting(L, p, t).value);
            }
            CHECK(density_counting(L2, 2, 2 * t).value.coeff() == Rational(2) * density_counting(L, 2, t).value.coeff());
        }
    }
}

TEST_CASE("density dispatcher") {
    auto e8 = preset_lattice("E8");
    auto r = density(e8, 3, 1);
    CHECK(r.method == DensityMethod::GoodPrime);
    CHECK(r.value == PiRational(Rational(80, 81)));
    auto inf = density(e8, 0, 1);
    CHECK(inf.method == DensityMethod::Infinity);
    CHECK(inf.value.to_string() == "8/3*pi^4");
    auto two = density(preset_lattice("4A1"), 2, 1, IntVec{1, 1, 1, 0});
    CHECK(two.method == DensityMethod::Na1Two);
    CHECK(two.value == PiRational(Rational(1)));
    auto uni = density(e8, 2, 6);
    CHECK(uni.method == DensityMethod::UnimodularLemma);
    CHECK(uni.value == density_counting(e8, 2, 6).value);
    auto cnt = density(preset_lattice("D4"), 2, 3);
    CHECK(cnt.method == DensityMethod::Counting);
}

TEST_CASE("genus representation") {
    auto e8 = preset_lattice("E8");
    auto byn = enumerate_by_norm(e8, 4);
    CHECK(*genus_representation(e8, 1).exact == Rational(240));
    CHECK(*genus_representation(e8, 2).exact == Rational(2160));
    for (long long d = 1; d <= 4; ++d)
        CHECK(*genus_representation(e8, d).exact == Rational(static_cast<long long>(byn[d].size())));
    for (long long d = 1; d <= 8; ++d)
        CHECK(*genus_representation_siegel(e8, d).exact == *genus_representation(e8, d).exact);

    // single-class genera with square determinant
    for (const auto& name : {"4A1", "D4"}) {
        auto L = preset_lattice(name);
        auto counts = enumerate_by_norm(L, 6);
        for (long long d = 1; d <= 6; ++d) {
            auto g = genus_representation(L, d);
            REQUIRE(g.exact);
            CHECK(*g.exact == Rational(static_cast<long long>(counts[d].size())));
        }
    }
    // A4: det 5, class number one; float Euler product
    auto a4 = validate_lattice(kA4);
    auto counts = enumerate_by_norm(a4, 5);
    for (long long d = 1; d <= 5; ++d) {
        auto g = genus_representation(a4, d);
        CHECK_FALSE(g.exact);
        CHECK(std::abs(g.value - double(counts[d].size())) <= g.error_bound + 1e-9);
    }
    CHECK_THROWS_AS(genus_representation(preset_lattice("3A1"), 1), Error);
}
