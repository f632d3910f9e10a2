#include "je/validation.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "je/eisenstein.hpp"
#include "je/errors.hpp"
#include "je/local_density.hpp"
#include "je/rep_count.hpp"

namespace je {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cd kI(0, 1);

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(cd v) { return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i"; }

std::string vec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string cvec_str(const CVec& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + fmt(z[i]);
    return s + ")";
}

RatMatrix gram_rat(const Lattice& L) {
    RatMatrix G(L.rank(), RatVec(L.rank()));
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) G[i][j] = Rational(L.gram()[i][j]);
    return G;
}

// x^T S y over complex vectors
cd pair_c(const Lattice& L, const CVec& x, const CVec& y) {
    cd s = 0;
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) s += x[i] * static_cast<double>(L.gram()[i][j]) * y[j];
    return s;
}

struct Neumaier {
    double re = 0, im = 0, cre = 0, cim = 0;
    static void add(double& s, double& c, double x) {
        double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    void operator+=(cd x) {
        add(re, cre, x.real());
        add(im, cim, x.imag());
    }
    cd value() const { return {re + cre, im + cim}; }
};

CheckRecord numeric_record(std::string name, std::string point, cd lhs, cd rhs, double tol) {
    CheckRecord r;
    r.name = std::move(name);
    r.grid_point = std::move(point);
    r.lhs = fmt(lhs);
    r.rhs = fmt(rhs);
    r.abs_error = std::abs(lhs - rhs);
    r.rel_error = r.abs_error / std::max(std::abs(lhs), std::abs(rhs));
    if (!std::isfinite(r.rel_error)) r.rel_error = r.abs_error;
    r.tolerance = tol;
    r.pass = r.rel_error < tol;
    return r;
}

CheckRecord exact_record(std::string name, std::string point, const Rational& lhs, const Rational& rhs) {
    CheckRecord r;
    r.name = std::move(name);
    r.grid_point = std::move(point);
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.exact = true;
    r.pass = lhs == rhs;
    return r;
}

CheckRecord exact_record(std::string name, std::string point, const BigInt& lhs, const BigInt& rhs) {
    return exact_record(std::move(name), std::move(point), Rational(lhs), Rational(rhs));
}

}  // namespace

std::size_t VerificationReport::passed() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.pass;
    return n;
}

std::size_t VerificationReport::failed() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += !c.pass && !c.informational;
    return n;
}

std::string VerificationReport::to_json() const {
    using nlohmann::json;
    json checks = json::array();
    for (const auto& c : checks_) {
        json j = {{"name", c.name}, {"grid_point", c.grid_point}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
        if (c.exact) {
            j["exact_equal"] = c.pass;
        } else {
            j["abs_error"] = c.abs_error;
            j["rel_error"] = c.rel_error;
            j["tolerance"] = c.tolerance;
        }
        if (c.informational) j["informational"] = true;
        checks.push_back(std::move(j));
    }
    json out = {{"summary", {{"total", checks_.size()}, {"passed", passed()}, {"failed", failed()}}},
                {"checks", std::move(checks)}};
    return out.dump(1);
}

std::string VerificationReport::table() const {
    struct Group {
        std::size_t total = 0, pass = 0;
        double worst = 0, tol = 0;
        bool exact = true, info = false;
    };
    std::vector<std::string> order;
    std::map<std::string, Group> groups;
    for (const auto& c : checks_) {
        if (!groups.count(c.name)) order.push_back(c.name);
        auto& g = groups[c.name];
        ++g.total;
        g.pass += c.pass;
        g.info = g.info || c.informational;
        if (!c.exact) {
            g.exact = false;
            g.worst = std::max(g.worst, c.rel_error);
            g.tol = c.tolerance;
        }
    }
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %8s %8s  %s\n", "check", "passed", "total", "worst error / tolerance");
    os << line;
    for (const auto& name : order) {
        const auto& g = groups[name];
        char num[64];
        std::snprintf(num, sizeof num, "%.2e / %.0e", g.worst, g.tol);
        std::string err = g.exact ? "exact" : num;
        if (g.info) err += "  (informational)";
        std::snprintf(line, sizeof line, "%-34s %8zu %8zu  %s\n", name.c_str(), g.pass, g.total, err.c_str());
        os << line;
    }
    os << "summary: " << passed() << " passed, " << failed() << " failed\n";
    return os.str();
}

std::complex<double> theta_series(const Lattice& L, const RatVec& a, const RatVec& b, cd tau, const CVec& z,
                                  double q_trunc) {
    const int N = L.rank();
    if (static_cast<int>(a.size()) != N || static_cast<int>(b.size()) != N || static_cast<int>(z.size()) != N)
        fail(Errc::DimensionMismatch, "theta characteristic or z has the wrong length");
    CVec w(N);
    for (int i = 0; i < N; ++i) w[i] = z[i] + b[i].to_double();
    // bound on (x+a)^T S (x+a); the rational cast loses nothing relevant
    const Rational bound(static_cast<long long>(std::floor(2 * q_trunc * 1000)), 1000);
    Neumaier s;
    CVec v(N);
    for (const auto& x : enumerate_ellipsoid(gram_rat(L), a, bound)) {
        for (int i = 0; i < N; ++i) v[i] = static_cast<double>(x[i]) + a[i].to_double();
        s += std::exp(kPi * kI * (pair_c(L, v, v) * tau + 2.0 * pair_c(L, v, w)));
    }
    return s.value();
}

double theta_tail_estimate(const Lattice& L, cd tau, const CVec& z, double q_trunc) {
    const int N = L.rank();
    CVec im(N);
    for (int i = 0; i < N; ++i) im[i] = z[i].imag();
    const double c = pair_c(L, im, im).real();
    const double y = tau.imag();
    const double ball = std::pow(kPi, N / 2.0) / std::tgamma(N / 2.0 + 1) / std::sqrt(static_cast<double>(L.det()));
    double tail = 0;
    double nu = 2 * q_trunc;
    for (int j = 0; j < 40; ++j, nu *= 2) {
        // points with norm in (nu, 2 nu], each at most exp(-pi y nu + 2 pi sqrt(2 nu c))
        const double count = 2 * ball * std::pow(2 * nu, N / 2.0) + 1;
        tail += count * std::exp(-kPi * y * nu + 2 * kPi * std::sqrt(2 * nu * c));
    }
    return tail;
}

CheckRecord check_theta_transformation(const Lattice& L, const RatVec& a, cd tau, const CVec& z, double q_trunc,
                                       double tolerance) {
    const int N = L.rank();
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "theta transformation check needs even N");
    if (tau.imag() < 0.5) fail(Errc::InvalidArgument, "need Im(tau) >= 1/2");
    const cd tau2 = -1.0 / tau;
    CVec z2(N);
    for (int i = 0; i < N; ++i) z2[i] = z[i] / tau;
    const RatVec zero(N, Rational(0));
    const auto reps = discriminant_representatives(L);
    const cd pref = std::pow(tau / kI, N / 2) / std::sqrt(static_cast<double>(L.det())) *
                    std::exp(kPi * kI * pair_c(L, z, z) / tau);

    const double tail = theta_tail_estimate(L, tau2, z2, q_trunc) +
                        std::abs(pref) * static_cast<double>(reps.size()) * theta_tail_estimate(L, tau, z, q_trunc);
    if (tail > tolerance / 10)
        fail(Errc::TruncationInsufficient, "theta tail estimate " + fmt(tail) + " exceeds tolerance/10; raise q_trunc");

    const cd lhs = theta_series(L, a, zero, tau2, z2, q_trunc);
    RatVec minus_a(N);
    for (int i = 0; i < N; ++i) minus_a[i] = -a[i];
    Neumaier sum;
    for (const auto& p : reps) sum += theta_series(L, p.coords(), minus_a, tau, z, q_trunc);
    const cd rhs = pref * sum.value();

    std::string a_str = "(";
    for (int i = 0; i < N; ++i) a_str += (i ? "," : "") + a[i].to_string();
    a_str += ")";
    return numeric_record("theta_transformation", "L=" + L.name() + " a=" + a_str + " tau=" + fmt(tau) +
                                                      " z=" + cvec_str(z) + " q_trunc=" + fmt(q_trunc),
                          lhs, rhs, tolerance);
}

std::string JacobiGenerator::name() const {
    switch (kind) {
        case Kind::T: return "T";
        case Kind::S: return "S";
        case Kind::Translation: return "[" + vec_str(x) + "," + vec_str(y) + "]";
    }
    return "?";
}

CheckRecord check_slash_invariance(const QExpansion& E, const JacobiGenerator& g, cd tau, const CVec& z,
                                   double tolerance) {
    const Lattice& L = E.lattice();
    const int N = L.rank();
    if (static_cast<int>(z.size()) != N) fail(Errc::DimensionMismatch, "z has the wrong length");
    if (E.n_max() < 8) fail(Errc::TruncationInsufficient, "slash checks need n_max >= 8");
    if (tau.imag() < 1) fail(Errc::TruncationInsufficient, "slash checks need Im(tau) >= 1");
    const double m = E.index();
    const int k = E.weight();
    cd lhs, rhs;
    std::string kind;
    switch (g.kind) {
        case JacobiGenerator::Kind::T:
            kind = "slash_T";
            lhs = E.evaluate(tau + 1.0, z);
            rhs = E.evaluate(tau, z);
            break;
        case JacobiGenerator::Kind::S: {
            kind = "slash_S";
            CVec z2(N);
            for (int i = 0; i < N; ++i) z2[i] = z[i] / tau;
            lhs = E.evaluate(-1.0 / tau, z2);
            rhs = std::pow(tau, k) * std::exp(2 * kPi * kI * m * pair_c(L, z, z) / (2.0 * tau)) * E.evaluate(tau, z);
            break;
        }
        case JacobiGenerator::Kind::Translation: {
            kind = "slash_translation";
            if (static_cast<int>(g.x.size()) != N || static_cast<int>(g.y.size()) != N)
                fail(Errc::DimensionMismatch, "translation vectors have the wrong length");
            CVec xs(N), z2(N);
            for (int i = 0; i < N; ++i) {
                xs[i] = static_cast<double>(g.x[i]);
                z2[i] = z[i] + xs[i] * tau + static_cast<double>(g.y[i]);
            }
            const double qx = quadratic_value(L, g.x);
            lhs = std::exp(2 * kPi * kI * m * (qx * tau + pair_c(L, xs, z))) * E.evaluate(tau, z2);
            rhs = E.evaluate(tau, z);
            break;
        }
    }
    return numeric_record(kind, "L=" + L.name() + " k=" + std::to_string(k) + " m=" + std::to_string(E.index()) +
                                    " g=" + g.name() + " tau=" + fmt(tau) + " z=" + cvec_str(z) +
                                    " n_max=" + std::to_string(E.n_max()),
                          lhs, rhs, tolerance);
}

namespace {

Lattice named(const IntMatrix& g, const std::string& name) { return validate_lattice(g, name); }

std::vector<Lattice> small_lattices(bool extended) {
    std::vector<Lattice> out{preset_lattice("2A1"), preset_lattice("4A1"), preset_lattice("D4"),
                             named({{2, -1}, {-1, 2}}, "A2"), named({{2, 1, 0}, {1, 4, 1}, {0, 1, 6}}, "ODD3"),
                             named({{4}}, "[4]")};
    if (extended) out.push_back(named({{2, 1}, {1, 4}}, "B2"));
    return out;
}

IntVec mask_vector(int N, unsigned mask) {
    IntVec v(N);
    for (int i = 0; i < N; ++i) v[i] = (mask >> i) & 1;
    return v;
}

long long sum_squares(const IntVec& v) {
    long long s = 0;
    for (auto x : v) s += x * x;
    return s;
}

bool compatible(const IntVec& lam, long long Delta) { return ((Delta + sum_squares(lam)) % 4 + 4) % 4 == 0; }

std::string pt(const std::string& L, long long p, int l, long long t) {
    return "L=" + L + " p=" + std::to_string(p) + " l=" + std::to_string(l) + " t=" + std::to_string(t);
}

}  // namespace

VerificationReport run_formula_vs_oracle_suite(const GridConfig& grid) {
    VerificationReport rep;
    const auto lattices = small_lattices(grid.extended);
    const Lattice e8 = preset_lattice("E8");

    // good primes, both rank parities
    for (const auto& L : lattices) {
        for (long long p : grid.primes) {
            if (p == 2 || L.det() % p == 0) continue;
            for (long long t = 1; t <= grid.max_abs_delta; ++t)
                rep.add(exact_record("good_prime_density", pt(L.name(), p, 0, t), density_good_prime(L, p, t),
                                     density_counting(L, p, t).value.coeff()));
        }
    }

    // unimodular lemma on E8
    const int e8_levels = grid.extended ? 2 : 1;
    for (long long p : {2LL, 3LL}) {
        for (int l = 1; l <= e8_levels; ++l)
            for (long long D = -grid.max_abs_delta; D <= grid.max_abs_delta; ++D)
                rep.add(exact_record("unimodular_lemma", pt("E8", p, l, D), density_unimodular(8, p, l, D),
                                     density_at_level(e8, p, l, D)));
    }

    // NA1: odd p and p = 2 against D counts; D = A_N for odd p
    for (int N : {2, 4}) {
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
            const IntVec lam = mask_vector(N, mask);
            for (long long D = -grid.max_abs_delta; D <= grid.max_abs_delta; ++D) {
                if (!compatible(lam, D)) continue;
                const std::string L = std::to_string(N) + "A1 lambda=" + vec_str(lam);
                for (long long p : grid.primes) {
                    if (p == 2) {
                        int top = grid.max_level;
                        if (D != 0) top = std::max(top, na1_two_stable_level(N, lam, D) + 1);
                        for (int l = 1; l <= top; ++l) {
                            const auto a = static_cast<std::uint64_t>(ipow(2, l));
                            rep.add(exact_record("na1_two_density", pt(L, 2, l, D), density_na1_two(N, lam, l, D),
                                                 Rational(count_D_NA1(N, lam, D, a)) * pow(Rational(2), l * (1 - N))));
                        }
                        continue;
                    }
                    for (int l = 1; l <= grid.max_level; ++l) {
                        const auto a = static_cast<std::uint64_t>(ipow(p, l));
                        const BigInt d = count_D_NA1(N, lam, D, a);
                        rep.add(exact_record("na1_odd_density", pt(L, p, l, D), density_na1_odd(N, p, l, D),
                                             Rational(d) * pow(Rational(p), static_cast<long long>(l) * (1 - N))));
                        rep.add(exact_record("corollary_D_equals_A", pt(L, p, l, D), d,
                                             count_sum_squares(N, -D, p, l)));
                    }
                }
            }
        }
    }

    // stabilization beyond 2 ord_p(2t)
    std::vector<Lattice> stab = lattices;
    for (const auto& L : stab) {
        for (long long p : grid.primes) {
            for (long long t = -grid.max_abs_delta; t <= grid.max_abs_delta; ++t) {
                if (t == 0) continue;
                const int a = 2 * ord_p(2 * t, p) + 1;
                rep.add(exact_record("stabilization", pt(L.name(), p, a, t), density_at_level(L, p, a, t),
                                     density_at_level(L, p, a + 1, t)));
            }
        }
    }
    for (long long p : {2LL, 3LL}) {
        for (long long t = 1; t <= (grid.extended ? 24 : 8); ++t) {
            const int a = 2 * ord_p(2 * t, p) + 1;
            rep.add(exact_record("stabilization", pt("E8", p, a, t), density_at_level(e8, p, a, t),
                                 density_at_level(e8, p, a + 1, t)));
        }
    }

    // alpha = omega
    for (int N = 1; N <= grid.corollary_max_rank; ++N) {
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
            const IntVec lam = mask_vector(N, mask);
            const long long s = sum_squares(lam);
            const BigInt enumerated = alpha_by_enumeration(N, lam);
            for (long long n = 0; n < 2; ++n) {
                const long long D = 4 * n - s;
                auto ao = alpha_omega(N, lam, D);
                const std::string point = "N=" + std::to_string(N) + " lambda=" + vec_str(lam) + " Delta=" + std::to_string(D);
                rep.add(exact_record("corollary_alpha_omega", point, ao.alpha, ao.omega));
                rep.add(exact_record("alpha_enumeration", point, ao.alpha, enumerated));
            }
        }
    }

    // genus counts against enumeration; both lattices have class number one
    for (const auto& [L, top] : {std::pair{e8, grid.extended ? 6LL : 4LL}, std::pair{preset_lattice("D4"), 8LL}}) {
        auto shells = enumerate_by_norm(L, top);
        for (long long D = 1; D <= top; ++D) {
            auto g = genus_representation(L, D);
            rep.add(exact_record("genus_representation", "L=" + L.name() + " Delta=" + std::to_string(D),
                                 g.exact ? *g.exact : Rational(-1),
                                 Rational(static_cast<long long>(shells[D].size()))));
        }
    }
    return rep;
}

VerificationReport run_modularity_suite(bool extended) {
    VerificationReport rep;
    const Lattice e8 = preset_lattice("E8");
    const auto E = q_expansion(e8, 12, 1, 8);
    const CVec z_small(8, cd(0.1, 0));
    const CVec z0(8, cd(0, 0));
    IntVec e1(8, 0), e23(8, 0), zero8(8, 0);
    e1[0] = 1;
    e23[1] = 1;
    e23[2] = -1;

    rep.add(check_slash_invariance(E, JacobiGenerator::T(), cd(0.3, 1.0), z_small, 1e-12));
    rep.add(check_slash_invariance(E, JacobiGenerator::T(), cd(0, 2.0), z_small, 1e-12));
    rep.add(check_slash_invariance(E, JacobiGenerator::translation(e1, zero8), cd(0, 2.0), z_small, 1e-5));
    rep.add(check_slash_invariance(E, JacobiGenerator::translation(e23, e1), cd(0.25, 2.0), z_small, 1e-5));
    rep.add(check_slash_invariance(E, JacobiGenerator::translation(zero8, e1), cd(0, 1.0), z_small, 1e-5));
    rep.add(check_slash_invariance(E, JacobiGenerator::S(), cd(0, 1.0), z0, 1e-4));
    CVec z_s(8, cd(0, 0));
    z_s[0] = 0.1;
    z_s[3] = -0.05;
    rep.add(check_slash_invariance(E, JacobiGenerator::S(), cd(0, 1.0), z_s, 1e-4));
    rep.add(check_slash_invariance(E, JacobiGenerator::S(), cd(0.3, 1.0), z_s, 1e-4));

    const RatVec a0(8, Rational(0));
    RatVec a_half(8, Rational(0));
    a_half[0] = Rational(1, 2);
    rep.add(check_theta_transformation(e8, a0, cd(0, 1.0), z0, 8, 1e-8));
    rep.add(check_theta_transformation(e8, a_half, cd(0.1, 1.0), CVec(8, cd(0.05, 0)), 8, 1e-8));
    const Lattice a1 = preset_lattice("2A1");
    rep.add(check_theta_transformation(a1, {Rational(0), Rational(0)}, cd(0, 2.0), {0, 0}, 16, 1e-8));
    rep.add(check_theta_transformation(a1, {Rational(1, 3), Rational(1, 5)}, cd(0.4, 1.5), {cd(0.1, 0), cd(-0.2, 0)}, 16, 1e-8));
    {
        // a -> -a at z = 0, tau = i t leaves theta unchanged (lambda -> -lambda)
        const RatVec a{Rational(1, 3), Rational(1, 5)}, b{Rational(-1, 3), Rational(-1, 5)};
        const RatVec zb(2, Rational(0));
        rep.add(numeric_record("theta_symmetry", "L=2A1 a=(1/3,1/5) tau=1.5i",
                               theta_series(a1, a, zb, cd(0, 1.5), {0, 0}, 16),
                               std::conj(theta_series(a1, b, zb, cd(0, 1.5), {0, 0}, 16)), 1e-12));
    }

    // index and lattices outside the closed forms, through the theta-transformation route
    {
        const auto E2 = q_expansion(a1, 6, 1, 8);
        rep.add(check_slash_invariance(E2, JacobiGenerator::S(), cd(0, 1.0), {cd(0.1, 0), cd(0.05, 0)}, 1e-4));
        rep.add(check_slash_invariance(E2, JacobiGenerator::translation({1, 0}, {0, 1}), cd(0, 2.0),
                                       {cd(0.1, 0), cd(0.05, 0)}, 1e-5));
    }
    {
        const Lattice L4 = preset_lattice("4A1");
        const auto general = q_expansion(L4, 8, 1, 8, {Pipeline::General, 50, 40});
        const auto na1 = q_expansion(L4, 8, 1, 8, {Pipeline::Na1, 50, 40});
        const CVec z4{cd(0.1, 0), cd(0.05, 0), cd(0, 0), cd(-0.1, 0)};
        rep.add(check_slash_invariance(general, JacobiGenerator::S(), cd(0, 1.0), z4, 1e-4));
        // The printed gamma sign: the closed form and the theta route differ by -1, so
        // the closed-form expansion fails S-invariance. Recorded, not enforced.
        auto r = check_slash_invariance(na1, JacobiGenerator::S(), cd(0, 1.0), z4, 1e-4);
        r.name = "na1_printed_gamma_sign_S";
        r.informational = true;
        rep.add(r);
        const auto* a = na1.find(1, IntVec{1, 1, 1, 0});
        const auto* b = general.find(1, IntVec{1, 1, 1, 0});
        auto ratio = numeric_record("na1_vs_theta_route_ratio", "L=4A1 k=8 n=1 h=(1,1,1,0)", cd(a->value / b->value, 0),
                                    cd(-1, 0), 1e-6);
        ratio.informational = true;
        rep.add(ratio);
    }
    {
        // printed final NA1 closed forms against the product form
        for (int N : {4, 6}) {
            const IntVec h(N, 0);
            const Rational a = coefficient_na1_printed(N + 6, N, 1, h), b = coefficient_na1(N + 6, N, 1, h);
            auto r = exact_record("na1_printed_final_form", "N=" + std::to_string(N) + " k=" + std::to_string(N + 6) +
                                                                " n=1 h=0",
                                  a, b);
            r.informational = true;
            rep.add(r);
        }
    }
    if (extended) {
        const auto E14 = q_expansion(e8, 14, 1, 8);
        // i^14 = -1 forces E(i, z) near 0, so the point moves off the imaginary axis
        rep.add(check_slash_invariance(E14, JacobiGenerator::S(), cd(0.2, 1.0), z_s, 1e-4));
        rep.add(check_slash_invariance(E14, JacobiGenerator::translation(e1, zero8), cd(0, 2.0), z_small, 1e-5));
        const Lattice d4 = preset_lattice("D4");
        rep.add(check_theta_transformation(d4, {Rational(0), Rational(1, 2), Rational(0), Rational(0)}, cd(0.2, 1.0),
                                           CVec(4, cd(0.1, 0)), 12, 1e-8));
        const auto Ed4 = q_expansion(d4, 8, 1, 8);
        rep.add(check_slash_invariance(Ed4, JacobiGenerator::S(), cd(0, 1.0), CVec(4, cd(0.05, 0)), 1e-4));
    }
    return rep;
}

}  // namespace je
