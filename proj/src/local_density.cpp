#include "je/local_density.hpp"

#include <climits>
#include <cmath>

#include "je/errors.hpp"
#include "je/rep_count.hpp"

namespace je {

namespace {

constexpr int kInfiniteOrder = INT_MAX;

int ord_or_inf(long long x, long long p) { return x == 0 ? kInfiniteOrder : ord_p(x, p); }

Rational rp(long long p, long long e) { return pow(Rational(p), e); }

void require_prime(long long p) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) fail(Errc::BadPrime, std::to_string(p) + " is not prime");
}

int sign_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

// (1 - eps p^{-N/2}) * geo + eps^l p^{l(1-N/2)} family shared by the
// unimodular lemma and the odd-p NA1 proposition.
Rational three_case(int N, long long p, int l, long long Delta, int eps) {
    const int h = N / 2;
    const Rational x = Rational(eps) * rp(p, 1 - h);
    const Rational lead = Rational(1) - Rational(eps) * rp(p, -h);
    if (Delta % p != 0) return lead;
    const int o = ord_or_inf(Delta, p);
    if (o != kInfiniteOrder && l > o) return lead * geometric_sum(x, o + 1);
    return pow(x, l) + lead * geometric_sum(x, l);
}

}  // namespace

std::string method_name(DensityMethod m) {
    switch (m) {
        case DensityMethod::Counting: return "counting";
        case DensityMethod::GoodPrime: return "good_prime";
        case DensityMethod::UnimodularLemma: return "unimodular_lemma";
        case DensityMethod::Na1Odd: return "na1_odd";
        case DensityMethod::Na1Two: return "na1_two";
        case DensityMethod::Infinity: return "infinity";
    }
    return "unknown";
}

Rational density_at_level(const Lattice& L, long long p, int l, long long t) {
    require_prime(p);
    QuadPoly f{L.gram(), IntVec(L.rank(), 0), -t};
    return Rational(count_zeros_prime_power(f, p, l)) * rp(p, static_cast<long long>(l) * (1 - L.rank()));
}

DensityReport density_counting(const Lattice& L, long long p, long long t) {
    require_prime(p);
    if (t < 1) fail(Errc::InvalidArgument, "density needs t >= 1");
    const int a = 2 * ord_p(2 * t, p) + 1;
    Rational v = density_at_level(L, p, a, t);
    Rational w = density_at_level(L, p, a + 1, t);
    if (v != w)
        fail(Errc::StabilizationFailure, "levels " + std::to_string(a) + " and " + std::to_string(a + 1) +
                                             " give " + v.to_string() + " and " + w.to_string());
    return DensityReport{PiRational(v), p, DensityMethod::Counting, a};
}

Rational density_good_prime(const Lattice& L, long long p, long long t) {
    require_prime(p);
    if (t < 1) fail(Errc::InvalidArgument, "density needs t >= 1");
    if (p == 2 || L.det() % p == 0) fail(Errc::BadPrime, std::to_string(p) + " divides 2 det");
    const int N = L.rank();
    const int l = ord_p(t, p);
    long long tbar = t;
    for (int i = 0; i < l; ++i) tbar /= p;

    if (N % 2 == 0) {
        BigInt D = BigInt(static_cast<long>(L.det())) * sign_pow(N / 2);
        const int eps = kronecker(D, p);
        return (Rational(1) - Rational(eps) * rp(p, -N / 2)) * geometric_sum(Rational(eps) * rp(p, 1 - N / 2), l + 1);
    }
    BigInt D = BigInt(static_cast<long>(L.det())) * 2 * static_cast<long>(tbar) * sign_pow((N - 1) / 2);
    const int eps = kronecker(D, p);
    const Rational lead = Rational(1) - rp(p, 1 - N);
    const Rational r = rp(p, 2 - N);
    if (l % 2 == 1) return lead * geometric_sum(r, (l - 1) / 2 + 1);
    // lead / (1 - eps x) = 1 + eps x with x = p^{(1-N)/2}; stays finite at N = 1
    const Rational last = rp(p, static_cast<long long>(2 - N) * (l / 2)) *
                          (Rational(1) + Rational(eps) * rp(p, (1 - N) / 2));
    return lead * geometric_sum(r, l / 2) + last;
}

PiRational density_infty(const Lattice& L, long long t) {
    const int N = L.rank();
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "Gamma(N/2) leaves Q[pi] for odd N");
    if (t < 1) fail(Errc::InvalidArgument, "density needs t >= 1");
    BigInt root;
    if (!is_perfect_square(BigInt(static_cast<long>(L.det())), &root))
        fail(Errc::NonSquareDeterminant, "det " + std::to_string(L.det()) + " is not a square");
    Rational c = pow(Rational(2), N / 2) / Rational(factorial(N / 2 - 1)) * pow(Rational(t), N / 2 - 1) / Rational(root);
    return PiRational(c, N / 2);
}

Rational density_unimodular(int N, long long p, int l, long long Delta) {
    require_prime(p);
    if (N < 2 || N % 2 != 0) fail(Errc::InvalidArgument, "unimodular density needs even N");
    if (l < 1) fail(Errc::InvalidArgument, "level l must be >= 1");
    return three_case(N, p, l, Delta, 1);
}

Rational density_na1_odd(int N, long long p, int l, long long Delta) {
    require_prime(p);
    if (p == 2) fail(Errc::BadPrime, "odd prime required");
    if (N < 2 || N % 2 != 0) fail(Errc::InvalidArgument, "NA1 odd-p density needs even N");
    if (l < 1) fail(Errc::InvalidArgument, "level l must be >= 1");
    return three_case(N, p, l, Delta, kronecker(sign_pow(N / 2), p));
}

namespace {

enum class Parity { Mixed, AllOdd, AllEven };

Parity parity_of(const IntVec& lam) {
    bool any_odd = false, any_even = false;
    for (auto v : lam) (v % 2 != 0 ? any_odd : any_even) = true;
    if (any_odd && any_even) return Parity::Mixed;
    return any_odd ? Parity::AllOdd : Parity::AllEven;
}

void check_na1_input(int N, const IntVec& lam, long long Delta) {
    if (N < 2 || N % 2 != 0) fail(Errc::InvalidArgument, "NA1 density needs even N");
    if (static_cast<int>(lam.size()) != N) fail(Errc::DimensionMismatch, "lambda length differs from N");
    // parities fix sum lambda^2 mod 4
    long long odd = 0;
    for (auto v : lam) odd += (v % 2 != 0);
    if (((Delta + odd) % 4 + 4) % 4 != 0)
        fail(Errc::InconsistentInput, "Delta = " + std::to_string(Delta) + " is not 4n - sum lambda^2");
}

}  // namespace

Rational density_na1_two(int N, const IntVec& lam, int l, long long Delta) {
    check_na1_input(N, lam, Delta);
    if (l < 0) fail(Errc::InvalidArgument, "level l must be >= 0");
    if (l == 0) return 1;
    const Parity par = parity_of(lam);
    if (par == Parity::Mixed) return 1;
    if (par == Parity::AllOdd) {
        // sum of N odd squares is N mod 8
        long long n = ((Delta + N) / 4 % 2 + 2) % 2;
        return n == 0 ? 2 : 0;
    }
    const long long kappa = -Delta / 4;
    const int h = N / 2;
    const bool n0 = (N % 4 == 0);
    const int s4 = n0 ? sign_pow(N / 4) : 0;
    const Rational x = rp(2, 1 - h);  // 2^{1-N/2}
    if (kappa % 2 != 0) {
        if (l == 1 || n0) return 1;
        return Rational(1) - Rational(sign_pow((N + 2 * kappa) / 4)) * x;
    }
    const int o = ord_or_inf(kappa, 2);
    const Rational denom = Rational(1) - rp(2, h - 1);
    if (o == kInfiniteOrder || l <= o) {
        if (!n0) return 1;
        return Rational(1) - Rational(s4) * (Rational(1) - pow(x, l - 1)) / denom;
    }
    if (l == o + 1) {
        if (!n0) return 1;
        Rational brace = (rp(2, static_cast<long long>(o) * (h - 1)) - Rational(1)) / (rp(2, h - 1) - Rational(1)) - Rational(2);
        return Rational(1) + Rational(s4) * pow(x, o) * brace;
    }
    if (!n0) {
        long long kbar = kappa;
        for (int i = 0; i < o; ++i) kbar /= 2;
        return Rational(1) - Rational(sign_pow((N + 2 * kbar) / 4)) * pow(x, o + 1);
    }
    return Rational(1) - Rational(s4) * ((Rational(1) - pow(x, o - 1)) / denom + pow(x, o));
}

int na1_two_stable_level(int N, const IntVec& lam, long long Delta) {
    check_na1_input(N, lam, Delta);
    const Parity par = parity_of(lam);
    if (par != Parity::AllEven) return 1;
    if (Delta == 0) fail(Errc::InvalidArgument, "no stable level for Delta = 0");
    const long long kappa = -Delta / 4;
    if (kappa % 2 != 0) return 2;
    return ord_p(kappa, 2) + 2;
}

DensityReport density(const Lattice& L, long long p, long long t, const std::optional<IntVec>& lam) {
    if (p == 0) return DensityReport{density_infty(L, t), 0, DensityMethod::Infinity, std::nullopt};
    require_prime(p);
    if (lam) {
        if (!L.is_na1()) fail(Errc::UnsupportedLattice, "lambda-dependent densities exist only for NA1");
        const int N = L.rank();
        if (p == 2) {
            int l = na1_two_stable_level(N, *lam, t);
            return DensityReport{PiRational(density_na1_two(N, *lam, l, t)), p, DensityMethod::Na1Two, std::nullopt};
        }
        check_na1_input(N, *lam, t);
        int l = t == 0 ? 1 : ord_p(t, p) + 1;
        return DensityReport{PiRational(density_na1_odd(N, p, l, t)), p, DensityMethod::Na1Odd, std::nullopt};
    }
    if (t < 1) fail(Errc::InvalidArgument, "density needs t >= 1");
    if (p != 2 && L.det() % p != 0)
        return DensityReport{PiRational(density_good_prime(L, p, t)), p, DensityMethod::GoodPrime, std::nullopt};
    if (L.is_unimodular() && L.rank() % 2 == 0)
        return DensityReport{PiRational(density_unimodular(L.rank(), p, ord_p(t, p) + 1, t)), p,
                             DensityMethod::UnimodularLemma, std::nullopt};
    return density_counting(L, p, t);
}

namespace {

void check_genus_input(const Lattice& L, long long Delta) {
    if (L.rank() % 2 != 0 || L.rank() < 4) fail(Errc::UnsupportedRank, "genus representation needs even N >= 4");
    if (Delta < 1) fail(Errc::InvalidArgument, "Delta must be >= 1");
}

}  // namespace

GenusCount genus_representation_siegel(const Lattice& L, long long Delta) {
    check_genus_input(L, Delta);
    const int N = L.rank();
    const int h = N / 2;
    const long long det = L.det();
    const BigInt D4 = BigInt(static_cast<long>(det)) * sign_pow(h) * 4;

    Rational divisor_sum(0);
    for (auto a : divisors(static_cast<std::uint64_t>(Delta))) {
        int c = kronecker(D4, static_cast<long long>(a));
        if (c != 0) divisor_sum += Rational(c) * pow(Rational(static_cast<long long>(a)), 1 - h);
    }
    Rational local(1);
    for (auto [p, e] : factorize(2 * static_cast<std::uint64_t>(det)))
        local *= density_counting(L, static_cast<long long>(p), Delta).value.coeff();

    BigInt root;
    GenusCount out;
    if (is_perfect_square(BigInt(static_cast<long>(det)), &root)) {
        // chi_{4D} is chi_{+-4} with the primes of root removed
        const Mod4Character chi0 = character_for_sign(sign_pow(h));
        PiRational Lval = l_value_positive(h, chi0);
        for (auto [p, e] : factorize(root.get_ui())) {
            if (p == 2) continue;
            Lval *= PiRational(Rational(1) - Rational(chi_value(chi0, static_cast<long long>(p))) *
                                                 pow(Rational(static_cast<long long>(p)), -h));
        }
        PiRational r = density_infty(L, Delta) / Lval * PiRational(divisor_sum * local);
        if (!r.is_rational()) fail(Errc::InvalidArgument, "pi powers failed to cancel");
        out.exact = r.coeff();
        out.value = r.coeff().to_double();
        return out;
    }
    // L(N/2, chi_{4D}) as an Euler product over p <= P; the relative error of
    // the truncation is at most exp(P^{1-N/2}/(N/2-1)) - 1.
    const std::uint64_t P = 100000;
    long double logL = 0;
    for (auto p : primes_up_to(P)) {
        int c = kronecker(D4, static_cast<long long>(p));
        if (c != 0) logL -= std::log1p(-c * std::pow(static_cast<long double>(p), -h));
    }
    long double dinf = std::pow(2.0L * 3.14159265358979323846264338327950288L, h) /
                       std::tgamma(static_cast<long double>(h)) * std::pow(static_cast<long double>(Delta), h - 1) /
                       std::sqrt(static_cast<long double>(det));
    long double val = dinf / std::exp(logL) * divisor_sum.to_double() * local.to_double();
    out.value = static_cast<double>(val);
    double rel = std::expm1(std::pow(static_cast<double>(P), 1 - h) / (h - 1));
    out.error_bound = std::abs(out.value) * rel + std::abs(out.value) * 1e-15;
    return out;
}

GenusCount genus_representation(const Lattice& L, long long Delta) {
    check_genus_input(L, Delta);
    if (!L.is_unimodular()) return genus_representation_siegel(L, Delta);
    const int N = L.rank();
    Rational v = -Rational(N) / bernoulli(N / 2) * pow(Rational(Delta), N / 2 - 1) *
                 divisor_sigma(1 - N / 2, static_cast<std::uint64_t>(Delta));
    GenusCount out;
    out.exact = v;
    out.value = v.to_double();
    return out;
}

}  // namespace je
