#include "je/eisenstein.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>

#include "je/errors.hpp"
#include "je/local_density.hpp"

namespace je {

namespace {

Rational rp(long long p, long long e) { return pow(Rational(p), e); }

int sign_pow(long long e) { return e % 2 == 0 ? 1 : -1; }

Mod4Character na1_character(int N) { return character_for_sign(sign_pow(N / 2)); }

// sum_{v < level} d(v) r^v + d(level) r^level / (1 - r)
template <class Density>
Rational local_series(Density d, const Rational& r, int level) {
    Rational s = 0;
    for (int v = 0; v < level; ++v) s += d(v) * pow(r, v);
    return s + d(level) * pow(r, level) / (Rational(1) - r);
}

long long to_ll(const Rational& r, const char* what) {
    if (!r.is_integer()) fail(Errc::InvalidArgument, std::string(what) + " must be an integer");
    return r.num().get_si();
}

long long na1_delta(int N, long long n, const IntVec& h) {
    if (static_cast<int>(h.size()) != N) fail(Errc::DimensionMismatch, "lambda length differs from N");
    long long s = 0;
    for (auto v : h) s += v * v;
    return 4 * n - s;
}

void check_na1_coefficient_input(int k, int N, long long Delta) {
    if (N < 4 || N % 2 != 0) fail(Errc::UnsupportedRank, "NA1 coefficients need even N >= 4");
    check_weight(k, N);
    if (Delta <= 0) fail(Errc::DeltaNotPositive, "Delta = " + std::to_string(Delta) + " belongs to the theta part");
}

std::vector<std::uint64_t> odd_prime_divisors(long long Delta) {
    std::vector<std::uint64_t> out;
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(Delta)))
        if (p != 2) out.push_back(p);
    return out;
}

// sum_{a | Delta} chi_{4D}(a) a^{1-N/2}
Rational chi_divisor_sum(int N, long long Delta) {
    Rational s = 0;
    const auto chi = na1_character(N);
    for (auto a : divisors(static_cast<std::uint64_t>(Delta))) {
        int c = chi_value(chi, static_cast<long long>(a));
        if (c != 0) s += Rational(c) * rp(static_cast<long long>(a), 1 - N / 2);
    }
    return s;
}

// L(k - N/2, chi_{4D})
PiRational na1_l_value(int k, int N) { return l_value_positive(k - N / 2, na1_character(N)); }

}  // namespace

void check_weight(int k, int N) {
    if (k % 2 != 0) fail(Errc::InvalidArgument, "weight k must be even, got " + std::to_string(k));
    if (k <= 2 + N) fail(Errc::WeightTooSmall, "need k > 2 + N, got k = " + std::to_string(k) + ", N = " + std::to_string(N));
}

PiRational gamma_factor(int k, int N, const Rational& Delta) {
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "gamma factor needs even N");
    check_weight(k, N);
    if (Delta.sign() <= 0) return PiRational(Rational(0));
    const int s = k - N / 2;
    Rational c = Rational(sign_pow(3 * k / 2 - N - 1)) * pow(Delta, s - 1) /
                 (pow(Rational(2), k - 2) * Rational(factorial(s - 1)));
    return PiRational(c, s);
}

PiRational prefactor_m1(int k, const Lattice& L, const Rational& Delta) {
    const int N = L.rank();
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "m = 1 prefactor needs even N");
    check_weight(k, N);
    BigInt root;
    if (!is_perfect_square(BigInt(static_cast<long>(L.det())), &root))
        fail(Errc::NonSquareDeterminant, "sqrt(det) is irrational; use prefactor_m1_float");
    const int s = k - N / 2;
    // i^{k-N} (-2)^s / (sqrt(det) (s-1)!)
    Rational c = Rational(sign_pow((k - N) / 2)) * pow(Rational(-2), s) * pow(Delta, s - 1) /
                 (Rational(root) * Rational(factorial(s - 1)));
    return PiRational(c, s) / zeta_even(k - N);
}

double prefactor_m1_float(int k, const Lattice& L, double Delta) {
    const int N = L.rank();
    check_weight(k, N);
    const int s = k - N / 2;
    double v = sign_pow((k - N) / 2) * std::pow(-2.0 * std::numbers::pi, s) * std::pow(Delta, s - 1) /
               (std::sqrt(static_cast<double>(L.det())) * factorial(s - 1).get_d());
    return v / zeta_even(k - N).to_double();
}

Rational r_p(int N, int k, long long p, int ord, int chi) {
    const int o1 = ord + 1;
    const Rational r = rp(p, N - k);
    const Rational y = Rational(chi) * rp(p, 1 + N / 2 - k);
    const Rational x = Rational(chi) * rp(p, 1 - N / 2);
    const Rational w = Rational(sign_pow(o1) == 1 ? 1 : chi) * rp(p, static_cast<long long>(o1) * (1 - N / 2));
    const Rational one(1);
    const Rational geo_r = (one - pow(r, o1)) / (one - r);
    const Rational geo_y = (one - pow(y, o1)) / (one - y);
    return pow(r, o1) / (one - r) + (geo_r - geo_y) / (one - w) +
           (one - x) * (one - pow(y, o1)) / ((one - w) * (one - Rational(chi) * rp(p, -N / 2)) * (one - y));
}

SeriesValue dirichlet_series(const ShiftedForm& form, int k, SeriesMode mode, int a_max) {
    const Lattice& L = form.lattice;
    const int N = L.rank();
    check_weight(k, N);
    SeriesValue out;
    if (mode == SeriesMode::Truncated) {
        if (a_max < 1) fail(Errc::InvalidArgument, "a_max must be >= 1");
        Rational prod = 1;
        for (auto p : primes_up_to(static_cast<std::uint64_t>(a_max))) {
            Rational local = 1;
            std::uint64_t q = p;
            for (int v = 1; q <= static_cast<std::uint64_t>(a_max); ++v, q *= p)
                local += Rational(count_Na(form, q)) * rp(static_cast<long long>(p), -static_cast<long long>(v) * (k - 1));
            prod *= local;
        }
        out.value = prod.to_double();
        // terms are N_a/a^{k-1} = delta(a) a^{N-k} with delta(a) <= 2 at good primes;
        // the omitted a all exceed a_max
        const double tail = 2.0 * std::pow(static_cast<double>(a_max), N - k + 1) / (k - N - 1);
        out.error_bound = std::abs(out.value) * std::expm1(tail);
        return out;
    }
    const Rational Delta = form.delta();
    if (Delta.sign() <= 0) fail(Errc::DeltaNotPositive, "exact series needs Delta > 0");
    if (mode == SeriesMode::ExactUnimodular) {
        if (!L.is_unimodular() || N % 8 != 0 || form.m != 1)
            fail(Errc::UnsupportedLattice, "exact unimodular series needs det 1, N = 0 mod 8, m = 1");
        const long long D = to_ll(Delta, "Delta");
        PiRational v = zeta_even(k - N) / zeta_even(k - N / 2);
        Rational finite = 1;
        for (auto [p, e] : factorize(static_cast<std::uint64_t>(D))) {
            const long long pp = static_cast<long long>(p);
            const Rational rr = rp(pp, N - k);
            auto d = [&](int l) { return l == 0 ? Rational(1) : density_unimodular(N, pp, l, D); };
            finite *= (Rational(1) - rr) / (Rational(1) - rp(pp, N / 2 - k)) * local_series(d, rr, e + 1);
        }
        v *= PiRational(finite);
        out.exact = v;
        out.value = v.to_double();
        return out;
    }
    // ExactNa1
    if (!L.is_na1() || form.m != 1) fail(Errc::UnsupportedLattice, "exact NA1 series needs Gram 2I and m = 1");
    if (N % 2 != 0 || N < 4) fail(Errc::UnsupportedRank, "exact NA1 series needs even N >= 4");
    const IntVec h = L.gram_times(form.lambda);
    const long long D4 = to_ll(Delta * Rational(4), "4 Delta");
    const Rational alpha2 = na1_alpha2(k, N, h, D4);
    const auto chi = na1_character(N);
    Rational finite = alpha2 * (Rational(1) - rp(2, N - k));
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(D4))) {
        if (p == 2) continue;
        const long long pp = static_cast<long long>(p);
        const int c = chi_value(chi, pp);
        const Rational rr = rp(pp, N - k);
        auto d = [&](int l) { return l == 0 ? Rational(1) : density_na1_odd(N, pp, l, D4); };
        finite *= (Rational(1) - rr) / (Rational(1) - Rational(c) * rp(pp, N / 2 - k)) * local_series(d, rr, e + 1);
    }
    PiRational v = zeta_even(k - N) / na1_l_value(k, N) * PiRational(finite);
    out.exact = v;
    out.value = v.to_double();
    return out;
}

Rational coefficient_unimodular(int k, int N, long long Delta) {
    check_weight(k, N);
    if (N % 8 != 0 || N <= 0) fail(Errc::RankNotUnimodularEven, "need N = 0 mod 8, got " + std::to_string(N));
    if (Delta < 1) fail(Errc::DeltaNotPositive, "Delta must be >= 1");
    const int s = k - N / 2;
    return -Rational(2 * k - N) / bernoulli(s) * divisor_sigma(s - 1, static_cast<std::uint64_t>(Delta));
}

Rational na1_alpha2(int k, int N, const IntVec& h, long long Delta) {
    const int level = na1_two_stable_level(N, h, Delta);
    auto d = [&](int l) { return density_na1_two(N, h, l, Delta); };
    return local_series(d, rp(2, N - k), level);
}

Rational coefficient_na1(int k, int N, long long n, const IntVec& h) {
    const long long D = na1_delta(N, n, h);
    check_na1_coefficient_input(k, N, D);
    const auto chi = na1_character(N);
    PiRational v = gamma_factor(k, N, Rational(D));
    Rational c = na1_alpha2(k, N, h, D) * (Rational(1) - rp(2, N - k)) * chi_divisor_sum(N, D);
    for (auto p : odd_prime_divisors(D)) {
        const long long pp = static_cast<long long>(p);
        const int cp = chi_value(chi, pp);
        c *= (Rational(1) - Rational(cp) * rp(pp, -N / 2)) * (Rational(1) - rp(pp, N - k)) /
             (Rational(1) - Rational(cp) * rp(pp, N / 2 - k)) * r_p(N, k, pp, ord_p(D, pp), cp);
    }
    v *= PiRational(c);
    v /= na1_l_value(k, N);
    if (!v.is_rational()) fail(Errc::InconsistentInput, "pi powers did not cancel: " + v.to_string());
    return v.coeff();
}

Rational coefficient_na1_printed(int k, int N, long long n, const IntVec& h) {
    const long long D = na1_delta(N, n, h);
    check_na1_coefficient_input(k, N, D);
    const Rational lead = na1_alpha2(k, N, h, D) * (Rational(1) - rp(2, N - k));
    const int s = k - N / 2;
    if (N % 4 == 2) {
        const auto chi = na1_character(N);
        Rational v = lead * rp(2, 2 - N / 2) * Rational(sign_pow((N - 2) / 4)) /
                     Rational(factorial(k / 2 - N / 4 - 1)) * chi_divisor_sum(N, D) / l_value_negative(s, chi) *
                     pow(Rational(D), s);
        for (auto p : odd_prime_divisors(D)) {
            const long long pp = static_cast<long long>(p);
            const int cp = chi_value(chi, pp);
            v *= (Rational(1) - Rational(cp) * rp(pp, -N / 2)) * (Rational(1) - rp(pp, N - k)) /
                 (Rational(1) - Rational(cp) * rp(pp, N / 2 - k)) * r_p(N, k, pp, ord_p(D, pp), cp);
        }
        return v;
    }
    const int o = ord_p(D, 2);
    const auto two_o = static_cast<std::uint64_t>(1) << o;
    return lead * rp(2, static_cast<long long>(o) * (s - 1)) * divisor_sigma(s - 1, static_cast<std::uint64_t>(D)) *
           Rational(D) * divisor_sigma(1 - N / 2, two_o) / divisor_sigma(s - 1, two_o) *
           Rational(sign_pow(N / 4) * (2 * k - N)) / (rp(2, k - 2 - N / 2) * bernoulli(s));
}

Coefficient coefficient_na1_truncated(int k, int N, long long n, const IntVec& h, int a_max) {
    const long long D = na1_delta(N, n, h);
    check_na1_coefficient_input(k, N, D);
    if (a_max < 1) fail(Errc::InvalidArgument, "a_max must be >= 1");
    double sum = 0, comp = 0;
    for (int a = 1; a <= a_max; ++a) {
        double t = Rational(count_D_NA1(N, h, D, static_cast<std::uint64_t>(a))).to_double() * std::pow(a, 1.0 - k);
        double y = t - comp;
        double s2 = sum + y;
        comp = (s2 - sum) - y;
        sum = s2;
    }
    const double pref = (gamma_factor(k, N, Rational(D)) / zeta_even(k - N)).to_double();
    // D_a <= 2^N a^{N-1} crudely bounds the tail
    const double tail = std::ldexp(1.0, N) * std::pow(static_cast<double>(a_max), N - k + 1) / (k - N - 1);
    return Coefficient::floating(pref * sum, std::abs(pref) * tail);
}

Rational general_m_kloosterman_sum(int k, const ShiftedForm& form, int c_max) {
    if (c_max < 1) fail(Errc::InvalidArgument, "c_max must be >= 1");
    const int N = form.lattice.rank();
    // K_{p^e} = p^e N_{p^e} - p^{e-1+N} N_{p^{e-1}}
    std::map<std::uint64_t, BigInt> K;
    for (auto p : primes_up_to(static_cast<std::uint64_t>(c_max))) {
        BigInt prev = 1;
        std::uint64_t q = p;
        for (int e = 1; q <= static_cast<std::uint64_t>(c_max); ++e, q *= p) {
            BigInt cur = count_Na(form, q);
            BigInt pe = BigInt(static_cast<unsigned long>(q));
            BigInt shift;
            mpz_ui_pow_ui(shift.get_mpz_t(), p, static_cast<unsigned long>(e - 1 + N));
            K[q] = pe * cur - shift * prev;
            prev = cur;
        }
    }
    Rational sum = 1;  // c = 1
    for (std::uint64_t c = 2; c <= static_cast<std::uint64_t>(c_max); ++c) {
        BigInt kc = 1;
        for (auto [p, e] : factorize(c)) kc *= K.at(static_cast<std::uint64_t>(ipow(static_cast<std::int64_t>(p), e)));
        if (kc == 0) continue;
        sum += Rational(kc) * rp(static_cast<long long>(c), -k);
    }
    return sum * rp(form.m, 1 - k);
}

Coefficient coefficient_general_m(int k, int m, const Lattice& L, long long n, const DualVector& lam, int c_max) {
    const int N = L.rank();
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "general-m coefficients need even N");
    check_weight(k, N);
    if (m < 1) fail(Errc::InvalidArgument, "m must be >= 1");
    const ShiftedForm form = make_shifted_form(L, m, n, lam);
    const Rational Delta = form.delta();
    if (Delta.sign() <= 0) fail(Errc::DeltaNotPositive, "Delta = " + Delta.to_string() + " belongs to the theta part");
    const int s = k - N / 2;
    const std::complex<double> I(0, 1);
    // (-2 pi i)^s / ((s-1)! sqrt(det) i^{N/2}) Delta^{s-1}
    std::complex<double> pref = std::pow(-2.0 * std::numbers::pi * I, s) / std::pow(I, N / 2) /
                                (factorial(s - 1).get_d() * std::sqrt(static_cast<double>(L.det()))) *
                                std::pow(Delta.to_double(), s - 1);
    const Rational ksum = general_m_kloosterman_sum(k, form, c_max);
    const std::complex<double> v = pref * ksum.to_double();
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
        fail(Errc::InconsistentInput, "general-m coefficient is not real");
    // |K_c| <= c^{N+1}
    const double tail = std::abs(pref) * std::pow(static_cast<double>(m), 1 - k) *
                        std::pow(static_cast<double>(c_max), N + 2 - k) / (k - N - 2);
    return Coefficient::floating(v.real(), tail);
}

Pipeline parse_pipeline(const std::string& s) {
    if (s == "auto") return Pipeline::Auto;
    if (s == "unimodular") return Pipeline::Unimodular;
    if (s == "na1") return Pipeline::Na1;
    if (s == "general") return Pipeline::General;
    fail(Errc::InvalidArgument, "unknown pipeline '" + s + "'");
}

std::string pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::Auto: return "auto";
        case Pipeline::Unimodular: return "unimodular";
        case Pipeline::Na1: return "na1";
        case Pipeline::General: return "general";
    }
    return "?";
}

Pipeline resolve_pipeline(const Lattice& L, int m, Pipeline requested) {
    const bool uni = L.is_unimodular() && L.rank() % 8 == 0 && m == 1;
    const bool na1 = L.is_na1() && L.rank() % 2 == 0 && L.rank() >= 4 && m == 1;
    switch (requested) {
        case Pipeline::Auto: return uni ? Pipeline::Unimodular : na1 ? Pipeline::Na1 : Pipeline::General;
        case Pipeline::Unimodular:
            if (!uni) fail(Errc::UnsupportedLattice, "unimodular pipeline needs det 1, N = 0 mod 8, m = 1");
            return requested;
        case Pipeline::Na1:
            if (!na1) fail(Errc::UnsupportedLattice, "na1 pipeline needs Gram 2I, even N >= 4, m = 1");
            return requested;
        case Pipeline::General:
            if (L.rank() % 2 != 0) fail(Errc::OddRankUnsupported, "no coefficient formula for odd rank");
            return requested;
    }
    return requested;
}

QExpansion q_expansion(const Lattice& L, int k, int m, long long n_max, const ExpansionOptions& opt) {
    const int N = L.rank();
    if (N % 2 != 0) fail(Errc::OddRankUnsupported, "no coefficient formula for odd rank");
    check_weight(k, N);
    if (m < 1) fail(Errc::InvalidArgument, "m must be >= 1");
    if (n_max < 0) fail(Errc::InvalidArgument, "n_max must be >= 0");
    const Pipeline pipe = resolve_pipeline(L, m, opt.pipeline);

    QExpansion out(L, k, m, n_max);
    const std::uint32_t zero = out.add_coefficient(Coefficient::rational(0));
    const std::uint32_t one = out.add_coefficient(Coefficient::rational(1));

    // Coefficients depend on (Delta, lambda mod mL) only; the key below is finer
    // for the exact pipelines but identical in value.
    std::map<std::pair<Rational, IntVec>, std::uint32_t> cache;
    const long long den = L.det();
    auto key_of = [&](const Rational& Delta, const DualVector& lam) {
        IntVec red;
        if (pipe == Pipeline::General) {
            // lambda numerators over det, reduced modulo m det
            const long long scale = den / lam.denominator();
            for (auto v : lam.numerators()) {
                long long t = (v * scale) % (m * den);
                red.push_back(t < 0 ? t + m * den : t);
            }
        } else if (pipe == Pipeline::Na1) {
            long long odd = 0;
            for (auto v : L.gram_times(lam)) odd += (v % 2 != 0);
            red.push_back(odd);
        }
        return std::make_pair(Delta, red);
    };

    const RatVec origin(N, Rational(0));
    auto ws = enumerate_ellipsoid(L.dual_gram(), origin, Rational(2 * n_max * m));
    for (auto& w : ws) {
        const DualVector lam = L.dual_from_integer(w);
        const Rational half = L.norm(lam) / Rational(2);
        const std::uint32_t li = out.add_lambda(w);
        // first n with n m >= (lambda, lambda)/2
        BigInt q = half.num() / (half.den() * m);
        long long n0 = q.get_si();
        if (Rational(n0 * m) < half) ++n0;
        for (long long n = n0; n <= n_max; ++n) {
            const Rational Delta = Rational(n * m) - half;
            if (Delta.is_zero()) {
                bool in_mL = true;
                for (auto v : lam.numerators()) in_mL = in_mL && v % (m * lam.denominator()) == 0;
                out.add_entry(n, li, in_mL ? one : zero);
                continue;
            }
            auto key = key_of(Delta, lam);
            auto it = cache.find(key);
            if (it == cache.end()) {
                Coefficient c;
                switch (pipe) {
                    case Pipeline::Unimodular:
                        c = Coefficient::rational(coefficient_unimodular(k, N, to_ll(Delta, "Delta")));
                        break;
                    case Pipeline::Na1:
                        c = Coefficient::rational(coefficient_na1(k, N, n, L.gram_times(lam)));
                        break;
                    default:
                        c = coefficient_general_m(k, m, L, n, lam, opt.c_max);
                }
                it = cache.emplace(key, out.add_coefficient(c)).first;
            }
            out.add_entry(n, li, it->second);
        }
    }
    return out;
}

}  // namespace je
