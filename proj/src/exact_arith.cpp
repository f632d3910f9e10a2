#include "je/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "je/errors.hpp"

namespace je {

static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");

Rational::Rational(long long v) : v_(static_cast<long>(v)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(long long num, long long den)
    : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) fail(Errc::InvalidArgument, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        fail(Errc::ParseError, "not a rational: '" + s + "'");
    }
}

std::string Rational::to_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, long long e) {
    if (e < 0) {
        if (base.is_zero()) fail(Errc::InvalidArgument, "0 to a negative power");
        return pow(Rational(1) / base, -e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

PiRational::PiRational(Rational coeff, int pi_power)
    : coeff_(std::move(coeff)), pi_power_(coeff_.is_zero() ? 0 : pi_power) {}

double PiRational::to_double() const {
    return coeff_.to_double() * std::pow(std::numbers::pi, pi_power_);
}

std::string PiRational::to_string() const {
    if (pi_power_ == 0) return coeff_.to_string();
    return coeff_.to_string() + "*pi^" + std::to_string(pi_power_);
}

PiRational& PiRational::operator*=(const PiRational& o) {
    coeff_ *= o.coeff_;
    pi_power_ = coeff_.is_zero() ? 0 : pi_power_ + o.pi_power_;
    return *this;
}

PiRational& PiRational::operator/=(const PiRational& o) {
    coeff_ /= o.coeff_;
    pi_power_ = coeff_.is_zero() ? 0 : pi_power_ - o.pi_power_;
    return *this;
}

int chi_value(Mod4Character chi, long long a) {
    long long r = ((a % 4) + 4) % 4;
    if (r % 2 == 0) return 0;
    if (chi == Mod4Character::Principal) return 1;
    return r == 1 ? 1 : -1;
}

Mod4Character character_for_sign(int D_sign) {
    return D_sign > 0 ? Mod4Character::Principal : Mod4Character::Minus4;
}

Rational bernoulli(int n) {
    if (n < 0) fail(Errc::InvalidArgument, "bernoulli index must be >= 0");
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        Rational acc(0);
        for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[j];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

Rational bernoulli_polynomial(int n, const Rational& x) {
    Rational acc(0);
    for (int j = 0; j <= n; ++j) acc += Rational(binomial(n, j)) * bernoulli(j) * pow(x, n - j);
    return acc;
}

Rational generalized_bernoulli(int n, Mod4Character chi) {
    if (n < 1) fail(Errc::InvalidArgument, "generalized Bernoulli index must be >= 1");
    const int f = 4;
    Rational acc(0);
    for (int a = 1; a <= f; ++a) {
        int c = chi_value(chi, a);
        if (c != 0) acc += Rational(c) * bernoulli_polynomial(n, Rational(a, f));
    }
    return pow(Rational(f), n - 1) * acc;
}

Rational l_value_negative(int n, Mod4Character chi) {
    return -generalized_bernoulli(n, chi) / Rational(n);
}

PiRational zeta_even(int n) {
    if (n < 2 || n % 2 != 0) fail(Errc::InvalidArgument, "zeta_even needs an even argument >= 2");
    int sign = ((n / 2 + 1) % 2 == 0) ? 1 : -1;
    Rational c = Rational(sign) * pow(Rational(2), n) * bernoulli(n) /
                 (Rational(2) * Rational(factorial(n)));
    return PiRational(c, n);
}

PiRational l_value_positive(int s, Mod4Character chi) {
    if (chi == Mod4Character::Principal) {
        // only odd a contribute: zeta(s) with the Euler factor at 2 removed
        return zeta_even(s) * PiRational(Rational(1) - pow(Rational(2), -s));
    }
    if (s < 1 || s % 2 == 0) fail(Errc::InvalidArgument, "L(s, chi_-4) is exact only for odd s >= 1");
    int sign = ((1 + (s - 1) / 2) % 2 == 0) ? 1 : -1;
    Rational c = Rational(sign) * pow(Rational(1, 2), s) * generalized_bernoulli(s, chi) /
                 Rational(factorial(s));
    return PiRational(c, s);
}

Rational divisor_sigma(long long s, std::uint64_t n) {
    if (n < 1) fail(Errc::InvalidArgument, "divisor_sigma needs n >= 1");
    Rational acc(0);
    for (auto d : divisors(n)) acc += pow(Rational(static_cast<long long>(d)), s);
    return acc;
}

int mobius(std::uint64_t n) {
    if (n < 1) fail(Errc::InvalidArgument, "mobius needs n >= 1");
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

static int jacobi_odd(long long a, long long n) {
    // n odd positive, 0 <= a < n
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(const BigInt& a, long long n) {
    if (n < 1) fail(Errc::InvalidArgument, "kronecker needs n >= 1");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        BigInt r8 = a % 8;
        if (r8 < 0) r8 += 8;
        long r = r8.get_si();
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    BigInt r = a % static_cast<long>(n);
    if (r < 0) r += static_cast<long>(n);
    return result * jacobi_odd(r.get_si(), n);
}

int kronecker(long long a, long long n) { return kronecker(BigInt(static_cast<long>(a)), n); }

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n < 1) fail(Errc::InvalidArgument, "factorize needs n >= 1");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int ord_p(long long x, long long p) {
    if (x == 0) fail(Errc::InvalidArgument, "ord_p(0) is infinite");
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

int ord_p(const BigInt& x, long long p) {
    if (x == 0) fail(Errc::InvalidArgument, "ord_p(0) is infinite");
    BigInt y = x;
    int e = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        y /= static_cast<unsigned long>(p);
        ++e;
    }
    return e;
}

BigInt factorial(int n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_perfect_square(const BigInt& n, BigInt* root) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

Rational geometric_sum(const Rational& r, int count) {
    Rational acc(0), term(1);
    for (int i = 0; i < count; ++i) {
        acc += term;
        term *= r;
    }
    return acc;
}

}  // namespace je
