#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace je {

using BigInt = mpz_class;

// Reduced fraction with positive denominator, backed by GMP.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}
    Rational(int v) : v_(v) {}
    Rational(long long v);
    Rational(const BigInt& v) : v_(v) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long long num, long long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational parse(const std::string& s);  // "p/q" or "p"

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    const mpq_class& mpq() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string to_string() const;  // always "p/q"

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, long long e);
Rational abs(const Rational& r);

// r * pi^e. The exponent may be negative: zeta quotients such as
// zeta(k-N)/zeta(k-N/2) carry pi^{-N/2}.
class PiRational {
public:
    PiRational() = default;
    PiRational(Rational coeff, int pi_power = 0);

    const Rational& coeff() const { return coeff_; }
    int pi_power() const { return pi_power_; }
    bool is_zero() const { return coeff_.is_zero(); }
    bool is_rational() const { return pi_power_ == 0; }
    double to_double() const;
    std::string to_string() const;  // "p/q" or "p/q*pi^e"

    PiRational& operator*=(const PiRational& o);
    PiRational& operator/=(const PiRational& o);
    friend PiRational operator*(PiRational a, const PiRational& b) { return a *= b; }
    friend PiRational operator/(PiRational a, const PiRational& b) { return a /= b; }
    friend bool operator==(const PiRational& a, const PiRational& b) {
        return a.coeff_ == b.coeff_ && a.pi_power_ == b.pi_power_;
    }

private:
    Rational coeff_{0};
    int pi_power_ = 0;
};

// Quadratic characters of conductor dividing 4: chi(a) = (4D/a) for D = 1 or -1.
enum class Mod4Character { Principal, Minus4 };
int chi_value(Mod4Character chi, long long a);
Mod4Character character_for_sign(int D_sign);  // D = (-1)^{N/2}

// Arithmetic functions.
Rational bernoulli(int n);
Rational bernoulli_polynomial(int n, const Rational& x);
Rational generalized_bernoulli(int n, Mod4Character chi);
Rational l_value_negative(int n, Mod4Character chi);  // L(1-n, chi) = -B_{n,chi}/n
PiRational zeta_even(int n);                          // zeta(n), n >= 2 even
PiRational l_value_positive(int s, Mod4Character chi);  // L(s,chi) with matching parity
Rational divisor_sigma(long long s, std::uint64_t n);
int mobius(std::uint64_t n);
int kronecker(long long a, long long n);
int kronecker(const BigInt& a, long long n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
int ord_p(long long x, long long p);  // x != 0
int ord_p(const BigInt& x, long long p);
BigInt factorial(int n);
BigInt binomial(int n, int k);
std::int64_t ipow(std::int64_t b, int e);
bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

// p^0 + r + ... + r^{count-1}; evaluated as a finite sum so r = 1 is harmless.
Rational geometric_sum(const Rational& r, int count);

}  // namespace je
