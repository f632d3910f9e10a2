#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "je/exact_arith.hpp"
#include "je/lattice.hpp"

namespace je {

struct Coefficient {
    enum class Kind { Rational, Float };
    Kind kind = Kind::Rational;
    Rational exact;          // meaningful for Kind::Rational
    double value = 0;        // always set
    double error_bound = 0;  // Kind::Float only

    static Coefficient rational(const Rational& r) { return {Kind::Rational, r, r.to_double(), 0}; }
    static Coefficient floating(double v, double err) { return {Kind::Float, Rational(0), v, err}; }
    bool is_exact() const { return kind == Kind::Rational; }
};

// Finite piece of sum c(n, lambda) q^n zeta^lambda with lambda in the dual
// lattice and zeta^lambda = e(2 pi i (lambda, z)). Each lambda is stored as the
// integer vector w = S lambda, so (lambda, z) = w . z for z in coordinates.
class QExpansion {
public:
    struct Entry {
        long long n;
        std::uint32_t lambda;  // index into lambdas()
        std::uint32_t coeff;   // index into coefficients()
    };

    QExpansion(Lattice L, int k, int m, long long n_max) : lattice_(std::move(L)), k_(k), m_(m), n_max_(n_max) {}

    const Lattice& lattice() const { return lattice_; }
    int weight() const { return k_; }
    int index() const { return m_; }
    long long n_max() const { return n_max_; }

    std::uint32_t add_lambda(IntVec w);
    std::uint32_t add_coefficient(Coefficient c);
    void add_entry(long long n, std::uint32_t lambda, std::uint32_t coeff) { entries_.push_back({n, lambda, coeff}); }

    const std::vector<IntVec>& lambdas() const { return lambdas_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::vector<Coefficient>& coefficients() const { return coeffs_; }
    const Coefficient& coefficient(const Entry& e) const { return coeffs_[e.coeff]; }

    DualVector lambda_vector(std::uint32_t idx) const { return lattice_.dual_from_integer(lambdas_[idx]); }
    Rational delta(const Entry& e) const;  // n m - (lambda, lambda)/2
    // Coefficient at (n, lambda); lambda given as S lambda. Returns nullptr when absent.
    const Coefficient* find(long long n, const IntVec& w) const;
    bool all_exact() const;

    // sum of c(n, lambda) e(n tau + (lambda, z)), compensated summation
    std::complex<double> evaluate(std::complex<double> tau, const std::vector<std::complex<double>>& z) const;

    std::string to_json() const;  // see README for the schema

private:
    Lattice lattice_;
    int k_, m_;
    long long n_max_;
    std::vector<IntVec> lambdas_;
    std::vector<Entry> entries_;
    std::vector<Coefficient> coeffs_;
};

// Theta_{mS,0,0}: coefficient 1 at (m q(x), m x) for x in L, n <= n_max.
QExpansion theta_coefficients(const Lattice& L, int m, long long n_max);

}  // namespace je
