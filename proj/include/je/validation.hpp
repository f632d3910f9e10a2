#pragma once

#include <complex>
#include <string>
#include <vector>

#include "je/lattice.hpp"
#include "je/qexpansion.hpp"

namespace je {

struct CheckRecord {
    std::string name;
    std::string grid_point;
    std::string lhs, rhs;
    bool exact = false;  // exact comparison; errors unused
    double abs_error = 0;
    double rel_error = 0;
    double tolerance = 0;
    bool pass = false;
    // Informational records document a finding and never fail the report.
    bool informational = false;
};

class VerificationReport {
public:
    void add(CheckRecord r) { checks_.push_back(std::move(r)); }
    void append(const VerificationReport& o) { checks_.insert(checks_.end(), o.checks_.begin(), o.checks_.end()); }
    const std::vector<CheckRecord>& checks() const { return checks_; }
    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }
    std::string to_json() const;
    std::string table() const;  // one line per check group

private:
    std::vector<CheckRecord> checks_;
};

using CVec = std::vector<std::complex<double>>;

// Theta_{S,a,b}(tau, z), summed over (lambda+a, lambda+a)/2 <= q_trunc.
std::complex<double> theta_series(const Lattice& L, const RatVec& a, const RatVec& b, std::complex<double> tau,
                                  const CVec& z, double q_trunc);
// Estimated size of the omitted terms of theta_series.
double theta_tail_estimate(const Lattice& L, std::complex<double> tau, const CVec& z, double q_trunc);

CheckRecord check_theta_transformation(const Lattice& L, const RatVec& a, std::complex<double> tau, const CVec& z,
                                       double q_trunc = 8, double tolerance = 1e-8);

struct JacobiGenerator {
    enum class Kind { T, S, Translation };
    Kind kind = Kind::T;
    IntVec x, y;  // translation [x, y], x and y in L
    static JacobiGenerator T() { return {Kind::T, {}, {}}; }
    static JacobiGenerator S() { return {Kind::S, {}, {}}; }
    static JacobiGenerator translation(IntVec x, IntVec y) { return {Kind::Translation, std::move(x), std::move(y)}; }
    std::string name() const;
};

// Compares (E|g)(tau, z) with E(tau, z) using the truncated expansion.
CheckRecord check_slash_invariance(const QExpansion& E, const JacobiGenerator& g, std::complex<double> tau,
                                   const CVec& z, double tolerance);

struct GridConfig {
    std::vector<long long> primes{2, 3, 5};
    int max_level = 2;
    long long max_abs_delta = 24;
    int corollary_max_rank = 12;
    bool extended = false;
    static GridConfig default_grid() { return {}; }
    static GridConfig extended_grid() { return {{2, 3, 5, 7}, 3, 40, 12, true}; }
};

// Closed-form densities and counts against residue counting, all exact.
VerificationReport run_formula_vs_oracle_suite(const GridConfig& grid);
// Transformation checks for E8 (k = 12) and the theta identity on E8 and 2A1,
// plus informational cross-pipeline comparisons.
VerificationReport run_modularity_suite(bool extended);

}  // namespace je
