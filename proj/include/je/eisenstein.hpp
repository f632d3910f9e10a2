#pragma once

#include <optional>

#include "je/exact_arith.hpp"
#include "je/lattice.hpp"
#include "je/qexpansion.hpp"
#include "je/rep_count.hpp"

namespace je {

// (-1)^{3k/2-N-1} pi^{k-N/2} Delta^{k-N/2-1} / (2^{k-2} Gamma(k-N/2)), zero for Delta <= 0.
// Delta is in the NA1 normalization 4n - sum h_i^2.
PiRational gamma_factor(int k, int N, const Rational& Delta);

// Delta^{k-N/2-1} i^{k-N} (-2 pi)^{k-N/2} / (sqrt(det) zeta(k-N) (k-N/2-1)!), the
// factor in front of sum_a N_a(Q)/a^{k-1} for m = 1. Needs det a square.
PiRational prefactor_m1(int k, const Lattice& L, const Rational& Delta);
double prefactor_m1_float(int k, const Lattice& L, double Delta);

enum class SeriesMode { ExactUnimodular, ExactNa1, Truncated };

struct SeriesValue {
    std::optional<PiRational> exact;
    double value = 0;
    double error_bound = 0;  // truncated mode: tail estimate
};

// sum_{a >= 1} N_a(Q)/a^{k-1}. Truncated mode multiplies the local sums
// sum_{p^v <= a_max} N_{p^v}/p^{v(k-1)} over primes p <= a_max.
SeriesValue dirichlet_series(const ShiftedForm& form, int k, SeriesMode mode, int a_max = 50);

// Local factor R_p(Delta) as printed; chi = 1 gives the unimodular version.
Rational r_p(int N, int k, long long p, int ord, int chi);

// -(2k - N)/B_{k-N/2} sigma_{k-N/2-1}(Delta)
Rational coefficient_unimodular(int k, int N, long long Delta);

// alpha_2 = sum_v D_{2^v}(h, -Delta)/2^{v(k-1)}, summed exactly (geometric tail).
Rational na1_alpha2(int k, int N, const IntVec& h, long long Delta);

// e_{k,1}(n, h) for NA1 in the product form before the final simplification:
// gamma alpha_2 (1-2^{N-k}) (sum_{a|Delta} chi(a) a^{1-N/2}) / L(k-N/2, chi)
//   * prod_{p | Delta odd} (1-chi p^{-N/2})(1-p^{N-k})/(1-chi p^{N/2-k}) R_p.
Rational coefficient_na1(int k, int N, long long n, const IntVec& h);
// The closed forms exactly as printed in the final NA1 statement.
Rational coefficient_na1_printed(int k, int N, long long n, const IntVec& h);
// gamma/zeta(k-N) * sum_{a <= a_max} D_a / a^{k-1}, literal truncation, float
Coefficient coefficient_na1_truncated(int k, int N, long long n, const IntVec& h, int a_max = 50);

// beta_{k,m}(n, lambda) from the theta-transformation route, summed over c <= c_max.
Coefficient coefficient_general_m(int k, int m, const Lattice& L, long long n, const DualVector& lam, int c_max = 40);
// exact rational partial sum m^{1-k} sum_{c <= c_max} c^{-k} K_c
Rational general_m_kloosterman_sum(int k, const ShiftedForm& form, int c_max);

enum class Pipeline { Auto, Unimodular, Na1, General };
Pipeline parse_pipeline(const std::string& s);
std::string pipeline_name(Pipeline p);
Pipeline resolve_pipeline(const Lattice& L, int m, Pipeline requested);

struct ExpansionOptions {
    Pipeline pipeline = Pipeline::Auto;
    int a_max = 50;
    int c_max = 40;
};
QExpansion q_expansion(const Lattice& L, int k, int m, long long n_max, const ExpansionOptions& opt = {});

void check_weight(int k, int N);  // k even and k > 2 + N, else WeightTooSmall/InvalidArgument

}  // namespace je
