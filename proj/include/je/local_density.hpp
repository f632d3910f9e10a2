#pragma once

#include <optional>
#include <string>

#include "je/exact_arith.hpp"
#include "je/lattice.hpp"

namespace je {

enum class DensityMethod { Counting, GoodPrime, UnimodularLemma, Na1Odd, Na1Two, Infinity };
std::string method_name(DensityMethod m);

// place == 0 stands for the infinite place. Finite densities have pi_power 0.
struct DensityReport {
    PiRational value;
    long long place = 0;
    DensityMethod method = DensityMethod::Counting;
    std::optional<int> stabilization_exponent;
};

// Densities are measure-theoretic:
//   delta_p(t, L) = p^{a(1-N)} #{x mod p^a : q(x) = t mod p^a},  q(x) = (x,x)/2,
// for a large enough. For E8, delta_2(1) = 15/16.

// Counts at a = 2 ord_p(2t) + 1 and a + 1 and requires both to agree.
DensityReport density_counting(const Lattice& L, long long p, long long t);
// p^{l(1-N)} #{x mod p^l : q(x) = t mod p^l} at a single level, no stabilization
Rational density_at_level(const Lattice& L, long long p, int l, long long t);

// Closed form for p not dividing 2 det, any rank parity.
Rational density_good_prime(const Lattice& L, long long p, long long t);

// (2 pi)^{N/2} Gamma(N/2)^{-1} t^{N/2-1} det^{-1/2}; needs N even and det a square.
PiRational density_infty(const Lattice& L, long long t);

// p^{l(1-N)} N_{p^l}(R, Delta) for an even unimodular Gram matrix of rank N.
Rational density_unimodular(int N, long long p, int l, long long Delta);

// p^{l(1-N)} A_N(-Delta, p^l) for p odd and N even.
Rational density_na1_odd(int N, long long p, int l, long long Delta);

// 2^{l(1-N)} D_{2^l}(lambda, -Delta) with Delta = 4n - sum lambda_i^2; only the
// parities of lambda matter.
Rational density_na1_two(int N, const IntVec& lam, int l, long long Delta);
// The level from which density_na1_two is constant in l.
int na1_two_stable_level(int N, const IntVec& lam, long long Delta);

// Picks the closed form when one applies, otherwise counting. For NA1 at p = 2
// the value depends on lambda; pass it to get the D-density with Delta = t.
DensityReport density(const Lattice& L, long long p, long long t, const std::optional<IntVec>& lam = {});

// r(Delta, genus(L)) by the Iwaniec reorganization of Siegel's formula.
struct GenusCount {
    std::optional<Rational> exact;  // set when det is a square
    double value = 0;
    double error_bound = 0;  // 0 when exact
};
GenusCount genus_representation(const Lattice& L, long long Delta);
// The product formula itself, also for unimodular L where
// genus_representation uses -(N/B_{N/2}) Delta^{N/2-1} sigma_{1-N/2}(Delta).
GenusCount genus_representation_siegel(const Lattice& L, long long Delta);

}  // namespace je
