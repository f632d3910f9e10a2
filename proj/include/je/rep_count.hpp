#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "je/exact_arith.hpp"
#include "je/lattice.hpp"

namespace je {

// F(x) = 1/2 x^T A x + b.x + c with A even symmetric.
struct QuadPoly {
    IntMatrix A;
    IntVec b;
    long long c = 0;
    int rank() const { return static_cast<int>(A.size()); }
};

// Ceiling on residue evaluations per counting call. Defaults to 1e9, or the
// JE_BUDGET environment variable when set.
std::uint64_t counting_budget();
void set_counting_budget(std::uint64_t ceiling);

// Block decomposition of F over Z_(p): F(Py) = sum of 1- and 2-dimensional
// blocks plus a constant, with P invertible over Z_(p).
struct JordanBlock {
    int dim = 1;
    Rational a, b, c;  // a y1^2 + b y1 y2 + c y2^2 (b, c unused when dim == 1)
    Rational l1, l2;   // linear coefficients
};
struct JordanSplitting {
    std::vector<JordanBlock> blocks;
    Rational constant;
};
JordanSplitting jordan_split(const QuadPoly& f, long long p);

// #{x mod p^e : F(x) = 0 mod p^e} via the block decomposition.
BigInt count_zeros_prime_power(const QuadPoly& f, long long p, int e);
// Histogram of F(x) mod p^e, indexed by residue.
std::vector<BigInt> value_distribution(const QuadPoly& f, long long p, int e);
// Multiplicative recombination over the prime powers of a.
BigInt count_zeros(const QuadPoly& f, std::uint64_t a);
// Literal enumeration over (Z/a)^N; the oracle for the block engine.
BigInt count_zeros_brute(const QuadPoly& f, std::uint64_t a);

// Q(x) = m q(x) - (lambda, x) + n for lambda in the dual lattice.
struct ShiftedForm {
    Lattice lattice;
    long long m = 1;
    long long n = 0;
    DualVector lambda;
    QuadPoly poly() const;
    Rational delta() const;  // n m - (lambda,lambda)/2
};
ShiftedForm make_shifted_form(const Lattice& L, long long m, long long n, const DualVector& lambda);

BigInt count_Na(const ShiftedForm& form, std::uint64_t a);
// D_a(lambda, -Delta) = #{x mod a : sum (2x_i - lambda_i)^2 = -Delta mod 4a}
BigInt count_D_NA1(int N, const IntVec& lam, long long Delta, std::uint64_t a);
// A_N(t, p^l) = #{x mod p^l : sum x_i^2 = t mod p^l}
BigInt count_sum_squares(int N, long long target, long long p, int l);

struct AlphaOmega {
    BigInt alpha;
    BigInt omega;
};
AlphaOmega alpha_omega(int N, const IntVec& lam, long long Delta);
// alpha by literal enumeration of sigma in {0,1}^N (test oracle)
BigInt alpha_by_enumeration(int N, const IntVec& lam);

}  // namespace je
