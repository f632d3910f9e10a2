#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "je/exact_arith.hpp"

namespace je {

using IntVec = std::vector<long long>;
using IntMatrix = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMatrix = std::vector<RatVec>;

// Element of the dual lattice S^{-1} Z^N in standard coordinates, stored as
// integer numerators over one positive denominator in lowest terms.
class DualVector {
public:
    DualVector() = default;
    DualVector(IntVec num, long long den);
    static DualVector from_integer(const IntVec& v) { return DualVector(v, 1); }
    static DualVector from_rationals(const RatVec& v);

    const IntVec& numerators() const { return num_; }
    long long denominator() const { return den_; }
    std::size_t size() const { return num_.size(); }
    Rational coord(std::size_t i) const { return Rational(num_[i], den_); }
    RatVec coords() const;
    bool is_integral() const { return den_ == 1; }
    DualVector scaled(long long s) const { return DualVector(mul(num_, s), den_); }

    friend bool operator==(const DualVector& a, const DualVector& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const DualVector& a, const DualVector& b);

private:
    static IntVec mul(IntVec v, long long s) {
        for (auto& x : v) x *= s;
        return v;
    }
    IntVec num_;
    long long den_ = 1;
};

class Lattice {
public:
    const std::string& name() const { return name_; }
    const IntMatrix& gram() const { return gram_; }
    int rank() const { return static_cast<int>(gram_.size()); }
    long long det() const { return det_; }
    const RatMatrix& dual_gram() const { return dual_gram_; }
    long long level() const { return level_; }
    // adj(S) = det * S^{-1}, an integer matrix
    const IntMatrix& adjugate() const { return adj_; }

    long long bilinear(const IntVec& x, const IntVec& y) const;
    IntVec gram_times(const IntVec& x) const;  // S x
    // (lambda, mu)_S for dual vectors
    Rational pair(const DualVector& a, const DualVector& b) const;
    Rational norm(const DualVector& a) const { return pair(a, a); }
    IntVec gram_times(const DualVector& a) const;  // S lambda, integral for dual vectors
    DualVector dual_from_integer(const IntVec& w) const;  // S^{-1} w
    bool is_dual(const DualVector& a) const;
    bool is_unimodular() const { return det_ == 1; }
    bool is_na1() const;  // Gram 2 I_N

private:
    friend Lattice validate_lattice(const IntMatrix& gram, std::string name);
    std::string name_;
    IntMatrix gram_;
    long long det_ = 0;
    RatMatrix dual_gram_;
    IntMatrix adj_;
    long long level_ = 0;
};

Lattice validate_lattice(const IntMatrix& gram, std::string name = "custom");
long long quadratic_value(const Lattice& L, const IntVec& x);

// All x in Z^N with (x+s)^T G (x+s) <= bound, for G positive definite and
// rational; lexicographically sorted.
std::vector<IntVec> enumerate_ellipsoid(const RatMatrix& G, const RatVec& shift, const Rational& bound);
std::map<long long, std::vector<IntVec>> enumerate_by_norm(const Lattice& L, long long max_q);
// Representatives of L^dual / L, reduced into [0,1)^N coordinates.
std::vector<DualVector> discriminant_representatives(const Lattice& L);

Lattice scaled_lattice(const Lattice& L, long long m);
Lattice preset_lattice(const std::string& name);  // E8, D4, <N>A1, NA1:<N>
// Examples; any <N>A1 or NA1:<N> with N >= 1 is accepted.
std::vector<std::string> preset_names();
Lattice load_lattice_file(const std::string& path);
Lattice lattice_from_json_text(const std::string& text);

}  // namespace je
