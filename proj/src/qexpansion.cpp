#include "je/qexpansion.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "je/errors.hpp"

namespace je {

std::uint32_t QExpansion::add_lambda(IntVec w) {
    if (static_cast<int>(w.size()) != lattice_.rank()) fail(Errc::DimensionMismatch, "lambda length differs from rank");
    lambdas_.push_back(std::move(w));
    return static_cast<std::uint32_t>(lambdas_.size() - 1);
}

std::uint32_t QExpansion::add_coefficient(Coefficient c) {
    coeffs_.push_back(std::move(c));
    return static_cast<std::uint32_t>(coeffs_.size() - 1);
}

Rational QExpansion::delta(const Entry& e) const {
    return Rational(e.n * m_) - lattice_.norm(lambda_vector(e.lambda)) / Rational(2);
}

const Coefficient* QExpansion::find(long long n, const IntVec& w) const {
    for (const auto& e : entries_)
        if (e.n == n && lambdas_[e.lambda] == w) return &coeffs_[e.coeff];
    return nullptr;
}

bool QExpansion::all_exact() const {
    for (const auto& e : entries_)
        if (!coeffs_[e.coeff].is_exact()) return false;
    return true;
}

namespace {

// Neumaier summation on real and imaginary parts separately
struct ComplexSum {
    double re = 0, im = 0, cre = 0, cim = 0;
    static void add(double& s, double& c, double x) {
        double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    void operator+=(std::complex<double> x) {
        add(re, cre, x.real());
        add(im, cim, x.imag());
    }
    std::complex<double> value() const { return {re + cre, im + cim}; }
};

}  // namespace

std::complex<double> QExpansion::evaluate(std::complex<double> tau, const std::vector<std::complex<double>>& z) const {
    if (static_cast<int>(z.size()) != lattice_.rank()) fail(Errc::DimensionMismatch, "z length differs from rank");
    const std::complex<double> two_pi_i(0, 2 * std::numbers::pi);
    std::vector<std::complex<double>> zeta(lambdas_.size());
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
        std::complex<double> lz = 0;
        for (std::size_t j = 0; j < z.size(); ++j) lz += static_cast<double>(lambdas_[i][j]) * z[j];
        zeta[i] = std::exp(two_pi_i * lz);
    }
    std::vector<std::complex<double>> qn(static_cast<std::size_t>(n_max_ + 1));
    for (long long n = 0; n <= n_max_; ++n) qn[n] = std::exp(two_pi_i * static_cast<double>(n) * tau);
    ComplexSum s;
    for (const auto& e : entries_) {
        const double c = coeffs_[e.coeff].value;
        if (c != 0) s += c * qn[e.n] * zeta[e.lambda];
    }
    return s.value();
}

std::string QExpansion::to_json() const {
    using nlohmann::json;
    json out;
    out["lattice"] = lattice_.name();
    out["k"] = k_;
    out["m"] = m_;
    out["n_max"] = n_max_;
    json entries = json::array();
    std::vector<json> lam_cache(lambdas_.size());
    for (const auto& e : entries_) {
        if (lam_cache[e.lambda].is_null()) {
            json coords = json::array();
            for (const auto& c : lambda_vector(e.lambda).coords()) coords.push_back(c.to_string());
            lam_cache[e.lambda] = std::move(coords);
        }
        const Coefficient& c = coeffs_[e.coeff];
        json coeff;
        if (c.is_exact()) {
            coeff = {{"kind", "rational"}, {"value", c.exact.to_string()}};
        } else {
            coeff = {{"kind", "float"}, {"value", c.value}, {"error_bound", c.error_bound}};
        }
        entries.push_back({{"n", e.n}, {"lambda", lam_cache[e.lambda]}, {"delta", delta(e).to_string()}, {"coeff", coeff}});
    }
    out["entries"] = std::move(entries);
    return out.dump(1);
}

QExpansion theta_coefficients(const Lattice& L, int m, long long n_max) {
    if (m < 1) fail(Errc::InvalidArgument, "m must be >= 1");
    if (n_max < 0) fail(Errc::InvalidArgument, "n_max must be >= 0");
    QExpansion out(L, 0, m, n_max);
    const std::uint32_t one = out.add_coefficient(Coefficient::rational(1));
    const RatVec origin(L.rank(), Rational(0));
    RatMatrix G(L.rank(), RatVec(L.rank()));
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) G[i][j] = Rational(L.gram()[i][j]);
    // m q(x) <= n_max  <=>  x^T S x <= 2 n_max / m
    for (auto& x : enumerate_ellipsoid(G, origin, Rational(2 * n_max, m))) {
        const long long n = m * quadratic_value(L, x);
        IntVec w = L.gram_times(x);
        for (auto& v : w) v *= m;
        out.add_entry(n, out.add_lambda(std::move(w)), one);
    }
    return out;
}

}  // namespace je
