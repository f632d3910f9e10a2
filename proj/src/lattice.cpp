#include "je/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "je/errors.hpp"

namespace je {

namespace {

using i128 = __int128;

long long checked(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        fail(Errc::InvalidArgument, "integer overflow in lattice arithmetic");
    return static_cast<long long>(v);
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

BigInt bareiss_det(const IntMatrix& m, std::size_t size) {
    if (size == 0) return 1;
    std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) a[i][j] = static_cast<long>(m[i][j]);
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < size && a[r][k] == 0) ++r;
            if (r == size) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i)
            for (std::size_t j = k + 1; j < size; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

RatMatrix invert(const RatMatrix& m) {
    std::size_t n = m.size();
    RatMatrix a = m, inv(n, RatVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c].is_zero()) ++piv;
        if (piv == n) fail(Errc::InvalidArgument, "singular matrix");
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        Rational f = Rational(1) / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rational g = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= g * a[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace

DualVector::DualVector(IntVec num, long long den) : num_(std::move(num)), den_(den) {
    if (den_ == 0) fail(Errc::InvalidArgument, "zero denominator in dual vector");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_) x = -x;
    }
    long long g = den_;
    for (auto x : num_) g = std::gcd(g, x);
    if (g > 1) {
        den_ /= g;
        for (auto& x : num_) x /= g;
    }
}

DualVector DualVector::from_rationals(const RatVec& v) {
    BigInt d = 1;
    for (const auto& r : v) d = lcm(d, r.den());
    IntVec num;
    num.reserve(v.size());
    for (const auto& r : v) {
        BigInt n = r.num() * (d / r.den());
        if (!n.fits_slong_p()) fail(Errc::InvalidArgument, "dual vector coordinate too large");
        num.push_back(n.get_si());
    }
    if (!d.fits_slong_p()) fail(Errc::InvalidArgument, "dual vector denominator too large");
    return DualVector(std::move(num), d.get_si());
}

RatVec DualVector::coords() const {
    RatVec out;
    out.reserve(num_.size());
    for (auto x : num_) out.emplace_back(x, den_);
    return out;
}

std::strong_ordering operator<=>(const DualVector& a, const DualVector& b) {
    std::size_t n = std::min(a.num_.size(), b.num_.size());
    for (std::size_t i = 0; i < n; ++i) {
        i128 l = static_cast<i128>(a.num_[i]) * b.den_;
        i128 r = static_cast<i128>(b.num_[i]) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
    }
    return a.num_.size() <=> b.num_.size();
}

long long Lattice::bilinear(const IntVec& x, const IntVec& y) const {
    if (x.size() != gram_.size() || y.size() != gram_.size())
        fail(Errc::DimensionMismatch, "vector length does not match rank");
    i128 acc = 0;
    for (std::size_t i = 0; i < gram_.size(); ++i) {
        if (x[i] == 0) continue;
        i128 row = 0;
        for (std::size_t j = 0; j < gram_.size(); ++j) row += static_cast<i128>(gram_[i][j]) * y[j];
        acc += row * x[i];
    }
    return checked(acc);
}

IntVec Lattice::gram_times(const IntVec& x) const {
    if (x.size() != gram_.size()) fail(Errc::DimensionMismatch, "vector length does not match rank");
    IntVec out(gram_.size(), 0);
    for (std::size_t i = 0; i < gram_.size(); ++i) {
        i128 acc = 0;
        for (std::size_t j = 0; j < gram_.size(); ++j) acc += static_cast<i128>(gram_[i][j]) * x[j];
        out[i] = checked(acc);
    }
    return out;
}

IntVec Lattice::gram_times(const DualVector& a) const {
    IntVec s = gram_times(a.numerators());
    for (auto& v : s) {
        if (v % a.denominator() != 0) fail(Errc::InvalidArgument, "vector is not in the dual lattice");
        v /= a.denominator();
    }
    return s;
}

Rational Lattice::pair(const DualVector& a, const DualVector& b) const {
    i128 acc = 0;
    IntVec sb = gram_times(b.numerators());
    for (std::size_t i = 0; i < sb.size(); ++i) acc += static_cast<i128>(a.numerators()[i]) * sb[i];
    return Rational(checked(acc), 1) / Rational(checked(static_cast<i128>(a.denominator()) * b.denominator()), 1);
}

DualVector Lattice::dual_from_integer(const IntVec& w) const {
    if (w.size() != gram_.size()) fail(Errc::DimensionMismatch, "vector length does not match rank");
    IntVec num(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        i128 acc = 0;
        for (std::size_t j = 0; j < w.size(); ++j) acc += static_cast<i128>(adj_[i][j]) * w[j];
        num[i] = checked(acc);
    }
    return DualVector(std::move(num), det_);
}

bool Lattice::is_dual(const DualVector& a) const {
    if (a.size() != gram_.size()) return false;
    IntVec s = gram_times(a.numerators());
    return std::all_of(s.begin(), s.end(), [&](long long v) { return v % a.denominator() == 0; });
}

bool Lattice::is_na1() const {
    for (std::size_t i = 0; i < gram_.size(); ++i)
        for (std::size_t j = 0; j < gram_.size(); ++j)
            if (gram_[i][j] != (i == j ? 2 : 0)) return false;
    return true;
}

Lattice validate_lattice(const IntMatrix& gram, std::string name) {
    std::size_t n = gram.size();
    if (n == 0) fail(Errc::DimensionMismatch, "empty Gram matrix");
    for (const auto& row : gram)
        if (row.size() != n) fail(Errc::DimensionMismatch, "Gram matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i])
                fail(Errc::NotSymmetric, "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ");
    for (std::size_t i = 0; i < n; ++i)
        if (gram[i][i] % 2 != 0) fail(Errc::NotEven, "odd diagonal entry at " + std::to_string(i));
    for (std::size_t k = 1; k <= n; ++k)
        if (bareiss_det(gram, k) <= 0)
            fail(Errc::NotPositiveDefinite, "leading minor of size " + std::to_string(k) + " is not positive");

    Lattice L;
    L.name_ = std::move(name);
    L.gram_ = gram;
    BigInt det = bareiss_det(gram, n);
    if (!det.fits_slong_p()) fail(Errc::InvalidArgument, "determinant too large");
    L.det_ = det.get_si();

    RatMatrix s(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = gram[i][j];
    L.dual_gram_ = invert(s);
    L.adj_.assign(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational a = L.dual_gram_[i][j] * Rational(L.det_);
            L.adj_[i][j] = a.num().get_si();
        }

    long long level = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational need = (i == j) ? L.dual_gram_[i][j] / Rational(2) : L.dual_gram_[i][j];
            level = lcm_ll(level, need.den().get_si());
        }
    L.level_ = level;
    return L;
}

long long quadratic_value(const Lattice& L, const IntVec& x) { return L.bilinear(x, x) / 2; }

std::vector<IntVec> enumerate_ellipsoid(const RatMatrix& G, const RatVec& shift, const Rational& bound) {
    const std::size_t n = G.size();
    if (shift.size() != n) fail(Errc::DimensionMismatch, "shift length does not match Gram size");
    std::vector<IntVec> out;
    if (bound.sign() < 0) return out;

    // Exact LDL^T: Q(y) = sum_i d_i (y_i + sum_{j>i} mu_ij y_j)^2
    RatMatrix a = G;
    std::vector<Rational> d(n);
    RatMatrix mu(n, RatVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        if (d[i].sign() <= 0) fail(Errc::NotPositiveDefinite, "enumeration needs a positive definite form");
        for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = a[i][j] / d[i];
        for (std::size_t r = i + 1; r < n; ++r)
            for (std::size_t c = i + 1; c < n; ++c) a[r][c] -= mu[i][r] * d[i] * mu[i][c];
    }

    // Exact membership test on scaled integers.
    BigInt gden = 1, sden = 1;
    for (const auto& row : G)
        for (const auto& v : row) gden = lcm(gden, v.den());
    for (const auto& v : shift) sden = lcm(sden, v.den());
    std::vector<std::vector<long long>> gnum(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gnum[i][j] = (G[i][j] * Rational(gden)).num().get_si();
    IntVec snum(n);
    for (std::size_t i = 0; i < n; ++i) snum[i] = (shift[i] * Rational(sden)).num().get_si();
    Rational scaled_bound = bound * Rational(gden) * Rational(sden) * Rational(sden);
    BigInt limit_big = scaled_bound.num() / scaled_bound.den();  // floor; lhs is an integer
    const long long sd = sden.get_si();
    auto inside = [&](const IntVec& x) {
        std::vector<i128> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<i128>(x[i]) * sd + snum[i];
        i128 acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            i128 row = 0;
            for (std::size_t j = 0; j < n; ++j) row += gnum[i][j] * y[j];
            acc += row * y[i];
        }
        BigInt lhs;
        // i128 -> BigInt through two halves
        bool neg = acc < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-acc) : static_cast<unsigned __int128>(acc);
        BigInt hi = static_cast<unsigned long>(u >> 64), lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull);
        lhs = (hi << 64) + lo;
        if (neg) lhs = -lhs;
        return lhs <= limit_big;
    };

    std::vector<long double> df(n), sf(n);
    std::vector<std::vector<long double>> muf(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        df[i] = static_cast<long double>(d[i].to_double());
        sf[i] = static_cast<long double>(shift[i].to_double());
        for (std::size_t j = i + 1; j < n; ++j) muf[i][j] = static_cast<long double>(mu[i][j].to_double());
    }
    const long double B = static_cast<long double>(bound.to_double()) * (1.0L + 1e-9L) + 1e-9L;

    IntVec x(n, 0);
    std::vector<long double> remaining(n + 1, 0);
    remaining[n] = B;
    // depth-first from the last coordinate
    auto recurse = [&](auto&& self, std::ptrdiff_t i) -> void {
        if (i < 0) {
            if (inside(x)) out.push_back(x);
            return;
        }
        std::size_t ui = static_cast<std::size_t>(i);
        long double c = sf[ui];
        for (std::size_t j = ui + 1; j < n; ++j) c += muf[ui][j] * (static_cast<long double>(x[j]) + sf[j]);
        long double rem = remaining[ui + 1];
        if (rem < 0) rem = 0;
        long double r = std::sqrt(rem / df[ui]) + 1e-9L;
        long long lo = static_cast<long long>(std::ceil(-c - r));
        long long hi = static_cast<long long>(std::floor(-c + r));
        for (long long v = lo; v <= hi; ++v) {
            long double t = static_cast<long double>(v) + c;
            long double used = df[ui] * t * t;
            x[ui] = v;
            remaining[ui] = remaining[ui + 1] - used;
            if (remaining[ui] < -1e-9L * (1 + B)) continue;
            self(self, i - 1);
        }
        x[ui] = 0;
    };
    recurse(recurse, static_cast<std::ptrdiff_t>(n) - 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<long long, std::vector<IntVec>> enumerate_by_norm(const Lattice& L, long long max_q) {
    std::map<long long, std::vector<IntVec>> out;
    if (max_q < 0) return out;
    RatMatrix G(L.rank(), RatVec(L.rank()));
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) G[i][j] = L.gram()[i][j];
    for (auto& x : enumerate_ellipsoid(G, RatVec(L.rank(), Rational(0)), Rational(2 * max_q)))
        out[quadratic_value(L, x)].push_back(std::move(x));
    return out;
}

std::vector<DualVector> discriminant_representatives(const Lattice& L) {
    const int n = L.rank();
    const long long D = L.det();
    // dual vectors adj(S) w / det reduced mod Z^N; represent by numerators mod det
    auto reduce = [&](IntVec v) {
        for (auto& x : v) x = ((x % D) + D) % D;
        return v;
    };
    std::vector<IntVec> gens;
    for (int j = 0; j < n; ++j) {
        IntVec col(n);
        for (int i = 0; i < n; ++i) col[i] = L.adjugate()[i][j];
        gens.push_back(reduce(col));
    }
    std::set<IntVec> seen{IntVec(n, 0)};
    std::deque<IntVec> queue{IntVec(n, 0)};
    while (!queue.empty()) {
        IntVec cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            IntVec nxt(n);
            for (int i = 0; i < n; ++i) nxt[i] = cur[i] + g[i];
            nxt = reduce(nxt);
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    std::vector<DualVector> out;
    for (const auto& v : seen) out.emplace_back(v, D);
    std::sort(out.begin(), out.end());
    return out;
}

Lattice scaled_lattice(const Lattice& L, long long m) {
    IntMatrix g = L.gram();
    for (auto& row : g)
        for (auto& v : row) v *= m;
    return validate_lattice(g, L.name() + "(" + std::to_string(m) + ")");
}

namespace {

IntMatrix e8_gram() {
    IntMatrix g(8, IntVec(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    auto link = [&](int a, int b) { g[a][b] = g[b][a] = -1; };
    for (int i = 0; i + 1 < 7; ++i) link(i, i + 1);
    link(2, 7);
    return g;
}

IntMatrix d4_gram() {
    return {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
}

IntMatrix na1_gram(int n) {
    IntMatrix g(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    return g;
}

}  // namespace

std::vector<std::string> preset_names() { return {"E8", "D4", "2A1", "4A1", "6A1", "8A1"}; }

Lattice preset_lattice(const std::string& name) {
    if (name == "E8") return validate_lattice(e8_gram(), "E8");
    if (name == "D4") return validate_lattice(d4_gram(), "D4");
    std::string digits;
    if (name.rfind("NA1:", 0) == 0) {
        digits = name.substr(4);
    } else if (name.size() > 2 && name.substr(name.size() - 2) == "A1") {
        digits = name.substr(0, name.size() - 2);
    }
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        int n = std::stoi(digits);
        if (n >= 1 && n <= 64) return validate_lattice(na1_gram(n), std::to_string(n) + "A1");
    }
    fail(Errc::InvalidArgument, "unknown preset '" + name + "'");
}

Lattice lattice_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, e.what());
    }
    if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array())
        fail(Errc::ParseError, "lattice file needs an object with a \"gram\" array");
    IntMatrix g;
    for (const auto& row : j["gram"]) {
        if (!row.is_array()) fail(Errc::ParseError, "gram rows must be arrays");
        IntVec r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) fail(Errc::ParseError, "gram entries must be integers");
            r.push_back(v.get<long long>());
        }
        g.push_back(std::move(r));
    }
    std::string name = j.value("name", std::string("custom"));
    return validate_lattice(g, name);
}

Lattice load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return lattice_from_json_text(ss.str());
}

}  // namespace je
