#include "je/rep_count.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "je/errors.hpp"

namespace je {

namespace {

using u128 = unsigned __int128;
using Histogram = std::vector<u128>;

std::uint64_t initial_budget() {
    if (const char* env = std::getenv("JE_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(Errc::InvalidArgument, std::string("JE_BUDGET is not an integer: ") + env);
        }
    }
    return 1'000'000'000ull;
}

std::atomic<std::uint64_t>& budget_slot() {
    static std::atomic<std::uint64_t> slot{initial_budget()};
    return slot;
}

void charge(long double work, const char* what) {
    if (work > static_cast<long double>(counting_budget()))
        fail(Errc::BudgetExceeded, std::string(what) + " needs about " +
                                       std::to_string(static_cast<double>(work)) +
                                       " residue evaluations, ceiling is " +
                                       std::to_string(counting_budget()));
}

BigInt to_big(u128 v) {
    BigInt hi = static_cast<unsigned long>(v >> 64);
    BigInt lo = static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFull);
    return (hi << 64) + lo;
}

int valuation(const Rational& r, long long p) { return ord_p(r.num(), p); }

long long residue(const Rational& r, long long M) {
    BigInt num = r.num() % static_cast<unsigned long>(M);
    if (num < 0) num += static_cast<unsigned long>(M);
    BigInt den = r.den() % static_cast<unsigned long>(M), inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), BigInt(static_cast<unsigned long>(M)).get_mpz_t()))
        fail(Errc::InvalidArgument, "denominator not invertible in the block reduction");
    BigInt v = (num * inv) % static_cast<unsigned long>(M);
    return v.get_si();
}

Histogram block_histogram(const JordanBlock& blk, long long M) {
    Histogram h(static_cast<std::size_t>(M), 0);
    const auto m = static_cast<std::uint64_t>(M);
    const std::uint64_t a = static_cast<std::uint64_t>(residue(blk.a, M));
    const std::uint64_t l1 = static_cast<std::uint64_t>(residue(blk.l1, M));
    if (blk.dim == 1) {
        for (std::uint64_t y = 0; y < m; ++y) ++h[(a * y % m * y + l1 * y) % m];
        return h;
    }
    const std::uint64_t b = static_cast<std::uint64_t>(residue(blk.b, M));
    const std::uint64_t c = static_cast<std::uint64_t>(residue(blk.c, M));
    const std::uint64_t l2 = static_cast<std::uint64_t>(residue(blk.l2, M));
    for (std::uint64_t y1 = 0; y1 < m; ++y1) {
        const std::uint64_t base = (a * y1 % m * y1 + l1 * y1) % m;
        const std::uint64_t slope = (b * y1 + l2) % m;
        for (std::uint64_t y2 = 0; y2 < m; ++y2) ++h[(base + (c * y2 % m + slope) % m * y2) % m];
    }
    return h;
}

Histogram convolve(const Histogram& x, const Histogram& y, long long M) {
    Histogram out(x.size(), 0);
    std::vector<std::size_t> nzy;
    for (std::size_t v = 0; v < y.size(); ++v)
        if (y[v]) nzy.push_back(v);
    for (std::size_t u = 0; u < x.size(); ++u) {
        if (!x[u]) continue;
        for (auto v : nzy) {
            std::size_t w = u + v;
            if (w >= static_cast<std::size_t>(M)) w -= static_cast<std::size_t>(M);
            out[w] += x[u] * y[v];
        }
    }
    return out;
}

struct BlockPlan {
    long long M;
    std::vector<JordanBlock> blocks;
    long long shift;  // constant term mod M
};

// full_histogram: the caller needs every residue, so each block after the
// first costs a full convolution; otherwise the last one is a dot product.
BlockPlan plan(const QuadPoly& f, long long p, int e, bool full_histogram) {
    long double Md = std::pow(static_cast<long double>(p), e);
    if (Md > 2147483647.0L) fail(Errc::BudgetExceeded, "modulus p^e exceeds the engine range");
    long long M = static_cast<long long>(std::llround(Md));
    if (static_cast<long double>(f.rank()) * std::log2(Md) > 126.0L)
        fail(Errc::BudgetExceeded, "count would overflow 128-bit accumulators");
    JordanSplitting js = jordan_split(f, p);
    long double work = 0;
    for (const auto& b : js.blocks) work += std::pow(Md, b.dim);
    long double convolutions = static_cast<long double>(js.blocks.size()) - (full_histogram ? 1 : 2);
    if (convolutions > 0) work += convolutions * Md * Md;
    charge(work, "block counting");
    return BlockPlan{M, std::move(js.blocks), residue(js.constant, M)};
}

}  // namespace

std::uint64_t counting_budget() { return budget_slot().load(); }
void set_counting_budget(std::uint64_t ceiling) { budget_slot().store(ceiling); }

JordanSplitting jordan_split(const QuadPoly& f, long long p) {
    const int n = f.rank();
    RatMatrix A(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = f.A[i][j];
    RatMatrix P(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) P[i][i] = 1;

    // e_r <- e_r - g e_s, applied to Gram and basis
    auto col_op = [&](int r, int s, const Rational& g) {
        if (g.is_zero()) return;
        for (int k = 0; k < n; ++k) A[k][r] -= g * A[k][s];
        for (int k = 0; k < n; ++k) A[r][k] -= g * A[s][k];
        for (int k = 0; k < n; ++k) P[k][r] -= g * P[k][s];
    };

    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    struct Pending {
        int i, j;
    };
    std::vector<Pending> order;

    while (!active.empty()) {
        int best_v = INT32_MAX, bi = -1, bj = -1;
        for (int i : active)
            for (int j : active) {
                if (A[i][j].is_zero()) continue;
                int v = valuation(A[i][j], p);
                bool diag = (i == j);
                bool better = v < best_v || (v == best_v && diag && bi != bj);
                if (better) {
                    best_v = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) {
            for (int i : active) order.push_back({i, -1});
            break;
        }
        if (bi != bj && p != 2) {
            // e_bi += e_bj makes the diagonal attain the minimal valuation
            col_op(bi, bj, Rational(-1));
            bj = bi;
        }
        if (bi == bj) {
            const int i = bi;
            for (int r : active)
                if (r != i) col_op(r, i, A[r][i] / A[i][i]);
            order.push_back({i, -1});
            std::erase(active, i);
        } else {
            const int i = bi, j = bj;
            Rational det = A[i][i] * A[j][j] - A[i][j] * A[i][j];
            for (int r : active) {
                if (r == i || r == j) continue;
                Rational ci = (A[j][j] * A[i][r] - A[i][j] * A[j][r]) / det;
                Rational cj = (A[i][i] * A[j][r] - A[i][j] * A[i][r]) / det;
                col_op(r, i, ci);
                col_op(r, j, cj);
            }
            order.push_back({i, j});
            std::erase(active, i);
            std::erase(active, j);
        }
    }

    RatVec lin(n, Rational(0));
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k)
            if (f.b[k] != 0) lin[c] += P[k][c] * Rational(f.b[k]);

    JordanSplitting out;
    out.constant = Rational(f.c);
    for (const auto& o : order) {
        JordanBlock b;
        if (o.j < 0) {
            b.dim = 1;
            b.a = A[o.i][o.i] / Rational(2);
            b.l1 = lin[o.i];
        } else {
            b.dim = 2;
            b.a = A[o.i][o.i] / Rational(2);
            b.b = A[o.i][o.j];
            b.c = A[o.j][o.j] / Rational(2);
            b.l1 = lin[o.i];
            b.l2 = lin[o.j];
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

std::vector<BigInt> value_distribution(const QuadPoly& f, long long p, int e) {
    BlockPlan bp = plan(f, p, e, true);
    Histogram acc(static_cast<std::size_t>(bp.M), 0);
    acc[static_cast<std::size_t>(bp.shift)] = 1;
    for (const auto& blk : bp.blocks) acc = convolve(acc, block_histogram(blk, bp.M), bp.M);
    std::vector<BigInt> out;
    out.reserve(acc.size());
    for (auto v : acc) out.push_back(to_big(v));
    return out;
}

BigInt count_zeros_prime_power(const QuadPoly& f, long long p, int e) {
    if (e == 0) return 1;
    BlockPlan bp = plan(f, p, e, false);
    const auto M = static_cast<std::size_t>(bp.M);
    Histogram acc(M, 0);
    acc[static_cast<std::size_t>(bp.shift)] = 1;
    if (bp.blocks.empty()) return to_big(acc[0]);
    for (std::size_t i = 0; i + 1 < bp.blocks.size(); ++i)
        acc = convolve(acc, block_histogram(bp.blocks[i], bp.M), bp.M);
    Histogram last = block_histogram(bp.blocks.back(), bp.M);
    u128 total = 0;
    for (std::size_t u = 0; u < M; ++u)
        if (acc[u]) total += acc[u] * last[(M - u) % M];
    return to_big(total);
}

BigInt count_zeros(const QuadPoly& f, std::uint64_t a) {
    if (a < 1) fail(Errc::InvalidArgument, "modulus must be >= 1");
    BigInt total = 1;
    for (auto [p, e] : factorize(a)) total *= count_zeros_prime_power(f, static_cast<long long>(p), e);
    return total;
}

BigInt count_zeros_brute(const QuadPoly& f, std::uint64_t a) {
    if (a < 1) fail(Errc::InvalidArgument, "modulus must be >= 1");
    const int n = f.rank();
    charge(std::pow(static_cast<long double>(a), n) * n, "brute-force counting");
    const auto M = static_cast<long long>(a);
    auto md = [M](long long v) { return ((v % M) + M) % M; };
    std::vector<long long> half_diag(n), b(n);
    for (int i = 0; i < n; ++i) {
        half_diag[i] = md(f.A[i][i] / 2);
        b[i] = md(f.b[i]);
    }
    std::uint64_t count = 0;
    std::vector<long long> x(n, 0);
    // lin[d][j] = sum_{i<d} A_ij x_i, for j >= d
    std::vector<std::vector<long long>> lin(n + 1, std::vector<long long>(n, 0));
    auto rec = [&](auto&& self, int d, long long value) -> void {
        if (d == n) {
            if (value == 0) ++count;
            return;
        }
        for (long long v = 0; v < M; ++v) {
            x[d] = v;
            long long term = (half_diag[d] * v % M * v + (b[d] + lin[d][d]) % M * v) % M;
            for (int j = d + 1; j < n; ++j) lin[d + 1][j] = (lin[d][j] + md(f.A[d][j]) * v) % M;
            self(self, d + 1, (value + term) % M);
        }
    };
    rec(rec, 0, md(f.c));
    return BigInt(static_cast<unsigned long>(count));
}

QuadPoly ShiftedForm::poly() const {
    QuadPoly f;
    f.A = lattice.gram();
    for (auto& row : f.A)
        for (auto& v : row) v *= m;
    IntVec w = lattice.gram_times(lambda);
    f.b.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f.b[i] = -w[i];
    f.c = n;
    return f;
}

Rational ShiftedForm::delta() const {
    return Rational(n) * Rational(m) - lattice.norm(lambda) / Rational(2);
}

ShiftedForm make_shifted_form(const Lattice& L, long long m, long long n, const DualVector& lambda) {
    if (m < 1) fail(Errc::InvalidArgument, "index m must be >= 1");
    if (!L.is_dual(lambda)) fail(Errc::InvalidArgument, "lambda is not in the dual lattice");
    return ShiftedForm{L, m, n, lambda};
}

BigInt count_Na(const ShiftedForm& form, std::uint64_t a) { return count_zeros(form.poly(), a); }

namespace {

QuadPoly sum_of_squares_poly(int N, const IntVec& lin, long long c) {
    QuadPoly f;
    f.A.assign(N, IntVec(N, 0));
    for (int i = 0; i < N; ++i) f.A[i][i] = 2;
    f.b = lin;
    f.c = c;
    return f;
}

}  // namespace

BigInt count_D_NA1(int N, const IntVec& lam, long long Delta, std::uint64_t a) {
    if (static_cast<int>(lam.size()) != N) fail(Errc::DimensionMismatch, "lambda length differs from N");
    long long s = 0;
    for (auto v : lam) s += v * v;
    // sum (2x - lam)^2 + Delta = 4 (sum x^2 - lam.x) + (s + Delta)
    if (((s + Delta) % 4 + 4) % 4 != 0) return 0;
    IntVec lin(N);
    for (int i = 0; i < N; ++i) lin[i] = -lam[i];
    return count_zeros(sum_of_squares_poly(N, lin, (s + Delta) / 4), a);
}

BigInt count_sum_squares(int N, long long target, long long p, int l) {
    if (l == 0) return 1;
    return count_zeros_prime_power(sum_of_squares_poly(N, IntVec(N, 0), -target), p, l);
}

AlphaOmega alpha_omega(int N, const IntVec& lam, long long Delta) {
    if (static_cast<int>(lam.size()) != N) fail(Errc::DimensionMismatch, "lambda length differs from N");
    int j = 0;
    for (auto v : lam)
        if (v % 2 == 0) ++j;
    auto classes = [](int n, int r) {
        BigInt acc = 0;
        for (int i = 0; 4 * i + r <= n; ++i) acc += binomial(n, 4 * i + r);
        return acc;
    };
    AlphaOmega out;
    out.alpha = 0;
    for (int r = 0; r <= std::min({3, j, N - j}); ++r) out.alpha += classes(j, r) * classes(N - j, r);
    long long target = ((-Delta) % 4 + 4) % 4;
    out.omega = 0;
    for (int i = 0; i <= N; ++i)
        if (i % 4 == target) out.omega += binomial(N, i);
    return out;
}

BigInt alpha_by_enumeration(int N, const IntVec& lam) {
    if (N > 24) fail(Errc::BudgetExceeded, "sigma enumeration limited to N <= 24");
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << N); ++mask) {
        int even_part = 0, odd_part = 0;
        for (int i = 0; i < N; ++i) {
            if (!((mask >> i) & 1)) continue;
            if (lam[i] % 2 == 0)
                ++even_part;
            else
                ++odd_part;
        }
        if ((odd_part - even_part) % 4 == 0) ++count;
    }
    return BigInt(static_cast<unsigned long>(count));
}

}  // namespace je
