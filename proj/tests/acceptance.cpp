// One line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "je/eisenstein.hpp"
#include "je/errors.hpp"
#include "je/local_density.hpp"
#include "je/validation.hpp"

using namespace je;

namespace {

// pinned tolerances and runtime limits (seconds)
constexpr double kUnimodularRel = 1e-6;
constexpr double kNa1Rel = 1e-4;
constexpr double kGeneralRel = 1e-3;
constexpr double kLimit1 = 60, kLimit2 = 600, kLimit6 = 300;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

Outcome from_report(const VerificationReport& rep, const std::vector<std::string>& names, const std::string& prefix = "") {
    Outcome o;
    std::size_t n = 0, bad = 0;
    std::string first;
    for (const auto& c : rep.checks()) {
        bool wanted = false;
        for (const auto& nm : names) wanted = wanted || c.name == nm;
        if (!wanted || c.grid_point.rfind(prefix, 0) != 0) continue;
        ++n;
        if (!c.pass) {
            ++bad;
            if (first.empty()) first = c.name + " " + c.grid_point + ": " + c.lhs + " vs " + c.rhs;
        }
    }
    o.pass = n > 0 && bad == 0;
    o.detail = std::to_string(n - bad) + "/" + std::to_string(n) + " exact matches";
    if (!first.empty()) o.detail += "; first failure " + first;
    return o;
}

Outcome criterion1() {
    Outcome o;
    const Lattice e8 = preset_lattice("E8");
    double worst = 0, worst_literal = 0;
    for (int k : {12, 14}) {
        for (long long D = 1; D <= 4; ++D) {
            const int s = k - 4;
            const Rational closed = -Rational(2 * k - 8) / bernoulli(s) * divisor_sigma(s - 1, static_cast<std::uint64_t>(D));
            const Rational c = coefficient_unimodular(k, 8, D);
            if (c != closed) o.pass = false;
            const auto form = make_shifted_form(e8, 1, D, DualVector::from_integer(IntVec(8, 0)));
            const double pref = prefactor_m1_float(k, e8, static_cast<double>(D));
            const auto series = dirichlet_series(form, k, SeriesMode::Truncated, 50);
            const double err = rel(pref * series.value, c.to_double());
            worst = std::max(worst, err);
            // literal partial sum over a <= 50, reported only
            double lit = 0;
            for (std::uint64_t a = 1; a <= 50; ++a) lit += Rational(count_Na(form, a)).to_double() * std::pow(a, 1.0 - k);
            worst_literal = std::max(worst_literal, rel(pref * lit, c.to_double()));
        }
    }
    if (worst >= kUnimodularRel) o.pass = false;
    o.detail = "closed form exact on 8 points; prime-power series a<=50 worst rel " + sci(worst) +
               " (tol " + sci(kUnimodularRel) + "); literal sum a<=50 worst rel " + sci(worst_literal);
    return o;
}

Outcome criterion6() {
    Outcome o;
    double worst = 0;
    int count = 0;
    for (int N : {4, 6}) {
        const int k = N + 6;
        for (long long n = 1; n <= 2; ++n) {
            // every h in Z^N with sum h_i^2 < 4n
            IntVec h(N, -2);
            while (true) {
                long long s = 0;
                for (auto v : h) s += v * v;
                if (s < 4 * n) {
                    const double e = coefficient_na1(k, N, n, h).to_double();
                    const double t = coefficient_na1_truncated(k, N, n, h, 50).value;
                    worst = std::max(worst, rel(t, e));
                    ++count;
                }
                int i = 0;
                while (i < N && h[i] == 2) h[i++] = -2;
                if (i == N) break;
                ++h[i];
            }
        }
    }
    o.pass = worst < kNa1Rel;
    o.detail = std::to_string(count) + " (n, lambda) pairs, worst rel " + sci(worst) + " (tol " + sci(kNa1Rel) + ")";
    return o;
}

Outcome criterion8() {
    Outcome o;
    const Lattice e8 = preset_lattice("E8");
    const DualVector zero = DualVector::from_integer(IntVec(8, 0));
    double worst = 0;
    bool monotone = true;
    for (int k : {12, 14}) {
        for (long long D = 1; D <= 4; ++D) {
            const double target = coefficient_unimodular(k, 8, D).to_double();
            double prev = INFINITY;
            for (int c_max : {10, 20, 40}) {
                const double err = rel(coefficient_general_m(k, 1, e8, D, zero, c_max).value, target);
                if (!(err < prev)) monotone = false;
                prev = err;
            }
            worst = std::max(worst, prev);
        }
    }
    o.pass = monotone && worst < kGeneralRel;
    o.detail = "c_max=40 worst rel " + sci(worst) + " (tol " + sci(kGeneralRel) + "); errors strictly decreasing over {10,20,40}: " +
               (monotone ? "yes" : "no");
    return o;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    bool all = true;
    auto line = [&](int id, const std::string& what, const std::function<Outcome()>& run, double limit) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception ") + e.what();
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (limit > 0 && secs > limit) {
            o.pass = false;
            o.detail += "; runtime over " + std::to_string(static_cast<int>(limit)) + " s";
        }
        all = all && o.pass;
        std::printf("criterion %d: %s  %s  [%s; %.1f s]\n", id, o.pass ? "PASS" : "FAIL", what.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    VerificationReport oracle;
    line(1, "unimodular closed form and N_a series", criterion1, kLimit1);
    line(2, "closed-form densities equal counting", [&] {
        oracle = run_formula_vs_oracle_suite(GridConfig::default_grid());
        return from_report(oracle, {"good_prime_density", "unimodular_lemma", "na1_odd_density", "na1_two_density"});
    }, kLimit2);
    line(3, "stabilization of p^{l(1-N)} N_{p^l}", [&] { return from_report(oracle, {"stabilization"}); }, 0);
    line(4, "alpha = omega and D_{p^l} = A_N", [&] {
        return from_report(oracle, {"corollary_alpha_omega", "alpha_enumeration", "corollary_D_equals_A"});
    }, 0);
    line(5, "genus representation on E8", [&] { return from_report(oracle, {"genus_representation"}, "L=E8"); }, 0);
    line(6, "NA1 closed form against the truncated D-series", criterion6, kLimit6);
    line(7, "slash invariance and theta transformation", [&] {
        auto rep = run_modularity_suite(false);
        Outcome o = from_report(rep, {"slash_T", "slash_translation", "slash_S", "theta_transformation"});
        double worst = 0;
        for (const auto& c : rep.checks())
            if (!c.informational) worst = std::max(worst, c.rel_error / c.tolerance);
        o.detail = std::to_string(rep.passed()) + " checks pass, worst error/tolerance " + sci(worst);
        return o;
    }, 0);
    line(8, "general-m sum reduces to m = 1", criterion8, 0);
    return all ? 0 : 1;
}
