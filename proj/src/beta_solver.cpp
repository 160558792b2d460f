#include "hyperdeg/beta_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/matrix.hpp"
#include "hyperdeg/parallel.hpp"

namespace hyperdeg {

const char* seed_name(SeedStrategy s) {
    switch (s) {
        case SeedStrategy::Auto: return "auto";
        case SeedStrategy::Regular: return "regular";
        case SeedStrategy::Product: return "product";
        case SeedStrategy::NearRegular: return "near-regular";
        case SeedStrategy::Custom: return "custom";
    }
    return "custom";
}

SeedStrategy parse_seed(const std::string& s) {
    if (s == "auto") return SeedStrategy::Auto;
    if (s == "regular") return SeedStrategy::Regular;
    if (s == "product") return SeedStrategy::Product;
    if (s == "near-regular") return SeedStrategy::NearRegular;
    fail(ErrorKind::ParseError, "unknown seed strategy '" + s + "'");
}

SeedStrategy select_seed(const DegreeSequence& seq) {
    const DerivedParams p = validate(seq);
    if (p.delta_max <= std::pow(p.d, 0.6)) return SeedStrategy::NearRegular;
    const bool positive = std::all_of(seq.degrees.begin(), seq.degrees.end(), [](auto x) { return x > 0; });
    if (positive && seq.r * p.d <= p.N) return SeedStrategy::Product;
    return SeedStrategy::Regular;
}

BetaVector seed(const DegreeSequence& seq, SeedStrategy strategy, const Limits& lim) {
    const DerivedParams p = validate(seq);
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "seed needs 0 < lambda < 1");
    if (strategy == SeedStrategy::Auto) strategy = select_seed(seq);
    const int n = seq.n, r = seq.r;
    const double base = std::log(p.lambda / (1 - p.lambda)) / r;
    std::vector<double> b(n, base);

    switch (strategy) {
        case SeedStrategy::Regular:
            break;
        case SeedStrategy::NearRegular: {
            const double lam = p.lambda, d = p.d, nr = n - r, R2 = p.R2;
            const double c1 = (n - 1) / ((1 - lam) * nr * d);
            const double c2 = (n - 2 * lam * n - 2.0 * r) * n / (2 * (1 - lam) * (1 - lam) * nr * nr * d * d);
            const double c3 = 1 / (3 * d * d * d);
            const double c0 = -r * R2 / (2 * nr * nr * d * d) + R2 / (2.0 * n * nr * d * d);
            for (int j = 0; j < n; ++j) {
                const double x = p.delta[j];
                b[j] += c1 * x - c2 * x * x + c3 * x * x * x + c0;
            }
            break;
        }
        case SeedStrategy::Product: {
            for (int j = 0; j < n; ++j)
                if (seq.degrees[j] == 0)
                    fail(ErrorKind::ZeroDegree, "product seed needs every degree positive (d_" +
                                                    std::to_string(j + 1) + " = 0)");
            std::vector<double> ld(n);
            for (int j = 0; j < n; ++j) ld[j] = std::log(static_cast<double>(seq.degrees[j]));
            const int k = r - 1;
            const std::uint64_t count = binom_u64(n, k);
            if (count > lim.subsets)
                fail(ErrorKind::BudgetExceeded, "product seed enumeration exceeds the subset budget");
            // log-sum-exp over (r-1)-subsets
            std::vector<double> terms;
            terms.reserve(count);
            std::vector<int> W(k);
            for (int i = 0; i < k; ++i) W[i] = i;
            do {
                double s = 0;
                for (int j : W) s += ld[j];
                terms.push_back(s);
            } while (k > 0 && colex_next(W, n));
            const double mx = *std::max_element(terms.begin(), terms.end());
            CompSum acc;
            for (double t : terms) acc.add(std::exp(t - mx));
            const double lnS = std::log((n - r + 1.0) / n) + mx + std::log(acc.value());
            for (int j = 0; j < n; ++j) b[j] = ld[j] - lnS / r;
            break;
        }
        case SeedStrategy::Custom:
        case SeedStrategy::Auto:
            fail(ErrorKind::Internal, "seed strategy has no formula");
    }
    for (double x : b)
        if (!std::isfinite(x)) fail(ErrorKind::DomainError, "seed produced a non-finite entry");
    return BetaVector(std::move(b));
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> psi_from(const FieldSummary& f, const DegreeSequence& seq) {
    std::vector<double> psi(seq.n);
    for (int j = 0; j < seq.n; ++j) psi[j] = f.vertex_sums[j] - static_cast<double>(seq.degrees[j]);
    return psi;
}

}  // namespace

std::vector<double> residual(const DegreeSequence& seq, const BetaVector& beta, const Limits& lim) {
    return psi_from(vertex_summary(beta, seq.n, seq.r, lim), seq);
}

SolveReport solve(const DegreeSequence& seq, const BetaVector& seed_beta, const SolveOptions& opt,
                  SeedStrategy seed_used, const Limits& lim) {
    const DerivedParams p = validate(seq);
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "the beta-system needs 0 < lambda < 1");
    if (seed_beta.size() != seq.n) fail(ErrorKind::DimensionMismatch, "seed length differs from n");
    if (!(opt.tol > 0)) fail(ErrorKind::DomainError, "tolerance must be positive");
    for (double x : seed_beta.beta)
        if (!std::isfinite(x)) fail(ErrorKind::DomainError, "seed has a non-finite entry");
    for (int j = 0; j < seq.n; ++j)
        if (seq.degrees[j] == 0 || static_cast<double>(seq.degrees[j]) == p.N)
            fail(ErrorKind::NonConvergence, "degree d_" + std::to_string(j + 1) +
                                                " sits on the boundary; the beta-system has no finite solution");

    const int n = seq.n, r = seq.r;
    const double target = opt.tol * std::max(p.d, 1.0);
    SolveReport rep;
    rep.seed_used = seed_used;
    BetaVector beta = seed_beta;
    FieldSummary f = field_summary(beta, n, r, lim);
    std::vector<double> psi = psi_from(f, seq);
    double res = inf_norm(psi);
    rep.residual_history.push_back(res);

    int iter = 0;
    while (res > target) {
        if (iter >= opt.max_iter)
            fail(ErrorKind::NonConvergence, "no convergence after " + std::to_string(opt.max_iter) +
                                                " Newton iterations (residual " + std::to_string(res) + ")");
        SymmetricMatrix J(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) J(j, k) = f.p(j, k);  // 2A
        std::vector<double> step;
        try {
            const Cholesky ch = cholesky(J);
            std::vector<double> rhs(n);
            for (int j = 0; j < n; ++j) rhs[j] = -psi[j];
            step = ch.solve(std::move(rhs));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotPositiveDefinite)
                fail(ErrorKind::SingularJacobian, std::string("Jacobian factorization failed: ") + e.what());
            throw;
        }

        double t = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
            BetaVector trial = beta;
            for (int j = 0; j < n; ++j) trial.beta[j] += t * step[j];
            const FieldSummary tf = vertex_summary(trial, n, r, lim);
            std::vector<double> tpsi = psi_from(tf, seq);
            const double tres = inf_norm(tpsi);
            if (tres < res) {
                beta = std::move(trial);
                res = tres;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            fail(ErrorKind::NonConvergence, "step halving exhausted without residual decrease (residual " +
                                                std::to_string(res) + ")");
        ++iter;
        if (beta.spread() * r > opt.spread_guard)
            fail(ErrorKind::NonConvergence, "iterate spread*r exceeded " + std::to_string(opt.spread_guard));
        f = field_summary(beta, n, r, lim);
        psi = psi_from(f, seq);
        res = inf_norm(psi);
        rep.residual_history.push_back(res);
    }
    beta.residual_inf = res;
    rep.beta_star = std::move(beta);
    rep.iterations = iter;
    rep.residual_inf = res;
    rep.spread = rep.beta_star.spread();
    rep.converged = true;
    return rep;
}

SolveReport solve(const DegreeSequence& seq, SeedStrategy strategy, const SolveOptions& opt, const Limits& lim) {
    if (strategy == SeedStrategy::Auto) strategy = select_seed(seq);
    return solve(seq, seed(seq, strategy, lim), opt, strategy, lim);
}

double uniqueness_diagnostic(const DegreeSequence& seq, const BetaVector& a, const BetaVector& b,
                             const Limits& lim) {
    const int n = seq.n, r = seq.r;
    if (a.size() != n || b.size() != n) fail(ErrorKind::DimensionMismatch, "beta length differs from n");
    for (double x : a.beta)
        if (!std::isfinite(x)) fail(ErrorKind::DomainError, "non-finite beta");
    for (double x : b.beta)
        if (!std::isfinite(x)) fail(ErrorKind::DomainError, "non-finite beta");
    const std::uint64_t C = binom_u64(n, r);
    if (C > lim.subsets) fail(ErrorKind::BudgetExceeded, "subset count exceeds the budget");
    constexpr int kGrid = 33;
    using Acc = std::array<CompSum, kGrid>;
    auto leaf = [&](std::uint64_t lo, std::uint64_t hi) {
        Acc acc{};
        if (lo == hi) return acc;
        std::vector<int> W;
        colex_unrank_into(lo, r, W);
        for (std::uint64_t i = lo; i < hi; ++i) {
            double sa = 0, sb = 0;
            for (int j : W) {
                sa += a.beta[j];
                sb += b.beta[j];
            }
            const double la = logistic(sa), lb = logistic(sb);
            const double diff = lb - la;
            if (diff != 0) {
                for (int g = 0; g < kGrid; ++g) {
                    const double y = g / 32.0;
                    const double xi = (1 - y) * la + y * lb;
                    acc[g].add(diff * diff / (xi * (1 - xi)));
                }
            }
            if (i + 1 < hi) colex_next(W, n);
        }
        return acc;
    };
    auto merge = [](Acc& l, const Acc& rr) {
        for (int g = 0; g < kGrid; ++g) l[g].merge(rr[g]);
    };
    const Acc acc = deterministic_reduce<Acc>(C, leaf, merge);
    double best = INFINITY;
    for (const auto& s : acc) best = std::min(best, s.value());
    return best;
}

JacobianCheck jacobian_inverse_check(const BetaVector& center, const BetaVector& beta, int n, int r,
                                     const Limits& lim) {
    JacobianCheck jc;
    const double d1 = center.spread() * r;
    double dist = 0;
    for (int j = 0; j < n; ++j) dist = std::max(dist, std::abs(beta.beta[j] - center.beta[j]));
    const double d2 = dist * r;
    const FieldSummary fc = vertex_summary(center, n, r, lim);
    if (std::exp(d2) * fc.avg_lambda > 7.0 / 8.0) {
        jc.applicable = false;
        return jc;
    }
    const BoundReport br = bound_suite(beta, n, r, d1 + 2 * d2, lim);
    jc.C = br.measured_C;
    const FieldSummary f = field_summary(beta, n, r, lim);
    SymmetricMatrix J(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) J(j, k) = f.p(j, k);
    jc.norm_inverse = norm_inf(inverse_pd(J));
    jc.bound = 256.0 * jc.C * std::exp(36 * d1 + 73 * d2) / (binom_f64(n - 1, r - 1) * fc.avg_lambda);
    jc.passed = jc.norm_inverse <= jc.bound * (1 + 1e-12);
    return jc;
}

}  // namespace hyperdeg
