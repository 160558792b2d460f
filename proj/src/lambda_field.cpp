#include "hyperdeg/lambda_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/parallel.hpp"

namespace hyperdeg {

double BetaVector::spread() const {
    if (beta.empty()) return 0;
    auto [lo, hi] = std::minmax_element(beta.begin(), beta.end());
    return *hi - *lo;
}

double BetaVector::sum() const {
    CompSum s;
    for (double b : beta) s.add(b);
    return s.value();
}

double logistic(double s) {
    if (s <= 0) {
        const double e = std::exp(s);
        return e / (1 + e);
    }
    return 1 / (1 + std::exp(-s));
}

double softplus(double s) {
    if (s > 0) return s + std::log1p(std::exp(-s));
    return std::log1p(std::exp(s));
}

double lambda_of_subset(const BetaVector& beta, const std::vector<int>& W) {
    double s = 0;
    for (int j : W) s += beta.beta[j];
    return logistic(s);
}

namespace {

struct Acc {
    std::vector<CompSum> vs;
    std::vector<CompSum> pw;
    CompSum lam, var, ent, sp;
};

std::uint64_t checked_subset_count(int n, int r, const Limits& lim) {
    const std::uint64_t C = binom_u64(n, r);
    if (C > lim.subsets)
        fail(ErrorKind::BudgetExceeded, "C(n,r) = " + std::to_string(C) + " subsets exceeds the budget " +
                                            std::to_string(lim.subsets));
    return C;
}

FieldSummary sweep(const BetaVector& beta, int n, int r, bool pairs, const Limits& lim) {
    if (beta.size() != n) fail(ErrorKind::DimensionMismatch, "beta length differs from n");
    if (r < 1 || r > n) fail(ErrorKind::RangeViolation, "edge size outside [1, n]");
    const std::uint64_t C = checked_subset_count(n, r, lim);
    const auto& b = beta.beta;
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    auto leaf = [&](std::uint64_t lo, std::uint64_t hi) {
        Acc a;
        a.vs.resize(n);
        if (pairs) a.pw.resize(nn);
        if (lo == hi) return a;
        std::vector<int> W;
        colex_unrank_into(lo, r, W);
        for (std::uint64_t i = lo; i < hi; ++i) {
            double s = 0;
            for (int j : W) s += b[j];
            const double l = logistic(s);
            const double v = l * logistic(-s);
            const double sp = softplus(s);
            a.lam.add(l);
            a.var.add(v);
            a.sp.add(sp);
            a.ent.add(sp - l * s);
            for (int x = 0; x < r; ++x) {
                const int j = W[x];
                a.vs[j].add(l);
                if (pairs) {
                    a.pw[static_cast<std::size_t>(j) * n + j].add(v);
                    for (int y = x + 1; y < r; ++y) a.pw[static_cast<std::size_t>(j) * n + W[y]].add(v);
                }
            }
            if (i + 1 < hi) colex_next(W, n);
        }
        return a;
    };
    auto merge = [&](Acc& l, const Acc& rgt) {
        for (int j = 0; j < n; ++j) l.vs[j].merge(rgt.vs[j]);
        for (std::size_t k = 0; k < l.pw.size(); ++k) l.pw[k].merge(rgt.pw[k]);
        l.lam.merge(rgt.lam);
        l.var.merge(rgt.var);
        l.ent.merge(rgt.ent);
        l.sp.merge(rgt.sp);
    };
    Acc a = deterministic_reduce<Acc>(C, leaf, merge);

    FieldSummary f;
    f.n = n;
    f.r = r;
    f.vertex_sums.resize(n);
    for (int j = 0; j < n; ++j) f.vertex_sums[j] = a.vs[j].value();
    if (pairs) {
        f.pair_weights.assign(nn, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const double v = a.pw[static_cast<std::size_t>(j) * n + k].value();
                f.pair_weights[static_cast<std::size_t>(j) * n + k] = v;
                f.pair_weights[static_cast<std::size_t>(k) * n + j] = v;
            }
    }
    f.lambda_total = a.lam.value();
    f.var_total = a.var.value();
    f.avg_lambda = f.lambda_total / static_cast<double>(C);
    f.big_lambda = f.var_total / static_cast<double>(C);
    f.entropy = a.ent.value();
    f.softplus_total = a.sp.value();
    return f;
}

}  // namespace

FieldSummary field_summary(const BetaVector& beta, int n, int r, const Limits& lim) {
    return sweep(beta, n, r, true, lim);
}

FieldSummary vertex_summary(const BetaVector& beta, int n, int r, const Limits& lim) {
    return sweep(beta, n, r, false, lim);
}

double entropy_sum(const BetaVector& beta, int n, int r, const Limits& lim) {
    return sweep(beta, n, r, false, lim).entropy;
}

Prefactor log_prefactor(const BetaVector& beta, const DegreeSequence& seq, const Limits& lim) {
    validate(seq);
    const FieldSummary f = sweep(beta, seq.n, seq.r, false, lim);
    const double base = -seq.n * std::log(2 * std::numbers::pi);
    CompSum bd;
    for (int j = 0; j < seq.n; ++j) bd.add(beta.beta[j] * static_cast<double>(seq.degrees[j]));
    Prefactor p;
    p.ln_p_direct = base - bd.value() + f.softplus_total;
    p.ln_p = base + f.entropy;
    p.discrepancy = std::abs(p.ln_p - p.ln_p_direct);
    return p;
}

BetaVector transform_beta(const BetaVector& beta, int r, Transform t) {
    const int n = beta.size();
    BetaVector out(beta.beta);
    const double shift = beta.sum() / (n - r);
    switch (t) {
        case Transform::Identity:
            break;
        case Transform::EdgeComplement:
            for (auto& x : out.beta) x = shift - x;
            break;
        case Transform::SetComplement:
            for (auto& x : out.beta) x = -x;
            break;
        case Transform::Both:
            for (auto& x : out.beta) x = x - shift;
            break;
    }
    return out;
}

std::vector<BoundCheck> lambda_ratio_checks(const BetaVector& beta, int n, int r, double delta_hat,
                                            std::uint64_t pair_cap, const Limits& lim) {
    std::vector<BoundCheck> out(4);
    out[0].name = "lambda_pair_ratio";
    out[1].name = "one_minus_lambda_pair_ratio";
    out[2].name = "lambda_over_average";
    out[3].name = "variance_over_big_lambda";
    const bool applicable = beta.spread() * r <= delta_hat * (1 + 1e-12) + 1e-15;
    if (!applicable) {
        for (auto& c : out) c.applicable = false;
        return out;
    }
    const FieldSummary f = vertex_summary(beta, n, r, lim);
    const double ln_avg = std::log(f.avg_lambda);
    const double ln_big = std::log(f.big_lambda);
    const std::uint64_t C = binom_u64(n, r);
    const double tol = 1e-12;
    for (auto& c : out) c.slack = INFINITY;

    auto sum_of = [&](const std::vector<int>& W) {
        double s = 0;
        for (int j : W) s += beta.beta[j];
        return s;
    };
    auto record = [&](BoundCheck& c, double measured, double bound) {
        const double slack = bound - std::abs(measured);
        c.slack = std::min(c.slack, slack);
        ++c.checked;
        if (slack < -tol * (1 + bound)) c.passed = false;
    };
    auto visit_pair = [&](const std::vector<int>& W, const std::vector<int>& V) {
        int common = 0;
        for (int a : W)
            for (int b : V) common += (a == b);
        const double bound = delta_hat * (1.0 - static_cast<double>(common) / r);
        const double s = sum_of(W), t = sum_of(V);
        record(out[0], softplus(-t) - softplus(-s), bound);
        record(out[1], softplus(t) - softplus(s), bound);
    };

    std::vector<int> W(r), V(r);
    if (static_cast<double>(C) * static_cast<double>(C) <= static_cast<double>(pair_cap)) {
        for (std::uint64_t a = 0; a < C; ++a) {
            colex_unrank_into(a, r, W);
            for (std::uint64_t b = a + 1; b < C; ++b) {
                colex_unrank_into(b, r, V);
                visit_pair(W, V);
            }
        }
    } else {
        SplitMix64 rng(0x5eedULL + static_cast<std::uint64_t>(n) * 131 + r);
        for (std::uint64_t i = 0; i < pair_cap; ++i) {
            colex_unrank_into(rng.below(C), r, W);
            colex_unrank_into(rng.below(C), r, V);
            visit_pair(W, V);
        }
    }
    const std::uint64_t singles = std::min<std::uint64_t>(C, pair_cap);
    SplitMix64 rng(0xabcdefULL + static_cast<std::uint64_t>(n));
    for (std::uint64_t i = 0; i < singles; ++i) {
        colex_unrank_into(singles == C ? i : rng.below(C), r, W);
        const double s = sum_of(W);
        const double ln_l = -softplus(-s);
        const double ln_v = -softplus(-s) - softplus(s);
        record(out[2], ln_l - ln_avg, delta_hat);
        record(out[3], ln_v - ln_big, 2 * delta_hat);
    }
    return out;
}

}  // namespace hyperdeg
