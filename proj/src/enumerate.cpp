#include "hyperdeg/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/matrix.hpp"

namespace hyperdeg {

const char* method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::General: return "general";
        case EstimateMethod::NearRegular: return "near-regular";
        case EstimateMethod::Corollary: return "corollary";
    }
    return "general";
}

double xlogx_pair(double lambda) {
    double s = 0;
    if (lambda > 0) s += lambda * std::log(lambda);
    if (lambda < 1) s += (1 - lambda) * std::log1p(-lambda);
    return s;
}

ErrorIndicators error_indicators(const DerivedParams& p) {
    ErrorIndicators e;
    const double n = p.n, rr = p.r, nr = p.n - p.r, ln_n = std::log(n);
    e.eps_term1 = rr * rr * nr * nr / p.Q;
    e.eps_term2 = std::pow(rr * nr, 6) * std::pow(ln_n, 9) / (std::pow(n, 3.5) * std::pow(p.Q, 1.5));
    e.eps_term3 = std::exp(-ln_n * ln_n);
    e.eps = e.eps_term1 + e.eps_term2 + e.eps_term3;
    e.eps_hat = e.eps + p.delta_max * std::pow(n, 0.6) * std::pow(p.Q, -0.6);
    e.eps_bar = e.eps + p.delta_max * std::pow(p.d, -0.6);
    return e;
}

namespace {

void fill_common(LogEstimate& est, const DerivedParams& p, bool input_first_quadrant) {
    const ErrorIndicators e = error_indicators(p);
    est.error_terms["eps_term1"] = e.eps_term1;
    est.error_terms["eps_term2"] = e.eps_term2;
    est.error_terms["eps_term3"] = e.eps_term3;
    est.error_terms["eps"] = e.eps;
    est.error_terms["eps_hat"] = e.eps_hat;
    est.error_terms["eps_bar"] = e.eps_bar;
    est.flags["main_inequality"] = p.flags.main_inequality;
    est.flags["near_regular"] = p.flags.near_regular;
    est.flags["first_quadrant"] = input_first_quadrant;
    est.flags["edge_size_interior"] = p.flags.edge_size_interior;
}

double near_regular_value(const DerivedParams& p) {
    const double n = p.n, r = p.r, Q = p.Q, lam = p.lambda;
    const double C = binom_f64(p.n, p.r);
    const double head = 0.5 * (std::log(r) + std::log(n - r) + (n - 1) * std::log(n - 1) - n * std::log(2.0) -
                               n * std::log(std::numbers::pi) - n * std::log(Q));
    return head - C * xlogx_pair(lam) - (n - 1) * p.R2 / (2 * Q) + n * n * p.R2 / (4 * Q * Q) +
           (1 - 2 * lam) * (n - 2 * r) * n * p.R3 / (6 * Q * Q) - n * n * n * p.R4 / (12 * Q * Q * Q);
}

}  // namespace

LogEstimate estimate_general(const DegreeSequence& seq, const SolveReport& report, const Limits& lim) {
    const DerivedParams p = validate(seq);
    if (!report.converged) fail(ErrorKind::Unsolved, "solve report is not converged");
    if (report.beta_star.size() != seq.n) fail(ErrorKind::DimensionMismatch, "solution length differs from n");
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "the estimate needs 0 < lambda < 1");
    const int n = seq.n, r = seq.r;
    const FieldSummary f = field_summary(report.beta_star, n, r, lim);
    const double logdet = cholesky(a_from_field(f).entries).logdet;
    LogEstimate est;
    est.method = EstimateMethod::General;
    est.ln_value = std::log(static_cast<double>(r)) - n * std::log(2.0) - 0.5 * n * std::log(std::numbers::pi) -
                   0.5 * logdet + f.entropy;
    fill_common(est, p, p.flags.first_quadrant);
    est.flags["beta_range"] = report.spread <= static_cast<double>(n) / (static_cast<double>(r) * (n - r));
    est.components["logdet_A"] = logdet;
    est.components["entropy"] = f.entropy;
    est.components["spread"] = report.spread;
    est.components["residual_inf"] = report.residual_inf;
    return est;
}

LogEstimate count_general(const DegreeSequence& seq, const SolveOptions& opt, const Limits& lim) {
    const DerivedParams p = validate(seq);
    auto [canon, t] = canonicalize_first_quadrant(seq);
    const SolveReport rep = solve(canon, SeedStrategy::Auto, opt, lim);
    LogEstimate est = estimate_general(canon, rep, lim);
    est.flags["first_quadrant"] = p.flags.first_quadrant;
    est.components["iterations"] = rep.iterations;
    return est;
}

LogEstimate estimate_near_regular(const DegreeSequence& seq) {
    const DerivedParams p = validate(seq);
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "the estimate needs 0 < lambda < 1");
    LogEstimate est;
    est.method = EstimateMethod::NearRegular;
    est.ln_value = near_regular_value(p);
    fill_common(est, p, p.flags.first_quadrant);
    return est;
}

LogEstimate estimate_corollary(const DegreeSequence& seq) {
    const DerivedParams p0 = validate(seq);
    if (!p0.flags.density_interior) fail(ErrorKind::DensityDegenerate, "the estimate needs 0 < lambda < 1");
    const DegreeSequence canon = canonicalize_first_quadrant(seq).first;
    const DerivedParams p = validate(canon);
    const double n = p.n, r = p.r, lam = p.lambda, d = p.d;
    const double C = binom_f64(p.n, p.r);
    const double logdetA0 = a0_closed(p).logdet;
    LogEstimate est;
    est.method = EstimateMethod::Corollary;
    est.ln_value = std::log(r) - n * std::log(2.0) - 0.5 * n * std::log(std::numbers::pi) - 0.5 * logdetA0 -
                   C * xlogx_pair(lam) - (n - 1) * p.R2 / (2 * (1 - lam) * (n - r) * d) + p.R2 / (4 * d * d) +
                   (1 - 2 * lam) * p.R3 / (6 * (1 - lam) * (1 - lam) * d * d) - p.R4 / (12 * d * d * d);
    fill_common(est, p, p0.flags.first_quadrant);
    est.components["logdet_A0"] = logdetA0;
    return est;
}

SymmetryAudit symmetry_audit(const DegreeSequence& seq, const SolveOptions& opt, const Limits& lim) {
    validate(seq);
    SymmetryAudit audit;
    for (Transform t : {Transform::Identity, Transform::EdgeComplement, Transform::SetComplement, Transform::Both}) {
        QuadrantResult q;
        q.transform = t;
        q.image = apply_symmetry(seq, t);
        q.report = solve(q.image, SeedStrategy::Auto, opt, lim);
        const LogEstimate g = estimate_general(q.image, q.report, lim);
        q.ln_general = g.ln_value;
        q.logdet_A = g.components.at("logdet_A");
        q.ln_near_regular = estimate_near_regular(q.image).ln_value;
        audit.quadrants.push_back(std::move(q));
    }
    for (const auto& a : audit.quadrants)
        for (const auto& b : audit.quadrants) {
            audit.max_general_diff = std::max(audit.max_general_diff, std::abs(a.ln_general - b.ln_general));
            audit.max_near_regular_diff =
                std::max(audit.max_near_regular_diff, std::abs(a.ln_near_regular - b.ln_near_regular));
        }
    const int n = seq.n, r = seq.r;
    const auto& id = audit.quadrants[0];
    const auto& edge = audit.quadrants[1];
    const auto& set = audit.quadrants[2];
    const auto& both = audit.quadrants[3];
    audit.det_ratio_edge = std::exp(edge.logdet_A - id.logdet_A);
    audit.det_ratio_expected = std::pow(static_cast<double>(n - r) / r, 2);
    audit.det_ratio_rel_err = std::abs(audit.det_ratio_edge / audit.det_ratio_expected - 1);
    audit.det_ratio_set_rel_err = std::abs(std::exp(set.logdet_A - id.logdet_A) - 1);

    const std::uint64_t C = binom_u64(n, r);
    SplitMix64 rng(0x9a11ULL ^ (static_cast<std::uint64_t>(n) << 8) ^ static_cast<std::uint64_t>(r));
    std::vector<int> W, comp;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        colex_unrank_into(rng.below(C), r, W);
        comp.clear();
        for (int v = 0, k = 0; v < n; ++v) {
            if (k < r && W[k] == v)
                ++k;
            else
                comp.push_back(v);
        }
        const double l = lambda_of_subset(id.report.beta_star, W);
        worst = std::max(worst, std::abs(lambda_of_subset(edge.report.beta_star, comp) - l));
        worst = std::max(worst, std::abs(lambda_of_subset(set.report.beta_star, W) - (1 - l)));
        worst = std::max(worst, std::abs(lambda_of_subset(both.report.beta_star, comp) - (1 - l)));
    }
    audit.lambda_image_max_err = worst;
    return audit;
}

}  // namespace hyperdeg
