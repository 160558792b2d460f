#pragma once

#include <map>
#include <string>

#include "hyperdeg/beta_solver.hpp"
#include "hyperdeg/core.hpp"

namespace hyperdeg {

enum class EstimateMethod { General, NearRegular, Corollary };
const char* method_name(EstimateMethod m);

// Error indicators use implicit constant 1: indicators, not bounds.
struct ErrorIndicators {
    double eps_term1 = 0;  // r^2 (n-r)^2 / Q
    double eps_term2 = 0;  // r^6 (n-r)^6 ln^9 n / (n^{7/2} Q^{3/2})
    double eps_term3 = 0;  // n^{-ln n}
    double eps = 0;
    double eps_hat = 0;    // eps + delta_max n^{3/5} Q^{-3/5}
    double eps_bar = 0;    // eps + delta_max d^{-3/5}
};

ErrorIndicators error_indicators(const DerivedParams& p);

struct LogEstimate {
    double ln_value = 0;
    EstimateMethod method = EstimateMethod::General;
    std::map<std::string, double> error_terms;
    std::map<std::string, bool> flags;
    std::map<std::string, double> components;  // e.g. logdet_A, entropy
};

// General estimate evaluated in the frame of seq; report must solve seq's system.
LogEstimate estimate_general(const DegreeSequence& seq, const SolveReport& report,
                             const Limits& lim = Limits::from_env());

// Canonicalizes, solves the first-quadrant image, evaluates there; same value in the original frame.
LogEstimate count_general(const DegreeSequence& seq, const SolveOptions& opt = {},
                          const Limits& lim = Limits::from_env());

LogEstimate estimate_near_regular(const DegreeSequence& seq);

// Always evaluated on the first-quadrant image.
LogEstimate estimate_corollary(const DegreeSequence& seq);

struct QuadrantResult {
    Transform transform = Transform::Identity;
    DegreeSequence image;
    SolveReport report;
    double ln_general = 0;
    double ln_near_regular = 0;
    double logdet_A = 0;
};

struct SymmetryAudit {
    std::vector<QuadrantResult> quadrants;  // identity, edge, set, both
    double max_general_diff = 0;
    double max_near_regular_diff = 0;
    double det_ratio_edge = 0;       // |A(beta')| / |A(beta*)|
    double det_ratio_expected = 0;   // ((n-r)/r)^2
    double det_ratio_rel_err = 0;
    double det_ratio_set_rel_err = 0;
    double lambda_image_max_err = 0; // over 100 sampled subsets, both identities
};

SymmetryAudit symmetry_audit(const DegreeSequence& seq, const SolveOptions& opt = {},
                             const Limits& lim = Limits::from_env());

// lambda ln lambda + (1-lambda) ln(1-lambda), 0 at the endpoints.
double xlogx_pair(double lambda);

}  // namespace hyperdeg
