#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperdeg/core.hpp"

namespace hyperdeg {

struct BetaVector {
    std::vector<double> beta;
    std::optional<double> residual_inf;

    BetaVector() = default;
    explicit BetaVector(std::vector<double> b) : beta(std::move(b)) {}
    int size() const { return static_cast<int>(beta.size()); }
    double spread() const;
    double sum() const;
};

// Stable logistic and log(1+e^s).
double logistic(double s);
double softplus(double s);

double lambda_of_subset(const BetaVector& beta, const std::vector<int>& W);

struct FieldSummary {
    int n = 0;
    int r = 0;
    std::vector<double> vertex_sums;   // s_j
    std::vector<double> pair_weights;  // n*n row-major; diagonal p_jj
    double lambda_total = 0;           // sum_W lambda_W
    double var_total = 0;              // sum_W lambda_W (1 - lambda_W)
    double avg_lambda = 0;
    double big_lambda = 0;
    double entropy = 0;                // sum_W H(lambda_W)
    double softplus_total = 0;         // sum_W ln(1 + e^{s_W})

    double p(int j, int k) const { return pair_weights[static_cast<std::size_t>(j) * n + k]; }
};

FieldSummary field_summary(const BetaVector& beta, int n, int r, const Limits& lim = Limits::from_env());

// Same sweep without the O(r^2) pair accumulation.
FieldSummary vertex_summary(const BetaVector& beta, int n, int r, const Limits& lim = Limits::from_env());

struct Prefactor {
    double ln_p = 0;         // entropy form
    double ln_p_direct = 0;  // -n ln 2pi - sum beta_j d_j + sum softplus
    double discrepancy = 0;
};

Prefactor log_prefactor(const BetaVector& beta, const DegreeSequence& seq, const Limits& lim = Limits::from_env());

double entropy_sum(const BetaVector& beta, int n, int r, const Limits& lim = Limits::from_env());

// Images of a beta vector under the quadrant transforms (lambda_W correspondence).
BetaVector transform_beta(const BetaVector& beta, int r, Transform t);

struct BoundCheck {
    const char* name = "";
    bool applicable = true;
    bool passed = true;
    double slack = 0;  // min over checks of (bound - measured) in log scale
    std::uint64_t checked = 0;
};

// Pairwise, average and variance ratio bounds on lambda_W for spread*r <= delta_hat;
// pairs are exhaustive when C(n,r)^2 <= pair_cap, otherwise a fixed pseudo-random sample.
std::vector<BoundCheck> lambda_ratio_checks(const BetaVector& beta, int n, int r, double delta_hat,
                                            std::uint64_t pair_cap = 4'000'000,
                                            const Limits& lim = Limits::from_env());

}  // namespace hyperdeg
