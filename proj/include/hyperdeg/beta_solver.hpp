#pragma once

#include <vector>

#include "hyperdeg/core.hpp"
#include "hyperdeg/lambda_field.hpp"

namespace hyperdeg {

enum class SeedStrategy { Auto, Regular, Product, NearRegular, Custom };

const char* seed_name(SeedStrategy s);
SeedStrategy parse_seed(const std::string& s);

// Resolves Auto to the concrete strategy used for this instance.
SeedStrategy select_seed(const DegreeSequence& seq);

BetaVector seed(const DegreeSequence& seq, SeedStrategy strategy, const Limits& lim = Limits::from_env());

struct SolveOptions {
    double tol = 1e-10;  // relative to max(d, 1)
    int max_iter = 100;
    int max_halvings = 60;
    double spread_guard = 50;  // abort once spread * r exceeds this
};

struct SolveReport {
    BetaVector beta_star;
    int iterations = 0;
    double residual_inf = 0;
    double spread = 0;
    bool converged = false;
    SeedStrategy seed_used = SeedStrategy::Custom;
    std::vector<double> residual_history;  // accepted iterates, non-increasing
};

// Psi_j = sum_{W ni j} lambda_W - d_j
std::vector<double> residual(const DegreeSequence& seq, const BetaVector& beta,
                             const Limits& lim = Limits::from_env());

// Throws NonConvergence or SingularJacobian rather than returning an unconverged report.
SolveReport solve(const DegreeSequence& seq, const BetaVector& seed_beta, const SolveOptions& opt = {},
                  SeedStrategy seed_used = SeedStrategy::Custom, const Limits& lim = Limits::from_env());

SolveReport solve(const DegreeSequence& seq, SeedStrategy strategy = SeedStrategy::Auto,
                  const SolveOptions& opt = {}, const Limits& lim = Limits::from_env());

// min over y in {0, 1/32, ..., 1} of sum_W (l''_W - l'_W)^2 / (xi_W (1 - xi_W)),
// xi_W = (1-y) l'_W + y l''_W.
double uniqueness_diagnostic(const DegreeSequence& seq, const BetaVector& a, const BetaVector& b,
                             const Limits& lim = Limits::from_env());

struct JacobianCheck {
    bool applicable = true;
    bool passed = true;
    double norm_inverse = 0;  // ||(2A(beta))^{-1}||_inf
    double bound = 0;         // 2^8 C e^{36 d1 + 73 d2} / (N lambda(center))
    double C = 0;
};

JacobianCheck jacobian_inverse_check(const BetaVector& center, const BetaVector& beta, int n, int r,
                                     const Limits& lim = Limits::from_env());

}  // namespace hyperdeg
