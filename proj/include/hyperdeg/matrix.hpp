#pragma once

#include <string>
#include <vector>

#include "hyperdeg/core.hpp"
#include "hyperdeg/lambda_field.hpp"

namespace hyperdeg {

class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n, double fill = 0.0)
        : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

    static SymmetricMatrix aIbJ(int n, double a, double b);

private:
    int n_ = 0;
    std::vector<double> a_;
};

enum class MatrixSource { Assembled, ClosedFormA0 };

struct WeightMatrix {
    SymmetricMatrix entries;
    MatrixSource source = MatrixSource::Assembled;
};

WeightMatrix assemble_A(const BetaVector& beta, int n, int r, const Limits& lim = Limits::from_env());
WeightMatrix a_from_field(const FieldSummary& f);

struct A0 {
    WeightMatrix matrix;
    double diag_coeff = 0;  // a in aI + bJ
    double ones_coeff = 0;  // b
    double logdet = 0;
};

A0 a0_closed(const DerivedParams& p);

// |aI + bJ| = a^{n-1} (a + n b), as a log; requires a > 0 and a + n b > 0.
double log_det_aIbJ(int n, double a, double b);

// Lower factor L with M = L L^t; pivots below 1e-13 * max diagonal are rejected.
struct Cholesky {
    int n = 0;
    std::vector<double> L;
    double logdet = 0;

    double l(int i, int j) const { return L[static_cast<std::size_t>(i) * n + j]; }
    std::vector<double> solve(std::vector<double> rhs) const;
};

Cholesky cholesky(const SymmetricMatrix& M);
double logdet_pd(const WeightMatrix& M);
SymmetricMatrix inverse_pd(const SymmetricMatrix& M);

// max row sum of absolute values
double norm_inf(const SymmetricMatrix& M);

std::string to_csv(const SymmetricMatrix& M);

struct BoundReport {
    double delta_hat = 0;
    double spread_times_r = 0;
    bool applicable = true;
    std::vector<BoundCheck> checks;
    double measured_C = 0;     // inverse-entry constant, diagonal and off-diagonal combined
    double T_norm1 = 0;        // ||T||_1 * sqrt(Lambda N)
    double T_norm_inf = 0;     // ||T||_inf * sqrt(Lambda N)
    double logdet_A = 0;
    double logdet_A_prime = 0;

    bool all_passed() const;
};

BoundReport bound_suite(const BetaVector& beta, int n, int r, double delta_hat,
                        const Limits& lim = Limits::from_env());

struct BoundCase {
    int n = 0;
    int r = 0;
    BetaVector beta;
    double delta_hat = 0;
};

// Random (beta, delta_hat) with spread * r <= delta_hat <= 1 and every lambda_W <= 7/8.
BoundCase random_bound_case(std::uint64_t seed, std::uint64_t index);

}  // namespace hyperdeg
