#include "hyperdeg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hyperdeg/combinatorics.hpp"

namespace hyperdeg {

SymmetricMatrix SymmetricMatrix::aIbJ(int n, double a, double b) {
    SymmetricMatrix M(n, b);
    for (int i = 0; i < n; ++i) M(i, i) = a + b;
    return M;
}

WeightMatrix a_from_field(const FieldSummary& f) {
    WeightMatrix W;
    W.entries = SymmetricMatrix(f.n);
    for (int j = 0; j < f.n; ++j)
        for (int k = 0; k < f.n; ++k) W.entries(j, k) = 0.5 * f.p(j, k);
    W.source = MatrixSource::Assembled;
    return W;
}

WeightMatrix assemble_A(const BetaVector& beta, int n, int r, const Limits& lim) {
    return a_from_field(field_summary(beta, n, r, lim));
}

double log_det_aIbJ(int n, double a, double b) {
    if (!(a > 0) || !(a + n * b > 0)) fail(ErrorKind::NotPositiveDefinite, "aI + bJ is not positive definite");
    return (n - 1) * std::log(a) + std::log(a + n * b);
}

A0 a0_closed(const DerivedParams& p) {
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "A0 needs 0 < lambda < 1");
    const int n = p.n, r = p.r;
    A0 out;
    out.diag_coeff = (1 - p.lambda) * (n - r) * p.d / (2.0 * (n - 1));
    out.ones_coeff = (1 - p.lambda) * (r - 1) * p.d / (2.0 * (n - 1));
    out.matrix.entries = SymmetricMatrix::aIbJ(n, out.diag_coeff, out.ones_coeff);
    out.matrix.source = MatrixSource::ClosedFormA0;
    out.logdet = std::log(static_cast<double>(r)) + n * std::log(p.Q) - n * std::log(2.0) -
                 std::log(static_cast<double>(n - r)) - (n - 1) * std::log(static_cast<double>(n - 1));
    return out;
}

Cholesky cholesky(const SymmetricMatrix& M) {
    const int n = M.size();
    Cholesky c;
    c.n = n;
    c.L.assign(static_cast<std::size_t>(n) * n, 0.0);
    double maxdiag = 0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, M(i, i));
    const double floor = 1e-13 * maxdiag;
    auto L = [&](int i, int j) -> double& { return c.L[static_cast<std::size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        double piv = M(j, j);
        for (int k = 0; k < j; ++k) piv -= L(j, k) * L(j, k);
        if (!(piv > floor) || !(maxdiag > 0))
            fail(ErrorKind::NotPositiveDefinite, "pivot " + std::to_string(j) + " is " + std::to_string(piv) +
                                                     ", below the positive-definite threshold");
        const double d = std::sqrt(piv);
        L(j, j) = d;
        c.logdet += std::log(piv);
        for (int i = j + 1; i < n; ++i) {
            double s = M(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / d;
        }
    }
    return c;
}

std::vector<double> Cholesky::solve(std::vector<double> x) const {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
        x[i] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

double logdet_pd(const WeightMatrix& M) { return cholesky(M.entries).logdet; }

SymmetricMatrix inverse_pd(const SymmetricMatrix& M) {
    const Cholesky c = cholesky(M);
    const int n = M.size();
    SymmetricMatrix inv(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> e(n, 0.0);
        e[k] = 1.0;
        const auto col = c.solve(std::move(e));
        for (int i = 0; i < n; ++i) inv(i, k) = col[i];
    }
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) inv(i, k) = inv(k, i) = 0.5 * (inv(i, k) + inv(k, i));
    return inv;
}

double norm_inf(const SymmetricMatrix& M) {
    double best = 0;
    for (int i = 0; i < M.size(); ++i) {
        double s = 0;
        for (int j = 0; j < M.size(); ++j) s += std::abs(M(i, j));
        best = std::max(best, s);
    }
    return best;
}

std::string to_csv(const SymmetricMatrix& M) {
    std::string out;
    char buf[40];
    for (int i = 0; i < M.size(); ++i) {
        for (int j = 0; j < M.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
            if (j) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

bool BoundReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.applicable || c.passed; });
}

namespace {

void record(BoundCheck& c, double measured_log, double bound_log, double tol = 1e-12) {
    const double slack = bound_log - measured_log;
    c.slack = std::min(c.slack, slack);
    ++c.checked;
    if (slack < -tol * (1 + std::abs(bound_log))) c.passed = false;
}

BoundCheck fresh(const char* name) {
    BoundCheck c;
    c.name = name;
    c.slack = INFINITY;
    return c;
}

}  // namespace

BoundReport bound_suite(const BetaVector& beta, int n, int r, double delta_hat, const Limits& lim) {
    BoundReport rep;
    rep.delta_hat = delta_hat;
    rep.spread_times_r = beta.spread() * r;
    rep.checks = lambda_ratio_checks(beta, n, r, delta_hat, 4'000'000, lim);
    rep.applicable = rep.checks.front().applicable;
    if (!rep.applicable) return rep;

    const FieldSummary f = field_summary(beta, n, r, lim);
    const WeightMatrix A = a_from_field(f);
    const double lam = f.avg_lambda, Lam = f.big_lambda;
    const double N = binom_f64(n - 1, r - 1);
    const double N2 = binom_f64(n - 2, r - 2);

    BoundCheck l33 = fresh("big_lambda_sandwich");
    if (lam <= 7.0 / 8.0) {
        record(l33, std::log(Lam), std::log(lam));
        record(l33, std::log(std::exp(-delta_hat) / 256.0 * lam), std::log(Lam));
    } else {
        l33.applicable = false;
    }
    rep.checks.push_back(l33);

    BoundCheck offr = fresh("offdiag_entry_ratio");
    BoundCheck diagr = fresh("diag_entry_ratio");
    BoundCheck offs = fresh("offdiag_sandwich");
    BoundCheck diags = fresh("diag_sandwich");
    const double e4 = 4 * delta_hat / r;
    double omin = INFINITY, omax = 0, dmin = INFINITY, dmax = 0;
    for (int j = 0; j < n; ++j) {
        const double ajj = A.entries(j, j);
        dmin = std::min(dmin, ajj);
        dmax = std::max(dmax, ajj);
        const double ref = 0.5 * Lam * N;
        record(diags, std::abs(std::log(ajj / ref)), e4);
        for (int k = j + 1; k < n; ++k) {
            const double ajk = A.entries(j, k);
            omin = std::min(omin, ajk);
            omax = std::max(omax, ajk);
            if (r >= 2) record(offs, std::abs(std::log(ajk / (0.5 * Lam * N2))), e4);
        }
    }
    record(diagr, std::log(dmax / dmin), e4);
    if (r >= 2 && n >= 2) record(offr, std::log(omax / omin), e4);
    if (r < 2) offr.applicable = offs.applicable = false;
    rep.checks.push_back(offr);
    rep.checks.push_back(diagr);
    rep.checks.push_back(offs);
    rep.checks.push_back(diags);

    BoundCheck l35 = fresh("determinant_upper_bound");
    const Cholesky ch = cholesky(A.entries);
    rep.logdet_A = ch.logdet;
    const double scale = 0.5 * std::exp(2 * delta_hat) * Lam;
    rep.logdet_A_prime = log_det_aIbJ(n, scale * binom_f64(n - 2, r - 1), scale * N2);
    record(l35, rep.logdet_A, rep.logdet_A_prime, 1e-10);
    rep.checks.push_back(l35);

    // Inverse-entry constant and T = L^{-t}; reported, not asserted.
    const SymmetricMatrix inv = inverse_pd(A.entries);
    double C = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double w = Lam * N * (j == k ? 1.0 : static_cast<double>(n));
            C = std::max(C, std::abs(inv(j, k)) * w);
        }
    rep.measured_C = C / std::exp(35 * delta_hat);

    // T = L^{-t} is upper triangular; columns of L^{-1} are unit solves.
    std::vector<double> Linv(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int i = k; i < n; ++i) {
            double s = (i == k) ? 1.0 : 0.0;
            for (int q = k; q < i; ++q) s -= ch.l(i, q) * Linv[static_cast<std::size_t>(q) * n + k];
            Linv[static_cast<std::size_t>(i) * n + k] = s / ch.l(i, i);
        }
    }
    double n1 = 0, ninf = 0;
    for (int a = 0; a < n; ++a) {
        double row = 0, col = 0;
        for (int b = 0; b < n; ++b) {
            row += std::abs(Linv[static_cast<std::size_t>(b) * n + a]);  // T(a,b) = Linv(b,a)
            col += std::abs(Linv[static_cast<std::size_t>(a) * n + b]);
        }
        ninf = std::max(ninf, row);
        n1 = std::max(n1, col);
    }
    const double s = std::sqrt(Lam * N);
    rep.T_norm1 = n1 * s;
    rep.T_norm_inf = ninf * s;
    return rep;
}

BoundCase random_bound_case(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    BoundCase c;
    c.n = 6 + static_cast<int>(rng.below(5));
    c.r = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n - 5)));
    c.delta_hat = 0.05 + 0.95 * rng.unit();
    const double width = c.delta_hat / c.r;
    // lambda <= 7/8 iff s_W <= ln 7; s_W <= r (center + width).
    const double hi = std::log(7.0) / c.r - width;
    const double center = -2.0 + (hi + 2.0) * rng.unit();
    std::vector<double> b(static_cast<std::size_t>(c.n));
    for (auto& x : b) x = center + width * rng.unit();
    c.beta = BetaVector(std::move(b));
    return c;
}

}  // namespace hyperdeg
