#include "hyperdeg/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace hyperdeg {

namespace mp = boost::multiprecision;

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParityViolation: return "ParityViolation";
        case ErrorKind::RangeViolation: return "RangeViolation";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DensityDegenerate: return "DensityDegenerate";
        case ErrorKind::ZeroDegree: return "ZeroDegree";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::SingularJacobian: return "SingularJacobian";
        case ErrorKind::Unsolved: return "Unsolved";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::GridBudgetExceeded: return "GridBudgetExceeded";
        case ErrorKind::Internal: return "Internal";
    }
    return "Internal";
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParityViolation:
        case ErrorKind::RangeViolation:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::ParseError:
        case ErrorKind::DensityDegenerate:
        case ErrorKind::ZeroDegree:
        case ErrorKind::DomainError:
        case ErrorKind::DegenerateDenominator:
            return 2;
        case ErrorKind::NonConvergence:
        case ErrorKind::SingularJacobian:
        case ErrorKind::Unsolved:
        case ErrorKind::NotPositiveDefinite:
            return 3;
        case ErrorKind::BudgetExceeded:
        case ErrorKind::GridBudgetExceeded:
            return 4;
        case ErrorKind::Internal:
            return 5;
    }
    return 5;
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

Limits Limits::from_env() {
    Limits l;
    if (const char* s = std::getenv("HYPERDEG_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) {
            l.subsets = l.exact_ops = l.grid = l.dp = v;
        }
    }
    return l;
}

std::uint64_t binom_u64(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            fail(ErrorKind::RangeViolation, "binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

double lgam(double x) { return boost::math::lgamma(x); }

double lbinom(double n, double k) {
    if (k < 0 || k > n) return -INFINITY;
    return lgam(n + 1) - lgam(k + 1) - lgam(n - k + 1);
}

double binom_f64(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (n <= 60) return static_cast<double>(binom_u64(n, k));
    return std::exp(lbinom(static_cast<double>(n), static_cast<double>(k)));
}

DerivedParams validate(int n, int r, const std::vector<std::int64_t>& degrees) {
    if (n < 2) fail(ErrorKind::RangeViolation, "n must be at least 2");
    if (r < 1 || r > n - 1) fail(ErrorKind::RangeViolation, "edge size r must satisfy 1 <= r <= n-1");
    if (static_cast<int>(degrees.size()) != n)
        fail(ErrorKind::DimensionMismatch, "degree list length " + std::to_string(degrees.size()) +
                                               " differs from n = " + std::to_string(n));
    const std::uint64_t N = binom_u64(n - 1, r - 1);
    const std::uint64_t C = binom_u64(n, r);
    std::int64_t S = 0;
    for (std::size_t j = 0; j < degrees.size(); ++j) {
        const auto dj = degrees[j];
        if (dj < 0 || static_cast<std::uint64_t>(dj) > N)
            fail(ErrorKind::RangeViolation, "degree d_" + std::to_string(j + 1) + " = " + std::to_string(dj) +
                                                " outside [0, C(n-1,r-1)] = [0, " + std::to_string(N) + "]");
        S += dj;
    }
    if (S % r != 0)
        fail(ErrorKind::ParityViolation, "parity condition violated: r = " + std::to_string(r) +
                                             " does not divide the degree sum " + std::to_string(S));

    DerivedParams p;
    p.n = n;
    p.r = r;
    p.degree_sum = S;
    p.m = S / r;
    p.d = static_cast<double>(S) / n;
    p.N = static_cast<double>(N);
    p.lambda = static_cast<double>(p.m) / static_cast<double>(C);

    // Q = m (C-m) r (n-r) / (n C): symmetric in (m, C-m) and (r, n-r), so every
    // quadrant image rounds to the same double.
    {
        mp::cpp_int num = mp::cpp_int(p.m) * (mp::cpp_int(C) - p.m) * r * (n - r);
        mp::cpp_int den = mp::cpp_int(n) * C;
        p.Q = static_cast<double>(mp::cpp_rational(num, den));
    }

    p.delta_num.resize(n);
    p.delta.resize(n);
    mp::cpp_int sums[5];
    double dmax = 0;
    for (int j = 0; j < n; ++j) {
        const std::int64_t num = static_cast<std::int64_t>(n) * degrees[j] - S;
        p.delta_num[j] = num;
        p.delta[j] = static_cast<double>(num) / n;
        dmax = std::max(dmax, std::abs(p.delta[j]));
        mp::cpp_int pw = 1;
        for (int t = 1; t <= 4; ++t) {
            pw *= num;
            sums[t] += pw;
        }
    }
    if (sums[1] != 0) fail(ErrorKind::Internal, "first deviation power sum is not zero");
    auto power_sum = [&](int t) {
        mp::cpp_int den = 1;
        for (int i = 0; i < t; ++i) den *= n;
        return static_cast<double>(mp::cpp_rational(sums[t], den));
    };
    p.R2 = power_sum(2);
    p.R3 = power_sum(3);
    p.R4 = power_sum(4);
    p.delta_max = std::max(dmax, 1.0);

    auto& f = p.flags;
    f.edge_size_interior = (r >= 3 && r <= n - 3);
    f.density_interior = (p.m > 0 && static_cast<std::uint64_t>(p.m) < C);
    f.first_quadrant = (2 * r <= n) && (2 * static_cast<std::uint64_t>(p.m) <= C);
    const double rr = r, nr = n - r;
    f.main_inequality = f.density_interior &&
                        std::pow(rr * nr, 3) * std::log(static_cast<double>(n)) <=
                            p.lambda * (1 - p.lambda) * n * static_cast<double>(C);
    f.near_regular = f.density_interior && p.delta_max <= std::pow(p.Q, 0.6) * std::pow(n, -0.6);
    return p;
}

const char* transform_name(Transform t) {
    switch (t) {
        case Transform::Identity: return "identity";
        case Transform::EdgeComplement: return "edge-complement";
        case Transform::SetComplement: return "set-complement";
        case Transform::Both: return "both";
    }
    return "identity";
}

Transform compose(Transform a, Transform b) {
    const int ea = (a == Transform::EdgeComplement || a == Transform::Both);
    const int sa = (a == Transform::SetComplement || a == Transform::Both);
    const int eb = (b == Transform::EdgeComplement || b == Transform::Both);
    const int sb = (b == Transform::SetComplement || b == Transform::Both);
    const int e = ea ^ eb, s = sa ^ sb;
    if (e && s) return Transform::Both;
    if (e) return Transform::EdgeComplement;
    if (s) return Transform::SetComplement;
    return Transform::Identity;
}

DegreeSequence apply_symmetry(const DegreeSequence& seq, Transform t) {
    const DerivedParams p = validate(seq);
    DegreeSequence out = seq;
    const auto N = static_cast<std::int64_t>(binom_u64(seq.n - 1, seq.r - 1));
    const auto C = static_cast<std::int64_t>(binom_u64(seq.n, seq.r));
    switch (t) {
        case Transform::Identity:
            break;
        case Transform::EdgeComplement:
            out.r = seq.n - seq.r;
            for (auto& x : out.degrees) x = p.m - x;
            break;
        case Transform::SetComplement:
            for (auto& x : out.degrees) x = N - x;
            break;
        case Transform::Both:
            // C(n-1, r) = C - N
            out.r = seq.n - seq.r;
            for (auto& x : out.degrees) x = (C - N) - p.m + x;
            break;
    }
    return out;
}

bool in_first_quadrant(const DegreeSequence& seq) {
    std::int64_t S = std::accumulate(seq.degrees.begin(), seq.degrees.end(), std::int64_t{0});
    const auto m = static_cast<std::uint64_t>(S / seq.r);
    return 2 * seq.r <= seq.n && 2 * m <= binom_u64(seq.n, seq.r);
}

std::pair<DegreeSequence, Transform> canonicalize_first_quadrant(const DegreeSequence& seq) {
    validate(seq);
    for (Transform t : {Transform::Identity, Transform::SetComplement, Transform::EdgeComplement, Transform::Both}) {
        DegreeSequence img = apply_symmetry(seq, t);
        if (in_first_quadrant(img)) return {std::move(img), t};
    }
    fail(ErrorKind::Internal, "no quadrant image satisfies the first-quadrant inequalities");
}

}  // namespace hyperdeg
