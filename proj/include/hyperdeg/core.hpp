#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperdeg {

enum class ErrorKind {
    ParityViolation,
    RangeViolation,
    DimensionMismatch,
    ParseError,
    DensityDegenerate,
    ZeroDegree,
    DomainError,
    DegenerateDenominator,
    NonConvergence,
    SingularJacobian,
    Unsolved,
    NotPositiveDefinite,
    BudgetExceeded,
    GridBudgetExceeded,
    Internal,
};

const char* kind_name(ErrorKind k);

// 2 invalid input, 3 solver failure, 4 budget, 5 internal.
int exit_code(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Enumeration guards. HYPERDEG_BUDGET, when set to a positive integer,
// replaces every default below.
struct Limits {
    std::uint64_t subsets = 100'000'000ULL;
    std::uint64_t exact_ops = 1'000'000'000ULL;
    std::uint64_t grid = 1'000'000'000ULL;
    std::uint64_t dp = 100'000'000ULL;

    static Limits from_env();
};

struct DegreeSequence {
    int n = 0;
    int r = 0;
    std::vector<std::int64_t> degrees;

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

struct HypothesisFlags {
    bool edge_size_interior = false;  // 3 <= r <= n-3
    bool density_interior = false;    // 0 < lambda < 1
    bool first_quadrant = false;
    bool main_inequality = false;     // r^3 (n-r)^3 ln n <= lambda(1-lambda) n C(n,r)
    bool near_regular = false;        // delta_max <= Q^{3/5} n^{-3/5}
};

struct DerivedParams {
    int n = 0;
    int r = 0;
    std::int64_t degree_sum = 0;
    std::int64_t m = 0;
    double d = 0;
    double N = 0;  // C(n-1, r-1)
    double lambda = 0;
    double Q = 0;
    // delta_j = delta_num[j] / n exactly; sum of delta_num is zero.
    std::vector<std::int64_t> delta_num;
    std::vector<double> delta;
    double delta_max = 1;
    double R2 = 0, R3 = 0, R4 = 0;
    HypothesisFlags flags;
};

DerivedParams validate(int n, int r, const std::vector<std::int64_t>& degrees);
inline DerivedParams validate(const DegreeSequence& s) { return validate(s.n, s.r, s.degrees); }

enum class Transform { Identity, EdgeComplement, SetComplement, Both };

const char* transform_name(Transform t);
Transform compose(Transform a, Transform b);

DegreeSequence apply_symmetry(const DegreeSequence& seq, Transform t);

bool in_first_quadrant(const DegreeSequence& seq);

std::pair<DegreeSequence, Transform> canonicalize_first_quadrant(const DegreeSequence& seq);

// Exact binomial; throws RangeViolation on 64-bit overflow.
std::uint64_t binom_u64(std::int64_t n, std::int64_t k);
double binom_f64(std::int64_t n, std::int64_t k);
double lbinom(double n, double k);
double lgam(double x);

}  // namespace hyperdeg
