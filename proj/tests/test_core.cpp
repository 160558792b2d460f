#include <doctest.h>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/core.hpp"
#include "oracles.hpp"

using namespace hyperdeg;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("validate derives m, d, lambda and deviations") {
    const DerivedParams p = validate(6, 3, {5, 5, 5, 5, 5, 5});
    CHECK(p.m == 10);
    CHECK(p.d == 5.0);
    CHECK(p.N == 10.0);
    CHECK(p.lambda == 0.5);
    // Q = m (C-m) r (n-r) / (n C) = 10 * 10 * 9 / 120
    CHECK(p.Q == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(p.R2 == 0.0);
    CHECK(p.delta_max == 1.0);
    CHECK(p.flags.first_quadrant);
    CHECK(p.flags.edge_size_interior);
    CHECK(p.flags.near_regular);

    const DerivedParams q = validate(5, 2, {4, 3, 2, 2, 1});
    CHECK(q.m == 6);
    CHECK(q.delta_num == std::vector<std::int64_t>{8, 3, -2, -2, -7});
    CHECK(q.R2 == doctest::Approx((64 + 9 + 4 + 4 + 49) / 25.0));
}

TEST_CASE("validate rejects malformed instances with the right kind") {
    CHECK(kind_of([] { validate(6, 3, {5, 5, 5, 5, 5, 4}); }) == ErrorKind::ParityViolation);
    CHECK(kind_of([] { validate(6, 3, {11, 5, 5, 5, 5, 5}); }) == ErrorKind::RangeViolation);
    CHECK(kind_of([] { validate(6, 3, {-1, 5, 5, 5, 5, 5}); }) == ErrorKind::RangeViolation);
    CHECK(kind_of([] { validate(6, 3, {5, 5, 5}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { validate(6, 6, {1, 1, 1, 1, 1, 1}); }) == ErrorKind::RangeViolation);
    CHECK(exit_code(ErrorKind::ParityViolation) == 2);
    CHECK(exit_code(ErrorKind::NonConvergence) == 3);
    CHECK(exit_code(ErrorKind::BudgetExceeded) == 4);
    CHECK(exit_code(ErrorKind::Internal) == 5);
}

TEST_CASE("symmetry transforms are involutions and compose as a Klein group") {
    const DegreeSequence s{7, 3, {9, 8, 8, 7, 7, 6, 6}};
    for (Transform t : {Transform::Identity, Transform::EdgeComplement, Transform::SetComplement, Transform::Both}) {
        CHECK(apply_symmetry(apply_symmetry(s, t), t) == s);
        CHECK(compose(t, t) == Transform::Identity);
    }
    CHECK(compose(Transform::EdgeComplement, Transform::SetComplement) == Transform::Both);
    CHECK(apply_symmetry(apply_symmetry(s, Transform::EdgeComplement), Transform::SetComplement) ==
          apply_symmetry(s, Transform::Both));

    // set complement: N - d_j with N = C(6,2) = 15
    const DegreeSequence sc = apply_symmetry(s, Transform::SetComplement);
    CHECK(sc.r == 3);
    CHECK(sc.degrees == std::vector<std::int64_t>{6, 7, 7, 8, 8, 9, 9});
    // edge complement: r' = n - r, d'_j = m - d_j
    const DegreeSequence t{6, 2, {3, 3, 2, 2, 1, 1}};  // m = 6
    const DegreeSequence te = apply_symmetry(t, Transform::EdgeComplement);
    CHECK(te.r == 4);
    CHECK(te.degrees == std::vector<std::int64_t>{3, 3, 4, 4, 5, 5});
    validate(te);
}

TEST_CASE("canonicalization lands in the first quadrant and prefers the identity") {
    const DegreeSequence s{8, 3, {9, 9, 9, 9, 9, 9, 9, 9}};
    auto [c, t] = canonicalize_first_quadrant(s);
    CHECK(t == Transform::Identity);
    CHECK(c == s);
    const DegreeSequence hi{8, 3, {12, 12, 12, 12, 12, 12, 12, 12}};
    auto [c2, t2] = canonicalize_first_quadrant(hi);
    CHECK(t2 == Transform::SetComplement);
    CHECK(in_first_quadrant(c2));
    CHECK(c2.degrees[0] == 9);
    const DegreeSequence wide{6, 4, {6, 6, 6, 6, 6, 6}};  // m = 9, C = 15
    auto [c3, t3] = canonicalize_first_quadrant(wide);
    CHECK(in_first_quadrant(c3));
    CHECK(apply_symmetry(c3, t3) == wide);
}

TEST_CASE("binomials agree with a big-integer oracle") {
    for (int n = 0; n <= 40; ++n)
        for (int k = 0; k <= n; ++k) CHECK(oracle::Big(binom_u64(n, k)) == oracle::binom(n, k));
    CHECK_THROWS_AS(binom_u64(200, 100), Error);
    CHECK(lbinom(30, 12) == doctest::Approx(std::log(86493225.0)).epsilon(1e-14));
    BinomTable t(20, 3);
    CHECK(t(20, 3) == 1140);
    CHECK(t(20, 17) == 1140);  // symmetric lookup beyond the stored width
    CHECK_THROWS_AS(t(20, 9), Error);
}

TEST_CASE("colex rank and unrank are inverse and ordered") {
    const int n = 9, r = 4;
    std::vector<int> W(r);
    for (int i = 0; i < r; ++i) W[i] = i;
    std::uint64_t rank = 0;
    do {
        CHECK(colex_rank(W) == rank);
        CHECK(colex_unrank(rank, r) == W);
        ++rank;
    } while (colex_next(W, n));
    CHECK(rank == binom_u64(n, r));
}

TEST_CASE("budget override from the environment") {
    setenv("HYPERDEG_BUDGET", "1234", 1);
    const Limits l = Limits::from_env();
    unsetenv("HYPERDEG_BUDGET");
    CHECK(l.subsets == 1234);
    CHECK(l.exact_ops == 1234);
    CHECK(l.grid == 1234);
    CHECK(l.dp == 1234);
    CHECK(Limits::from_env().subsets == Limits{}.subsets);
}
