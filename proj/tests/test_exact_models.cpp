#include <doctest.h>

#include <cmath>
#include <map>

#include "hyperdeg/exact.hpp"
#include "hyperdeg/models.hpp"
#include "hyperdeg/parallel.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hyperdeg;

namespace {

std::vector<DegreeSequence> parity_valid(int n, int r) {
    const int N = static_cast<int>(binom_u64(n - 1, r - 1));
    std::vector<DegreeSequence> out;
    for (std::int64_t S = 0; S <= static_cast<std::int64_t>(n) * N; S += r)
        for (auto& d : oracle::compositions(n, N, S)) out.push_back({n, r, d});
    return out;
}

}  // namespace

TEST_CASE("exact count equals the edge-by-edge oracle on every small sequence") {
    for (auto [n, r] : {std::pair{4, 2}, {5, 2}, {4, 3}, {5, 3}, {6, 2}}) {
        oracle::EdgeByEdge o(n, r);
        for (const auto& s : parity_valid(n, r)) {
            CAPTURE(s.degrees);
            CHECK(exact_count(s).value == o.count(s.degrees));
            CHECK(exact_count(s, ExactOptions{false}).value == o.count(s.degrees));
        }
    }
}

TEST_CASE("exact count equals the oracle on larger r=3 and r=4 instances") {
    const std::vector<DegreeSequence> cases = {
        {6, 3, {5, 5, 5, 5, 5, 5}},    {6, 3, {6, 6, 5, 4, 4, 5}},    {6, 3, {4, 4, 4, 4, 4, 4}},
        {7, 3, {6, 6, 6, 6, 6, 6, 6}}, {7, 3, {9, 8, 8, 7, 7, 6, 6}}, {7, 3, {4, 4, 4, 3, 3, 3, 3}},
        {7, 4, {8, 8, 8, 8, 8, 8, 8}}, {6, 4, {6, 6, 6, 6, 6, 6}},    {8, 3, {5, 5, 5, 5, 4, 4, 4, 4}},
    };
    for (const auto& s : cases) {
        CAPTURE(s.degrees);
        oracle::EdgeByEdge o(s.n, s.r);
        CHECK(exact_count(s).value == o.count(s.degrees));
    }
}

TEST_CASE("frozen exact counts for lambda = 1/2 instances") {
    // Values cross-checked against two independent prototype counters.
    CHECK(exact_count({6, 3, {5, 5, 5, 5, 5, 5}}).value == 1044);
    CHECK(exact_count({8, 3, {11, 11, 11, 11, 10, 10, 10, 10}}).value == BigInt("202161821625"));
    CHECK(exact_count({10, 3, std::vector<std::int64_t>(10, 18)}).value == BigInt("9971916617717964301070485296"));
}

TEST_CASE("n=4 r=3 sequences are forced: at most one hypergraph, never interior") {
    for (const auto& s : parity_valid(4, 3)) {
        CAPTURE(s.degrees);
        CHECK(exact_count(s).value <= 1);
        CHECK_FALSE(fixture::linear_interior(s.degrees, 3));
    }
}

TEST_CASE("exact count respects its transition budget") {
    Limits tight;
    tight.exact_ops = 50;
    try {
        exact_count({8, 3, {11, 11, 11, 11, 10, 10, 10, 10}}, {}, tight);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
}

TEST_CASE("sum of H over degree sequences is the number of m-edge hypergraphs") {
    for (int m = 0; m <= 4; ++m) {
        const TotalIdentity t = total_identity_check(4, 3, m);
        CHECK(t.holds);
        CHECK(t.rhs == oracle::binom(4, m));
    }
    const TotalIdentity t = total_identity_check(6, 2, 5);
    CHECK(t.holds);
    CHECK(t.lhs == oracle::binom(15, 5));
}

TEST_CASE("Cauchy quadrature reproduces the exact count") {
    for (const auto& s : parity_valid(4, 3)) {
        const double exact = static_cast<double>(exact_count(s).value);
        const Quadrature q = cauchy_quadrature(s, BetaVector(std::vector<double>(4, 0.0)));
        CAPTURE(s.degrees);
        if (exact == 0)
            CHECK(std::abs(q.value) <= 1e-8);
        else
            CHECK(std::abs(q.value / exact - 1) <= 1e-8);
        CHECK(q.M == 7);
    }
    Limits tight;
    tight.grid = 10;
    CHECK_THROWS_AS(cauchy_quadrature({5, 3, {3, 3, 3, 3, 3}}, BetaVector(std::vector<double>(5, 0.0)), tight),
                    Error);
}

TEST_CASE("hypergeometric law: normalization, mean and variance") {
    const HypergeomSpec s = HypergeomSpec::make(7, 3, 12);
    double tot = 0, mean = 0, sq = 0;
    for (std::int64_t k = 0; k <= s.draws; ++k) {
        const double p = hypergeom_pmf(s, k);
        tot += p;
        mean += k * p;
        sq += k * k * p;
    }
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mean == doctest::Approx(s.mean).epsilon(1e-12));
    CHECK(sq - mean * mean == doctest::Approx(s.variance).epsilon(1e-11));
    // pmf against big-integer binomials
    for (std::int64_t k = 0; k <= s.draws; ++k) {
        const double ref = static_cast<double>(oracle::binom(15, static_cast<int>(k)) *
                                               oracle::binom(20, static_cast<int>(12 - k))) /
                           static_cast<double>(oracle::binom(35, 12));
        CHECK(hypergeom_pmf(s, k) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("dp normalizer matches a direct convolution") {
    const HypergeomSpec s = HypergeomSpec::make(5, 3, 4);
    std::vector<double> one(s.draws + 1), acc{1.0};
    for (std::int64_t k = 0; k <= s.draws; ++k) one[k] = hypergeom_pmf(s, k);
    for (int c = 0; c < 5; ++c) {
        std::vector<double> next(acc.size() + s.draws, 0.0);
        for (std::size_t a = 0; a < acc.size(); ++a)
            for (std::size_t k = 0; k < one.size(); ++k) next[a + k] += acc[a] * one[k];
        acc = next;
    }
    CHECK(conditioned_sum_prob(s, 5, 12, NormalizerMethod::Dp) == doctest::Approx(acc[12]).epsilon(1e-12));
}

TEST_CASE("model probabilities sum to one and D-exact is H over the total") {
    for (auto [n, r, m] : {std::tuple{4, 3, 2}, {5, 3, 3}}) {
        const int N = static_cast<int>(binom_u64(n - 1, r - 1));
        double sumB = 0, sumT = 0;
        for (auto& d : oracle::compositions(n, N, static_cast<std::int64_t>(r) * m)) {
            const DegreeSequence s{n, r, d};
            sumB += std::exp(prob_model(s, Model::B).ln_prob);
            sumT += std::exp(prob_model(s, Model::T).ln_prob);
            const ModelPoint D = prob_model(s, Model::DExact);
            oracle::EdgeByEdge o(n, r);
            CHECK(D.notes.at("H") == o.count(d).str());
        }
        CHECK(std::abs(sumB - 1) <= 1e-10);
        CHECK(std::abs(sumT - 1) <= 1e-10);
    }
}

TEST_CASE("stirling expansion against exact log-gamma") {
    const auto exact = [](double K, double lam, double x) { return lbinom(K, lam * K + x); };
    CHECK(std::abs(stirling_binom(1e4, 0.5, 0) / exact(1e4, 0.5, 0) - 1) <= 1e-6);
    CHECK(std::abs(stirling_binom(1e4, 0.5, 50) / exact(1e4, 0.5, 50) - 1) <= 1e-6);
    CHECK(std::abs(stirling_binom(1e6, 0.3, 500) / exact(1e6, 0.3, 500) - 1) <= 1e-6);
    CHECK(stirling_binom(100, 0.5, 0) == doctest::Approx(66.78384161035576).epsilon(1e-12));
}

TEST_CASE("hypergeometric tail bound holds for n=6 r=3 m=10") {
    const TailCheck t = tail_bound_check(6, 3, 10);
    CHECK(t.holds);
    CHECK(t.tail.size() == 15);
}

TEST_CASE("sampler: degree sums, seed determinism, thread independence") {
    const auto a = sample_degrees(9, 3, 20, 123);
    const auto b = sample_degrees(9, 3, 20, 123);
    CHECK(a == b);
    std::int64_t s = 0;
    for (auto x : a) s += x;
    CHECK(s == 60);
    set_thread_count(1);
    const auto x = sample_batch(9, 3, 20, 7, 33);
    set_thread_count(3);
    const auto y = sample_batch(9, 3, 20, 7, 33);
    set_thread_count(0);
    CHECK(x == y);
    CHECK(x.size() == 33);
}

TEST_CASE("sampler frequencies match exact degree-sequence probabilities") {
    // n=4, r=3, m=2: each of C(4,2) = 6 edge pairs is equally likely.
    std::map<std::vector<std::int64_t>, int> freq;
    const int trials = 60000;
    const auto batch = sample_batch(4, 3, 2, 2024, trials);
    for (const auto& d : batch) ++freq[d];
    for (const auto& [d, c] : freq) {
        const double p = static_cast<double>(exact_count({4, 3, d}).value) / 6.0;
        const double sd = std::sqrt(trials * p * (1 - p));
        CHECK(std::abs(c - trials * p) <= 5 * sd);
    }
    CHECK(freq.size() == 6);
}

TEST_CASE("conditional weight gap is small for a moderate instance") {
    const double g = conditional_weight_gap(8, 3, 28);
    CHECK(std::isfinite(g));
    CHECK(g < 0.5);
}
