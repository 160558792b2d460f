#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperdeg/core.hpp"

namespace fixture {

struct Lcg {
    std::uint64_t x;
    std::uint64_t next() {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        return x >> 17;
    }
    int below(int b) { return static_cast<int>(next() % static_cast<std::uint64_t>(b)); }
};

inline hyperdeg::DegreeSequence near_regular_draw(int n, Lcg& g, int r) {
    const auto N = static_cast<std::int64_t>(hyperdeg::binom_u64(n - 1, r - 1));
    const std::int64_t lo = (3 * N) / 10 + 1, hi = (7 * N) / 10;
    const std::int64_t base = lo + g.below(static_cast<int>(hi - lo + 1));
    std::vector<std::int64_t> d(n, base);
    std::int64_t sum = base * n;
    while (sum % r != 0) {
        ++d[g.below(n)];
        ++sum;
    }
    const double cap = std::pow(static_cast<double>(sum) / n, 0.6);
    const int moves = 2 * n;
    for (int t = 0; t < moves; ++t) {
        const int i = g.below(n), j = g.below(n);
        if (i == j) continue;
        d[i] += 1;
        d[j] -= 1;
        const double mean = static_cast<double>(sum) / n;
        if (std::abs(d[i] - mean) > cap || std::abs(d[j] - mean) > cap || d[j] < 1 || d[i] >= N) {
            d[i] -= 1;
            d[j] += 1;
        }
    }
    return {n, r, d};
}

// True when x_W = lambda + sum_{j in W} delta_j / (N - C(n-2,r-2)) lies strictly in
// (0,1) for every r-set W. That x is a fractional hypergraph with degrees d, so d is
// interior to the degree polytope and a finite beta* exists.
inline bool linear_interior(const std::vector<std::int64_t>& d, int r) {
    const int n = static_cast<int>(d.size());
    double sum = 0;
    for (auto x : d) sum += static_cast<double>(x);
    const double mean = sum / n;
    const double lambda = mean / static_cast<double>(hyperdeg::binom_u64(n - 1, r - 1));
    const double gap = static_cast<double>(hyperdeg::binom_u64(n - 1, r - 1) - hyperdeg::binom_u64(n - 2, r - 2));
    std::vector<double> a;
    for (auto x : d) a.push_back((static_cast<double>(x) - mean) / gap);
    std::sort(a.begin(), a.end());
    double low = lambda, high = lambda;
    for (int i = 0; i < r; ++i) {
        low += a[i];
        high += a[n - 1 - i];
    }
    return low > 1e-9 && high < 1 - 1e-9;
}

// Parity-valid sequence on n vertices with lambda in roughly [0.3, 0.7] and
// delta_max <= d^{3/5}, built by unit transfers from a near-constant start.
// Draws are repeated until linear_interior certifies the result.
inline hyperdeg::DegreeSequence near_regular(int n, std::uint64_t seed, int r = 3) {
    Lcg g{seed * 0x9E3779B97F4A7C15ULL + 1};
    for (;;) {
        auto s = near_regular_draw(n, g, r);
        if (linear_interior(s.degrees, r)) return s;
    }
}

}  // namespace fixture
