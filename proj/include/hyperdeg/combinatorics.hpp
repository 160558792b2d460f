#pragma once

#include <cstdint>
#include <vector>

#include "hyperdeg/core.hpp"

namespace hyperdeg {

// r-subsets of {0..n-1} as strictly increasing index lists, ordered colexicographically.
// rank({c_0 < ... < c_{r-1}}) = sum_i C(c_i, i+1).

std::uint64_t colex_rank(const std::vector<int>& subset);
std::vector<int> colex_unrank(std::uint64_t rank, int r);
void colex_unrank_into(std::uint64_t rank, int r, std::vector<int>& out);

// Advances to the colex successor; returns false past the last subset of an n-set.
bool colex_next(std::vector<int>& subset, int n);

// Table of C(a, b) for a <= amax, b <= bmax; saturates at UINT64_MAX.
class BinomTable {
public:
    BinomTable(int amax, int bmax);
    std::uint64_t operator()(int a, int b) const {
        if (b < 0 || a < 0 || b > a) return 0;
        if (b > bmax_) b = a - b;
        if (a >= amax_ + 1 || b > bmax_) fail(ErrorKind::RangeViolation, "binomial table lookup out of range");
        return t_[static_cast<std::size_t>(a) * (bmax_ + 1) + b];
    }

private:
    int amax_;
    int bmax_;
    std::vector<std::uint64_t> t_;
};

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = next(); while (x >= lim);
        return x % bound;
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace hyperdeg
