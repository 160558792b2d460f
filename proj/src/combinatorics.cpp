#include "hyperdeg/combinatorics.hpp"

#include <algorithm>

#include "hyperdeg/core.hpp"

namespace hyperdeg {

BinomTable::BinomTable(int amax, int bmax)
    : amax_(amax), bmax_(bmax), t_(static_cast<std::size_t>(amax + 1) * (bmax + 1), 0) {
    for (int a = 0; a <= amax; ++a) {
        for (int b = 0; b <= std::min(a, bmax); ++b) {
            std::uint64_t v;
            if (b == 0 || b == a) {
                v = 1;
            } else {
                const std::uint64_t x = (*this)(a - 1, b - 1);
                const std::uint64_t y = (*this)(a - 1, b);
                v = (x > UINT64_MAX - y) ? UINT64_MAX : x + y;
            }
            t_[static_cast<std::size_t>(a) * (bmax_ + 1) + b] = v;
        }
    }
}

std::uint64_t colex_rank(const std::vector<int>& subset) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        rank += binom_u64(subset[i], static_cast<std::int64_t>(i) + 1);
    return rank;
}

void colex_unrank_into(std::uint64_t rank, int r, std::vector<int>& out) {
    out.assign(r, 0);
    for (int i = r; i >= 1; --i) {
        // largest c with C(c, i) <= rank
        int c = i - 1;
        while (binom_u64(c + 1, i) <= rank) ++c;
        out[i - 1] = c;
        rank -= binom_u64(c, i);
    }
}

std::vector<int> colex_unrank(std::uint64_t rank, int r) {
    std::vector<int> out;
    colex_unrank_into(rank, r, out);
    return out;
}

bool colex_next(std::vector<int>& s, int n) {
    const int r = static_cast<int>(s.size());
    for (int i = 0; i < r; ++i) {
        const int bound = (i + 1 < r) ? s[i + 1] : n;
        if (s[i] + 1 < bound) {
            ++s[i];
            for (int k = 0; k < i; ++k) s[k] = k;
            return true;
        }
    }
    return false;
}

}  // namespace hyperdeg
