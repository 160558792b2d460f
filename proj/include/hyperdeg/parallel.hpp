#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <utility>

namespace hyperdeg {

// Worker cap for every parallel sweep; 0 restores the hardware default.
void set_thread_count(unsigned t);
unsigned thread_count();

inline constexpr std::uint64_t kChunk = 4096;

// Neumaier compensated sum.
struct CompSum {
    double s = 0, c = 0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    void merge(const CompSum& o) {
        add(o.s);
        c += o.c;
    }
    double value() const { return s + c; }
};

namespace detail {
template <class Acc, class Leaf, class Merge>
Acc reduce_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t items, const Leaf& leaf,
                 const Merge& merge, unsigned spawn_budget) {
    if (hi - lo == 1) {
        const std::uint64_t b = lo * kChunk;
        const std::uint64_t e = std::min(items, b + kChunk);
        return leaf(b, e);
    }
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (spawn_budget > 1) {
        const unsigned half = spawn_budget / 2;
        auto fut = std::async(std::launch::async, [&] {
            return reduce_range<Acc>(lo, mid, items, leaf, merge, half);
        });
        Acc right = reduce_range<Acc>(mid, hi, items, leaf, merge, spawn_budget - half);
        Acc left = fut.get();
        merge(left, right);
        return left;
    }
    Acc left = reduce_range<Acc>(lo, mid, items, leaf, merge, 1);
    Acc right = reduce_range<Acc>(mid, hi, items, leaf, merge, 1);
    merge(left, right);
    return left;
}
}  // namespace detail

// Items [0, items) are cut into fixed chunks of kChunk; leaf(begin, end) maps a
// chunk to Acc and merge(left, right) folds right into left. The merge tree
// depends only on the chunk count, so the result is independent of threads.
template <class Acc, class Leaf, class Merge>
Acc deterministic_reduce(std::uint64_t items, const Leaf& leaf, const Merge& merge) {
    if (items == 0) return leaf(0, 0);
    const std::uint64_t chunks = (items + kChunk - 1) / kChunk;
    return detail::reduce_range<Acc>(0, chunks, items, leaf, merge, thread_count());
}

}  // namespace hyperdeg
