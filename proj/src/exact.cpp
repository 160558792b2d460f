#include "hyperdeg/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <string>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/parallel.hpp"

namespace hyperdeg {

BigInt big_binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

namespace {

// ---- modular arithmetic ----------------------------------------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

const std::vector<u64>& prime_table() {
    static const std::vector<u64> table = [] {
        std::vector<u64> ps;
        for (u64 c = (1ULL << 62) - 1; ps.size() < 32; c -= 2)
            if (is_prime_u64(c)) ps.push_back(c);
        return ps;
    }();
    return table;
}

constexpr double kPrimeBits = 61.9;

// Garner reconstruction of the unique value below the product of the primes.
BigInt crt(const u64* res, int K) {
    const auto& ps = prime_table();
    BigInt value = 0, modulus = 1;
    for (int i = 0; i < K; ++i) {
        const u64 p = ps[i];
        const u64 cur = static_cast<u64>(value % p);
        const u64 mm = static_cast<u64>(modulus % p);
        const u64 diff = (res[i] + p - cur) % p;
        const u64 t = mulmod(diff, powmod(mm, p - 2, p), p);
        value += modulus * t;
        modulus *= p;
    }
    return value;
}

// ---- symmetry-compressed elimination DP -----------------------------------
//
// Vertices are eliminated one at a time. All edges through the current
// top-level pivot v1 are chosen by a nested sweep: at depth l the pivots
// v1..vl are fixed and a further pivot is drawn from Avail; at depth r-1 the
// remaining single vertex of each edge is chosen from Avail class by class.
// Vertices with equal residual are exchangeable, so each group is stored as a
// sorted multiset and class choices carry binomial multiplicities.
//
// Key layout at depth l: [k_1..k_l][Avail][D_l][D_{l-1}]..[D_1], each group
// sorted ascending. k_i is the residual of pivot v_i; D_i holds vertices
// already used as pivot i+1 under v_1..v_i. Group sizes depend only on the
// step, never on the state, so keys carry no separators. Drawing the next
// pivot (the min of Avail) leaves the key unchanged. The leaf emits keys
// already popped back to depth r-2.

// Hash map from fixed-width packed keys to K residues. Entries live densely in
// fixed-size blocks in insertion order. A probe slot holds a 32-bit hash tag in
// the high half and the 1-based entry index in the low half; 0 marks empty.
class FlatTable {
public:
    FlatTable(int words, int K) : words_(words), K_(K), stride_(words + K) { reslot(1024); }

    std::size_t size() const { return size_; }

    void clear() {
        std::fill(slots_.begin(), slots_.end(), 0);
        size_ = 0;
    }

    // Adds w * mult (mod p_i) into the entry for key.
    void add(const u64* key, const u64* w, u64 mult, const u64* p) {
        if ((size_ + 1) * 10 > slots_.size() * 7) reslot(slots_.size() * 2);
        const u64 h = hash(key);
        const std::size_t s = probe(key, h);
        u64* e;
        if (slots_[s] == 0) {
            if (size_ == static_cast<std::size_t>(UINT32_MAX) - 1) fail(ErrorKind::BudgetExceeded, "DP state table is full");
            if ((size_ >> kBlockBits) == blocks_.size()) blocks_.emplace_back(new u64[stride_ << kBlockBits]);
            e = entry(size_);
            slots_[s] = (h & kTagMask) | ++size_;
            std::copy(key, key + words_, e);
            for (int k = 0; k < K_; ++k) e[words_ + k] = mult == 1 ? w[k] : mulmod(w[k], mult, p[k]);
            return;
        }
        e = entry((slots_[s] & kIndexMask) - 1) + words_;
        for (int k = 0; k < K_; ++k) {
            u64 v = e[k] + (mult == 1 ? w[k] : mulmod(w[k], mult, p[k]));
            if (v >= p[k]) v -= p[k];
            e[k] = v;
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < size_; ++i) {
            const u64* e = entry(i);
            f(e, e + words_);
        }
    }

    void swap(FlatTable& o) noexcept {
        std::swap(words_, o.words_);
        std::swap(K_, o.K_);
        std::swap(stride_, o.stride_);
        std::swap(size_, o.size_);
        slots_.swap(o.slots_);
        blocks_.swap(o.blocks_);
    }

private:
    static constexpr int kBlockBits = 16;
    static constexpr u64 kIndexMask = 0xFFFFFFFFULL;
    static constexpr u64 kTagMask = ~kIndexMask;
    int words_, K_, stride_;
    std::size_t size_ = 0;
    std::vector<u64> slots_;
    std::vector<std::unique_ptr<u64[]>> blocks_;

    u64* entry(std::size_t i) const {
        return blocks_[i >> kBlockBits].get() + (i & ((std::size_t{1} << kBlockBits) - 1)) * stride_;
    }

    static u64 mix(u64 x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    u64 hash(const u64* key) const {
        u64 h = 0x9E3779B97F4A7C15ULL;
        for (int w = 0; w < words_; ++w) h = mix(h ^ key[w]);
        return h;
    }

    std::size_t probe(const u64* key, u64 h) const {
        const std::size_t mask = slots_.size() - 1;
        const u64 tag = h & kTagMask;
        std::size_t s = h & mask;
        for (;; s = (s + 1) & mask) {
            const u64 v = slots_[s];
            if (v == 0) return s;
            if ((v & kTagMask) == tag && std::equal(key, key + words_, entry((v & kIndexMask) - 1))) return s;
        }
    }

    void reslot(std::size_t cap) {
        slots_.assign(cap, 0);
        for (std::size_t i = 0; i < size_; ++i) {
            const u64 h = hash(entry(i));
            slots_[probe(entry(i), h)] = (h & kTagMask) | (i + 1);
        }
    }
};

class EliminationDp {
public:
    EliminationDp(const DegreeSequence& seq, int K, const Limits& lim)
        : n_(seq.n), r_(seq.r), K_(K), lim_(lim), map_(1, K), next_(1, K), outer_(1, K) {
        const auto& ps = prime_table();
        p_.assign(ps.begin(), ps.begin() + K);
        std::int64_t top = 1;
        for (auto x : seq.degrees) top = std::max(top, x);
        bits_ = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(top)));
        words_ = (n_ * bits_ + 63) / 64;
        map_ = FlatTable(words_, K_);
        next_ = FlatTable(words_, K_);
        outer_ = FlatTable(words_, K_);
        binom_ = BinomTable(n_, n_);
        std::vector<std::uint16_t> d(seq.degrees.begin(), seq.degrees.end());
        std::sort(d.begin(), d.end(), std::less<>());
        std::vector<u64> key(words_);
        pack(d.data(), n_, key.data());
        const std::vector<u64> one(K_, 1);
        map_.add(key.data(), one.data(), 1, p_.data());
        len_ = avail_ = n_;
    }

    BigInt run() {
        prune_global();
        fold();
        while (avail_ >= r_ && map_.size() > 0) {
            outer_step();
            prune_global();
            fold();
        }
        std::vector<u64> total(K_, 0);
        std::vector<std::uint16_t> k(len_ + 1);
        map_.for_each([&](const u64* key, const u64* w) {
            unpack(key, len_, k.data());
            if (std::all_of(k.begin(), k.begin() + len_, [](std::uint16_t c) { return c == 0; }))
                for (int i = 0; i < K_; ++i) total[i] = (total[i] + w[i]) % p_[i];
        });
        return crt(total.data(), K_);
    }

    std::uint64_t transitions() const { return transitions_; }
    std::uint64_t peak() const { return peak_; }

private:
    // Outer states per inner sweep; bounds the inner tables at some loss of sharing.
    static constexpr std::size_t kBatch = 1u << 15;

    int n_, r_, K_;
    Limits lim_;
    std::vector<u64> p_;
    int bits_ = 1, words_ = 1;
    FlatTable map_, next_, outer_;
    int len_ = 0;  // vertices not yet eliminated
    int depth_ = 0;
    std::vector<int> dsize_{0};  // dsize_[i] = |D_i|, index 0 unused
    int avail_ = 0;
    std::uint64_t transitions_ = 0;
    std::uint64_t peak_ = 0;
    BinomTable binom_{0, 0};
    std::vector<std::uint16_t> buf_, out_, popped_;
    std::vector<u64> packed_;

    void pack(const std::uint16_t* in, int len, u64* out) const {
        std::fill(out, out + words_, 0);
        for (int i = 0; i < len; ++i) {
            const int bit = i * bits_, w = bit >> 6, o = bit & 63;
            out[w] |= static_cast<u64>(in[i]) << o;
            if (o + bits_ > 64) out[w + 1] |= static_cast<u64>(in[i]) >> (64 - o);
        }
    }

    void unpack(const u64* in, int len, std::uint16_t* out) const {
        const u64 mask = (1ULL << bits_) - 1;
        for (int i = 0; i < len; ++i) {
            const int bit = i * bits_, w = bit >> 6, o = bit & 63;
            u64 v = in[w] >> o;
            if (o + bits_ > 64) v |= in[w + 1] << (64 - o);
            out[i] = static_cast<std::uint16_t>(v & mask);
        }
    }

    void emit(FlatTable& t, const std::uint16_t* key, int len, const u64* w, u64 mult) {
        if (++transitions_ > lim_.exact_ops)
            fail(ErrorKind::BudgetExceeded,
                 "exact count exceeded the DP budget of " + std::to_string(lim_.exact_ops) + " transitions");
        packed_.resize(words_);
        pack(key, len, packed_.data());
        t.add(packed_.data(), w, mult, p_.data());
    }

    void commit() {
        map_.swap(next_);
        next_.clear();
        peak_ = std::max<std::uint64_t>(peak_, map_.size());
    }

    // Applies f(key, w) to every state; f emits into next_.
    template <class F>
    void rebuild(F&& f) {
        buf_.resize(len_ + 1);
        map_.for_each([&](const u64* key, const u64* w) {
            unpack(key, len_, buf_.data());
            f(buf_.data(), w);
        });
        commit();
    }

    void outer_step() {
        const int avail0 = avail_;
        outer_.clear();
        outer_.swap(map_);  // map_ empty, outer_ holds the depth-0 states
        std::size_t taken = 0;
        FlatTable result(words_, K_);
        buf_.resize(len_ + 1);
        auto flush = [&] {
            depth_ = 0;
            dsize_.assign(1, 0);
            avail_ = avail0;
            const int len0 = len_;
            descend(1);
            map_.for_each([&](const u64* key, const u64* w) { result.add(key, w, 1, p_.data()); });
            map_.clear();
            len_ = len0;
            taken = 0;
        };
        outer_.for_each([&](const u64* key, const u64* w) {
            map_.add(key, w, 1, p_.data());
            if (++taken == kBatch) flush();
        });
        if (taken > 0) flush();
        // Every outer step removes exactly one vertex.
        depth_ = 0;
        dsize_.assign(1, 0);
        avail_ = avail0 - 1;
        len_ -= 1;
        map_.swap(result);
        peak_ = std::max<std::uint64_t>(peak_, map_.size());
    }

    void push() {
        ++depth_;
        dsize_.push_back(0);
        --avail_;
    }

    // Key after popping pivot v_L: it joins D_{L-1} and D_L merges back into
    // Avail. Returns the new length, or -1 if the state dies.
    int pop_key(const std::uint16_t* k, std::uint16_t* o) const {
        const int L = depth_;
        const int dL = dsize_[L];
        const std::uint16_t piv = k[L - 1];
        if (L == 1 && piv != 0) return -1;
        std::copy(k, k + L - 1, o);
        const std::uint16_t* a = k + L;
        const std::uint16_t* dl = a + avail_;
        std::uint16_t* m = std::merge(a, a + avail_, dl, dl + dL, o + L - 1, std::less<>());
        const std::uint16_t* rest = dl + dL;
        if (L >= 2) {
            const int s = dsize_[L - 1];
            m = std::merge(rest, rest + s, &piv, &piv + 1, m, std::less<>());
            rest += s;
        }
        std::copy(rest, k + len_, m);
        if (L >= 2 && dead(o, L - 1, avail_ + dL, dsize_[1] + (L == 2), len_)) return -1;
        return L == 1 ? len_ - 1 : len_;
    }

    void pop_shape() {
        const int L = depth_;
        avail_ += dsize_[L];
        dsize_.pop_back();
        --depth_;
        if (depth_ >= 1) ++dsize_[depth_];
        if (L == 1) --len_;
    }

    void pop() {
        out_.resize(len_ + 1);
        rebuild([&](const std::uint16_t* k, const u64* w) {
            const int len = pop_key(k, out_.data());
            if (len >= 0) emit(next_, out_.data(), len, w, 1);
        });
        pop_shape();
    }

    // Draws the next pivot and settles all of its edges.
    void descend(int level) {
        push();
        if (level == r_ - 1) {
            leaf();
            pop_shape();
        } else {
            process(level);
            pop();
        }
    }

    // Vertices in D_1 share no further edge with v_1; the rest share at most k_1 more.
    // At depth 1 the edges still owed by v_1 must come from Avail.
    bool dead(const std::uint16_t* o, int depth, int avail, int d1, int len) const {
        if (depth == 1 && o[0] > binom_(avail, r_ - 1)) return true;
        const std::uint64_t room = binom_(len - 2, r_ - 1);
        if (d1 > 0 && o[len - 1] > room) return true;
        return avail > 0 && o[depth + avail - 1] > room + std::min<std::uint64_t>(o[0], binom_(avail - 1, r_ - 2));
    }

    void leaf() {
        // choose a subset of Avail; every chosen vertex and every pivot loses one
        std::vector<std::pair<std::uint16_t, int>> classes;
        std::vector<int> pick;
        out_.resize(len_ + 1);
        popped_.resize(len_ + 1);
        rebuild([&](const std::uint16_t* k, const u64* w) {
            int cap = k[0];
            for (int i = 1; i < depth_; ++i) cap = std::min<int>(cap, k[i]);
            classes.clear();
            for (int i = depth_; i < depth_ + avail_; ++i) {
                if (!classes.empty() && classes.back().first == k[i])
                    ++classes.back().second;
                else
                    classes.emplace_back(k[i], 1);
            }
            pick.assign(classes.size(), 0);
            enumerate_picks(k, w, cap, classes, pick, 0, 0, 1);
        });
    }

    void enumerate_picks(const std::uint16_t* k, const u64* w, int cap,
                         const std::vector<std::pair<std::uint16_t, int>>& classes, std::vector<int>& pick,
                         std::size_t ci, int tot, u64 mult) {
        if (ci == classes.size()) {
            std::uint16_t* o = out_.data();
            for (int i = 0; i < depth_; ++i) o[i] = static_cast<std::uint16_t>(k[i] - tot);
            // classes ascend and val-1 >= previous val, so the result stays sorted
            int pos = depth_;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const auto [val, cnt] = classes[c];
                for (int t = 0; t < pick[c]; ++t) o[pos++] = static_cast<std::uint16_t>(val - 1);
                for (int t = 0; t < cnt - pick[c]; ++t) o[pos++] = val;
            }
            std::copy(k + pos, k + len_, o + pos);
            if (dead(o, depth_, avail_, dsize_[1], len_)) return;
            const int len = pop_key(o, popped_.data());
            if (len >= 0) emit(next_, popped_.data(), len, w, mult);
            return;
        }
        const auto [val, cnt] = classes[ci];
        const int jmax = (val == 0) ? 0 : std::min(cnt, cap - tot);
        for (int j = 0; j <= jmax; ++j) {
            pick[ci] = j;
            enumerate_picks(k, w, cap, classes, pick, ci + 1, tot + j, mult * binom_(cnt, j));
        }
        pick[ci] = 0;
    }

    void process(int level) {
        while (avail_ >= r_ - level && map_.size() > 0) descend(level + 1);
    }

    template <class Pred>
    void filter(Pred&& drop) {
        rebuild([&](const std::uint16_t* k, const u64* w) {
            if (!drop(k)) {
                packed_.resize(words_);
                pack(k, len_, packed_.data());
                next_.add(packed_.data(), w, 1, p_.data());
            }
        });
    }

    // A finished prefix leaves a plain count on len_ vertices, which equals the count
    // for the complementary residuals C(len_-1, r-1) - k. Keep the form with the
    // smaller sum (lexicographic on ties) when it fits the key width.
    void fold() {
        if (len_ < 2) return;
        const std::uint64_t full = binom_(len_ - 1, r_ - 1);
        const std::uint64_t top = (std::uint64_t{1} << bits_) - 1;
        out_.resize(len_ + 1);
        rebuild([&](const std::uint16_t* k, const u64* w) {
            const std::uint16_t* key = k;
            if (full - k[0] <= top) {
                std::uint16_t* c = out_.data();
                std::uint64_t sk = 0, sc = 0;
                for (int i = 0; i < len_; ++i) {
                    c[i] = static_cast<std::uint16_t>(full - k[len_ - 1 - i]);
                    sk += k[i];
                    sc += c[i];
                }
                if (sc < sk || (sc == sk && std::lexicographical_compare(c, c + len_, k, k + len_))) key = c;
            }
            packed_.resize(words_);
            pack(key, len_, packed_.data());
            next_.add(packed_.data(), w, 1, p_.data());
        });
    }

    // at depth 0 every residual must fit in the edges left among Avail
    void prune_global() {
        if (avail_ == 0) return;
        const std::uint64_t room = binom_(avail_ - 1, r_ - 1);
        filter([&](const std::uint16_t* k) { return len_ > 0 && k[len_ - 1] > room; });
    }
};

}  // namespace

ExactCount exact_count(const DegreeSequence& seq, const ExactOptions& opt, const Limits& lim) {
    const DerivedParams p = validate(seq);
    ExactCount out;
    out.seq = seq;
    // A vertex lies in at most m edges and misses at most C - m; otherwise no hypergraph
    // exists and the quadrant images are not degree sequences.
    {
        const auto C0 = static_cast<std::int64_t>(binom_u64(seq.n, seq.r));
        const auto N0 = static_cast<std::int64_t>(p.N);
        for (auto dj : seq.degrees)
            if (dj > p.m || N0 - dj > C0 - p.m) {
                out.value = 0;
                return out;
            }
    }
    DegreeSequence work = opt.canonicalize ? canonicalize_first_quadrant(seq).first : seq;
    const auto C = binom_u64(work.n, work.r);
    const std::int64_t m = p.m;
    const std::int64_t mw = validate(work).m;
    if (m == 0 || static_cast<std::uint64_t>(m) == C || work.r == 0 || mw == 0) {
        out.value = 1;
        return out;
    }
    if (work.r == 1) {  // every vertex of degree 1 is its own edge
        out.value = 1;
        return out;
    }
    if (p.N > 65535) fail(ErrorKind::BudgetExceeded, "degrees exceed the 16-bit DP key range");
    const double bits = lbinom(static_cast<double>(C), static_cast<double>(mw)) / std::log(2.0) + 2;
    const int need = static_cast<int>(std::ceil(bits / kPrimeBits));
    int K = 1;
    while (K < need) K *= 2;
    if (K > static_cast<int>(prime_table().size())) fail(ErrorKind::BudgetExceeded, "count width exceeds the residue budget");
    EliminationDp dp(work, K, lim);
    out.value = dp.run();
    out.transitions = dp.transitions();
    out.peak_states = dp.peak();
    return out;
}

TotalIdentity total_identity_check(int n, int r, std::int64_t m, const Limits& lim) {
    if (n < 2 || r < 1 || r > n - 1) fail(ErrorKind::RangeViolation, "invalid (n, r)");
    const std::int64_t N = static_cast<std::int64_t>(binom_u64(n - 1, r - 1));
    const std::int64_t C = static_cast<std::int64_t>(binom_u64(n, r));
    if (m < 0 || m > C) fail(ErrorKind::RangeViolation, "edge count outside [0, C(n,r)]");
    TotalIdentity ti;
    ti.rhs = big_binom(C, m);
    const std::int64_t target = static_cast<std::int64_t>(r) * m;
    std::vector<std::int64_t> d(n, 0);
    std::uint64_t budget_used = 0;
    std::function<void(int, std::int64_t)> rec = [&](int j, std::int64_t left) {
        if (j == n - 1) {
            if (left > N) return;
            d[j] = left;
            if (++budget_used > lim.exact_ops) fail(ErrorKind::BudgetExceeded, "composition budget exceeded");
            ++ti.sequences;
            ti.lhs += exact_count(DegreeSequence{n, r, d}, ExactOptions{false}, lim).value;
            return;
        }
        for (std::int64_t x = 0; x <= std::min(N, left); ++x) {
            d[j] = x;
            rec(j + 1, left - x);
        }
    };
    rec(0, target);
    ti.holds = (ti.lhs == ti.rhs);
    return ti;
}

Quadrature cauchy_quadrature(const DegreeSequence& seq, const BetaVector& beta, const Limits& lim) {
    validate(seq);
    const int n = seq.n, r = seq.r;
    if (beta.size() != n) fail(ErrorKind::DimensionMismatch, "beta length differs from n");
    const std::int64_t N = static_cast<std::int64_t>(binom_u64(n - 1, r - 1));
    const int M = static_cast<int>(2 * N + 1);
    double pts = 1;
    for (int j = 0; j < n; ++j) pts *= M;
    if (pts > static_cast<double>(lim.grid))
        fail(ErrorKind::GridBudgetExceeded, "quadrature grid of " + std::to_string(pts) +
                                                " points exceeds the budget " + std::to_string(lim.grid));
    const std::uint64_t total = static_cast<std::uint64_t>(pts);
    const std::uint64_t C = binom_u64(n, r);
    if (C > lim.subsets) fail(ErrorKind::BudgetExceeded, "subset count exceeds the budget");

    std::vector<std::vector<int>> subsets;
    std::vector<double> lam;
    {
        std::vector<int> W(r);
        for (int i = 0; i < r; ++i) W[i] = i;
        do {
            subsets.push_back(W);
            lam.push_back(lambda_of_subset(beta, W));
        } while (colex_next(W, n));
    }
    // unit roots e^{i theta} for theta = -pi + 2 pi (k+1) / M
    std::vector<std::complex<double>> root(M);
    for (int k = 0; k < M; ++k) {
        const double th = -std::numbers::pi + 2 * std::numbers::pi * (k + 1) / M;
        root[k] = {std::cos(th), std::sin(th)};
    }
    // powers root[k]^{-d_j}
    std::vector<std::vector<std::complex<double>>> phase(n, std::vector<std::complex<double>>(M));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < M; ++k) {
            const double th = -std::numbers::pi + 2 * std::numbers::pi * (k + 1) / M;
            const double a = -th * static_cast<double>(seq.degrees[j]);
            phase[j][k] = {std::cos(a), std::sin(a)};
        }

    struct Acc {
        CompSum re, im;
    };
    auto leaf = [&](std::uint64_t lo, std::uint64_t hi) {
        Acc acc;
        std::vector<int> idx(n);
        std::vector<std::complex<double>> z(n);
        for (std::uint64_t g = lo; g < hi; ++g) {
            std::uint64_t x = g;
            for (int j = 0; j < n; ++j) {
                idx[j] = static_cast<int>(x % M);
                x /= M;
                z[j] = root[idx[j]];
            }
            std::complex<double> F = 1.0;
            for (std::size_t w = 0; w < subsets.size(); ++w) {
                std::complex<double> e = 1.0;
                for (int j : subsets[w]) e *= z[j];
                F *= 1.0 + lam[w] * (e - 1.0);
            }
            for (int j = 0; j < n; ++j) F *= phase[j][idx[j]];
            acc.re.add(F.real());
            acc.im.add(F.imag());
        }
        return acc;
    };
    auto merge = [](Acc& a, const Acc& b) {
        a.re.merge(b.re);
        a.im.merge(b.im);
    };
    const Acc acc = deterministic_reduce<Acc>(total, leaf, merge);

    // P_r(beta) (2 pi / M)^n = exp(-sum beta_j d_j + sum_W softplus(s_W)) / M^n
    CompSum lnp;
    for (int j = 0; j < n; ++j) lnp.add(-beta.beta[j] * static_cast<double>(seq.degrees[j]));
    for (const auto& W : subsets) {
        double s = 0;
        for (int j : W) s += beta.beta[j];
        lnp.add(softplus(s));
    }
    const double scale = std::exp(lnp.value() - n * std::log(static_cast<double>(M)));
    Quadrature q;
    q.value = scale * acc.re.value();
    q.imag = scale * acc.im.value();
    q.points = total;
    q.M = M;
    return q;
}

}  // namespace hyperdeg
