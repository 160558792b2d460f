#include "hyperdeg/models.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <unordered_map>

#include "hyperdeg/combinatorics.hpp"
#include "hyperdeg/enumerate.hpp"
#include "hyperdeg/exact.hpp"
#include "hyperdeg/parallel.hpp"

namespace hyperdeg {

HypergeomSpec HypergeomSpec::make(int n, int r, std::int64_t m) {
    if (n < 2 || r < 1 || r > n - 1) fail(ErrorKind::RangeViolation, "invalid (n, r)");
    HypergeomSpec s;
    s.n = n;
    s.r = r;
    s.population = static_cast<std::int64_t>(binom_u64(n, r));
    s.draws = static_cast<std::int64_t>(binom_u64(n - 1, r - 1));
    if (m < 0 || m > s.population) fail(ErrorKind::RangeViolation, "edge count outside [0, C(n,r)]");
    s.successes = m;
    const double d = static_cast<double>(r) * m / n;
    const double lam = static_cast<double>(m) / s.population;
    s.mean = d;
    s.variance = (1 - lam) * (n - r) * d * d / (n * d - lam * r);
    return s;
}

double hypergeom_log_pmf(const HypergeomSpec& s, std::int64_t k) {
    const std::int64_t C = s.population, N = s.draws, m = s.successes;
    if (k < 0 || k > N || k > m || m - k > C - N) return -INFINITY;
    return lbinom(static_cast<double>(N), static_cast<double>(k)) +
           lbinom(static_cast<double>(C - N), static_cast<double>(m - k)) -
           lbinom(static_cast<double>(C), static_cast<double>(m));
}

double hypergeom_pmf(const HypergeomSpec& s, std::int64_t k) {
    const double l = hypergeom_log_pmf(s, k);
    return std::isinf(l) ? 0.0 : std::exp(l);
}

const char* normalizer_name(NormalizerMethod m) { return m == NormalizerMethod::Dp ? "dp" : "clt"; }

namespace {

double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// ln of a non-negative big integer; -inf for zero
double big_log(const BigInt& x) {
    if (x == 0) return -INFINITY;
    const auto bits = static_cast<long>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 1000) return std::log(static_cast<double>(x));
    const long shift = bits - 64;
    const BigInt top = x >> shift;
    return std::log(static_cast<double>(top)) + shift * std::numbers::ln2;
}

}  // namespace

std::vector<double> log_sum_distribution(const HypergeomSpec& s, int count, const Limits& lim) {
    const std::int64_t N = s.draws;
    const double work = static_cast<double>(count) * static_cast<double>(N + 1) * static_cast<double>(N + 1) *
                        static_cast<double>(count);
    if (work > 2.0 * static_cast<double>(lim.dp))
        fail(ErrorKind::BudgetExceeded, "convolution exceeds the dp budget");
    std::vector<double> one(N + 1);
    for (std::int64_t k = 0; k <= N; ++k) one[k] = hypergeom_log_pmf(s, k);
    std::vector<double> acc{0.0};
    for (int c = 0; c < count; ++c) {
        std::vector<double> next(acc.size() + N, -INFINITY);
        for (std::size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == -INFINITY) continue;
            for (std::int64_t k = 0; k <= N; ++k) {
                if (one[k] == -INFINITY) continue;
                next[a + k] = log_add(next[a + k], acc[a] + one[k]);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

double conditioned_sum_prob(const HypergeomSpec& s, int n, std::int64_t target, NormalizerMethod method,
                            const Limits& lim) {
    if (method == NormalizerMethod::Clt) {
        const double y = static_cast<double>(target) - n * s.mean;
        const double sig = std::sqrt(s.variance);
        return std::exp(-y * y / (2 * n * s.variance)) / (sig * std::sqrt(2 * std::numbers::pi * n));
    }
    const auto dist = log_sum_distribution(s, n, lim);
    if (target < 0 || static_cast<std::size_t>(target) >= dist.size()) return 0.0;
    return std::exp(dist[target]);
}

const char* model_name(Model m) {
    switch (m) {
        case Model::DExact: return "D-exact";
        case Model::DAsymptotic: return "D-asymptotic";
        case Model::B: return "B";
        case Model::T: return "T";
    }
    return "B";
}

ModelPoint prob_model(const DegreeSequence& seq, Model model, const ModelOptions& opt, const Limits& lim) {
    const DerivedParams p = validate(seq);
    const int n = seq.n, r = seq.r;
    const auto C = static_cast<std::int64_t>(binom_u64(n, r));
    const auto N = static_cast<std::int64_t>(binom_u64(n - 1, r - 1));
    ModelPoint mp;
    mp.model = model;
    const double ln_total = lbinom(static_cast<double>(C), static_cast<double>(p.m));
    switch (model) {
        case Model::B: {
            double s = 0;
            for (auto dj : seq.degrees) s += lbinom(static_cast<double>(N), static_cast<double>(dj));
            const double norm = lbinom(static_cast<double>(n) * N, static_cast<double>(p.degree_sum));
            mp.ln_prob = s - norm;
            mp.components["ln_product"] = s;
            mp.components["ln_normalizer"] = norm;
            break;
        }
        case Model::T: {
            const HypergeomSpec spec = HypergeomSpec::make(n, r, p.m);
            double s = 0;
            for (auto dj : seq.degrees) s += hypergeom_log_pmf(spec, dj);
            NormalizerMethod method = opt.normalizer;
            double P = 0;
            if (method == NormalizerMethod::Dp) {
                try {
                    P = conditioned_sum_prob(spec, n, p.degree_sum, method, lim);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::BudgetExceeded || !opt.allow_clt_fallback) throw;
                    method = NormalizerMethod::Clt;
                }
            }
            if (method == NormalizerMethod::Clt) P = conditioned_sum_prob(spec, n, p.degree_sum, method, lim);
            mp.ln_prob = s - std::log(P);
            mp.components["ln_P"] = std::log(P);
            mp.components["ln_product"] = s;
            mp.notes["normalizer"] = normalizer_name(method);
            break;
        }
        case Model::DExact: {
            const ExactCount ec = exact_count(seq, {}, lim);
            mp.ln_prob = big_log(ec.value) - ln_total;
            mp.components["ln_H"] = big_log(ec.value);
            mp.components["ln_total"] = ln_total;
            mp.notes["H"] = ec.value.str();
            break;
        }
        case Model::DAsymptotic: {
            double lnH;
            try {
                lnH = count_general(seq, {}, lim).ln_value;
                mp.notes["count_method"] = "general";
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::NonConvergence ||
                    e.kind() == ErrorKind::SingularJacobian) {
                    lnH = estimate_near_regular(seq).ln_value;
                    mp.notes["count_method"] = "near-regular";
                } else {
                    throw;
                }
            }
            mp.ln_prob = lnH - ln_total;
            mp.components["ln_H"] = lnH;
            mp.components["ln_total"] = ln_total;
            break;
        }
    }
    return mp;
}

const char* pair_name(RatioPair p) {
    switch (p) {
        case RatioPair::BvsD: return "b-vs-d";
        case RatioPair::DvsT: return "d-vs-t";
        case RatioPair::KLW: return "klw";
    }
    return "d-vs-t";
}

RatioPair parse_pair(const std::string& s) {
    if (s == "b-vs-d") return RatioPair::BvsD;
    if (s == "d-vs-t") return RatioPair::DvsT;
    if (s == "klw") return RatioPair::KLW;
    fail(ErrorKind::ParseError, "unknown comparison '" + s + "'");
}

PredictedRatio predicted_ratio(const DegreeSequence& seq, RatioPair pair, double phi) {
    const DerivedParams p = validate(seq);
    if (!p.flags.density_interior) fail(ErrorKind::DensityDegenerate, "ratios need 0 < lambda < 1");
    const double n = p.n, r = p.r, lam = p.lambda, d = p.d;
    const ErrorIndicators e = error_indicators(p);
    PredictedRatio out;
    out.pair = pair;
    const double binomial_term = (r - 1) * p.R2 / (2 * (1 - lam) * (n - r) * d);
    switch (pair) {
        case RatioPair::BvsD:
            out.ln_ratio = 0.5 * (n - 1) * std::log((n - 1) / (n - r)) - binomial_term;
            out.indicators["eps_bar"] = e.eps_bar;
            out.hypotheses["edge_size_at_least_3"] = r >= 3;
            out.hypotheses["degree_large"] = d >= std::pow(r, 4) * n * std::log(n);
            out.hypotheses["near_regular"] = p.delta_max <= std::pow(d, 0.6);
            break;
        case RatioPair::DvsT:
            out.ln_ratio = 0.5 * (n - 1) * std::log((n - 1) / n) + p.R2 / (2 * p.Q);
            out.indicators["eps_hat"] = e.eps_hat;
            out.hypotheses["edge_size_interior"] = p.flags.edge_size_interior;
            out.hypotheses["main_inequality"] = p.flags.main_inequality;
            out.hypotheses["near_regular"] = p.flags.near_regular;
            break;
        case RatioPair::KLW: {
            out.ln_ratio = 0.5 * (r - 1) - binomial_term;
            const double ln_n = std::log(n);
            double eta;
            if (p.r == 3)
                eta = ln_n * ln_n / std::sqrt(n) + std::pow(d, 2 - 4 * phi) / n + std::pow(d, 1 - 3 * phi);
            else
                eta = r * r * ln_n * ln_n / std::sqrt(n) + (lam * n + r) * r * r * std::pow(d, 1 - 3 * phi);
            out.indicators["eta"] = eta;
            out.indicators["phi"] = phi;
            out.hypotheses["phi_in_range"] = phi > 4.0 / 9.0 && phi < 0.5;
            out.hypotheses["edge_size_at_least_3"] = r >= 3;
            out.hypotheses["edge_size_small"] = r < std::pow(n, 0.25) / ln_n;
            out.hypotheses["deviation_small"] = p.delta_max <= std::pow(d, 1 - phi);
            break;
        }
    }
    return out;
}

double stirling_binom(double K, double lam, double x) {
    const double v = lam * (1 - lam) * K;
    if (!(v > 0)) fail(ErrorKind::DomainError, "stirling expansion needs lambda (1 - lambda) K > 0");
    const double a = 1 - 2 * lam;
    const double v2 = v * v, v3 = v2 * v;
    const double lead = (-lam * K - x - 0.5) * std::log(lam) + (-(1 - lam) * K + x - 0.5) * std::log1p(-lam) -
                        0.5 * std::log(2 * std::numbers::pi * K);
    const double corr = -x * x / (2 * v) - a * x / (2 * v) - (1 - lam + lam * lam) / (12 * v) +
                        a * x * x * x / (6 * v2) + (1 - 2 * lam + 2 * lam * lam) * x * x / (4 * v2) +
                        a * x / (12 * v2) - (1 - 3 * lam + 3 * lam * lam) * x * x * x * x / (12 * v3);
    return lead + corr;
}

namespace {

std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = eng(); while (x >= lim);
    return x % bound;
}

std::vector<std::int64_t> sample_with(int n, int r, std::int64_t m, std::mt19937_64& eng) {
    const std::uint64_t C = binom_u64(n, r);
    if (m < 0 || static_cast<std::uint64_t>(m) > C) fail(ErrorKind::RangeViolation, "edge count outside [0, C(n,r)]");
    std::vector<std::int64_t> deg(n, 0);
    // sparse partial Fisher-Yates over the implicit array [0, C)
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    auto at = [&](std::uint64_t i) {
        auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };
    std::vector<int> W;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(m); ++i) {
        const std::uint64_t j = i + bounded(eng, C - i);
        const std::uint64_t vi = at(i), vj = at(j);
        swapped[j] = vi;
        swapped[i] = vj;
        colex_unrank_into(vj, r, W);
        for (int v : W) ++deg[v];
    }
    return deg;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 sm(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return sm.next();
}

}  // namespace

std::vector<std::int64_t> sample_degrees(int n, int r, std::int64_t m, std::uint64_t rng_seed) {
    if (n < 2 || r < 1 || r > n - 1) fail(ErrorKind::RangeViolation, "invalid (n, r)");
    std::mt19937_64 eng(rng_seed);
    return sample_with(n, r, m, eng);
}

std::vector<std::vector<std::int64_t>> sample_batch(int n, int r, std::int64_t m, std::uint64_t rng_seed,
                                                    std::uint64_t count) {
    if (n < 2 || r < 1 || r > n - 1) fail(ErrorKind::RangeViolation, "invalid (n, r)");
    std::vector<std::vector<std::int64_t>> out(count);
    const unsigned T = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::mt19937_64 eng(stream_seed(rng_seed, i));
            out[i] = sample_with(n, r, m, eng);
        }
    };
    std::vector<std::future<void>> futs;
    const std::uint64_t per = (count + T - 1) / T;
    for (unsigned t = 1; t < T; ++t) {
        const std::uint64_t lo = t * per, hi = std::min(count, lo + per);
        if (lo < hi) futs.push_back(std::async(std::launch::async, work, lo, hi));
    }
    work(0, std::min(count, per));
    for (auto& f : futs) f.get();
    return out;
}

TailCheck tail_bound_check(int n, int r, std::int64_t m) {
    const HypergeomSpec s = HypergeomSpec::make(n, r, m);
    TailCheck tc;
    const double d = s.mean;
    std::vector<double> pmf(s.draws + 1);
    for (std::int64_t k = 0; k <= s.draws; ++k) pmf[k] = hypergeom_pmf(s, k);
    const auto tmax = static_cast<std::int64_t>(std::floor(3 * d));
    for (std::int64_t t = 1; t <= tmax; ++t) {
        CompSum tail;
        for (std::int64_t k = 0; k <= s.draws; ++k)
            if (std::abs(static_cast<double>(k) - d) >= static_cast<double>(t)) tail.add(pmf[k]);
        const double b = 2 * std::exp(-static_cast<double>(t * t) / (2 * (d + t / 3.0)));
        tc.tail.push_back(tail.value());
        tc.bound.push_back(b);
        if (tail.value() > b) tc.holds = false;
    }
    return tc;
}

double conditional_weight_gap(int n, int r, std::int64_t m, const Limits& lim) {
    const HypergeomSpec s = HypergeomSpec::make(n, r, m);
    const auto full = log_sum_distribution(s, n, lim);
    const auto rest = log_sum_distribution(s, n - 1, lim);
    const std::int64_t target = static_cast<std::int64_t>(r) * m;
    double gap = 0;
    for (std::int64_t y = 0; y <= s.draws; ++y) {
        if (hypergeom_pmf(s, y) == 0) continue;
        const std::int64_t idx = target - y;
        if (idx < 0 || static_cast<std::size_t>(idx) >= rest.size()) continue;
        const double Cy = std::exp(rest[idx] - full[target]);
        const double approx = std::exp(-(y - s.mean) * (y - s.mean) / (2 * (n - 1) * s.variance));
        gap = std::max(gap, std::abs(Cy - approx));
    }
    return gap;
}

}  // namespace hyperdeg
