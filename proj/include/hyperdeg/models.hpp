#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperdeg/core.hpp"

namespace hyperdeg {

// Degree of one vertex in a uniform m-edge hypergraph: population C(n,r),
// m draws, C(n-1,r-1) marked subsets.
struct HypergeomSpec {
    int n = 0;
    int r = 0;
    std::int64_t population = 0;
    std::int64_t successes = 0;  // m
    std::int64_t draws = 0;      // C(n-1, r-1)
    double mean = 0;
    double variance = 0;         // (1-lambda)(n-r) d^2 / (n d - lambda r)

    static HypergeomSpec make(int n, int r, std::int64_t m);
};

double hypergeom_pmf(const HypergeomSpec& spec, std::int64_t k);
double hypergeom_log_pmf(const HypergeomSpec& spec, std::int64_t k);

enum class NormalizerMethod { Dp, Clt };
const char* normalizer_name(NormalizerMethod m);

// P(Z_1 + ... + Z_n = target) for n iid copies.
double conditioned_sum_prob(const HypergeomSpec& spec, int n, std::int64_t target, NormalizerMethod method,
                            const Limits& lim = Limits::from_env());

// Full law of Z_1 + ... + Z_k for k = count, as logs indexed by the sum.
std::vector<double> log_sum_distribution(const HypergeomSpec& spec, int count, const Limits& lim = Limits::from_env());

enum class Model { DExact, DAsymptotic, B, T };
const char* model_name(Model m);

struct ModelOptions {
    NormalizerMethod normalizer = NormalizerMethod::Dp;
    bool allow_clt_fallback = true;  // switch to clt when the dp budget is exceeded
};

struct ModelPoint {
    Model model = Model::B;
    double ln_prob = 0;
    std::map<std::string, double> components;
    std::map<std::string, std::string> notes;
};

ModelPoint prob_model(const DegreeSequence& seq, Model model, const ModelOptions& opt = {},
                      const Limits& lim = Limits::from_env());

enum class RatioPair { BvsD, DvsT, KLW };
const char* pair_name(RatioPair p);
RatioPair parse_pair(const std::string& s);

struct PredictedRatio {
    RatioPair pair = RatioPair::DvsT;
    double ln_ratio = 0;  // ln(Prob_D / Prob_other), O-term dropped
    std::map<std::string, double> indicators;
    std::map<std::string, bool> hypotheses;
};

PredictedRatio predicted_ratio(const DegreeSequence& seq, RatioPair pair, double phi = 0.47);

// ln C(K, lambda K + x) from the seven-correction Stirling expansion, O-term dropped.
double stirling_binom(double K, double lambda, double x);

std::vector<std::int64_t> sample_degrees(int n, int r, std::int64_t m, std::uint64_t rng_seed);

// count independent samples; sample i draws from a stream split off rng_seed by index.
std::vector<std::vector<std::int64_t>> sample_batch(int n, int r, std::int64_t m, std::uint64_t rng_seed,
                                                    std::uint64_t count);

struct TailCheck {
    bool holds = true;
    std::vector<double> tail;   // P(|Z - d| >= t), t = 1..floor(3d)
    std::vector<double> bound;  // 2 exp(-t^2 / (2 (d + t/3)))
};

TailCheck tail_bound_check(int n, int r, std::int64_t m);

// Conditional weight C(y) = P(sum_{j>=2} Z = nd - y) / P(sum Z = nd) against
// exp(-(y-d)^2 / (2 (n-1) sigma^2)); returns the largest absolute gap over y in the support.
double conditional_weight_gap(int n, int r, std::int64_t m, const Limits& lim = Limits::from_env());

}  // namespace hyperdeg
