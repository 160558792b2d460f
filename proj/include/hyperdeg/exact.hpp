#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperdeg/core.hpp"
#include "hyperdeg/lambda_field.hpp"

namespace hyperdeg {

using BigInt = boost::multiprecision::cpp_int;

struct ExactCount {
    BigInt value;
    DegreeSequence seq;
    std::uint64_t transitions = 0;  // DP work actually spent
    std::uint64_t peak_states = 0;
};

struct ExactOptions {
    // Count on the first-quadrant image instead of the instance itself.
    bool canonicalize = true;
};

// Number of simple r-uniform hypergraphs on [n] with degree sequence d.
ExactCount exact_count(const DegreeSequence& seq, const ExactOptions& opt = {},
                       const Limits& lim = Limits::from_env());

struct TotalIdentity {
    bool holds = false;
    BigInt lhs;  // sum over degree sequences of H
    BigInt rhs;  // C(C(n,r), m)
    std::uint64_t sequences = 0;
};

// Every m-edge hypergraph has exactly one degree sequence.
TotalIdentity total_identity_check(int n, int r, std::int64_t m, const Limits& lim = Limits::from_env());

struct Quadrature {
    double value = 0;  // real part
    double imag = 0;   // diagnostic, ~0
    std::uint64_t points = 0;
    int M = 0;
};

// P_r(beta) times the tensor-grid sum of F with M = 2 C(n-1,r-1) + 1 points per axis.
Quadrature cauchy_quadrature(const DegreeSequence& seq, const BetaVector& beta,
                             const Limits& lim = Limits::from_env());

BigInt big_binom(std::int64_t n, std::int64_t k);

}  // namespace hyperdeg
