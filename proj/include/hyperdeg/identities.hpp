#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperdeg/core.hpp"

namespace hyperdeg {

using Rational = boost::multiprecision::cpp_rational;

// Gamma_s(W) = sum_{l in W} delta_l^s.
enum class Scope { All, ContainingJ, ContainingJK };
enum class Expression { GammaL, Gamma1GammaL, Gamma1Sq, Gamma1Cube, Gamma1Fourth, Gamma2Sq, Gamma1SqGamma2 };

struct IdentityFamily {
    Scope scope = Scope::All;
    Expression expr = Expression::GammaL;
    int ell = 0;  // only for GammaL and Gamma1GammaL

    friend bool operator==(const IdentityFamily&, const IdentityFamily&) = default;
};

std::string family_name(const IdentityFamily& f);

// Every (scope, expression, ell) with an exact closed form.
std::vector<IdentityFamily> listed_families();
bool is_listed(const IdentityFamily& f);

// (1/C(n-1,r-1)) * sum over the scope of the expression; j, k are 0-based.
Rational closed_sum(const IdentityFamily& f, int n, int r, const std::vector<Rational>& delta, int j = 0, int k = 1);
Rational brute_sum(const IdentityFamily& f, int n, int r, const std::vector<Rational>& delta, int j = 0, int k = 1,
                   const Limits& lim = Limits::from_env());

struct IdentityRow {
    IdentityFamily family;
    int trials = 0;
    int failures = 0;
};

// For each listed family: `trials` random instances with n in [6,10], r in {3,4}
// and random rational delta summing to zero.
std::vector<IdentityRow> run_identity_suite(std::uint64_t seed, int trials);

}  // namespace hyperdeg
