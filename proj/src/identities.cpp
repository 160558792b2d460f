#include "hyperdeg/identities.hpp"

#include <algorithm>

#include "hyperdeg/combinatorics.hpp"

namespace hyperdeg {

namespace {

Rational pow_r(const Rational& x, int s) {
    Rational acc = 1;
    for (int i = 0; i < s; ++i) acc *= x;
    return acc;
}

Rational R(const std::vector<Rational>& d, int s) {
    Rational acc = 0;
    for (const auto& x : d) acc += pow_r(x, s);
    return acc;
}

}  // namespace

std::string family_name(const IdentityFamily& f) {
    std::string scope = f.scope == Scope::All ? "all" : (f.scope == Scope::ContainingJ ? "j" : "jk");
    std::string e;
    switch (f.expr) {
        case Expression::GammaL: e = "G" + std::to_string(f.ell); break;
        case Expression::Gamma1GammaL: e = "G1*G" + std::to_string(f.ell); break;
        case Expression::Gamma1Sq: e = "G1^2"; break;
        case Expression::Gamma1Cube: e = "G1^3"; break;
        case Expression::Gamma1Fourth: e = "G1^4"; break;
        case Expression::Gamma2Sq: e = "G2^2"; break;
        case Expression::Gamma1SqGamma2: e = "G1^2*G2"; break;
    }
    return scope + ":" + e;
}

std::vector<IdentityFamily> listed_families() {
    std::vector<IdentityFamily> out;
    for (Scope s : {Scope::All, Scope::ContainingJ, Scope::ContainingJK})
        for (int l = 1; l <= 3; ++l) out.push_back({s, Expression::GammaL, l});
    for (Scope s : {Scope::All, Scope::ContainingJ})
        for (int l = 1; l <= 3; ++l) out.push_back({s, Expression::Gamma1GammaL, l});
    for (Scope s : {Scope::All, Scope::ContainingJ}) {
        out.push_back({s, Expression::Gamma1Cube, 0});
        out.push_back({s, Expression::Gamma1Fourth, 0});
    }
    out.push_back({Scope::All, Expression::Gamma2Sq, 0});
    out.push_back({Scope::All, Expression::Gamma1SqGamma2, 0});
    out.push_back({Scope::ContainingJK, Expression::Gamma1Sq, 0});
    return out;
}

bool is_listed(const IdentityFamily& f) {
    const auto all = listed_families();
    return std::find(all.begin(), all.end(), f) != all.end();
}

namespace {

void need(long long factor, const char* what) {
    if (factor == 0) fail(ErrorKind::DegenerateDenominator, std::string("denominator factor ") + what + " is zero");
}

}  // namespace

Rational closed_sum(const IdentityFamily& f, int n, int r, const std::vector<Rational>& d, int j, int k) {
    if (!is_listed(f)) fail(ErrorKind::DomainError, "no closed form for " + family_name(f));
    if (static_cast<int>(d.size()) != n) fail(ErrorKind::DimensionMismatch, "delta length differs from n");
    Rational sum = 0;
    for (const auto& x : d) sum += x;
    if (sum != 0) fail(ErrorKind::DomainError, "delta must sum to zero exactly");
    const long long N1 = n - 1, N2 = n - 2, N3 = n - 3, N4 = n - 4, nr = n - r;
    const long long rr = r;
    const int l = f.ell;
    auto Rs = [&](int s) { return R(d, s); };

    switch (f.scope) {
        case Scope::All:
            switch (f.expr) {
                case Expression::GammaL:
                    return Rs(l);
                case Expression::Gamma1GammaL:
                    need(N1, "n-1");
                    return Rational(nr, N1) * Rs(l + 1);
                case Expression::Gamma1Cube:
                    need(N1 * N2, "(n-1)(n-2)");
                    return Rational(nr * (n - 2 * rr), N2 * N1) * Rs(3);
                case Expression::Gamma1Fourth: {
                    need(N1 * N2 * N3, "(n-1)(n-2)(n-3)");
                    const long long D = N3 * N2 * N1;
                    return Rational(3 * (rr - 1) * nr * (nr - 1), D) * Rs(2) * Rs(2) +
                           Rational(nr * (n * n - 6 * rr * n + 6 * rr * rr + n), D) * Rs(4);
                }
                case Expression::Gamma2Sq:
                    need(N1, "n-1");
                    return Rational(rr - 1, N1) * Rs(2) * Rs(2) + Rational(nr, N1) * Rs(4);
                case Expression::Gamma1SqGamma2:
                    need(N1 * N2, "(n-1)(n-2)");
                    return Rational((rr - 1) * nr, N2 * N1) * Rs(2) * Rs(2) +
                           Rational(nr * (n - 2 * rr), N2 * N1) * Rs(4);
                default:
                    break;
            }
            break;
        case Scope::ContainingJ: {
            const Rational& dj = d[j];
            switch (f.expr) {
                case Expression::GammaL:
                    need(N1, "n-1");
                    return Rational(rr - 1, N1) * Rs(l) + Rational(nr, N1) * pow_r(dj, l);
                case Expression::Gamma1GammaL: {
                    need(N1 * N2, "(n-1)(n-2)");
                    const long long D = N2 * N1;
                    return Rational((rr - 1) * nr, D) * dj * Rs(l) + Rational((rr - 1) * nr, D) * Rs(l + 1) +
                           Rational(nr * (n - 2 * rr), D) * pow_r(dj, l + 1);
                }
                case Expression::Gamma1Cube: {
                    need(N1 * N2 * N3, "(n-1)(n-2)(n-3)");
                    const long long D = N3 * N2 * N1;
                    return Rational(3 * (rr - 1) * nr * (nr - 1), D) * dj * Rs(2) +
                           Rational((rr - 1) * nr * (n - 2 * rr + 1), D) * Rs(3) +
                           Rational(nr * (n * n - 6 * rr * n + 6 * rr * rr + n), D) * pow_r(dj, 3);
                }
                case Expression::Gamma1Fourth: {
                    need(N1 * N2 * N3 * N4, "(n-1)(n-2)(n-3)(n-4)");
                    const long long D = N4 * N3 * N2 * N1;
                    return (Rational(3 * (rr - 2) * (rr - 1) * nr * (nr - 1)) * Rs(2) * Rs(2) +
                            Rational(6 * (rr - 1) * nr * (nr - 1) * (n - 2 * rr)) * dj * dj * Rs(2) +
                            Rational(4 * (rr - 1) * nr * (nr - 1) * (n - 2 * rr)) * dj * Rs(3) +
                            Rational((rr - 1) * nr * (n * n - 6 * rr * n + 6 * rr * rr + 5 * n - 6 * rr)) * Rs(4) +
                            Rational(nr * (n - 2 * rr) * (n * n - 12 * rr * n + 12 * rr * rr + 5 * n)) *
                                pow_r(dj, 4)) /
                           Rational(D);
                }
                default:
                    break;
            }
            break;
        }
        case Scope::ContainingJK: {
            const Rational& dj = d[j];
            const Rational& dk = d[k];
            switch (f.expr) {
                case Expression::GammaL: {
                    need(N1 * N2, "(n-1)(n-2)");
                    const long long D = N2 * N1;
                    return Rational((rr - 2) * (rr - 1), D) * Rs(l) +
                           Rational((rr - 1) * nr, D) * (pow_r(dj, l) + pow_r(dk, l));
                }
                case Expression::Gamma1Sq: {
                    need(N1 * N2 * N3, "(n-1)(n-2)(n-3)");
                    const long long D = N3 * N2 * N1;
                    return Rational((rr - 2) * (rr - 1) * nr, D) * Rs(2) +
                           Rational((rr - 1) * nr, D) *
                               (Rational(n - 2 * rr + 1) * (dj * dj + dk * dk) + Rational(2 * (nr - 1)) * dj * dk);
                }
                default:
                    break;
            }
            break;
        }
    }
    fail(ErrorKind::Internal, "unhandled identity family");
}

Rational brute_sum(const IdentityFamily& f, int n, int r, const std::vector<Rational>& d, int j, int k,
                   const Limits& lim) {
    if (static_cast<int>(d.size()) != n) fail(ErrorKind::DimensionMismatch, "delta length differs from n");
    if (binom_u64(n, r) > lim.subsets) fail(ErrorKind::BudgetExceeded, "subset count exceeds the budget");
    std::vector<int> W(r);
    for (int i = 0; i < r; ++i) W[i] = i;
    Rational total = 0;
    do {
        const bool hasj = std::find(W.begin(), W.end(), j) != W.end();
        const bool hask = std::find(W.begin(), W.end(), k) != W.end();
        if (f.scope == Scope::ContainingJ && !hasj) continue;
        if (f.scope == Scope::ContainingJK && !(hasj && hask)) continue;
        auto G = [&](int s) {
            Rational acc = 0;
            for (int v : W) acc += pow_r(d[v], s);
            return acc;
        };
        const Rational g1 = G(1);
        switch (f.expr) {
            case Expression::GammaL: total += G(f.ell); break;
            case Expression::Gamma1GammaL: total += g1 * G(f.ell); break;
            case Expression::Gamma1Sq: total += g1 * g1; break;
            case Expression::Gamma1Cube: total += g1 * g1 * g1; break;
            case Expression::Gamma1Fourth: total += g1 * g1 * g1 * g1; break;
            case Expression::Gamma2Sq: {
                const Rational g2 = G(2);
                total += g2 * g2;
                break;
            }
            case Expression::Gamma1SqGamma2: total += g1 * g1 * G(2); break;
        }
    } while (colex_next(W, n));
    return total / Rational(static_cast<long long>(binom_u64(n - 1, r - 1)));
}

std::vector<IdentityRow> run_identity_suite(std::uint64_t seed, int trials) {
    SplitMix64 rng(seed);
    std::vector<IdentityRow> rows;
    for (const auto& fam : listed_families()) {
        IdentityRow row;
        row.family = fam;
        for (int t = 0; t < trials; ++t) {
            const int n = 6 + static_cast<int>(rng.below(5));
            const int r = 3 + static_cast<int>(rng.below(2));
            std::vector<Rational> v(n);
            Rational mean = 0;
            for (auto& x : v) {
                x = Rational(static_cast<long long>(rng.below(19)) - 9, static_cast<long long>(rng.below(4)) + 1);
                mean += x;
            }
            mean /= n;
            for (auto& x : v) x -= mean;
            const int j = static_cast<int>(rng.below(n));
            const int k = (j + 1 + static_cast<int>(rng.below(n - 1))) % n;
            ++row.trials;
            if (closed_sum(fam, n, r, v, j, k) != brute_sum(fam, n, r, v, j, k)) ++row.failures;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hyperdeg
