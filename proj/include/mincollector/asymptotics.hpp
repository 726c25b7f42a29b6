#pragma once

// Large-N estimators for the moments of the first of p collectors to finish,
// the classical single-collector moments, and the two approximation regimes of
// the Stirling numbers of the second kind.

#include "mincollector/bigfloat.hpp"
#include "mincollector/constants.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string_view>

namespace mincollector {

inline constexpr Precision kEstimatorBits = 128;

struct AsymptoticEstimate {
    unsigned species = 0;
    unsigned collectors = 0;
    BigFloat mean;           // N (ln N + gamma + p c_p)
    BigFloat second_moment;  // N^2 [ln^2 N + 2(gamma + p c_p) ln N + gamma^2 + pi^2/6 + 2 p c_p gamma + p w_p]
    BigFloat variance;       // a_p N^2
};

// Leading-order estimates; the O((ln N)^m / N) remainders are dropped.
// Requires N >= 2.
AsymptoticEstimate estimate(unsigned n, unsigned p, Precision bits = kEstimatorBits);
AsymptoticEstimate estimate(unsigned n, const CollectorConstants& constants, Precision bits = kEstimatorBits);

// Exact moments of T_N for one collector:
//   E[T]   = N H_N
//   E[T^2] = N^2 (H_N^2 + H_N^(2)) - N H_N
struct ClassicalMoments {
    mpq_class mean;
    mpq_class second_moment;
    mpq_class variance;
};
ClassicalMoments classical_moments(unsigned n);

enum class StirlingRegime { erdos_szekeres, other };
std::string_view to_string(StirlingRegime regime);

// erdos_szekeres iff N < k / ln k. Requires k >= 2.
StirlingRegime regime_of(std::uint64_t k, unsigned n);

// exp[(k/(2N) - N) e^{-k/N}], approximating q_k = S(k,N) N!/N^k.
// Throws DomainError outside the Erdos-Szekeres regime.
BigFloat stirling_erdos_szekeres(std::uint64_t k, unsigned n, Precision bits = kEstimatorBits);

// ceil(k^alpha): the deficit m with N = k - m in the large-deviation regime.
std::uint64_t louchard_deficit(std::uint64_t k, double alpha);

// ln of the large-deviation main term for S(k, k - ceil(k^alpha)):
//   k^a [(2 - a) ln k + 1 - ln 2] - (a/2) ln k - ln(2 pi)/2.
// Requires 1/2 < alpha < 1 and k - ceil(k^alpha) >= 1.
BigFloat stirling_louchard_log(std::uint64_t k, double alpha, Precision bits = kEstimatorBits);

// Smallest j >= 1 with (N + j) / ln(N + j) > N.
std::uint64_t threshold_c_N(std::uint64_t n);

}  // namespace mincollector
