#pragma once

// Moments of M = min(T_N(1), ..., T_N(p)) for p independent uniform coupon
// collectors, from the Stirling-number series
//
//   E[M]   = sum_{k>=0} (1 - q_k)^p
//   E[M^2] = sum_{k>=0} (2k + 1) (1 - q_k)^p
//
// truncated at a provable tail bound. q_k is the completion CDF of a single
// collector (see stirling.hpp).

#include "mincollector/bigfloat.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string_view>

namespace mincollector {

enum class MomentOrder { first, second };

enum class ArithmeticMode { automatic, exact_rational, high_precision };

std::string_view to_string(ArithmeticMode mode);

// Largest N evaluated in exact rational arithmetic under ArithmeticMode::automatic.
inline constexpr unsigned kExactModeMaxSpecies = 64;
inline constexpr std::uint64_t kDefaultWorkBudget = 1'000'000'000;

struct MomentOptions {
    double epsilon = 1e-12;
    ArithmeticMode mode = ArithmeticMode::automatic;
    Precision bits = kDefaultBits;
    std::uint64_t work_budget = kDefaultWorkBudget;
};

struct MomentResult {
    unsigned species = 0;
    unsigned collectors = 0;
    ArithmeticMode mode = ArithmeticMode::exact_rational;  // always resolved
    Precision bits = kDefaultBits;
    BigFloat mean;
    std::optional<BigFloat> second_moment;
    std::optional<BigFloat> variance;
    // Exact truncated partial sums; only set in exact_rational mode.
    std::optional<mpq_class> mean_partial_sum;
    std::optional<mpq_class> second_moment_partial_sum;
    // Absolute bound on everything omitted: series tail plus accumulated rounding.
    double truncation_bound = 0.0;
    std::uint64_t terms_used = 0;
};

// Union-bound tail of the survival series in the P(M >= k) indexing:
//   first:  sum_{k>=K} b_k,  second: sum_{k>=K} (2k-1) b_k,
//   b_k = [N (1 - 1/N)^(k-1)]^p  >=  P(M >= k).
// Returned as a natural logarithm; -infinity when the tail is exactly zero.
long double log_tail_bound(unsigned n, unsigned p, std::uint64_t first_index, MomentOrder order);

// Smallest K >= 1 with tail bound < eps. Throws DomainError for eps <= 0.
std::uint64_t truncation_index(unsigned n, unsigned p, double eps, MomentOrder order);

// Throws DomainError on bad parameters and WorkBudgetError when the series
// would need more than options.work_budget big-number operations.
MomentResult exact_mean(unsigned n, unsigned p, const MomentOptions& options = {});

// Fills mean, second moment and variance.
MomentResult exact_second_moment(unsigned n, unsigned p, const MomentOptions& options = {});

// E[M] for p = 2 from the O(N^2) double sum obtained by summing the
// inclusion-exclusion geometric series in closed form. Exact, but the
// integers grow quickly: an oracle for moderate N.
mpq_class pair_closed_form_mean(unsigned n, std::uint64_t work_budget = kDefaultWorkBudget);

}  // namespace mincollector
