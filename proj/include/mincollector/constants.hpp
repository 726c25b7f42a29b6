#pragma once

// The collector constants
//
//   c_p = sum_{j=0}^{p-1} (-1)^j C(p-1, j) ln(1+j) / (1+j)
//   w_p = sum_{j=0}^{p-1} (-1)^j C(p-1, j) ln(1+j)^2 / (1+j)
//   a_p = pi^2/6 + p w_p - p^2 c_p^2
//
// and the alternating binomial log-sums behind them. The sums cancel roughly
// p bits, so everything runs in MPFR at no less than p + 128 bits and is
// re-evaluated at twice that precision.

#include "mincollector/bigfloat.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace mincollector {

inline constexpr Precision kGuardBits = 128;

// max(requested, terms + kGuardBits)
Precision working_precision(unsigned terms, Precision requested);

// sum_{j=0}^{p-1} (-1)^j C(p-1, j) / (j+1), which is exactly 1/p.
mpq_class alternating_reciprocal_sum(unsigned p);

struct CollectorConstants {
    unsigned collectors = 0;
    BigFloat c;
    BigFloat w;
    BigFloat a;
    Precision precision_bits = 0;
    // ceil(log2) of the largest term in the c_p sum.
    long cancellation_bits = 0;
    // Largest change of c_p or w_p under precision doubling, together with the
    // disagreement between the two summation forms.
    double error_estimate = 0.0;
};

// Tolerance both summation forms and the doubling check must meet:
// 2^-64 * max(|c_p|, 2^-20).
double constants_tolerance(const BigFloat& c);

// Throws PrecisionError if the two forms (or the doubled evaluation)
// disagree beyond constants_tolerance after one automatic doubling.
CollectorConstants constants(unsigned p, Precision requested = kDefaultBits);

// Per-form values at a fixed precision, without any verification. Exposed for
// the cross-check tests.
struct ConstantForms {
    BigFloat c_direct;    // (1+j)-indexed form
    BigFloat w_direct;
    BigFloat c_shifted;   // -(1/p) sum_k (-1)^k C(p,k) ln^m k form
    BigFloat w_shifted;
    long cancellation_bits = 0;
};
ConstantForms constant_forms(unsigned p, Precision bits);

// sum_{k=1}^{n} C(n,k) (-1)^k (ln k)^power for power in {1, 2}.
struct AltSum {
    BigFloat value;
    Precision precision_bits = 0;
    double error_estimate = 0.0;
};
AltSum alt_binomial_log_sum(unsigned n, unsigned power, Precision requested = kDefaultBits);

// Large-n asymptotic expansion of the same sum, through (ln n)^-2 terms.
// Requires n >= 3.
BigFloat flajolet_expansion(unsigned n, unsigned power, Precision bits = 128);

struct ScanEntry {
    unsigned p = 0;
    BigFloat c;
    BigFloat w;
    BigFloat a;
    double error_estimate = 0.0;
};

struct ScanReport {
    unsigned p_max = 0;
    Precision precision_bits = 0;
    std::vector<ScanEntry> entries;  // p = 1..p_max
    // Offending p for each check; empty means the check held.
    std::vector<unsigned> nonpositive;
    std::vector<unsigned> not_decreasing;
    std::vector<unsigned> nonnegative_c;     // c_p >= 0 for some p >= 2
    std::vector<unsigned> precision_flags;   // verification failed
    // e_p = |p^2 c_p^2 - p w_p - pi^2/6| at p = 1, 2, 4, ...
    std::vector<std::pair<unsigned, BigFloat>> diagnostics;
    std::vector<unsigned> diagnostic_violations;

    [[nodiscard]] bool clean() const {
        return nonpositive.empty() && not_decreasing.empty() && precision_flags.empty() &&
               diagnostic_violations.empty();
    }
};

// "Strictly decreasing" margin: a_{p+1} < a_p - 2^-40.
inline constexpr double kDecreaseMargin = 9.094947017729282379e-13;

ScanReport conjecture_scan(unsigned p_max, Precision requested = kDefaultBits);

}  // namespace mincollector
