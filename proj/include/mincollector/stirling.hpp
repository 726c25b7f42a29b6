#pragma once

// Exact integer/rational kernel for the single-collector completion law.
//
// T_N is the number of uniform draws needed to see all N types. Its CDF is
//   q_k = P(T_N <= k) = S(k, N) * N! / N^k,
// where S(k, N) are Stirling numbers of the second kind. Everything here is
// exact (GMP integers and rationals); no floating point.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace mincollector {

// S(k, N) for k = 0..k_max at fixed N.
class StirlingColumn {
public:
    StirlingColumn(unsigned n, std::uint64_t k_max, std::vector<mpz_class> values);

    [[nodiscard]] unsigned species() const { return n_; }
    [[nodiscard]] std::uint64_t k_max() const { return values_.size() - 1; }
    [[nodiscard]] const mpz_class& operator[](std::uint64_t k) const { return values_[k]; }
    [[nodiscard]] const std::vector<mpz_class>& values() const { return values_; }

private:
    unsigned n_;
    std::vector<mpz_class> values_;
};

// Exact CDF q_0..q_{k_max} of T_N.
class CompletionLaw {
public:
    CompletionLaw(unsigned n, std::vector<mpq_class> cdf);

    [[nodiscard]] unsigned species() const { return n_; }
    [[nodiscard]] std::uint64_t k_max() const { return cdf_.size() - 1; }
    [[nodiscard]] const mpq_class& cdf(std::uint64_t k) const { return cdf_[k]; }
    [[nodiscard]] const std::vector<mpq_class>& values() const { return cdf_; }

private:
    unsigned n_;
    std::vector<mpq_class> cdf_;
};

// Triangular recurrence S(k,j) = j S(k-1,j) + S(k-1,j-1), swept one column
// at a time so only two columns are alive. Throws DomainError unless
// 1 <= n <= k_max.
StirlingColumn stirling_column(unsigned n, std::uint64_t k_max);

// S(k, k - m) for the near-diagonal regime, via the same recurrence
// reindexed by the deficit m. O(k * m) work. Requires m < k.
mpz_class stirling_near_diagonal(std::uint64_t k, std::uint64_t m);

// Normalising factor N! / N^k applied to S(k, N).
mpq_class stirling_to_cdf(const mpz_class& stirling, unsigned n, std::uint64_t k);

// q_k = P(T_N <= k).
mpq_class completion_cdf(unsigned n, std::uint64_t k);

// The full law q_0..q_{k_max} from one Stirling column.
CompletionLaw completion_law(unsigned n, std::uint64_t k_max);

// P(T_N >= k) by the alternating binomial (inclusion-exclusion) sum
//   (-1)^(N-1) * sum_{m=0}^{N-1} (-1)^m C(N,m) (m/N)^(k-1).
// Independent of the Stirling recurrence; equals 1 - q_{k-1}. Requires k >= 1.
mpq_class inclusion_exclusion_survival(unsigned n, std::uint64_t k);

// Exact law of T_N from the birth chain on "number of distinct types seen",
// which advances from i to i+1 with probability (N-i)/N. Test oracle.
CompletionLaw markov_law_oracle(unsigned n, std::uint64_t k_max);

}  // namespace mincollector
