#include "mincollector/stirling.hpp"

#include "mincollector/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace mincollector {

StirlingColumn::StirlingColumn(unsigned n, std::uint64_t k_max, std::vector<mpz_class> values)
    : n_(n), values_(std::move(values)) {
    require_domain(values_.size() == k_max + 1, "StirlingColumn: expected k_max + 1 values");
}

CompletionLaw::CompletionLaw(unsigned n, std::vector<mpq_class> cdf) : n_(n), cdf_(std::move(cdf)) {
    require_domain(!cdf_.empty(), "CompletionLaw: empty CDF");
}

StirlingColumn stirling_column(unsigned n, std::uint64_t k_max) {
    require_domain(n >= 1, "stirling_column: N must be >= 1");
    require_domain(k_max >= n, "stirling_column: k_max must be >= N (got k_max=" + std::to_string(k_max) +
                                   ", N=" + std::to_string(n) + ")");

    // previous holds column j-1, current is built into column j.
    std::vector<mpz_class> previous(k_max + 1, 0);
    std::vector<mpz_class> current(k_max + 1, 0);
    previous[0] = 1;  // S(0,0)
    for (unsigned j = 1; j <= n; ++j) {
        current[0] = 0;
        for (std::uint64_t k = 1; k <= k_max; ++k) {
            current[k] = previous[k - 1];
            mpz_addmul_ui(current[k].get_mpz_t(), current[k - 1].get_mpz_t(), j);
        }
        std::swap(previous, current);
    }
    return StirlingColumn(n, k_max, std::move(previous));
}

mpz_class stirling_near_diagonal(std::uint64_t k, std::uint64_t m) {
    require_domain(m < k, "stirling_near_diagonal: deficit m must be < k");
    // row[d] = S(r, r - d) for the current r. S(r, r) = 1 and S(r, r-d) = 0 when
    // r - d < 1 (r >= 1), or when d > 0 and r = 0.
    std::vector<mpz_class> row(m + 1, 0);
    row[0] = 1;  // r = 0: S(0,0)
    for (std::uint64_t r = 1; r <= k; ++r) {
        // S(r, r-d) = (r-d) S(r-1, r-d) + S(r-1, r-d-1)
        //           = (r-d) S(r-1, (r-1)-(d-1)) + S(r-1, (r-1)-d).
        // Update d descending so row[d-1] still refers to r-1.
        const std::uint64_t d_max = std::min<std::uint64_t>(m, r - 1);
        for (std::uint64_t d = d_max; d >= 1; --d) {
            mpz_addmul_ui(row[d].get_mpz_t(), row[d - 1].get_mpz_t(), r - d);
        }
        // d = 0 stays 1.
    }
    return row[m];
}

mpq_class stirling_to_cdf(const mpz_class& stirling, unsigned n, std::uint64_t k) {
    mpz_class factorial;
    mpz_fac_ui(factorial.get_mpz_t(), n);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), n, k);
    mpq_class q(stirling * factorial, power);
    q.canonicalize();
    return q;
}

mpq_class completion_cdf(unsigned n, std::uint64_t k) {
    require_domain(n >= 1, "completion_cdf: N must be >= 1");
    if (k < n) return mpq_class(0);
    return stirling_to_cdf(stirling_column(n, k)[k], n, k);
}

CompletionLaw completion_law(unsigned n, std::uint64_t k_max) {
    const StirlingColumn column = stirling_column(n, k_max);
    std::vector<mpq_class> cdf;
    cdf.reserve(k_max + 1);
    for (std::uint64_t k = 0; k <= k_max; ++k) cdf.push_back(stirling_to_cdf(column[k], n, k));
    return CompletionLaw(n, std::move(cdf));
}

mpq_class inclusion_exclusion_survival(unsigned n, std::uint64_t k) {
    require_domain(n >= 1, "inclusion_exclusion_survival: N must be >= 1");
    require_domain(k >= 1, "inclusion_exclusion_survival: k must be >= 1");
    // Sum over a common denominator N^(k-1): numerator sum (-1)^m C(N,m) m^(k-1).
    const unsigned long e = k - 1;
    mpz_class numerator = 0;
    mpz_class binom = 1;  // C(N, m)
    mpz_class power;
    for (unsigned m = 0; m < n; ++m) {
        if (m > 0) {
            binom *= n - m + 1;
            binom /= m;
        }
        mpz_ui_pow_ui(power.get_mpz_t(), m, e);  // 0^0 = 1
        if (m % 2 == 0)
            numerator += binom * power;
        else
            numerator -= binom * power;
    }
    if ((n - 1) % 2 == 1) numerator = -numerator;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), n, e);
    mpq_class out(numerator, denominator);
    out.canonicalize();
    return out;
}

CompletionLaw markov_law_oracle(unsigned n, std::uint64_t k_max) {
    require_domain(n >= 1, "markov_law_oracle: N must be >= 1");
    require_domain(k_max >= n, "markov_law_oracle: k_max must be >= N");
    // state[i] = P(i distinct types seen after k draws).
    std::vector<mpq_class> state(n + 1, 0);
    state[0] = 1;
    std::vector<mpq_class> cdf;
    cdf.reserve(k_max + 1);
    cdf.push_back(state[n]);
    const mpq_class step(1, n);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        std::vector<mpq_class> next(n + 1, 0);
        for (unsigned i = 0; i <= n; ++i) {
            if (state[i] == 0) continue;
            const mpq_class stay = state[i] * mpq_class(i, n);
            const mpq_class advance = state[i] * mpq_class(n - i, n);
            next[i] += stay;
            if (i < n) next[i + 1] += advance;
        }
        state = std::move(next);
        cdf.push_back(state[n]);
    }
    return CompletionLaw(n, std::move(cdf));
}

}  // namespace mincollector
