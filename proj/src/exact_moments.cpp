#include "mincollector/exact_moments.hpp"

#include "mincollector/errors.hpp"
#include "mincollector/stirling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mincollector {

std::string_view to_string(ArithmeticMode mode) {
    switch (mode) {
        case ArithmeticMode::automatic: return "automatic";
        case ArithmeticMode::exact_rational: return "exact-rational";
        case ArithmeticMode::high_precision: return "high-precision-float";
    }
    return "unknown";
}

long double log_tail_bound(unsigned n, unsigned p, std::uint64_t first_index, MomentOrder order) {
    require_domain(n >= 1 && p >= 1, "log_tail_bound: N and p must be >= 1");
    require_domain(first_index >= 1, "log_tail_bound: first index must be >= 1");
    const long double neg_inf = -std::numeric_limits<long double>::infinity();
    const long double m0 = static_cast<long double>(first_index - 1);
    if (n == 1) {
        // b_k = 0^(k-1): only the k = 1 term is nonzero, and it equals 1.
        return first_index == 1 ? 0.0L : neg_inf;
    }
    // s = (1 - 1/N)^p, tail of sum_{m>=m0} w(m) s^m scaled by N^p.
    const long double log_s = static_cast<long double>(p) * std::log1p(-1.0L / n);
    const long double one_minus_s = -std::expm1(log_s);
    const long double log_scale = static_cast<long double>(p) * std::log(static_cast<long double>(n));
    if (order == MomentOrder::first) return log_scale + m0 * log_s - std::log(one_minus_s);
    const long double s = std::exp(log_s);
    const long double weight = (2.0L * m0 + 1.0L) / one_minus_s + 2.0L * s / (one_minus_s * one_minus_s);
    return log_scale + m0 * log_s + std::log(weight);
}

std::uint64_t truncation_index(unsigned n, unsigned p, double eps, MomentOrder order) {
    require_domain(eps > 0.0 && std::isfinite(eps), "truncation_index: epsilon must be a positive finite number");
    require_domain(n >= 1 && p >= 1, "truncation_index: N and p must be >= 1");
    const long double target = std::log(static_cast<long double>(eps));
    auto small_enough = [&](std::uint64_t k) { return log_tail_bound(n, p, k, order) < target; };
    // The bound is a tail of nonnegative terms, so it is nonincreasing in K.
    std::uint64_t lo = 1;
    if (small_enough(lo)) return lo;
    std::uint64_t hi = 2;
    while (!small_enough(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (small_enough(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

ArithmeticMode resolve_mode(unsigned n, ArithmeticMode requested) {
    if (requested != ArithmeticMode::automatic) return requested;
    return n <= kExactModeMaxSpecies ? ArithmeticMode::exact_rational : ArithmeticMode::high_precision;
}

void check_budget(std::uint64_t terms, unsigned n, unsigned p, std::uint64_t budget) {
    const long double ops = static_cast<long double>(terms) * (static_cast<long double>(n) + p + 1);
    if (ops > static_cast<long double>(budget)) {
        throw WorkBudgetError("series needs ~" + std::to_string(static_cast<unsigned long long>(ops)) +
                              " big-number operations, budget is " + std::to_string(budget));
    }
}

long double tail_value(unsigned n, unsigned p, std::uint64_t first_index, MomentOrder order) {
    return std::exp(log_tail_bound(n, p, first_index, order));
}

struct SeriesSums {
    BigFloat mean;
    BigFloat second;
    std::optional<mpq_class> mean_exact;
    std::optional<mpq_class> second_exact;
    long double rounding = 0.0L;
};

// sum_{k<K} (1-q_k)^p and sum_{k<K} (2k+1)(1-q_k)^p in exact rationals.
// Horner over the common denominator N^{p(K-1)} keeps every step integral.
SeriesSums exact_series(unsigned n, unsigned p, std::uint64_t terms, Precision bits) {
    const std::uint64_t k_max = std::max<std::uint64_t>(terms - 1, n);
    const StirlingColumn column = stirling_column(n, k_max);
    mpz_class factorial;
    mpz_fac_ui(factorial.get_mpz_t(), n);
    mpz_class step;  // N^p
    mpz_ui_pow_ui(step.get_mpz_t(), n, p);

    mpz_class n_pow_k = 1;
    mpz_class first = 0;
    mpz_class second = 0;
    mpz_class survivors;
    mpz_class term;
    for (std::uint64_t k = 0; k < terms; ++k) {
        // N^k (1 - q_k) = N^k - N! S(k, N)
        survivors = n_pow_k - factorial * column[k];
        mpz_pow_ui(term.get_mpz_t(), survivors.get_mpz_t(), p);
        first = first * step + term;
        second = second * step;
        mpz_addmul_ui(second.get_mpz_t(), term.get_mpz_t(), 2 * k + 1);
        n_pow_k *= n;
    }
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), n, p * (terms - 1));
    mpq_class mean(first, denominator);
    mpq_class second_moment(second, denominator);
    mean.canonicalize();
    second_moment.canonicalize();
    return SeriesSums{BigFloat(mean, bits), BigFloat(second_moment, bits), mean, second_moment, 0.0L};
}

// Same sums in MPFR. The distribution of the number of distinct types seen
// is propagated with the normalised Stirling recurrence
//   P_k(j) = P_{k-1}(j) j/N + P_{k-1}(j-1) (N-j+1)/N,
// whose terms are all nonnegative, so no cancellation occurs.
SeriesSums float_series(unsigned n, unsigned p, std::uint64_t terms, Precision bits) {
    std::vector<BigFloat> dist(n + 1, BigFloat(bits));
    mpfr_set_ui(dist[0].get(), 1, MPFR_RNDN);
    BigFloat mean(bits);
    BigFloat second(bits);
    BigFloat survival(bits);
    BigFloat term(bits);
    BigFloat carry(bits);
    for (std::uint64_t k = 0; k < terms; ++k) {
        mpfr_ui_sub(survival.get(), 1, dist[n].get(), MPFR_RNDN);
        mpfr_pow_ui(term.get(), survival.get(), p, MPFR_RNDN);
        mean += term;
        mpfr_mul_ui(term.get(), term.get(), 2 * k + 1, MPFR_RNDN);
        second += term;
        if (k + 1 == terms) break;
        const unsigned top = static_cast<unsigned>(std::min<std::uint64_t>(k + 1, n));
        for (unsigned j = top; j >= 1; --j) {
            mpfr_mul_ui(carry.get(), dist[j - 1].get(), n - j + 1, MPFR_RNDN);
            mpfr_mul_ui(dist[j].get(), dist[j].get(), j, MPFR_RNDN);
            mpfr_add(dist[j].get(), dist[j].get(), carry.get(), MPFR_RNDN);
            mpfr_div_ui(dist[j].get(), dist[j].get(), n, MPFR_RNDN);
        }
        mpfr_set_zero(dist[0].get(), 1);
    }
    // Each P_k(j) carries relative error <= 4k ulps; (1-q_k)^p adds p+1 more.
    // Summed with weights up to 2K+1 this bounds the accumulated rounding.
    const long double k = static_cast<long double>(terms);
    const long double ulp = std::ldexp(1.0L, 1 - static_cast<int>(bits));
    const long double rounding = (2.0L * k + 1.0L) * k * (4.0L * k * p + p + 4.0L) * ulp;
    return SeriesSums{std::move(mean), std::move(second), std::nullopt, std::nullopt, rounding};
}

MomentResult compute(unsigned n, unsigned p, const MomentOptions& options, MomentOrder order) {
    require_domain(n >= 1, "N must be >= 1");
    require_domain(p >= 1, "p must be >= 1");
    require_domain(options.epsilon > 0.0 && std::isfinite(options.epsilon), "epsilon must be > 0");
    require_domain(options.bits >= MPFR_PREC_MIN && options.bits <= 1 << 20, "bits out of range");

    std::uint64_t terms = truncation_index(n, p, options.epsilon, MomentOrder::first);
    if (order == MomentOrder::second)
        terms = std::max(terms, truncation_index(n, p, options.epsilon, MomentOrder::second));
    const ArithmeticMode mode = resolve_mode(n, options.mode);
    check_budget(terms, n, p, options.work_budget);

    SeriesSums sums = mode == ArithmeticMode::exact_rational ? exact_series(n, p, terms, options.bits)
                                                             : float_series(n, p, terms, options.bits);

    MomentResult result;
    result.species = n;
    result.collectors = p;
    result.mode = mode;
    result.bits = options.bits;
    result.terms_used = terms;
    // Sums stop at k = terms - 1, i.e. P(M >= terms); the omitted tail starts at terms + 1.
    const long double tail = tail_value(n, p, terms + 1, order);
    result.truncation_bound = static_cast<double>(tail + sums.rounding);
    result.mean = std::move(sums.mean);
    result.mean_partial_sum = std::move(sums.mean_exact);
    if (order == MomentOrder::second) {
        if (sums.second_exact) {
            const mpq_class variance = *sums.second_exact - *result.mean_partial_sum * *result.mean_partial_sum;
            result.variance = BigFloat(variance, options.bits);
        } else {
            result.variance = sums.second - square(result.mean);
        }
        result.second_moment = std::move(sums.second);
        result.second_moment_partial_sum = std::move(sums.second_exact);
    }
    return result;
}

}  // namespace

MomentResult exact_mean(unsigned n, unsigned p, const MomentOptions& options) {
    return compute(n, p, options, MomentOrder::first);
}

MomentResult exact_second_moment(unsigned n, unsigned p, const MomentOptions& options) {
    return compute(n, p, options, MomentOrder::second);
}

mpq_class pair_closed_form_mean(unsigned n, std::uint64_t work_budget) {
    require_domain(n >= 1, "pair_closed_form_mean: N must be >= 1");
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
    if (pairs > work_budget)
        throw WorkBudgetError("pair_closed_form_mean: N^2 = " + std::to_string(pairs) + " exceeds budget");

    std::vector<mpz_class> binom(n + 1);
    for (unsigned m = 0; m <= n; ++m) mpz_bin_uiui(binom[m].get_mpz_t(), n, m);
    const mpz_class n2 = mpz_class(n) * n;

    // Each geometric series sums to N^2 / (N^2 - a b).
    mpq_class diagonal = 0;
    for (unsigned a = 0; a < n; ++a) {
        mpq_class t(binom[a] * binom[a] * n2, n2 - mpz_class(a) * a);
        t.canonicalize();
        diagonal += t;
    }
    mpq_class off_diagonal = 0;
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = a + 1; b < n; ++b) {
            mpq_class t(binom[a] * binom[b] * n2, n2 - mpz_class(a) * b);
            t.canonicalize();
            if ((a + b) % 2 == 0)
                off_diagonal += t;
            else
                off_diagonal -= t;
        }
    }
    return diagonal + 2 * off_diagonal;
}

}  // namespace mincollector
