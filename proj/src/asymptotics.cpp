#include "mincollector/asymptotics.hpp"

#include "mincollector/errors.hpp"

#include <cmath>
#include <string>

namespace mincollector {

AsymptoticEstimate estimate(unsigned n, unsigned p, Precision bits) {
    require_domain(p >= 1, "estimate: p must be >= 1");
    return estimate(n, constants(p, bits), bits);
}

AsymptoticEstimate estimate(unsigned n, const CollectorConstants& k, Precision bits) {
    require_domain(n >= 2, "estimate: N must be >= 2");
    const unsigned p = k.collectors;
    const BigFloat gamma = BigFloat::euler_gamma(bits);
    const BigFloat zeta2 = BigFloat::zeta2(bits);
    const BigFloat ln_n = BigFloat::log_of(n, bits);
    const BigFloat pc = k.c.with_precision(bits) * p;
    const BigFloat pw = k.w.with_precision(bits) * p;
    const BigFloat shift = gamma + pc;
    const BigFloat n_big(static_cast<long>(n), bits);
    const BigFloat n2 = square(n_big);

    AsymptoticEstimate out;
    out.species = n;
    out.collectors = p;
    out.mean = n_big * (ln_n + shift);
    out.second_moment = n2 * (square(ln_n) + shift * ln_n * 2 + square(gamma) + zeta2 + pc * gamma * 2 + pw);
    out.variance = k.a.with_precision(bits) * n2;
    return out;
}

ClassicalMoments classical_moments(unsigned n) {
    require_domain(n >= 1, "classical_moments: N must be >= 1");
    mpq_class h = 0;
    mpq_class h2 = 0;
    for (unsigned j = 1; j <= n; ++j) {
        h += mpq_class(1, j);
        mpq_class inv_sq(1, mpz_class(j) * j);
        h2 += inv_sq;
    }
    const mpq_class nn(n);
    ClassicalMoments out;
    out.mean = nn * h;
    out.second_moment = nn * nn * (h * h + h2) - nn * h;
    out.variance = nn * nn * h2 - nn * h;
    return out;
}

std::string_view to_string(StirlingRegime regime) {
    return regime == StirlingRegime::erdos_szekeres ? "erdos_szekeres" : "other";
}

StirlingRegime regime_of(std::uint64_t k, unsigned n) {
    require_domain(k >= 2, "regime_of: k must be >= 2");
    const long double kk = static_cast<long double>(k);
    return static_cast<long double>(n) * std::log(kk) < kk ? StirlingRegime::erdos_szekeres : StirlingRegime::other;
}

BigFloat stirling_erdos_szekeres(std::uint64_t k, unsigned n, Precision bits) {
    require_domain(n >= 1, "stirling_erdos_szekeres: N must be >= 1");
    if (k < 2 || regime_of(k, n) != StirlingRegime::erdos_szekeres) {
        throw DomainError("stirling_erdos_szekeres: (k=" + std::to_string(k) + ", N=" + std::to_string(n) +
                          ") is outside the regime N < k/ln k");
    }
    const BigFloat kk(mpz_class(static_cast<unsigned long>(k)), bits);
    const BigFloat ratio = kk / n;  // k/N
    BigFloat exponent = ratio / 2 - BigFloat(static_cast<long>(n), bits);
    exponent *= exp(-ratio);
    return exp(exponent);
}

std::uint64_t louchard_deficit(std::uint64_t k, double alpha) {
    const long double power = std::pow(static_cast<long double>(k), static_cast<long double>(alpha));
    return static_cast<std::uint64_t>(std::ceil(power));
}

BigFloat stirling_louchard_log(std::uint64_t k, double alpha, Precision bits) {
    require_domain(alpha > 0.5 && alpha < 1.0, "stirling_louchard_log: alpha must lie in (1/2, 1)");
    require_domain(k >= 2 && louchard_deficit(k, alpha) < k, "stirling_louchard_log: k too small for N >= 1");
    const BigFloat a(alpha, bits);
    const BigFloat ln_k = log(BigFloat(mpz_class(static_cast<unsigned long>(k)), bits));
    const BigFloat k_alpha = exp(a * ln_k);
    const BigFloat two(2L, bits);
    const BigFloat one(1L, bits);
    BigFloat bracket = (two - a) * ln_k + one - BigFloat::log_of(2, bits);
    BigFloat out = k_alpha * bracket;
    out -= a * ln_k / 2;
    out -= log(BigFloat::pi(bits) * 2) / 2;
    return out;
}

std::uint64_t threshold_c_N(std::uint64_t n) {
    require_domain(n >= 1, "threshold_c_N: N must be >= 1");
    const long double nn = static_cast<long double>(n);
    auto exceeds = [&](std::uint64_t j) {
        const long double x = nn + static_cast<long double>(j);
        return x > nn * std::log(x);
    };
    if (exceeds(1)) return 1;
    // Here N >= 3, so every candidate x = N + j >= 4 lies where x / ln x increases.
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (!exceeds(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (exceeds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace mincollector
