#include "mincollector/constants.hpp"

#include "mincollector/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mincollector {

Precision working_precision(unsigned terms, Precision requested) {
    return std::max<Precision>(requested, static_cast<Precision>(terms) + kGuardBits);
}

mpq_class alternating_reciprocal_sum(unsigned p) {
    require_domain(p >= 1, "alternating_reciprocal_sum: p must be >= 1");
    mpq_class sum = 0;
    mpz_class binom = 1;  // C(p-1, j)
    for (unsigned j = 0; j < p; ++j) {
        if (j > 0) {
            binom *= p - j;
            binom /= j;
        }
        mpq_class term(binom, j + 1);
        term.canonicalize();
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

double constants_tolerance(const BigFloat& c) {
    const double magnitude = std::max(std::fabs(c.to_double()), std::ldexp(1.0, -20));
    return std::ldexp(magnitude, -64);
}

namespace {

// ln k for k = 0..n at `bits` (index 0 is unused and left at zero). Only
// primes get a fresh logarithm; composites are ln p + ln(k/p) for their
// smallest prime factor p.
std::vector<BigFloat> log_table(unsigned n, Precision bits) {
    std::vector<unsigned> smallest_factor(n + 1, 0);
    for (unsigned i = 2; i <= n; ++i) {
        if (smallest_factor[i] != 0) continue;
        for (unsigned long j = i; j <= n; j += i) {
            if (smallest_factor[j] == 0) smallest_factor[j] = i;
        }
    }
    std::vector<BigFloat> logs(n + 1, BigFloat(bits));
    for (unsigned k = 2; k <= n; ++k) {
        const unsigned prime = smallest_factor[k];
        if (prime == k)
            mpfr_log_ui(logs[k].get(), k, MPFR_RNDN);
        else
            mpfr_add(logs[k].get(), logs[prime].get(), logs[k / prime].get(), MPFR_RNDN);
    }
    return logs;
}

// Row n of Pascal's triangle.
std::vector<mpz_class> binomial_row(unsigned n) {
    std::vector<mpz_class> row(n + 1);
    row[0] = 1;
    for (unsigned k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

double abs_diff(const BigFloat& a, const BigFloat& b) { return abs(a - b).to_double(); }

// sum_k sign(k) C(row, k) f_k / divisor(k), power 1 and 2 at once.
// `offset` maps the binomial index to the log-table index.
struct PowerSums {
    BigFloat first;
    BigFloat second;
    long max_exponent;
};

PowerSums alternating_log_sums(const std::vector<mpz_class>& row, const std::vector<BigFloat>& logs,
                               unsigned offset, bool divide_by_index, Precision bits) {
    BigFloat first(bits);
    BigFloat second(bits);
    BigFloat term(bits);
    BigFloat scaled(bits);
    long max_exponent = 0;
    bool any = false;
    for (std::size_t j = 0; j < row.size(); ++j) {
        const std::size_t index = j + offset;
        if (index <= 1) continue;  // ln 1 = 0 and ln 0 never appears
        mpfr_set_z(term.get(), row[j].get_mpz_t(), MPFR_RNDN);
        if (divide_by_index) mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(index), MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), logs[index].get(), MPFR_RNDN);
        if (!any || term.exponent() > max_exponent) max_exponent = term.exponent();
        any = true;
        mpfr_mul(scaled.get(), term.get(), logs[index].get(), MPFR_RNDN);
        if (j % 2 == 0) {
            first += term;
            second += scaled;
        } else {
            first -= term;
            second -= scaled;
        }
    }
    return PowerSums{std::move(first), std::move(second), any ? max_exponent : 0};
}

ConstantForms forms_from_table(unsigned p, const std::vector<BigFloat>& logs, Precision bits) {
    // (1+j)-indexed form over row p-1; the log index is j + 1.
    PowerSums direct = alternating_log_sums(binomial_row(p - 1), logs, 1, true, bits);
    // Shifted form over row p; the log index is k. Sign (-1)^k.
    PowerSums shifted = alternating_log_sums(binomial_row(p), logs, 0, false, bits);
    shifted.first /= p;
    shifted.second /= p;
    return ConstantForms{std::move(direct.first), std::move(direct.second), -shifted.first, -shifted.second,
                         direct.max_exponent};
}

BigFloat assemble_a(unsigned p, const BigFloat& c, const BigFloat& w, Precision bits) {
    BigFloat pc = c * p;
    return BigFloat::zeta2(bits) + w * p - square(pc);
}

}  // namespace

ConstantForms constant_forms(unsigned p, Precision bits) {
    require_domain(p >= 1, "constants: p must be >= 1");
    return forms_from_table(p, log_table(p, bits), bits);
}

CollectorConstants constants(unsigned p, Precision requested) {
    require_domain(p >= 1, "constants: p must be >= 1");
    Precision bits = working_precision(p, requested);
    for (int attempt = 0; attempt < 2; ++attempt, bits *= 2) {
        ConstantForms base = constant_forms(p, bits);
        ConstantForms doubled = constant_forms(p, 2 * bits);
        const double error = std::max({abs_diff(base.c_direct, base.c_shifted), abs_diff(base.w_direct, base.w_shifted),
                                       abs_diff(base.c_direct, doubled.c_direct),
                                       abs_diff(base.w_direct, doubled.w_direct)});
        if (error > constants_tolerance(base.c_direct)) continue;

        CollectorConstants out;
        out.collectors = p;
        out.a = assemble_a(p, base.c_direct, base.w_direct, bits);
        out.c = std::move(base.c_direct);
        out.w = std::move(base.w_direct);
        out.precision_bits = bits;
        out.cancellation_bits = base.cancellation_bits;
        out.error_estimate = error;
        return out;
    }
    throw PrecisionError("constants: c_p/w_p evaluations disagree for p=" + std::to_string(p) + " at " +
                         std::to_string(bits / 2) + " bits");
}

namespace {

BigFloat alt_sum_at(unsigned n, unsigned power, Precision bits) {
    const std::vector<BigFloat> logs = log_table(n, bits);
    PowerSums sums = alternating_log_sums(binomial_row(n), logs, 0, false, bits);
    return power == 1 ? std::move(sums.first) : std::move(sums.second);
}

}  // namespace

AltSum alt_binomial_log_sum(unsigned n, unsigned power, Precision requested) {
    require_domain(n >= 1, "alt_binomial_log_sum: n must be >= 1");
    require_domain(power == 1 || power == 2, "alt_binomial_log_sum: power must be 1 or 2");
    Precision bits = working_precision(n, requested);
    for (int attempt = 0; attempt < 2; ++attempt, bits *= 2) {
        BigFloat base = alt_sum_at(n, power, bits);
        const double error = abs_diff(base, alt_sum_at(n, power, 2 * bits));
        if (error > constants_tolerance(base)) continue;
        return AltSum{std::move(base), bits, error};
    }
    throw PrecisionError("alt_binomial_log_sum: evaluation unstable for n=" + std::to_string(n));
}

BigFloat flajolet_expansion(unsigned n, unsigned power, Precision bits) {
    require_domain(n >= 3, "flajolet_expansion: n must be >= 3");
    require_domain(power == 1 || power == 2, "flajolet_expansion: power must be 1 or 2");
    const BigFloat gamma = BigFloat::euler_gamma(bits);
    const BigFloat zeta2 = BigFloat::zeta2(bits);
    const BigFloat ln_n = BigFloat::log_of(n, bits);
    const BigFloat lnln = log(ln_n);
    const BigFloat ln_n2 = square(ln_n);
    const BigFloat gamma2 = square(gamma);
    if (power == 1) {
        // ln ln n + g + g/ln n - (g^2 + z)/(2 ln^2 n)
        return lnln + gamma + gamma / ln_n - (gamma2 + zeta2) / (ln_n2 * 2);
    }
    // -(ln ln n)^2 - 2g ln ln n + z - g^2 - 2g ln ln n / ln n
    //   + (g^2 + z) ln ln n / ln^2 n - 2g^2 / ln n + (g^2 - z) / ln^2 n
    BigFloat out = -square(lnln);
    out -= gamma * lnln * 2;
    out += zeta2 - gamma2;
    out -= gamma * lnln * 2 / ln_n;
    out += (gamma2 + zeta2) * lnln / ln_n2;
    out -= gamma2 * 2 / ln_n;
    out += (gamma2 - zeta2) / ln_n2;
    return out;
}

ScanReport conjecture_scan(unsigned p_max, Precision requested) {
    require_domain(p_max >= 1, "conjecture_scan: p_max must be >= 1");
    ScanReport report;
    report.p_max = p_max;
    const Precision bits = working_precision(p_max, requested);
    report.precision_bits = bits;

    const std::vector<BigFloat> logs = log_table(p_max, bits);
    const std::vector<BigFloat> logs_doubled = log_table(p_max, 2 * bits);
    const BigFloat zeta2 = BigFloat::zeta2(bits);
    const BigFloat margin(kDecreaseMargin, bits);

    report.entries.reserve(p_max);
    for (unsigned p = 1; p <= p_max; ++p) {
        ConstantForms base = forms_from_table(p, logs, bits);
        const ConstantForms doubled = forms_from_table(p, logs_doubled, 2 * bits);
        const double error = std::max({abs_diff(base.c_direct, base.c_shifted), abs_diff(base.w_direct, base.w_shifted),
                                       abs_diff(base.c_shifted, doubled.c_shifted),
                                       abs_diff(base.w_shifted, doubled.w_shifted)});
        ScanEntry entry;
        entry.p = p;
        entry.a = assemble_a(p, base.c_shifted, base.w_shifted, bits);
        entry.c = std::move(base.c_shifted);
        entry.w = std::move(base.w_shifted);
        entry.error_estimate = error;

        if (error > constants_tolerance(entry.c)) report.precision_flags.push_back(p);
        if (entry.a.sign() <= 0) report.nonpositive.push_back(p);
        if (p >= 2 && entry.c.sign() >= 0) report.nonnegative_c.push_back(p);
        if (p >= 2 && !(entry.a < report.entries.back().a - margin)) report.not_decreasing.push_back(p);
        report.entries.push_back(std::move(entry));
    }

    for (unsigned p = 1; p <= p_max; p *= 2) {
        const ScanEntry& entry = report.entries[p - 1];
        BigFloat pc = entry.c * p;
        BigFloat e = abs(square(pc) - entry.w * p - zeta2);
        if (!report.diagnostics.empty() && !(e < report.diagnostics.back().second))
            report.diagnostic_violations.push_back(p);
        report.diagnostics.emplace_back(p, std::move(e));
        if (p > p_max / 2) break;
    }
    return report;
}

}  // namespace mincollector
