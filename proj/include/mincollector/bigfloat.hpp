#pragma once

// Value-semantic RAII wrapper over an MPFR floating-point number. Every value
// carries its own precision in bits; binary operations round to the larger of
// the two operand precisions (round-to-nearest).

#include <mpfr.h>

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>

namespace mincollector {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultBits = 256;

class BigFloat {
public:
    explicit BigFloat(Precision bits = kDefaultBits);
    BigFloat(long value, Precision bits);
    BigFloat(double value, Precision bits);
    BigFloat(const mpz_class& value, Precision bits);
    BigFloat(const mpq_class& value, Precision bits);
    // Parses a decimal string; throws DomainError when it is not a number.
    BigFloat(const std::string& decimal, Precision bits);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    [[nodiscard]] Precision precision() const { return mpfr_get_prec(value_); }
    // Returns a copy rounded to `bits`.
    [[nodiscard]] BigFloat with_precision(Precision bits) const;

    [[nodiscard]] mpfr_srcptr get() const { return value_; }
    [[nodiscard]] mpfr_ptr get() { return value_; }

    [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    [[nodiscard]] long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
    // Decimal rendering with `digits` significant digits; 0 picks enough
    // digits to reconstruct the binary precision.
    [[nodiscard]] std::string to_string(int digits = 0) const;

    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
    // Binary exponent e with 2^(e-1) <= |x| < 2^e; meaningless for zero.
    [[nodiscard]] long exponent() const { return mpfr_get_exp(value_); }

    static BigFloat pi(Precision bits);
    static BigFloat euler_gamma(Precision bits);
    // pi^2 / 6
    static BigFloat zeta2(Precision bits);
    static BigFloat log_of(unsigned long n, Precision bits);

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);
    BigFloat& operator*=(unsigned long rhs);
    BigFloat& operator/=(unsigned long rhs);

    friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
    friend BigFloat operator*(BigFloat lhs, unsigned long rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, unsigned long rhs) { return lhs /= rhs; }
    BigFloat operator-() const;

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

private:
    void grow_to(Precision bits);

    mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat square(const BigFloat& x);
BigFloat pow(const BigFloat& x, unsigned long n);

// Number of decimal digits needed to round-trip `bits` of binary precision.
int decimal_digits_for(Precision bits);

}  // namespace mincollector
