#include "mincollector/bigfloat.hpp"

#include "mincollector/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mincollector {

BigFloat::BigFloat(Precision bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, Precision bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, Precision bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, Precision bits) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, Precision bits) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& decimal, Precision bits) {
    mpfr_init2(value_, bits);
    char* end = nullptr;
    mpfr_strtofr(value_, decimal.c_str(), &end, 10, MPFR_RNDN);
    if (decimal.empty() || end == nullptr || *end != '\0') {
        mpfr_clear(value_);
        throw DomainError("not a decimal number: '" + decimal + "'");
    }
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    // Leave `other` valid with a minimal allocation.
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::with_precision(Precision bits) const {
    BigFloat out(bits);
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
}

std::string BigFloat::to_string(int digits) const {
    if (digits <= 0) digits = decimal_digits_for(precision());
    char* buffer = nullptr;
    mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
}

BigFloat BigFloat::pi(Precision bits) {
    BigFloat out(bits);
    mpfr_const_pi(out.value_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::euler_gamma(Precision bits) {
    BigFloat out(bits);
    mpfr_const_euler(out.value_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::zeta2(Precision bits) {
    BigFloat out(bits);
    mpfr_zeta_ui(out.value_, 2, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::log_of(unsigned long n, Precision bits) {
    BigFloat out(bits);
    mpfr_log_ui(out.value_, n, MPFR_RNDN);
    return out;
}

void BigFloat::grow_to(Precision bits) {
    if (bits > precision()) mpfr_prec_round(value_, bits, MPFR_RNDN);
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
    grow_to(rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
    grow_to(rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
    grow_to(rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
    grow_to(rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(unsigned long rhs) {
    mpfr_mul_ui(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(unsigned long rhs) {
    mpfr_div_ui(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const {
    BigFloat out(precision());
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

namespace {

template <typename Fn>
BigFloat unary(const BigFloat& x, Fn fn) {
    BigFloat out(x.precision());
    fn(out.get(), x.get(), MPFR_RNDN);
    return out;
}

}  // namespace

BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
BigFloat log1p(const BigFloat& x) { return unary(x, mpfr_log1p); }
BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
BigFloat square(const BigFloat& x) { return unary(x, mpfr_sqr); }

BigFloat pow(const BigFloat& x, unsigned long n) {
    BigFloat out(x.precision());
    mpfr_pow_ui(out.get(), x.get(), n, MPFR_RNDN);
    return out;
}

int decimal_digits_for(Precision bits) {
    return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 1;
}

}  // namespace mincollector
