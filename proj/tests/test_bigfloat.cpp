#include "mincollector/bigfloat.hpp"
#include "mincollector/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <utility>

using namespace mincollector;

TEST_CASE("BigFloat arithmetic keeps the wider precision", "[bigfloat]") {
    const BigFloat narrow(1L, 64);
    const BigFloat wide(3L, 512);
    const BigFloat sum = narrow + wide;
    CHECK(sum.precision() == 512);
    CHECK(sum.to_double() == 4.0);

    const BigFloat third = BigFloat(1L, 512) / 3;
    const BigFloat back = third * 3UL;
    CHECK(abs(back - BigFloat(1L, 512)).to_double() < 1e-150);
}

TEST_CASE("BigFloat constants", "[bigfloat]") {
    const BigFloat pi("3.141592653589793238462643383279502884197", 256);
    const BigFloat gamma("0.5772156649015328606065120900824024310422", 256);
    CHECK(abs(BigFloat::pi(256) - pi).to_double() < 1e-38);
    CHECK(abs(BigFloat::euler_gamma(256) - gamma).to_double() < 1e-38);
    CHECK(abs(BigFloat::zeta2(256) - square(pi) / 6).to_double() < 1e-38);
    CHECK(abs(exp(BigFloat::log_of(7, 256)) - BigFloat(7L, 256)).to_double() < 1e-70);
}

TEST_CASE("BigFloat rational and integer conversion is exact when it fits", "[bigfloat]") {
    const mpz_class big = mpz_class(1) << 200;
    const BigFloat x(mpz_class(big + 1), 256);
    CHECK(x - BigFloat(big, 256) == BigFloat(1L, 256));
    const BigFloat q(mpq_class(1, 4), 64);
    CHECK(q.to_double() == 0.25);
}

TEST_CASE("BigFloat decimal rendering round-trips", "[bigfloat]") {
    const BigFloat x = BigFloat::pi(256) / 7;
    const BigFloat parsed(x.to_string(), 256);
    CHECK(parsed == x);
    CHECK(BigFloat(-0.5, 64).to_string(3) == "-0.5");
    CHECK_THROWS_AS(BigFloat("12abc", 64), DomainError);
    CHECK_THROWS_AS(BigFloat("", 64), DomainError);
}

TEST_CASE("BigFloat copies and moves", "[bigfloat]") {
    BigFloat a(2L, 300);
    BigFloat b = a;
    b += BigFloat(1L, 300);
    CHECK(a.to_double() == 2.0);
    BigFloat c = std::move(b);
    CHECK(c.to_double() == 3.0);
    CHECK(c.precision() == 300);
    a = c;
    CHECK(a == c);
    CHECK(a > BigFloat(2.5, 64));
    CHECK(-a < BigFloat(0L, 64));
}
