#include "mincollector/errors.hpp"
#include "mincollector/exact_moments.hpp"
#include "mincollector/stirling.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace mincollector;

namespace {

// Direct numerical summation of the union-bound tail, used to check that
// truncation_index returns the minimal K.
long double summed_tail(unsigned n, unsigned p, std::uint64_t first, MomentOrder order) {
    long double total = 0.0L;
    const long double r = 1.0L - 1.0L / n;
    for (std::uint64_t k = first; k < first + 200000; ++k) {
        const long double b = std::pow(n * std::pow(r, static_cast<long double>(k - 1)), static_cast<long double>(p));
        total += order == MomentOrder::first ? b : (2.0L * k - 1.0L) * b;
        if (b == 0.0L) break;
    }
    return total;
}

double to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace

TEST_CASE("truncation_index examples", "[moments]") {
    CHECK(truncation_index(1, 1, 1e-9, MomentOrder::first) == 2);
    CHECK(truncation_index(1, 1, 1e-9, MomentOrder::second) == 2);
    CHECK(truncation_index(2, 2, 1e-12, MomentOrder::first) == 23);
    CHECK(truncation_index(2, 1, 1e-6, MomentOrder::first) == 23);
    CHECK_THROWS_AS(truncation_index(2, 1, 0.0, MomentOrder::first), DomainError);
    CHECK_THROWS_AS(truncation_index(2, 1, -1.0, MomentOrder::second), DomainError);
}

TEST_CASE("truncation_index is the minimal index under the summed tail", "[moments][oracle]") {
    for (unsigned n : {2u, 3u, 7u, 20u}) {
        for (unsigned p : {1u, 2u, 5u}) {
            for (double eps : {1e-3, 1e-9, 1e-12}) {
                for (MomentOrder order : {MomentOrder::first, MomentOrder::second}) {
                    const std::uint64_t k = truncation_index(n, p, eps, order);
                    INFO("N=" << n << " p=" << p << " eps=" << eps << " K=" << k);
                    CHECK(summed_tail(n, p, k, order) < eps * (1 + 1e-9));
                    if (k > 1) CHECK(summed_tail(n, p, k - 1, order) >= eps * (1 - 1e-9));
                }
            }
        }
    }
}

TEST_CASE("exact_mean examples", "[moments]") {
    const MomentResult one = exact_mean(1, 7, {.epsilon = 1e-9});
    REQUIRE(one.mean_partial_sum);
    CHECK(*one.mean_partial_sum == 1);
    CHECK(one.truncation_bound == 0.0);

    const MomentResult pair = exact_mean(2, 2, {.epsilon = 1e-9});
    CHECK(std::fabs(pair.mean.to_double() - 7.0 / 3.0) <= 1e-9);
    CHECK(pair.truncation_bound < 1e-9);
    CHECK(pair.mode == ArithmeticMode::exact_rational);

    const MomentResult single = exact_mean(2, 1, {.epsilon = 1e-9});
    CHECK(std::fabs(single.mean.to_double() - 3.0) <= 1e-9);
    CHECK_FALSE(single.second_moment.has_value());
}

TEST_CASE("exact_second_moment examples", "[moments]") {
    const MomentResult one = exact_second_moment(1, 3, {.epsilon = 1e-9});
    CHECK(*one.second_moment_partial_sum == 1);
    CHECK(one.variance->is_zero());

    const MomentResult classic = exact_second_moment(2, 1, {.epsilon = 1e-9});
    CHECK(std::fabs(classic.second_moment->to_double() - 11.0) <= 1e-9);
    CHECK(std::fabs(classic.variance->to_double() - 2.0) <= 1e-8);

    // min of two T_2: 1 + Geometric(3/4) on {1, 2, ...}, so E[M^2] = 53/9, Var = 4/9.
    const MomentResult pair = exact_second_moment(2, 2, {.epsilon = 1e-12});
    CHECK(std::fabs(pair.second_moment->to_double() - 53.0 / 9.0) <= 1e-12);
    CHECK(std::fabs(pair.variance->to_double() - 4.0 / 9.0) <= 1e-11);
}

TEST_CASE("second moment matches the Markov-chain law", "[moments][oracle]") {
    for (unsigned n = 2; n <= 6; ++n) {
        for (unsigned p = 1; p <= 3; ++p) {
            // E[M^2] = sum_{k>=1} (2k-1) P(T >= k)^p with P(T >= k) = 1 - q_{k-1}.
            const CompletionLaw law = markov_law_oracle(n, 400);
            mpq_class mean = 0;
            mpq_class second = 0;
            for (unsigned k = 1; k <= 400; ++k) {
                mpq_class survival = 1 - law.cdf(k - 1);
                mpq_class term = 1;
                for (unsigned i = 0; i < p; ++i) term *= survival;
                mean += term;
                second += (2 * k - 1) * term;
            }
            const MomentResult result = exact_second_moment(n, p, {.epsilon = 1e-12});
            INFO("N=" << n << " p=" << p);
            CHECK(std::fabs(result.mean.to_double() - to_double(mean)) <= 2e-12);
            CHECK(std::fabs(result.second_moment->to_double() - to_double(second)) <= 2e-12 * to_double(second));
        }
    }
}

TEST_CASE("pair_closed_form_mean examples", "[moments]") {
    CHECK(pair_closed_form_mean(1) == 1);
    CHECK(pair_closed_form_mean(2) == mpq_class(7, 3));
    const MomentResult series = exact_mean(3, 2, {.epsilon = 1e-12});
    CHECK(std::fabs(to_double(pair_closed_form_mean(3)) - series.mean.to_double()) <= 2e-12);
    CHECK_THROWS_AS(pair_closed_form_mean(100, 1000), WorkBudgetError);
}

TEST_CASE("exact and high-precision modes agree", "[moments]") {
    for (unsigned p : {1u, 2u, 3u}) {
        const MomentResult exact = exact_second_moment(30, p, {.mode = ArithmeticMode::exact_rational});
        const MomentResult floating = exact_second_moment(30, p, {.mode = ArithmeticMode::high_precision});
        CHECK(floating.mode == ArithmeticMode::high_precision);
        CHECK_FALSE(floating.mean_partial_sum.has_value());
        CHECK(exact.terms_used == floating.terms_used);
        CHECK(abs(exact.mean - floating.mean).to_double() < 1e-60);
        CHECK(abs(*exact.second_moment - *floating.second_moment).to_double() < 1e-55);
        CHECK(floating.truncation_bound < 1e-12);
    }
    CHECK(exact_mean(65, 1).mode == ArithmeticMode::high_precision);
    CHECK(exact_mean(64, 1).mode == ArithmeticMode::exact_rational);
}

TEST_CASE("work budget is enforced", "[moments][errors]") {
    CHECK_THROWS_AS(exact_mean(1000, 1, {.work_budget = 1000}), WorkBudgetError);
    CHECK_THROWS_AS(exact_mean(0, 1), DomainError);
    CHECK_THROWS_AS(exact_mean(3, 0), DomainError);
    CHECK_THROWS_AS(exact_mean(3, 1, {.epsilon = 0.0}), DomainError);
}

TEST_CASE("moment invariants", "[moments][property]") {
    constexpr double eps = 1e-12;
    for (unsigned n = 1; n <= 16; ++n) {
        double previous = 0.0;
        for (unsigned p = 1; p <= 6; ++p) {
            const MomentResult r = exact_second_moment(n, p, {.epsilon = eps});
            const double mean = r.mean.to_double();
            const double slack = 2.0 * (mean + 1.0) * eps;
            INFO("N=" << n << " p=" << p);
            CHECK(r.truncation_bound < eps);
            CHECK(mean >= n - eps);
            CHECK(r.variance->to_double() >= -slack);
            CHECK(std::fabs(r.variance->to_double() - (r.second_moment->to_double() - mean * mean)) <=
                  slack + 1e-12 * mean * mean);
            if (p > 1) CHECK(mean <= previous + eps);
            previous = mean;
        }
    }
}
