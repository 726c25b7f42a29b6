#pragma once

// Seeded Monte Carlo estimates of the moments of the first of p independent
// uniform coupon collectors to finish.

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace mincollector {

// xoshiro256** 1.0, state seeded from a 64-bit seed through splitmix64.
// jump() advances the stream by 2^128 steps; replication r of a run uses the
// stream obtained after r jumps, so replications never overlap.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed);
    static Xoshiro256StarStar from_state(const std::array<std::uint64_t, 4>& state);

    result_type operator()();
    void jump();

    // Uniform on (0, 1] with 53 random bits.
    double uniform_open_closed();
    // Uniform on [0, bound), unbiased. bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    friend bool operator==(const Xoshiro256StarStar&, const Xoshiro256StarStar&) = default;

    [[nodiscard]] const std::array<std::uint64_t, 4>& state() const { return state_; }

private:
    Xoshiro256StarStar() = default;

    std::array<std::uint64_t, 4> state_{};
};

enum class SamplerMode {
    // Sum of geometric waiting times drawn as ceil(ln U / ln(1 - q)) from a
    // 53-bit uniform. The per-draw bias from the finite grid is below 2^-50.
    inverse_transform,
    // Draw coupon labels one at a time until every type has been seen. Exact
    // but O(N ln N) draws per sample; meant for small N.
    bernoulli_loop,
};

std::string_view to_string(SamplerMode mode);

// One draw of T_N.
std::uint64_t simulate_completion_time(unsigned n, Xoshiro256StarStar& rng,
                                       SamplerMode mode = SamplerMode::inverse_transform);

struct SimulationStats {
    unsigned species = 0;
    unsigned collectors = 0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
    SamplerMode mode = SamplerMode::inverse_transform;
    double sample_mean = 0.0;
    double sample_variance = 0.0;  // unbiased
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
};

// Each replication takes the minimum of p independent draws of T_N.
// Deterministic in (n, p, replications, seed, mode). Requires replications >= 2.
SimulationStats run_simulation(unsigned n, unsigned p, std::uint64_t replications, std::uint64_t seed,
                               SamplerMode mode = SamplerMode::inverse_transform);

// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace mincollector
