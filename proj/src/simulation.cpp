#include "mincollector/simulation.hpp"

#include "mincollector/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace mincollector {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr double kZ95 = 1.959963984540054;

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
    for (auto& word : state_) word = splitmix64(seed);
}

Xoshiro256StarStar Xoshiro256StarStar::from_state(const std::array<std::uint64_t, 4>& state) {
    Xoshiro256StarStar out;
    out.state_ = state;
    return out;
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

void Xoshiro256StarStar::jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                           0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
            }
            (*this)();
        }
    }
    state_ = acc;
}

double Xoshiro256StarStar::uniform_open_closed() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t Xoshiro256StarStar::below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection.
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::string_view to_string(SamplerMode mode) {
    return mode == SamplerMode::inverse_transform ? "inverse-transform" : "bernoulli-loop";
}

std::uint64_t simulate_completion_time(unsigned n, Xoshiro256StarStar& rng, SamplerMode mode) {
    require_domain(n >= 1, "simulate_completion_time: N must be >= 1");
    std::uint64_t total = 0;
    if (mode == SamplerMode::bernoulli_loop) {
        // Having seen `seen` types, a draw is new iff its label falls among the
        // N - seen unseen ones; relabel so those are 0..N-seen-1.
        for (unsigned seen = 0; seen < n; ++seen) {
            do {
                ++total;
            } while (rng.below(n) >= n - seen);
        }
        return total;
    }
    const double nn = static_cast<double>(n);
    total = 1;  // the first draw is always new
    for (unsigned seen = 1; seen < n; ++seen) {
        const double success = static_cast<double>(n - seen) / nn;
        const double wait = std::ceil(std::log(rng.uniform_open_closed()) / std::log1p(-success));
        total += std::max<std::uint64_t>(1, static_cast<std::uint64_t>(wait));
    }
    return total;
}

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kBlock = 32;
    if (values.size() <= kBlock) {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SimulationStats run_simulation(unsigned n, unsigned p, std::uint64_t replications, std::uint64_t seed,
                               SamplerMode mode) {
    require_domain(n >= 1, "run_simulation: N must be >= 1");
    require_domain(p >= 1, "run_simulation: p must be >= 1");
    require_domain(replications >= 2, "run_simulation: replications must be >= 2");

    std::vector<double> minima(replications);
    Xoshiro256StarStar base(seed);
    for (std::uint64_t r = 0; r < replications; ++r) {
        Xoshiro256StarStar stream = base;
        base.jump();
        std::uint64_t best = simulate_completion_time(n, stream, mode);
        for (unsigned c = 1; c < p; ++c) best = std::min(best, simulate_completion_time(n, stream, mode));
        minima[r] = static_cast<double>(best);
    }

    const double count = static_cast<double>(replications);
    const double mean = pairwise_sum(minima) / count;
    std::vector<double> squares(replications);
    std::transform(minima.begin(), minima.end(), squares.begin(), [mean](double x) { return (x - mean) * (x - mean); });
    const double variance = pairwise_sum(squares) / (count - 1.0);

    SimulationStats stats;
    stats.species = n;
    stats.collectors = p;
    stats.replications = replications;
    stats.seed = seed;
    stats.mode = mode;
    stats.sample_mean = mean;
    stats.sample_variance = variance;
    stats.std_error = std::sqrt(variance / count);
    stats.ci95_low = mean - kZ95 * stats.std_error;
    stats.ci95_high = mean + kZ95 * stats.std_error;
    return stats;
}

}  // namespace mincollector
