#include "spinstat/beam.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "spinstat/error.hpp"

namespace spinstat {

std::string hypothesis_name(Hypothesis h) { return h == Hypothesis::Uniform ? "uniform" : "binomial"; }

Hypothesis parse_hypothesis(std::string_view text) {
    if (text == "uniform") return Hypothesis::Uniform;
    if (text == "binomial") return Hypothesis::Binomial;
    throw Error(ErrorCode::UnknownTag, "hypothesis must be 'uniform' or 'binomial'");
}

SpinDistribution hypothesis_distribution(Hypothesis h) {
    return h == Hypothesis::Uniform ? SpinDistribution::uniform(HalfInt(1)) : SpinDistribution::binomial();
}

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kChunk = 1U << 16;
}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

std::uint64_t CounterRng::draw(std::uint64_t index) const noexcept { return mix(key_ + (index + 1) * kGolden); }

BeamResult simulate_beam(const BeamConfig& cfg) {
    BeamResult out;
    out.atoms = cfg.atoms;
    out.hypothesis = cfg.hypothesis;
    out.seed = cfg.seed;

    // u / 2^53 < num / den  <=>  u * den < num * 2^53.
    const SpinDistribution law = hypothesis_distribution(cfg.hypothesis);
    std::array<detail::i128, 2> bound_num{};
    std::array<detail::i128, 2> bound_den{};
    Rational cumulative(0);
    for (std::size_t c = 0; c < 2; ++c) {
        cumulative += law.probs()[c];
        bound_num[c] = static_cast<detail::i128>(cumulative.num()) << 53;
        bound_den[c] = cumulative.den();
    }
    const CounterRng rng(cfg.seed);
    auto sample_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::array<std::uint64_t, 3> counts{};
        for (std::uint64_t i = begin; i < end; ++i) {
            const detail::i128 u = rng.draw53(i);
            std::size_t cell = 2;
            if (u * bound_den[0] < bound_num[0]) cell = 0;
            else if (u * bound_den[1] < bound_num[1]) cell = 1;
            ++counts[cell];
        }
        return counts;
    };

    const std::uint64_t chunks = (cfg.atoms + kChunk - 1) / kChunk;
    unsigned threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

    if (threads <= 1) {
        out.counts = sample_range(0, cfg.atoms);
    } else {
        std::vector<std::array<std::uint64_t, 3>> partial(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += threads) {
                    auto counts = sample_range(c * kChunk, std::min(cfg.atoms, (c + 1) * kChunk));
                    for (std::size_t k = 0; k < 3; ++k) partial[t][k] += counts[k];
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& p : partial)
            for (std::size_t k = 0; k < 3; ++k) out.counts[k] += p[k];
    }
    for (std::size_t k = 0; k < 3; ++k)
        out.proportions[k] = cfg.atoms ? static_cast<double>(out.counts[k]) / static_cast<double>(cfg.atoms) : 0.0;
    return out;
}

ChiSquareResult chi_square_discriminate(const BeamResult& result, Hypothesis null_hypothesis, double critical_value) {
    ChiSquareResult out;
    out.null_hypothesis = null_hypothesis;
    out.critical_value = critical_value;
    const SpinDistribution law = hypothesis_distribution(null_hypothesis);
    const double n = static_cast<double>(result.atoms);
    for (std::size_t k = 0; k < 3; ++k) {
        out.expected[k] = n * law.probs()[k].to_double();
        if (out.expected[k] < 5.0)
            throw Error(ErrorCode::InsufficientSample, "expected count below 5 in cell " + std::to_string(k));
        const double diff = static_cast<double>(result.counts[k]) - out.expected[k];
        out.statistic += diff * diff / out.expected[k];
    }
    out.reject = out.statistic > critical_value;
    return out;
}

}  // namespace spinstat
