#pragma once
// Test-only reference computations. Nothing here calls into the library's
// algebra, learner or search code; the helpers work on raw offset arrays,
// dense bitsets or closed forms so they can check the library independently.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Offsets = std::vector<std::uint16_t>;

inline Offsets random_offsets(std::mt19937_64& gen, std::size_t m, std::uint32_t d) {
    std::uniform_int_distribution<std::uint32_t> dist(0, d - 1);
    Offsets o(m);
    for (auto& x : o) {
        x = static_cast<std::uint16_t>(dist(gen));
    }
    return o;
}

/// Dense bitset of a segmented code, built from scratch.
inline std::vector<std::uint64_t> dense(const Offsets& offsets, std::uint32_t d) {
    const std::size_t n = offsets.size() * d;
    std::vector<std::uint64_t> bits((n + 63) / 64, 0);
    for (std::size_t seg = 0; seg < offsets.size(); ++seg) {
        const std::size_t pos = seg * d + offsets[seg];
        bits[pos / 64] |= std::uint64_t{1} << (pos % 64);
    }
    return bits;
}

/// Bitwise AND popcount.
inline std::uint32_t dense_overlap(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += static_cast<std::uint32_t>(std::popcount(a[i] & b[i]));
    }
    return n;
}

/// Bitwise XOR popcount.
inline std::uint32_t dense_hamming(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += static_cast<std::uint32_t>(std::popcount(a[i] ^ b[i]));
    }
    return n;
}

inline std::uint32_t count_equal(const Offsets& a, const Offsets& b) {
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += a[i] == b[i];
    }
    return n;
}

/// Probability that a segment of a uniform K-way bundle agrees with operand k:
/// picked from k (1/K) or picked elsewhere and colliding by chance.
inline double bundle_hit_probability(double weight, std::uint32_t d) {
    return weight + (1.0 - weight) / d;
}

inline double binomial_mean(std::uint32_t n, double p) { return n * p; }
inline double binomial_sd(std::uint32_t n, double p) { return std::sqrt(n * p * (1.0 - p)); }

/// Exact binomial CDF P(X <= k) by summing the pmf in log space.
inline double binomial_cdf(std::uint32_t k, std::uint32_t n, double p) {
    double total = 0.0;
    for (std::uint32_t i = 0; i <= std::min(k, n); ++i) {
        const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                               i * std::log(p) + (n - i) * std::log1p(-p);
        total += std::exp(log_pmf);
    }
    return std::min(total, 1.0);
}

/// Monte Carlo: mean overlap between a uniform K-way bundle and one operand.
inline double simulate_bundle_overlap(std::size_t k, std::size_t m, std::uint32_t d, int trials,
                                      std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Offsets> codes;
        for (std::size_t i = 0; i < k; ++i) {
            codes.push_back(random_offsets(gen, m, d));
        }
        Offsets b(m);
        for (std::size_t seg = 0; seg < m; ++seg) {
            b[seg] = codes[pick(gen)][seg];
        }
        for (const auto& c : codes) {
            sum += count_equal(b, c);
        }
    }
    return sum / (static_cast<double>(trials) * k);
}

/// Monte Carlo: running-average learner over k distinct random codes; mean
/// overlap of the final snapshot with each input.
inline double simulate_learner_overlap(std::size_t k, std::size_t m, std::uint32_t d, int trials,
                                       std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Offsets> codes;
        for (std::size_t i = 0; i < k; ++i) {
            codes.push_back(random_offsets(gen, m, d));
        }
        Offsets l = codes[0];
        for (std::size_t step = 1; step < k; ++step) {
            std::uniform_int_distribution<std::size_t> coin(0, step);
            for (std::size_t seg = 0; seg < m; ++seg) {
                if (coin(gen) == 0) {
                    l[seg] = codes[step][seg];
                }
            }
        }
        for (const auto& c : codes) {
            sum += count_equal(l, c);
        }
    }
    return sum / (static_cast<double>(trials) * k);
}

/// Frame inner product from a raw overlap count.
inline double frame_coefficient(double overlap, std::size_t m, std::uint32_t d) {
    const double s = 1.0 / d;
    return overlap / (m * (1.0 - s)) - s / (1.0 - s);
}

/// Ranking by (overlap desc, label asc) with std::sort over precomputed scores.
inline std::vector<std::pair<std::string, std::uint32_t>> rank_all(
    std::vector<std::pair<std::string, std::uint32_t>> scored) {
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return scored;
}

// Expectations frozen from the simulations above (1000 trials each, also
// cross-checked against the closed form M * (w + (1 - w) / d)).
inline constexpr double kBundleK4Overlap = 64.75;       // M = d = 256, K = 4
inline constexpr double kBundleK2Overlap = 128.5;       // K = 2
inline constexpr double kLearner16Overlap = 16.9375;    // 16 distinct feeds
inline constexpr double kObservation5Overlap = 52.0;    // full window, 5 operands
inline constexpr double kSequence6Overlap = 43.5;       // K = 6, released position
inline constexpr double kSet8Overlap = 32.875;          // K = 8
inline constexpr double kTwoMemberFrameCoefficient = 0.5;

}  // namespace oracle
