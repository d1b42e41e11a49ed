#pragma once
/**
 * Segmented sparse binary hypervectors.
 *
 * A hypervector of dimension N is split into M contiguous segments of width
 * d = N / M, with exactly one ON bit per segment. Only the M per-segment
 * offsets are stored, so a default-sized code (N = 65536, d = 256) occupies
 * 256 bytes of offsets.
 *
 * Similarity is the overlap (count of shared ON bits), which for segmented
 * codes is the count of segments whose offsets agree.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace segvsa {

/// Raised when two operands live in different spaces.
class space_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dimensional parameters of the segmented space.
class SpaceConfig {
public:
    static constexpr std::uint32_t kDefaultDimension = 65536;
    static constexpr std::uint32_t kDefaultSegmentWidth = 256;
    static constexpr std::uint32_t kMaxSegmentWidth = 65536;  // offsets are stored as u16

    /// Default space: N = 65536, d = 256, M = 256.
    SpaceConfig() : SpaceConfig(kDefaultDimension, kDefaultSegmentWidth) {}

    /// Throws std::invalid_argument unless d >= 2, d <= 65536 and d divides N.
    SpaceConfig(std::uint32_t dimension, std::uint32_t segment_width);

    std::uint32_t dimension() const noexcept { return dimension_; }
    std::uint32_t segment_width() const noexcept { return segment_width_; }
    std::uint32_t segment_count() const noexcept { return dimension_ / segment_width_; }
    double sparsity() const noexcept { return 1.0 / segment_width_; }

    bool operator==(const SpaceConfig&) const = default;

    std::string describe() const;

private:
    std::uint32_t dimension_;
    std::uint32_t segment_width_;
};

/**
 * Counter-based deterministic random stream.
 *
 * Draw number i (0-based from the stream's current counter c) is
 * mix64(seed + (c + 1) * 0x9E3779B97F4A7C15), which is exactly the
 * SplitMix64 sequence for the given seed. Identical (seed, counter) pairs
 * produce identical draws on every platform.
 *
 * A stream is single-owner. Use split() to derive independent streams for
 * concurrent consumers.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0, std::uint64_t counter = 0) noexcept
        : seed_(seed), counter_(counter) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform integer in [0, bound); bound must be nonzero. Unbiased.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_unit() noexcept;

    /// Independent stream keyed by `key`; does not advance this stream.
    RngStream split(std::uint64_t key) const noexcept;

    bool operator==(const RngStream&) const = default;

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a; stable across platforms, used to key derived streams.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// A point of the segmented space, stored as M offsets in segment order.
class Hypervector {
public:
    /// Throws std::invalid_argument if offsets.size() != M or any offset >= d.
    Hypervector(SpaceConfig space, std::vector<std::uint16_t> offsets);

    const SpaceConfig& space() const noexcept { return space_; }
    std::span<const std::uint16_t> offsets() const noexcept { return offsets_; }
    std::size_t size() const noexcept { return offsets_.size(); }
    std::uint16_t operator[](std::size_t segment) const noexcept { return offsets_[segment]; }

    bool operator==(const Hypervector&) const = default;

private:
    SpaceConfig space_;
    std::vector<std::uint16_t> offsets_;
};

/// Throws space_mismatch if a and b come from different spaces.
void require_same_space(const Hypervector& a, const Hypervector& b);

/// Each offset drawn uniformly from [0, d); advances rng by M draws.
Hypervector random_code(const SpaceConfig& space, RngStream& rng);

/// Count of segments where the offsets agree, in [0, M].
std::uint32_t overlap(const Hypervector& a, const Hypervector& b);

/// Bit-level Hamming distance, 2 * (M - overlap), in [0, 2M].
std::uint32_t hamming(const Hypervector& a, const Hypervector& b);

/// overlap / M.
double cosine(const Hypervector& a, const Hypervector& b);

/// Dense bit expansion (N bits packed little-endian into 64-bit words).
/// Debug and interop helper only.
std::vector<std::uint64_t> expand_dense(const Hypervector& code);

/// Inverse of expand_dense; throws std::invalid_argument unless every
/// segment holds exactly one ON bit.
Hypervector compress_dense(const SpaceConfig& space, std::span<const std::uint64_t> bits);

}  // namespace segvsa
