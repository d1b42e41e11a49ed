#pragma once
// Set and sequence encodings over a cleanup memory.
//
// A set is the uniform bundle of its members. A sequence binds item k to the
// k-th power of a step marker before bundling; position k is read back by
// releasing P_step^k and looking up the best codebook match.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "segvsa/cleanup.hpp"
#include "segvsa/core.hpp"

namespace segvsa {

/// Codebook label under which a codec's step marker is persisted.
inline constexpr std::string_view kStepMarkerLabel = "__P_step__";

class SequenceCodec {
public:
    /// Throws std::invalid_argument if marker is the unit vector.
    explicit SequenceCodec(Hypervector step_marker);

    /// Draws a fresh non-unit marker.
    static SequenceCodec generate(const SpaceConfig& space, RngStream& rng);

    const Hypervector& step_marker() const noexcept { return step_; }
    const SpaceConfig& space() const noexcept { return step_.space(); }

    /// P_step^k.
    Hypervector position_marker(std::int64_t k) const;

private:
    Hypervector step_;
};

using WarningSink = std::function<void(const std::string&)>;

/// Writes to std::cerr.
void stderr_warning(const std::string& message);

/// M / (2 * k_max), at least 1. Midway between member signal M/K and the
/// noise floor for sets of up to k_max members; 8 at defaults.
std::uint32_t default_threshold(const SpaceConfig& space, std::uint32_t k_max = 16);

/// Uniform bundle of the members. Members that are not nearly orthogonal are
/// reported through `warn`, not rejected.
Hypervector encode_set(const std::vector<Hypervector>& members, RngStream& rng,
                       const WarningSink& warn = stderr_warning);

std::set<std::string> decode_set(const Hypervector& set_code, const Codebook& book,
                                 std::uint32_t threshold);

Hypervector encode_sequence(const std::vector<Hypervector>& items, const SequenceCodec& codec,
                            RngStream& rng);

/// Walks positions 0, 1, 2, ... taking the top-1 match of S ⊘ P_step^k, and
/// stops at the first position whose best overlap falls below threshold.
/// Never walks past d positions (P_step^d is the unit vector).
std::vector<std::string> decode_sequence(const Hypervector& sequence_code, const Codebook& book,
                                         const SequenceCodec& codec, std::uint32_t threshold);

/// Copy of `book` with the codec stored under kStepMarkerLabel.
Codebook with_codec(const Codebook& book, const SequenceCodec& codec);

/// Separates a persisted codec from the ordinary entries.
std::pair<Codebook, std::optional<SequenceCodec>> split_codec(const Codebook& book);

}  // namespace segvsa
