#pragma once
/**
 * Online bundling learner and frame decomposition.
 *
 * The learner keeps a running-average bundle of every code it has been fed:
 * after k previous feeds, each segment adopts the incoming offset with
 * probability 1/(k+1). The snapshot after K feeds holds each input's offset
 * in about M/K segments, so it stays equally similar to all its inputs.
 *
 * frame_inner_product() and project() read such a snapshot back as
 * coefficients over a nearly orthogonal set: with s = 1/d,
 *
 *     <A,B>* = overlap(A,B) / (M (1 - s)) - s / (1 - s)
 *
 * which removes the accidental-overlap bias M s and rescales so that a code
 * projected on itself gives exactly 1.
 */

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "segvsa/core.hpp"

namespace segvsa {

class OnlineLearner {
public:
    /// Unseeded learner; the first feed fixes the space.
    OnlineLearner() = default;
    /// Unseeded learner bound to a space (so it can be persisted before any feed).
    explicit OnlineLearner(SpaceConfig space) : space_(space) {}
    /// Resume from a persisted snapshot. count must be >= 1.
    OnlineLearner(Hypervector snapshot, std::uint64_t count);

    /// Absorb one experience. Throws space_mismatch if code is from another space.
    void feed(const Hypervector& code, RngStream& rng);

    std::uint64_t count() const noexcept { return count_; }
    bool seeded() const noexcept { return count_ > 0; }
    std::optional<SpaceConfig> space() const noexcept { return space_; }

    /// Current snapshot; throws std::logic_error while unseeded.
    const Hypervector& snapshot() const;

private:
    std::optional<SpaceConfig> space_;
    std::optional<Hypervector> snapshot_;
    std::uint64_t count_ = 0;
};

/// Functional form of OnlineLearner::feed.
OnlineLearner fed(OnlineLearner learner, const Hypervector& code, RngStream& rng);

/// A labeled frame of codes with pairwise overlap near the noise floor.
class NearlyOrthogonalSet {
public:
    /// Relative overlap bound used by validation: pairwise overlap / M <= 5 s.
    static constexpr double kMaxRelativeOverlapInSparsityUnits = 5.0;

    /// Throws std::invalid_argument if sizes differ, labels repeat, or any pair
    /// exceeds the overlap bound; space_mismatch on mixed spaces.
    NearlyOrthogonalSet(std::vector<Hypervector> members, std::vector<std::string> labels);

    /// Members labeled "p0", "p1", ...
    explicit NearlyOrthogonalSet(std::vector<Hypervector> members);

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const Hypervector& member(std::size_t i) const { return members_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<Hypervector>& members() const noexcept { return members_; }

private:
    std::vector<Hypervector> members_;
    std::vector<std::string> labels_;
};

struct CorrelatedPair {
    std::size_t first;
    std::size_t second;
    std::uint32_t overlap;
};

/// Pairs whose overlap exceeds 5 s M (the nearly-orthogonal bound).
std::vector<CorrelatedPair> correlated_pairs(const std::vector<Hypervector>& codes);

/// Coefficients over a frame. `raw` is unclamped; `alpha` is clamped to [0, 1].
struct FrameProjection {
    std::vector<double> raw;
    std::vector<double> alpha;

    double total() const;
};

double frame_inner_product(const Hypervector& a, const Hypervector& b);

/// Throws std::invalid_argument for an empty frame.
FrameProjection project(const Hypervector& code, const NearlyOrthogonalSet& frame);

// HVL1: magic, u32 N, u32 d, u64 count, M u16 offsets (zeros while unseeded).
void write_learner(std::ostream& out, const OnlineLearner& learner);
OnlineLearner read_learner(std::istream& in);
void save_learner(const std::filesystem::path& path, const OnlineLearner& learner);
OnlineLearner load_learner(const std::filesystem::path& path);

}  // namespace segvsa
