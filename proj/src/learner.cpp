#include "segvsa/learner.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "segvsa/algebra.hpp"
#include "segvsa/binary_io.hpp"

namespace segvsa {

namespace {

constexpr io::Magic kLearnerMagic{'H', 'V', 'L', '1'};

std::uint32_t max_pair_overlap(const SpaceConfig& space) {
    // 5 s M, rounded down; overlaps are integers.
    return static_cast<std::uint32_t>(NearlyOrthogonalSet::kMaxRelativeOverlapInSparsityUnits *
                                      space.segment_count() / space.segment_width());
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = "p" + std::to_string(i);
    }
    return labels;
}

}  // namespace

OnlineLearner::OnlineLearner(Hypervector snapshot, std::uint64_t count)
    : space_(snapshot.space()), snapshot_(std::move(snapshot)), count_(count) {
    if (count == 0) {
        throw std::invalid_argument("a restored learner needs count >= 1");
    }
}

void OnlineLearner::feed(const Hypervector& code, RngStream& rng) {
    if (space_ && *space_ != code.space()) {
        throw space_mismatch("learner space " + space_->describe() + " does not match code space " +
                             code.space().describe());
    }
    if (count_ == 0) {
        space_ = code.space();
        snapshot_ = code;
        count_ = 1;
        return;
    }
    std::vector<std::uint16_t> next(snapshot_->offsets().begin(), snapshot_->offsets().end());
    for (std::size_t seg = 0; seg < next.size(); ++seg) {
        if (rng.next_below(count_ + 1) == 0) {
            next[seg] = code[seg];
        }
    }
    snapshot_ = Hypervector(code.space(), std::move(next));
    ++count_;
}

const Hypervector& OnlineLearner::snapshot() const {
    if (!snapshot_) {
        throw std::logic_error("learner has not been fed yet");
    }
    return *snapshot_;
}

OnlineLearner fed(OnlineLearner learner, const Hypervector& code, RngStream& rng) {
    learner.feed(code, rng);
    return learner;
}

std::vector<CorrelatedPair> correlated_pairs(const std::vector<Hypervector>& codes) {
    std::vector<CorrelatedPair> out;
    if (codes.empty()) {
        return out;
    }
    const std::uint32_t bound = max_pair_overlap(codes.front().space());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (std::size_t j = i + 1; j < codes.size(); ++j) {
            const std::uint32_t o = overlap(codes[i], codes[j]);
            if (o > bound) {
                out.push_back({i, j, o});
            }
        }
    }
    return out;
}

NearlyOrthogonalSet::NearlyOrthogonalSet(std::vector<Hypervector> members,
                                         std::vector<std::string> labels)
    : members_(std::move(members)), labels_(std::move(labels)) {
    if (members_.size() != labels_.size()) {
        throw std::invalid_argument("frame needs one label per member");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw std::invalid_argument("frame labels must be unique");
    }
    const auto bad = correlated_pairs(members_);
    if (!bad.empty()) {
        throw std::invalid_argument("frame members " + labels_[bad.front().first] + " and " +
                                    labels_[bad.front().second] + " overlap in " +
                                    std::to_string(bad.front().overlap) +
                                    " segments; not nearly orthogonal");
    }
}

NearlyOrthogonalSet::NearlyOrthogonalSet(std::vector<Hypervector> members)
    : NearlyOrthogonalSet(members, default_labels(members.size())) {}

double FrameProjection::total() const {
    return std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

double frame_inner_product(const Hypervector& a, const Hypervector& b) {
    const double o = overlap(a, b);
    const double m = a.space().segment_count();
    const double s = a.space().sparsity();
    return o / (m * (1.0 - s)) - s / (1.0 - s);
}

FrameProjection project(const Hypervector& code, const NearlyOrthogonalSet& frame) {
    if (frame.empty()) {
        throw std::invalid_argument("project: empty frame");
    }
    FrameProjection p;
    p.raw.reserve(frame.size());
    p.alpha.reserve(frame.size());
    for (const auto& member : frame.members()) {
        const double v = frame_inner_product(code, member);
        p.raw.push_back(v);
        p.alpha.push_back(std::clamp(v, 0.0, 1.0));
    }
    return p;
}

void write_learner(std::ostream& out, const OnlineLearner& learner) {
    const auto space = learner.space();
    if (!space) {
        throw std::invalid_argument("cannot persist a learner with no space");
    }
    io::write_magic(out, kLearnerMagic);
    io::write_space(out, *space);
    io::write_u64(out, learner.count());
    io::write_offsets(out, learner.seeded() ? learner.snapshot() : unit(*space));
}

OnlineLearner read_learner(std::istream& in) {
    io::expect_magic(in, kLearnerMagic, "learner (HVL1)");
    const SpaceConfig space = io::read_space(in);
    const std::uint64_t count = io::read_u64(in);
    Hypervector code = io::read_offsets(in, space);
    if (count == 0) {
        if (code != unit(space)) {
            throw format_error("unseeded learner must store zero offsets");
        }
        return OnlineLearner(space);
    }
    return OnlineLearner(std::move(code), count);
}

void save_learner(const std::filesystem::path& path, const OnlineLearner& learner) {
    auto out = io::open_for_write(path);
    write_learner(out, learner);
    io::finish_write(out, path);
}

OnlineLearner load_learner(const std::filesystem::path& path) {
    auto in = io::open_for_read(path);
    return read_learner(in);
}

}  // namespace segvsa
