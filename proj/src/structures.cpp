#include "segvsa/structures.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

#include "segvsa/algebra.hpp"
#include "segvsa/learner.hpp"

namespace segvsa {

SequenceCodec::SequenceCodec(Hypervector step_marker) : step_(std::move(step_marker)) {
    if (step_ == unit(step_.space())) {
        throw std::invalid_argument("step marker must not be the unit vector");
    }
}

SequenceCodec SequenceCodec::generate(const SpaceConfig& space, RngStream& rng) {
    const Hypervector identity = unit(space);
    for (;;) {
        Hypervector marker = random_code(space, rng);
        if (marker != identity) {
            return SequenceCodec(std::move(marker));
        }
    }
}

Hypervector SequenceCodec::position_marker(std::int64_t k) const {
    return power(step_, k);
}

void stderr_warning(const std::string& message) {
    std::cerr << "warning: " << message << '\n';
}

std::uint32_t default_threshold(const SpaceConfig& space, std::uint32_t k_max) {
    if (k_max == 0) {
        throw std::invalid_argument("default_threshold: k_max must be positive");
    }
    return std::max<std::uint32_t>(1, space.segment_count() / (2 * k_max));
}

Hypervector encode_set(const std::vector<Hypervector>& members, RngStream& rng,
                       const WarningSink& warn) {
    if (members.empty()) {
        throw std::invalid_argument("encode_set: empty member list");
    }
    if (warn) {
        for (const auto& pair : correlated_pairs(members)) {
            warn("set members " + std::to_string(pair.first) + " and " +
                 std::to_string(pair.second) + " overlap in " + std::to_string(pair.overlap) +
                 " segments; decoding may degrade");
        }
    }
    return bundle_uniform(members, rng);
}

std::set<std::string> decode_set(const Hypervector& set_code, const Codebook& book,
                                 std::uint32_t threshold) {
    std::set<std::string> out;
    for (auto& m : book.matches_above(set_code, threshold)) {
        out.insert(std::move(m.label));
    }
    return out;
}

Hypervector encode_sequence(const std::vector<Hypervector>& items, const SequenceCodec& codec,
                            RngStream& rng) {
    if (items.empty()) {
        throw std::invalid_argument("encode_sequence: empty item list");
    }
    std::vector<Hypervector> bound;
    bound.reserve(items.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
        bound.push_back(bind(items[k], codec.position_marker(static_cast<std::int64_t>(k))));
    }
    return bundle_uniform(bound, rng);
}

std::vector<std::string> decode_sequence(const Hypervector& sequence_code, const Codebook& book,
                                         const SequenceCodec& codec, std::uint32_t threshold) {
    std::vector<std::string> out;
    if (book.empty()) {
        return out;
    }
    const std::uint32_t period = sequence_code.space().segment_width();
    for (std::uint32_t k = 0; k < period; ++k) {
        const Hypervector probe = release(sequence_code, codec.position_marker(k));
        auto best = book.nearest(probe, 1);
        if (best.front().overlap < threshold) {
            break;
        }
        out.push_back(std::move(best.front().label));
    }
    return out;
}

Codebook with_codec(const Codebook& book, const SequenceCodec& codec) {
    Codebook out(book.space());
    out.insert(std::string(kStepMarkerLabel), codec.step_marker());
    book.for_each([&](const std::string& label, const Hypervector& code) {
        out.insert(label, code);
    });
    return out;
}

std::pair<Codebook, std::optional<SequenceCodec>> split_codec(const Codebook& book) {
    Codebook rest(book.space());
    std::optional<SequenceCodec> codec;
    book.for_each([&](const std::string& label, const Hypervector& code) {
        if (label == kStepMarkerLabel) {
            codec.emplace(code);
        } else {
            rest.insert(label, code);
        }
    });
    return {std::move(rest), std::move(codec)};
}

}  // namespace segvsa
