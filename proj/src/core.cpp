#include "segvsa/core.hpp"

#include <bit>
#include <sstream>

namespace segvsa {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

__extension__ using uint128 = unsigned __int128;

}  // namespace

SpaceConfig::SpaceConfig(std::uint32_t dimension, std::uint32_t segment_width)
    : dimension_(dimension), segment_width_(segment_width) {
    if (segment_width < 2 || segment_width > kMaxSegmentWidth) {
        throw std::invalid_argument("segment width must lie in [2, 65536], got " +
                                    std::to_string(segment_width));
    }
    if (dimension == 0 || dimension % segment_width != 0) {
        throw std::invalid_argument("dimension " + std::to_string(dimension) +
                                    " is not a positive multiple of segment width " +
                                    std::to_string(segment_width));
    }
}

std::string SpaceConfig::describe() const {
    std::ostringstream os;
    os << "N=" << dimension_ << " d=" << segment_width_ << " M=" << segment_count();
    return os.str();
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t RngStream::next_u64() noexcept {
    ++counter_;
    return mix64(seed_ + counter_ * kGolden);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("next_below: bound must be nonzero");
    }
    // Lemire's multiply-and-reject.
    uint128 m = static_cast<uint128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<uint128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RngStream RngStream::split(std::uint64_t key) const noexcept {
    return RngStream(mix64(seed_ ^ mix64(key + kGolden)), 0);
}

Hypervector::Hypervector(SpaceConfig space, std::vector<std::uint16_t> offsets)
    : space_(space), offsets_(std::move(offsets)) {
    if (offsets_.size() != space_.segment_count()) {
        throw std::invalid_argument("hypervector needs " + std::to_string(space_.segment_count()) +
                                    " offsets, got " + std::to_string(offsets_.size()));
    }
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        if (offsets_[i] >= space_.segment_width()) {
            throw std::invalid_argument("offset " + std::to_string(offsets_[i]) + " at segment " +
                                        std::to_string(i) + " exceeds segment width " +
                                        std::to_string(space_.segment_width()));
        }
    }
}

void require_same_space(const Hypervector& a, const Hypervector& b) {
    if (a.space() != b.space()) {
        throw space_mismatch("space mismatch: " + a.space().describe() + " vs " +
                             b.space().describe());
    }
}

Hypervector random_code(const SpaceConfig& space, RngStream& rng) {
    std::vector<std::uint16_t> offsets(space.segment_count());
    for (auto& o : offsets) {
        o = static_cast<std::uint16_t>(rng.next_below(space.segment_width()));
    }
    return Hypervector(space, std::move(offsets));
}

std::uint32_t overlap(const Hypervector& a, const Hypervector& b) {
    require_same_space(a, b);
    const auto x = a.offsets();
    const auto y = b.offsets();
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        n += x[i] == y[i];
    }
    return n;
}

std::uint32_t hamming(const Hypervector& a, const Hypervector& b) {
    return 2 * (a.space().segment_count() - overlap(a, b));
}

double cosine(const Hypervector& a, const Hypervector& b) {
    return static_cast<double>(overlap(a, b)) / a.space().segment_count();
}

std::vector<std::uint64_t> expand_dense(const Hypervector& code) {
    const SpaceConfig& space = code.space();
    std::vector<std::uint64_t> bits((space.dimension() + 63) / 64, 0);
    for (std::size_t seg = 0; seg < code.size(); ++seg) {
        const std::size_t pos = seg * space.segment_width() + code[seg];
        bits[pos / 64] |= std::uint64_t{1} << (pos % 64);
    }
    return bits;
}

Hypervector compress_dense(const SpaceConfig& space, std::span<const std::uint64_t> bits) {
    if (bits.size() * 64 < space.dimension()) {
        throw std::invalid_argument("dense vector too short for " + space.describe());
    }
    auto bit_at = [&](std::size_t pos) { return (bits[pos / 64] >> (pos % 64)) & 1U; };
    for (std::size_t pos = space.dimension(); pos < bits.size() * 64; ++pos) {
        if (bit_at(pos)) {
            throw std::invalid_argument("dense vector has bits set beyond dimension");
        }
    }
    const std::uint32_t d = space.segment_width();
    std::vector<std::uint16_t> offsets(space.segment_count());
    for (std::size_t seg = 0; seg < offsets.size(); ++seg) {
        int on = 0;
        for (std::uint32_t off = 0; off < d; ++off) {
            if (bit_at(seg * d + off)) {
                offsets[seg] = static_cast<std::uint16_t>(off);
                ++on;
            }
        }
        if (on != 1) {
            throw std::invalid_argument("segment " + std::to_string(seg) + " has " +
                                        std::to_string(on) + " ON bits, expected exactly one");
        }
    }
    return Hypervector(space, std::move(offsets));
}

}  // namespace segvsa
