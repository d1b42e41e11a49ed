#include "segvsa/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace segvsa {

Hypervector bundle(std::span<const WeightedOperand> operands, RngStream& rng) {
    if (operands.empty()) {
        throw std::invalid_argument("bundle: empty operand list");
    }
    const SpaceConfig space = operands.front().code.space();
    double total = 0.0;
    for (const auto& op : operands) {
        if (op.code.space() != space) {
            throw space_mismatch("bundle: operands from different spaces");
        }
        if (!std::isfinite(op.weight) || op.weight < 0.0) {
            throw std::invalid_argument("bundle: weights must be finite and non-negative");
        }
        total += op.weight;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("bundle: weights sum to zero");
    }

    // Inverse CDF over normalized weights, fixed operand order.
    std::vector<double> cdf(operands.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < operands.size(); ++k) {
        acc += operands[k].weight / total;
        cdf[k] = acc;
    }
    // Last operand with nonzero weight catches u values lost to rounding.
    std::size_t last = operands.size() - 1;
    while (operands[last].weight == 0.0) {
        --last;
    }

    std::vector<std::uint16_t> out(space.segment_count());
    for (std::size_t seg = 0; seg < out.size(); ++seg) {
        const double u = rng.next_unit();
        std::size_t k = 0;
        while (k < last && !(u < cdf[k])) {
            ++k;
        }
        out[seg] = operands[k].code[seg];
    }
    return Hypervector(space, std::move(out));
}

Hypervector bundle_uniform(std::span<const Hypervector> codes, RngStream& rng) {
    std::vector<WeightedOperand> ops;
    ops.reserve(codes.size());
    for (const auto& c : codes) {
        ops.push_back({1.0, c});
    }
    return bundle(ops, rng);
}

Hypervector bind(std::span<const Hypervector> codes) {
    if (codes.empty()) {
        throw std::invalid_argument("bind: empty operand list");
    }
    const SpaceConfig space = codes.front().space();
    const std::uint32_t d = space.segment_width();
    std::vector<std::uint32_t> acc(space.segment_count(), 0);
    for (const auto& c : codes) {
        if (c.space() != space) {
            throw space_mismatch("bind: operands from different spaces");
        }
        for (std::size_t seg = 0; seg < acc.size(); ++seg) {
            acc[seg] = (acc[seg] + c[seg]) % d;
        }
    }
    return Hypervector(space, std::vector<std::uint16_t>(acc.begin(), acc.end()));
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
    require_same_space(a, b);
    const std::uint32_t d = a.space().segment_width();
    std::vector<std::uint16_t> out(a.size());
    for (std::size_t seg = 0; seg < out.size(); ++seg) {
        out[seg] = static_cast<std::uint16_t>((std::uint32_t{a[seg]} + b[seg]) % d);
    }
    return Hypervector(a.space(), std::move(out));
}

Hypervector unit(const SpaceConfig& space) {
    return Hypervector(space, std::vector<std::uint16_t>(space.segment_count(), 0));
}

Hypervector inverse(const Hypervector& code) {
    const std::uint32_t d = code.space().segment_width();
    std::vector<std::uint16_t> out(code.size());
    for (std::size_t seg = 0; seg < out.size(); ++seg) {
        out[seg] = static_cast<std::uint16_t>((d - code[seg]) % d);
    }
    return Hypervector(code.space(), std::move(out));
}

Hypervector release(const Hypervector& a, const Hypervector& b) {
    require_same_space(a, b);
    const std::uint32_t d = a.space().segment_width();
    std::vector<std::uint16_t> out(a.size());
    for (std::size_t seg = 0; seg < out.size(); ++seg) {
        out[seg] = static_cast<std::uint16_t>((std::uint32_t{a[seg]} + d - b[seg]) % d);
    }
    return Hypervector(a.space(), std::move(out));
}

Hypervector power(const Hypervector& marker, std::int64_t k) {
    const auto d = static_cast<std::int64_t>(marker.space().segment_width());
    // Reduce k first so the product stays well inside int64.
    const std::int64_t kk = ((k % d) + d) % d;
    std::vector<std::uint16_t> out(marker.size());
    for (std::size_t seg = 0; seg < out.size(); ++seg) {
        out[seg] = static_cast<std::uint16_t>((kk * marker[seg]) % d);
    }
    return Hypervector(marker.space(), std::move(out));
}

}  // namespace segvsa
