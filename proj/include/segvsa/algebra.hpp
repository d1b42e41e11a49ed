#pragma once
/**
 * Algebra over segmented hypervectors.
 *
 *   bundle  (⊕)  per segment, copy the offset of operand k with probability w_k
 *   bind    (⊗)  per segment, sum of offsets modulo the segment width d
 *   unit    (I)  all offsets zero; the bind identity
 *   inverse      per segment, (d - offset) mod d
 *   release (⊘)  A ⊘ B = A ⊗ B^-1
 *   power        P^k, per segment (k * offset) mod d
 *
 * Bundle randomness depends only on the rng and the weights, never on operand
 * contents, so binding a marker into every operand commutes with bundling
 * under a shared rng state.
 */

#include <cstdint>
#include <span>
#include <vector>

#include "segvsa/core.hpp"

namespace segvsa {

struct WeightedOperand {
    double weight;
    Hypervector code;
};

/// Weighted probabilistic bundle. Weights are normalized to sum to 1.
/// Consumes exactly M draws from rng. Throws std::invalid_argument on an
/// empty list, negative / non-finite weights or weights summing to zero, and
/// space_mismatch on mixed spaces.
Hypervector bundle(std::span<const WeightedOperand> operands, RngStream& rng);

/// Equal-weight bundle.
Hypervector bundle_uniform(std::span<const Hypervector> codes, RngStream& rng);

Hypervector bind(std::span<const Hypervector> codes);
Hypervector bind(const Hypervector& a, const Hypervector& b);

Hypervector unit(const SpaceConfig& space);
Hypervector inverse(const Hypervector& code);
Hypervector release(const Hypervector& a, const Hypervector& b);

/// P^k for any signed k; power(P, 0) is the unit vector.
Hypervector power(const Hypervector& marker, std::int64_t k);

}  // namespace segvsa
