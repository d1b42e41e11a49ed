#pragma once
/**
 * Streaming word embeddings.
 *
 * Every word gets a frozen random base code C_w, derived from the model seed
 * and a hash of the word. Each occurrence of w produces one observation
 *
 *     C_{-h} ⊗ P^{-h} ⊕ ... ⊕ C_{-1} ⊗ P^{-1} ⊕ C_w ⊕ C_1 ⊗ P ⊕ ... ⊕ C_h ⊗ P^h
 *
 * (uniform weights, positions outside the document omitted), which is fed
 * once to w's online learner. The learner snapshot is the embedding of w;
 * releasing P^j from it and searching the base codes recovers the words seen
 * at relative position j.
 */

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "segvsa/cleanup.hpp"
#include "segvsa/core.hpp"
#include "segvsa/learner.hpp"
#include "segvsa/structures.hpp"

namespace segvsa {

/// Documents of normalized tokens. Context windows never cross documents.
struct TokenStream {
    std::vector<std::vector<std::string>> documents;

    std::size_t token_count() const;
    /// All tokens, documents concatenated.
    std::vector<std::string> tokens() const;
};

/// Lowercase (ASCII), split on runs of non-alphanumeric characters. Bytes
/// >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize_words(std::string_view text);

/// tokenize_words per document; documents are separated by blank lines.
TokenStream tokenize(std::string_view text);

class VocabularyModel {
public:
    static constexpr std::uint32_t kDefaultWindow = 2;

    VocabularyModel(SpaceConfig space, std::uint64_t seed, std::uint32_t window = kDefaultWindow);

    /// Restore from persisted parts. Every learner's word must be in `words`.
    VocabularyModel(Codebook words, SequenceCodec codec, std::map<std::string, OnlineLearner> learners,
                    std::uint64_t seed, std::uint32_t window = kDefaultWindow);

    VocabularyModel(VocabularyModel&&) noexcept = default;
    VocabularyModel& operator=(VocabularyModel&&) noexcept = default;

    const SpaceConfig& space() const noexcept { return words_.space(); }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint32_t window() const noexcept { return window_; }
    const SequenceCodec& codec() const noexcept { return codec_; }
    const Codebook& words() const noexcept { return words_; }
    const std::map<std::string, OnlineLearner>& learners() const noexcept { return learners_; }

    /// Base code for word, created on first sight. Atomic get-or-create.
    Hypervector base_code(const std::string& word);

    /// Base code a word would receive in this model, without registering it.
    Hypervector derive_base_code(std::string_view word) const;

    /// P_step^j for |j| <= window.
    const Hypervector& position_marker(std::int32_t j) const;

    /// Throws std::out_of_range if word has no learner.
    const OnlineLearner& learner(const std::string& word) const;
    bool has_learner(const std::string& word) const { return learners_.contains(word); }

    /// Feed an observation to word's learner, creating it if needed.
    void feed(const std::string& word, const Hypervector& observation, RngStream& rng);

private:
    Codebook words_;
    SequenceCodec codec_;
    std::map<std::string, OnlineLearner> learners_;
    std::uint64_t seed_;
    std::uint32_t window_;
    std::vector<Hypervector> markers_;  // index j + window
    std::unique_ptr<std::mutex> base_mutex_ = std::make_unique<std::mutex>();
};

/// Observation hypervector for document[center].
Hypervector observe(std::span<const std::string> document, std::size_t center,
                    VocabularyModel& model, RngStream& rng);

/// Single pass; each token feeds its own learner exactly once.
void train_stream(const TokenStream& stream, VocabularyModel& model, RngStream& rng);

/// Top-k words seen at relative position j of `word`. Throws std::out_of_range
/// for an unknown word and std::invalid_argument unless 0 < |j| <= window.
std::vector<Match> query_context(const VocabularyModel& model, const std::string& word,
                                 std::int32_t j, std::size_t k);

/// Frame inner product of two learner snapshots.
double word_similarity(const VocabularyModel& model, const std::string& a, const std::string& b);

// Model file: an HVB1 codebook (P_step under "__P_step__", then base codes in
// creation order) followed by HVM1, u64 learner count, and per learner
// (sorted by word): u16 word length, word bytes, u64 count, M u16 offsets.
// Seed and window are not stored; callers supply them on load.
void write_model(std::ostream& out, const VocabularyModel& model);
VocabularyModel read_model(std::istream& in, std::uint64_t seed,
                           std::uint32_t window = VocabularyModel::kDefaultWindow);
void save_model(const std::filesystem::path& path, const VocabularyModel& model);
VocabularyModel load_model(const std::filesystem::path& path, std::uint64_t seed,
                           std::uint32_t window = VocabularyModel::kDefaultWindow);

}  // namespace segvsa
