#include "segvsa/embedding.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "segvsa/algebra.hpp"
#include "segvsa/binary_io.hpp"

namespace segvsa {

namespace {

constexpr io::Magic kModelMagic{'H', 'V', 'M', '1'};

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

bool is_blank_line(std::string_view line) {
    for (unsigned char c : line) {
        if (!std::isspace(c)) {
            return false;
        }
    }
    return true;
}

std::vector<Hypervector> make_markers(const SequenceCodec& codec, std::uint32_t window) {
    if (window == 0) {
        throw std::invalid_argument("context window half-size must be at least 1");
    }
    std::vector<Hypervector> markers;
    markers.reserve(2 * window + 1);
    for (std::int64_t j = -static_cast<std::int64_t>(window); j <= window; ++j) {
        markers.push_back(codec.position_marker(j));
    }
    return markers;
}

SequenceCodec model_codec(const SpaceConfig& space, std::uint64_t seed) {
    RngStream rng = RngStream(seed).split(fnv1a64(kStepMarkerLabel));
    return SequenceCodec::generate(space, rng);
}

}  // namespace

std::size_t TokenStream::token_count() const {
    std::size_t n = 0;
    for (const auto& doc : documents) {
        n += doc.size();
    }
    return n;
}

std::vector<std::string> TokenStream::tokens() const {
    std::vector<std::string> out;
    out.reserve(token_count());
    for (const auto& doc : documents) {
        out.insert(out.end(), doc.begin(), doc.end());
    }
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        out.push_back(std::move(current));
    }
    return out;
}

TokenStream tokenize(std::string_view text) {
    TokenStream stream;
    std::vector<std::string> doc;
    auto flush = [&] {
        if (!doc.empty()) {
            stream.documents.push_back(std::move(doc));
            doc.clear();
        }
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(pos, end - pos);
        if (is_blank_line(line)) {
            flush();
        } else {
            for (auto& w : tokenize_words(line)) {
                doc.push_back(std::move(w));
            }
        }
        pos = end + 1;
    }
    flush();
    return stream;
}

VocabularyModel::VocabularyModel(SpaceConfig space, std::uint64_t seed, std::uint32_t window)
    : words_(space),
      codec_(model_codec(space, seed)),
      seed_(seed),
      window_(window),
      markers_(make_markers(codec_, window)) {}

VocabularyModel::VocabularyModel(Codebook words, SequenceCodec codec,
                                 std::map<std::string, OnlineLearner> learners, std::uint64_t seed,
                                 std::uint32_t window)
    : words_(std::move(words)),
      codec_(std::move(codec)),
      learners_(std::move(learners)),
      seed_(seed),
      window_(window),
      markers_(make_markers(codec_, window)) {
    if (codec_.space() != words_.space()) {
        throw space_mismatch("model codec and word codebook use different spaces");
    }
    for (const auto& [word, learner] : learners_) {
        if (!words_.contains(word)) {
            throw std::invalid_argument("learner for '" + word + "' has no base code");
        }
        if (learner.space() && *learner.space() != words_.space()) {
            throw space_mismatch("learner for '" + word + "' uses a different space");
        }
    }
}

Hypervector VocabularyModel::derive_base_code(std::string_view word) const {
    RngStream rng = RngStream(seed_).split(fnv1a64(word));
    return random_code(space(), rng);
}

Hypervector VocabularyModel::base_code(const std::string& word) {
    std::lock_guard lock(*base_mutex_);
    if (auto code = words_.find(word)) {
        return *std::move(code);
    }
    Hypervector code = derive_base_code(word);
    words_.insert(word, code);
    return code;
}

const Hypervector& VocabularyModel::position_marker(std::int32_t j) const {
    if (j < -static_cast<std::int64_t>(window_) || j > static_cast<std::int64_t>(window_)) {
        throw std::invalid_argument("position " + std::to_string(j) + " outside window of " +
                                    std::to_string(window_));
    }
    return markers_[static_cast<std::size_t>(j + static_cast<std::int64_t>(window_))];
}

const OnlineLearner& VocabularyModel::learner(const std::string& word) const {
    auto it = learners_.find(word);
    if (it == learners_.end()) {
        throw std::out_of_range("unknown word '" + word + "'");
    }
    return it->second;
}

void VocabularyModel::feed(const std::string& word, const Hypervector& observation, RngStream& rng) {
    base_code(word);
    learners_[word].feed(observation, rng);
}

Hypervector observe(std::span<const std::string> document, std::size_t center,
                    VocabularyModel& model, RngStream& rng) {
    if (center >= document.size()) {
        throw std::out_of_range("observe: center index past end of document");
    }
    const auto h = static_cast<std::int64_t>(model.window());
    const auto c = static_cast<std::int64_t>(center);
    const auto n = static_cast<std::int64_t>(document.size());
    std::vector<Hypervector> operands;
    operands.reserve(static_cast<std::size_t>(2 * h + 1));
    for (std::int64_t j = -h; j <= h; ++j) {
        const std::int64_t pos = c + j;
        if (pos < 0 || pos >= n) {
            continue;
        }
        Hypervector base = model.base_code(document[static_cast<std::size_t>(pos)]);
        if (j == 0) {
            operands.push_back(std::move(base));
        } else {
            operands.push_back(bind(base, model.position_marker(static_cast<std::int32_t>(j))));
        }
    }
    return bundle_uniform(operands, rng);
}

void train_stream(const TokenStream& stream, VocabularyModel& model, RngStream& rng) {
    for (const auto& doc : stream.documents) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const Hypervector obs = observe(doc, i, model, rng);
            model.feed(doc[i], obs, rng);
        }
    }
}

std::vector<Match> query_context(const VocabularyModel& model, const std::string& word,
                                 std::int32_t j, std::size_t k) {
    const OnlineLearner& learner = model.learner(word);
    if (j == 0) {
        throw std::invalid_argument("context position must be nonzero");
    }
    const Hypervector probe = release(learner.snapshot(), model.position_marker(j));
    return model.words().nearest(probe, k);
}

double word_similarity(const VocabularyModel& model, const std::string& a, const std::string& b) {
    return frame_inner_product(model.learner(a).snapshot(), model.learner(b).snapshot());
}

void write_model(std::ostream& out, const VocabularyModel& model) {
    write_codebook(out, with_codec(model.words(), model.codec()));
    io::write_magic(out, kModelMagic);
    io::write_u64(out, model.learners().size());
    for (const auto& [word, learner] : model.learners()) {
        io::write_label(out, word);
        io::write_u64(out, learner.count());
        io::write_offsets(out, learner.snapshot());
    }
}

VocabularyModel read_model(std::istream& in, std::uint64_t seed, std::uint32_t window) {
    auto [words, codec] = split_codec(read_codebook(in));
    if (!codec) {
        throw format_error("model codebook lacks the step marker entry");
    }
    io::expect_magic(in, kModelMagic, "model learner table (HVM1)");
    const std::uint64_t count = io::read_u64(in);
    std::map<std::string, OnlineLearner> learners;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string word = io::read_label(in);
        const std::uint64_t n = io::read_u64(in);
        if (n == 0) {
            throw format_error("learner for '" + word + "' has zero count");
        }
        Hypervector snapshot = io::read_offsets(in, words.space());
        if (!learners.emplace(std::move(word), OnlineLearner(std::move(snapshot), n)).second) {
            throw format_error("duplicate learner entry");
        }
    }
    try {
        return VocabularyModel(std::move(words), std::move(*codec), std::move(learners), seed, window);
    } catch (const std::invalid_argument& e) {
        throw format_error(e.what());
    }
}

void save_model(const std::filesystem::path& path, const VocabularyModel& model) {
    auto out = io::open_for_write(path);
    write_model(out, model);
    io::finish_write(out, path);
}

VocabularyModel load_model(const std::filesystem::path& path, std::uint64_t seed,
                           std::uint32_t window) {
    auto in = io::open_for_read(path);
    return read_model(in, seed, window);
}

}  // namespace segvsa
