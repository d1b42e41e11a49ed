#include "segvsa/cleanup.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "segvsa/binary_io.hpp"

namespace segvsa {

namespace {

constexpr io::Magic kCodebookMagic{'H', 'V', 'B', '1'};

}  // namespace

Codebook::Codebook(SpaceConfig space)
    : space_(space),
      postings_(space.dimension()),
      mutex_(std::make_unique<detail::TurnstileMutex>()) {}

Codebook::Codebook(const Codebook& other) : space_(other.space_), mutex_(std::make_unique<detail::TurnstileMutex>()) {
    std::shared_lock lock(*other.mutex_);
    entries_ = other.entries_;
    ids_ = other.ids_;
    postings_ = other.postings_;
}

Codebook::Codebook(Codebook&& other) noexcept
    : space_(other.space_),
      entries_(std::move(other.entries_)),
      ids_(std::move(other.ids_)),
      postings_(std::move(other.postings_)),
      mutex_(std::move(other.mutex_)) {
    other.mutex_ = std::make_unique<detail::TurnstileMutex>();
    other.postings_.assign(other.space_.dimension(), {});
}

Codebook& Codebook::operator=(Codebook other) noexcept {
    std::swap(space_, other.space_);
    std::swap(entries_, other.entries_);
    std::swap(ids_, other.ids_);
    std::swap(postings_, other.postings_);
    std::swap(mutex_, other.mutex_);
    return *this;
}

std::size_t Codebook::size() const {
    std::shared_lock lock(*mutex_);
    return entries_.size();
}

bool Codebook::contains(std::string_view label) const {
    std::shared_lock lock(*mutex_);
    return ids_.contains(std::string(label));
}

void Codebook::insert(std::string label, Hypervector code) {
    if (code.space() != space_) {
        throw space_mismatch("codebook space " + space_.describe() + " does not match code space " +
                             code.space().describe());
    }
    std::unique_lock lock(*mutex_);
    if (ids_.contains(label)) {
        throw std::invalid_argument("duplicate codebook label '" + label + "'");
    }
    if (entries_.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw std::length_error("codebook is full");
    }
    const auto id = static_cast<std::uint32_t>(entries_.size());
    const std::uint32_t d = space_.segment_width();
    for (std::size_t seg = 0; seg < code.size(); ++seg) {
        postings_[seg * d + code[seg]].push_back(id);
    }
    ids_.emplace(label, id);
    entries_.push_back({std::move(label), std::move(code)});
}

Hypervector Codebook::at(std::string_view label) const {
    auto code = find(label);
    if (!code) {
        throw std::out_of_range("unknown label '" + std::string(label) + "'");
    }
    return *std::move(code);
}

std::optional<Hypervector> Codebook::find(std::string_view label) const {
    std::shared_lock lock(*mutex_);
    auto it = ids_.find(std::string(label));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return entries_[it->second].code;
}

std::vector<std::string> Codebook::labels() const {
    std::shared_lock lock(*mutex_);
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(e.label);
    }
    return out;
}

std::size_t Codebook::posting_count() const {
    std::shared_lock lock(*mutex_);
    std::size_t n = 0;
    for (const auto& list : postings_) {
        n += list.size();
    }
    return n;
}

void Codebook::check_query(const Hypervector& probe) const {
    if (probe.space() != space_) {
        throw space_mismatch("probe space " + probe.space().describe() +
                             " does not match codebook space " + space_.describe());
    }
}

// Caller holds the shared lock.
std::vector<std::uint32_t> Codebook::scores(const Hypervector& probe, SearchBackend backend) const {
    std::vector<std::uint32_t> counts(entries_.size(), 0);
    if (backend == SearchBackend::brute_force) {
        for (std::size_t id = 0; id < entries_.size(); ++id) {
            counts[id] = overlap(probe, entries_[id].code);
        }
        return counts;
    }
    const std::uint32_t d = space_.segment_width();
    for (std::size_t seg = 0; seg < probe.size(); ++seg) {
        for (std::uint32_t id : postings_[seg * d + probe[seg]]) {
            ++counts[id];
        }
    }
    return counts;
}

std::vector<Match> Codebook::rank(std::vector<std::uint32_t> ids,
                                  const std::vector<std::uint32_t>& scores,
                                  std::size_t limit) const {
    auto before = [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return entries_[a].label < entries_[b].label;
    };
    limit = std::min(limit, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(limit), ids.end(), before);
    std::vector<Match> out;
    out.reserve(limit);
    for (std::size_t i = 0; i < limit; ++i) {
        out.push_back({entries_[ids[i]].label, scores[ids[i]], static_cast<std::uint32_t>(i + 1)});
    }
    return out;
}

std::vector<Match> Codebook::nearest(const Hypervector& probe, std::size_t k,
                                     SearchBackend backend) const {
    if (k == 0) {
        throw std::invalid_argument("nearest: k must be at least 1");
    }
    check_query(probe);
    std::shared_lock lock(*mutex_);
    if (entries_.empty()) {
        throw std::invalid_argument("nearest: empty codebook");
    }
    auto counts = scores(probe, backend);
    std::vector<std::uint32_t> ids(entries_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<std::uint32_t>(i);
    }
    return rank(std::move(ids), counts, k);
}

std::vector<Match> Codebook::matches_above(const Hypervector& probe, std::uint32_t min_overlap,
                                           SearchBackend backend) const {
    check_query(probe);
    std::shared_lock lock(*mutex_);
    if (entries_.empty()) {
        throw std::invalid_argument("matches_above: empty codebook");
    }
    auto counts = scores(probe, backend);
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] >= min_overlap) {
            ids.push_back(static_cast<std::uint32_t>(i));
        }
    }
    const std::size_t n = ids.size();
    return rank(std::move(ids), counts, n);
}

void write_codebook(std::ostream& out, const Codebook& book) {
    io::write_magic(out, kCodebookMagic);
    io::write_space(out, book.space());
    // Collect under one lock so the count matches the entries written.
    std::vector<std::pair<std::string, Hypervector>> entries;
    book.for_each([&](const std::string& label, const Hypervector& code) {
        entries.emplace_back(label, code);
    });
    io::write_u64(out, entries.size());
    for (const auto& [label, code] : entries) {
        io::write_label(out, label);
        io::write_offsets(out, code);
    }
}

Codebook read_codebook(std::istream& in) {
    io::expect_magic(in, kCodebookMagic, "codebook (HVB1)");
    const SpaceConfig space = io::read_space(in);
    const std::uint64_t count = io::read_u64(in);
    Codebook book(space);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string label = io::read_label(in);
        Hypervector code = io::read_offsets(in, space);
        try {
            book.insert(std::move(label), std::move(code));
        } catch (const std::invalid_argument& e) {
            throw format_error(e.what());
        }
    }
    return book;
}

void save_codebook(const std::filesystem::path& path, const Codebook& book) {
    auto out = io::open_for_write(path);
    write_codebook(out, book);
    io::finish_write(out, path);
}

Codebook load_codebook(const std::filesystem::path& path) {
    auto in = io::open_for_read(path);
    return read_codebook(in);
}

}  // namespace segvsa
