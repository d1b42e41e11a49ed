#pragma once
/**
 * Cleanup memory: a labeled codebook with exact near-neighbor search by
 * overlap.
 *
 * Two backends produce identical rankings:
 *   - inverted_index: postings keyed by (segment, offset); a query walks the M
 *     posting lists named by the probe and accumulates hits per entry.
 *   - brute_force: recomputes overlap against every entry.
 *
 * Ranking is overlap descending, ties broken by lexicographic label order.
 *
 * Thread safety: any number of concurrent readers, or one writer. insert()
 * takes an exclusive lock, queries a shared one, so a query never observes a
 * partially inserted entry.
 */

#include <cstdint>
#include <deque>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "segvsa/core.hpp"

namespace segvsa {

namespace detail {

/// Shared mutex with a turnstile: a waiting writer stops new readers from
/// entering, so a steady stream of queries cannot starve insert().
class TurnstileMutex {
public:
    void lock() {
        std::lock_guard gate(gate_);
        rw_.lock();
    }
    void unlock() { rw_.unlock(); }
    void lock_shared() {
        std::lock_guard gate(gate_);
        rw_.lock_shared();
    }
    void unlock_shared() { rw_.unlock_shared(); }

private:
    std::mutex gate_;
    std::shared_mutex rw_;
};

}  // namespace detail

struct Match {
    std::string label;
    std::uint32_t overlap;
    std::uint32_t rank;  // 1-based

    bool operator==(const Match&) const = default;
};

enum class SearchBackend { inverted_index, brute_force };

class Codebook {
public:
    explicit Codebook(SpaceConfig space);
    Codebook(const Codebook& other);
    Codebook(Codebook&& other) noexcept;
    Codebook& operator=(Codebook other) noexcept;
    ~Codebook() = default;

    const SpaceConfig& space() const noexcept { return space_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(std::string_view label) const;

    /// Throws std::invalid_argument on a duplicate label, space_mismatch on a
    /// foreign code.
    void insert(std::string label, Hypervector code);

    /// Throws std::out_of_range for an unknown label.
    Hypervector at(std::string_view label) const;
    std::optional<Hypervector> find(std::string_view label) const;

    /// Labels in insertion order.
    std::vector<std::string> labels() const;

    /// Calls fn(label, code) for each entry in insertion order under a shared lock.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::shared_lock lock(*mutex_);
        for (const auto& e : entries_) {
            fn(e.label, e.code);
        }
    }

    /// Total number of (segment, offset) postings held by the index.
    std::size_t posting_count() const;

    /// Top-k entries by overlap. k must be >= 1; throws std::invalid_argument
    /// on an empty codebook.
    std::vector<Match> nearest(const Hypervector& probe, std::size_t k,
                               SearchBackend backend = SearchBackend::inverted_index) const;

    /// All entries with overlap >= min_overlap, ranked as in nearest().
    std::vector<Match> matches_above(const Hypervector& probe, std::uint32_t min_overlap,
                                     SearchBackend backend = SearchBackend::inverted_index) const;

private:
    struct Entry {
        std::string label;
        Hypervector code;
    };

    std::vector<std::uint32_t> scores(const Hypervector& probe, SearchBackend backend) const;
    std::vector<Match> rank(std::vector<std::uint32_t> ids,
                            const std::vector<std::uint32_t>& scores, std::size_t limit) const;
    void check_query(const Hypervector& probe) const;

    SpaceConfig space_;
    std::deque<Entry> entries_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    // postings_[segment * d + offset] lists entry ids in insertion order.
    std::vector<std::vector<std::uint32_t>> postings_;
    std::unique_ptr<detail::TurnstileMutex> mutex_;
};

// HVB1: magic, u32 N, u32 d, u64 entry count; per entry: u16 label length,
// UTF-8 label bytes, M u16 offsets. The index is rebuilt on load.
void write_codebook(std::ostream& out, const Codebook& book);
Codebook read_codebook(std::istream& in);
void save_codebook(const std::filesystem::path& path, const Codebook& book);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace segvsa
