#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "segvsa/core.hpp"

namespace testing {

inline const segvsa::SpaceConfig kTiny(16, 4);
inline const segvsa::SpaceConfig kDefault;

inline segvsa::Hypervector code(const segvsa::SpaceConfig& space, std::vector<std::uint16_t> offsets) {
    return segvsa::Hypervector(space, std::move(offsets));
}

inline segvsa::Hypervector tiny(std::vector<std::uint16_t> offsets) { return code(kTiny, std::move(offsets)); }

inline std::vector<segvsa::Hypervector> random_codes(std::size_t n, segvsa::RngStream& rng,
                                                      const segvsa::SpaceConfig& space = kDefault) {
    std::vector<segvsa::Hypervector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(segvsa::random_code(space, rng));
    }
    return out;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("segvsa-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
