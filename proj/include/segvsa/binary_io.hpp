#pragma once
// Little-endian primitives shared by the HVB1 / HVL1 / HVM1 container formats.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "segvsa/core.hpp"

namespace segvsa {

/// Malformed or truncated file content.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io {

using Magic = std::array<char, 4>;

void write_magic(std::ostream& out, const Magic& magic);
void write_u16(std::ostream& out, std::uint16_t v);
void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
/// u16 byte length followed by the raw bytes; labels longer than 65535 bytes are rejected.
void write_label(std::ostream& out, std::string_view label);
/// M offsets, u16 each, no header.
void write_offsets(std::ostream& out, const Hypervector& code);
/// N (u32) and d (u32).
void write_space(std::ostream& out, const SpaceConfig& space);

/// Throws format_error naming `what` if the next four bytes differ from magic.
void expect_magic(std::istream& in, const Magic& magic, std::string_view what);
std::uint16_t read_u16(std::istream& in);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
std::string read_label(std::istream& in);
Hypervector read_offsets(std::istream& in, const SpaceConfig& space);
SpaceConfig read_space(std::istream& in);

/// Peek the next four bytes without consuming them; false at end of stream.
bool peek_magic(std::istream& in, Magic& magic);

std::ofstream open_for_write(const std::filesystem::path& path);
std::ifstream open_for_read(const std::filesystem::path& path);
/// Flush and throw io_error on failure.
void finish_write(std::ofstream& out, const std::filesystem::path& path);

}  // namespace io
}  // namespace segvsa
