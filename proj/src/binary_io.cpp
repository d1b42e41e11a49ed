#include "segvsa/binary_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace segvsa::io {

namespace {

template <typename T>
void write_le(std::ostream& out, T v) {
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(buf, sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
        throw format_error("unexpected end of file");
    }
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(buf[i]) << (8 * i);
    }
    return v;
}

}  // namespace

void write_magic(std::ostream& out, const Magic& magic) {
    out.write(magic.data(), magic.size());
}

void write_u16(std::ostream& out, std::uint16_t v) { write_le(out, v); }
void write_u32(std::ostream& out, std::uint32_t v) { write_le(out, v); }
void write_u64(std::ostream& out, std::uint64_t v) { write_le(out, v); }

void write_label(std::ostream& out, std::string_view label) {
    if (label.size() > 0xFFFF) {
        throw std::invalid_argument("label longer than 65535 bytes");
    }
    write_u16(out, static_cast<std::uint16_t>(label.size()));
    out.write(label.data(), static_cast<std::streamsize>(label.size()));
}

void write_offsets(std::ostream& out, const Hypervector& code) {
    for (std::uint16_t o : code.offsets()) {
        write_u16(out, o);
    }
}

void write_space(std::ostream& out, const SpaceConfig& space) {
    write_u32(out, space.dimension());
    write_u32(out, space.segment_width());
}

void expect_magic(std::istream& in, const Magic& magic, std::string_view what) {
    Magic got{};
    in.read(got.data(), got.size());
    if (in.gcount() != 4 || got != magic) {
        throw format_error("not a " + std::string(what) + " stream (bad magic)");
    }
}

std::uint16_t read_u16(std::istream& in) { return read_le<std::uint16_t>(in); }
std::uint32_t read_u32(std::istream& in) { return read_le<std::uint32_t>(in); }
std::uint64_t read_u64(std::istream& in) { return read_le<std::uint64_t>(in); }

std::string read_label(std::istream& in) {
    const std::uint16_t len = read_u16(in);
    std::string label(len, '\0');
    in.read(label.data(), len);
    if (in.gcount() != len) {
        throw format_error("unexpected end of file inside label");
    }
    return label;
}

Hypervector read_offsets(std::istream& in, const SpaceConfig& space) {
    std::vector<std::uint16_t> offsets(space.segment_count());
    for (auto& o : offsets) {
        o = read_u16(in);
    }
    try {
        return Hypervector(space, std::move(offsets));
    } catch (const std::invalid_argument& e) {
        throw format_error(e.what());
    }
}

SpaceConfig read_space(std::istream& in) {
    const std::uint32_t n = read_u32(in);
    const std::uint32_t d = read_u32(in);
    try {
        return SpaceConfig(n, d);
    } catch (const std::invalid_argument& e) {
        throw format_error(e.what());
    }
}

bool peek_magic(std::istream& in, Magic& magic) {
    const auto start = in.tellg();
    in.read(magic.data(), magic.size());
    const bool ok = in.gcount() == 4;
    in.clear();
    in.seekg(start);
    return ok;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open " + path.string() + " for reading");
    }
    return in;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw io_error("failed writing " + path.string());
    }
}

}  // namespace segvsa::io
