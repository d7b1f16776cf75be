#pragma once

// Little-endian primitives for the persisted index formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "claimcheck/errors.hpp"

namespace claimcheck::detail {

template <typename UInt>
void write_uint(std::ostream& out, UInt value) {
    char bytes[sizeof(UInt)];
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes, sizeof(UInt));
}

template <typename UInt>
UInt read_uint(std::istream& in) {
    unsigned char bytes[sizeof(UInt)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(UInt))) {
        throw FormatError("truncated index file");
    }
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
        value |= static_cast<UInt>(bytes[i]) << (8 * i);
    }
    return value;
}

inline void write_f64(std::ostream& out, double value) {
    write_uint<std::uint64_t>(out, std::bit_cast<std::uint64_t>(value));
}

inline double read_f64(std::istream& in) {
    return std::bit_cast<double>(read_uint<std::uint64_t>(in));
}

inline void write_f32(std::ostream& out, float value) {
    write_uint<std::uint32_t>(out, std::bit_cast<std::uint32_t>(value));
}

inline float read_f32(std::istream& in) {
    return std::bit_cast<float>(read_uint<std::uint32_t>(in));
}

inline void write_string(std::ostream& out, std::string_view text) {
    write_uint<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

inline std::string read_string(std::istream& in, std::size_t limit = 1u << 30) {
    const auto size = read_uint<std::uint32_t>(in);
    if (size > limit) {
        throw FormatError("string length exceeds limit in index file");
    }
    std::string text(size, '\0');
    if (size != 0 && !in.read(text.data(), size)) {
        throw FormatError("truncated index file");
    }
    return text;
}

inline void expect_magic(std::istream& in, std::string_view magic) {
    std::string got(magic.size(), '\0');
    if (!in.read(got.data(), static_cast<std::streamsize>(got.size())) || got != magic) {
        throw FormatError("not a " + std::string(magic.substr(0, magic.find('\0'))) + " file");
    }
}

} // namespace claimcheck::detail
