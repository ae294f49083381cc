#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixdenoise/image.hpp"

namespace mixdenoise {

/// Malformed or unsupported PGM data. offset() is the byte position in the
/// input where decoding stopped.
class PgmError : public std::runtime_error {
public:
    enum class Kind { BadMagic, BadHeader, UnsupportedMaxval, Truncated, BadSample, Io };

    PgmError(Kind kind, std::size_t offset, const std::string& message);

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// Decode a P2 (ASCII) or P5 (binary) PGM with maxval 255.
Image decode_pgm(std::span<const std::uint8_t> bytes);

/// Encode as P5. Values are rounded half away from zero, then clipped to [0, 255].
std::vector<std::uint8_t> encode_pgm(const Image& img);

Image load_pgm(const std::filesystem::path& path);
void save_pgm(const Image& img, const std::filesystem::path& path);

/// Byte stored for a real intensity by save_pgm.
std::uint8_t quantize(double value) noexcept;

}  // namespace mixdenoise
