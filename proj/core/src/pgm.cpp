#include "mixdenoise/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string_view>

namespace mixdenoise {

namespace {

const char* kind_name(PgmError::Kind kind) {
    switch (kind) {
        case PgmError::Kind::BadMagic: return "bad magic";
        case PgmError::Kind::BadHeader: return "malformed header";
        case PgmError::Kind::UnsupportedMaxval: return "unsupported maxval";
        case PgmError::Kind::Truncated: return "truncated payload";
        case PgmError::Kind::BadSample: return "bad sample";
        case PgmError::Kind::Io: return "i/o error";
    }
    return "pgm error";
}

class Cursor {
public:
    explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }

    // Whitespace and '#' comments (to end of line) between header tokens.
    void skip_separators() {
        while (!at_end()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool read_unsigned(long long& value, PgmError::Kind kind, const char* what) {
        skip_separators();
        const std::size_t start = pos_;
        if (at_end()) {
            throw PgmError(kind == PgmError::Kind::BadSample ? PgmError::Kind::Truncated : kind,
                           pos_, std::string("expected ") + what + ", found end of file");
        }
        value = 0;
        while (!at_end() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000LL) {
                throw PgmError(kind, start, std::string(what) + " out of range");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw PgmError(kind, start, std::string("expected ") + what);
        }
        return true;
    }

    std::uint8_t next() { return bytes_[pos_++]; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

PgmError::PgmError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + " at byte " + std::to_string(offset) +
                         ": " + message),
      kind_(kind),
      offset_(offset) {}

std::uint8_t quantize(double value) noexcept {
    const double r = std::round(value);  // half away from zero
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

Image decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw PgmError(PgmError::Kind::BadMagic, 0, "expected P2 or P5");
    }
    const bool binary = bytes[1] == '5';
    Cursor cur(bytes);
    cur.next();
    cur.next();
    if (!cur.at_end() && !std::isspace(bytes[cur.offset()]) && bytes[cur.offset()] != '#') {
        throw PgmError(PgmError::Kind::BadMagic, cur.offset(), "expected whitespace after magic");
    }

    long long width = 0, height = 0, maxval = 0;
    cur.read_unsigned(width, PgmError::Kind::BadHeader, "width");
    cur.read_unsigned(height, PgmError::Kind::BadHeader, "height");
    cur.skip_separators();
    const std::size_t maxval_offset = cur.offset();
    cur.read_unsigned(maxval, PgmError::Kind::BadHeader, "maxval");
    if (width < 1 || height < 1) {
        throw PgmError(PgmError::Kind::BadHeader, maxval_offset, "image dimensions must be positive");
    }
    if (width * height > (1LL << 31)) {
        throw PgmError(PgmError::Kind::BadHeader, maxval_offset, "image too large");
    }
    if (maxval != 255) {
        throw PgmError(PgmError::Kind::UnsupportedMaxval, maxval_offset,
                       "unsupported maxval " + std::to_string(maxval) + " (only 255)");
    }

    const auto count = static_cast<std::size_t>(width * height);
    std::vector<double> data(count);
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.at_end() || !std::isspace(bytes[cur.offset()])) {
            throw PgmError(PgmError::Kind::BadHeader, cur.offset(),
                           "expected single whitespace before raster");
        }
        cur.next();
        if (cur.remaining() < count) {
            throw PgmError(PgmError::Kind::Truncated, bytes.size(),
                           "raster has " + std::to_string(cur.remaining()) + " bytes, expected " +
                               std::to_string(count));
        }
        for (auto& v : data) v = cur.next();
    } else {
        for (auto& v : data) {
            long long sample = 0;
            const std::size_t at = cur.offset();
            cur.read_unsigned(sample, PgmError::Kind::BadSample, "sample");
            if (sample > 255) {
                throw PgmError(PgmError::Kind::BadSample, at,
                               "sample " + std::to_string(sample) + " exceeds maxval");
            }
            v = static_cast<double>(sample);
        }
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

std::vector<std::uint8_t> encode_pgm(const Image& img) {
    const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.size());
    for (double v : img.pixels()) out.push_back(quantize(v));
    return out;
}

Image load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PgmError(PgmError::Kind::Io, 0, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_pgm(bytes);
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw PgmError(PgmError::Kind::Io, 0, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PgmError(PgmError::Kind::Io, 0, "write failed for " + path.string());
}

}  // namespace mixdenoise
