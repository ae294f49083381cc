#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mixdenoise/image.hpp"
#include "mixdenoise/metrics.hpp"
#include "mixdenoise/pgm.hpp"
#include "support.hpp"

using namespace mixdenoise;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PgmError::Kind decode_error_kind(const std::vector<std::uint8_t>& bytes) {
    try {
        decode_pgm(bytes);
    } catch (const PgmError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a PgmError";
    return PgmError::Kind::Io;
}

}  // namespace

TEST(Image, RejectsBadShapes) {
    EXPECT_THROW(Image(0, 3), DimensionError);
    EXPECT_THROW(Image(3, -1), DimensionError);
    EXPECT_THROW(Image(2, 2, std::vector<double>(3)), DimensionError);
    EXPECT_THROW(Image(1, 1, std::vector<double>{std::nan("")}), DimensionError);
}

TEST(Image, RowMajorIndexing) {
    Image img(3, 2, {0, 1, 2, 3, 4, 5});
    EXPECT_EQ(img(1, 0), 3.0);
    EXPECT_EQ(img(0, 2), 2.0);
    EXPECT_EQ(img[5], 5.0);
}

TEST(Pgm, DecodesBinary) {
    auto bytes = bytes_of("P5 2 2 255\n");
    for (int v : {0, 255, 128, 64}) bytes.push_back(static_cast<std::uint8_t>(v));
    const Image img = decode_pgm(bytes);
    EXPECT_EQ(img.width(), 2);
    EXPECT_EQ(img.height(), 2);
    EXPECT_EQ(img.data(), (std::vector<double>{0, 255, 128, 64}));
}

TEST(Pgm, AsciiMatchesBinary) {
    auto bin = bytes_of("P5 2 2 255\n");
    for (int v : {0, 255, 128, 64}) bin.push_back(static_cast<std::uint8_t>(v));
    const auto ascii = bytes_of("P2\n# comment\n2 2\n255\n0 255\n128 64\n");
    EXPECT_EQ(decode_pgm(ascii), decode_pgm(bin));
}

TEST(Pgm, RejectsWideMaxval) {
    const auto bytes = bytes_of("P5 1 1 65535\n\x01\x02");
    EXPECT_EQ(decode_error_kind(bytes), PgmError::Kind::UnsupportedMaxval);
    try {
        decode_pgm(bytes);
    } catch (const PgmError& e) {
        EXPECT_NE(std::string(e.what()).find("unsupported maxval"), std::string::npos);
        EXPECT_EQ(e.offset(), 7u);
    }
}

TEST(Pgm, DistinctErrors) {
    EXPECT_EQ(decode_error_kind(bytes_of("P6 1 1 255\n\x00")), PgmError::Kind::BadMagic);
    EXPECT_EQ(decode_error_kind(bytes_of("P5 x 1 255\n\x00")), PgmError::Kind::BadHeader);
    EXPECT_EQ(decode_error_kind(bytes_of("P5 0 1 255\n")), PgmError::Kind::BadHeader);
    EXPECT_EQ(decode_error_kind(bytes_of("P5 2 2 255\n\x01\x02")), PgmError::Kind::Truncated);
    EXPECT_EQ(decode_error_kind(bytes_of("P2 2 1 255\n3")), PgmError::Kind::Truncated);
    EXPECT_EQ(decode_error_kind(bytes_of("P2 2 1 255\n3 300")), PgmError::Kind::BadSample);
}

TEST(Pgm, TruncatedReportsOffset) {
    const auto bytes = bytes_of("P5 2 2 255\n\x01\x02");
    try {
        decode_pgm(bytes);
        FAIL();
    } catch (const PgmError& e) {
        EXPECT_EQ(e.offset(), bytes.size());
    }
}

TEST(Pgm, QuantizeRoundsAndClips) {
    EXPECT_EQ(quantize(254.6), 255);
    EXPECT_EQ(quantize(-3.0), 0);
    EXPECT_EQ(quantize(300.0), 255);
    EXPECT_EQ(quantize(2.5), 3);
    EXPECT_EQ(quantize(2.4999), 2);
}

TEST(Pgm, SaveLoadRoundTrip) {
    const Image img = testsupport::random_integer_image(17, 9, 7);
    const auto dir = testsupport::scratch_dir("pgm_roundtrip");
    save_pgm(img, dir / "a.pgm");
    EXPECT_EQ(load_pgm(dir / "a.pgm"), img);
    EXPECT_EQ(decode_pgm(encode_pgm(img)), img);
}

TEST(Pgm, MissingFileIsIoError) {
    try {
        load_pgm("/nonexistent/dir/x.pgm");
        FAIL();
    } catch (const PgmError& e) {
        EXPECT_EQ(e.kind(), PgmError::Kind::Io);
    }
}

TEST(Metrics, MseExamples) {
    const Image a(2, 2, {1, 2, 3, 4});
    EXPECT_EQ(mse(a, a), 0.0);
    EXPECT_DOUBLE_EQ(mse(a, Image(2, 2, {11, 12, 13, 14})), 100.0);
    EXPECT_DOUBLE_EQ(mse(a, Image(2, 2, {1, 2, 3, 6})), 1.0);
    EXPECT_THROW(mse(a, Image(4, 1)), DimensionError);
}

TEST(Metrics, MseSymmetric) {
    const Image a = testsupport::random_image(8, 5, 1);
    const Image b = testsupport::random_image(8, 5, 2);
    EXPECT_EQ(mse(a, b), mse(b, a));
}

TEST(Metrics, PsnrExamples) {
    const Image a(2, 2, {1, 2, 3, 4});
    EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(psnr(a, Image(2, 2, {11, 12, 13, 14})), 20.0 * std::log10(25.5), 1e-12);
    EXPECT_NEAR(psnr(a, Image(2, 2, {11, 12, 13, 14})), 28.1308, 5e-5);
}

TEST(Metrics, PsnrDecreasesWithMse) {
    const Image ref(4, 4, 100.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double off : {0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
        const double p = psnr(ref, Image(4, 4, 100.0 + off));
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Clip, Examples) {
    const Image in(3, 1, {12.5, 300.0, -5.0});
    const Image out = clip(in);
    EXPECT_EQ(out.data(), (std::vector<double>{12.5, 255.0, 0.0}));
    const Image inside = testsupport::random_image(5, 5, 3);
    EXPECT_EQ(clip(inside), inside);
}
