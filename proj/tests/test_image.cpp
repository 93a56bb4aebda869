#include <doctest.h>

#include <random>

#include "flamelens/codec.hpp"
#include "flamelens/image.hpp"
#include "fixtures.hpp"

using namespace flamelens;

TEST_CASE("decode normalizes 8-bit channels by 255") {
    RgbImage src(2, 2);
    double* p = src.pixel(0, 0);
    p[0] = 128.0 / 255.0;
    p[1] = 64.0 / 255.0;
    p[2] = 32.0 / 255.0;
    double* q = src.pixel(1, 1);
    q[0] = q[1] = q[2] = 1.0;

    const RgbImage round = decode_image(encode_image(src));
    CHECK(round.width() == 2);
    CHECK(round.height() == 2);
    CHECK(round.pixel(0, 0)[0] == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
    CHECK(round.pixel(0, 0)[1] == doctest::Approx(64.0 / 255.0).epsilon(1e-12));
    CHECK(round.pixel(0, 0)[2] == doctest::Approx(32.0 / 255.0).epsilon(1e-12));
    CHECK(round.pixel(1, 1)[0] == 1.0);
    CHECK(round.pixel(0, 1)[0] == 0.0);
}

TEST_CASE("decode rejects garbage bytes") {
    const std::vector<std::uint8_t> garbage{0xde, 0xad, 0xbe, 0xef};
    CHECK_THROWS_AS(decode_image(garbage), MalformedImage);
}

TEST_CASE("mask encode/decode round-trips losslessly") {
    std::mt19937_64 rng(11);
    BinaryMask mask(8, 8);
    for (std::size_t i = 0; i < mask.pixel_count(); ++i) mask.set(i, rng() & 1);
    CHECK(decode_mask(encode_mask(mask)) == mask);

    const BinaryMask all_true(2, 2, true);
    CHECK(decode_mask(encode_mask(all_true)) == all_true);
    const BinaryMask all_false(2, 2, false);
    CHECK(decode_mask(encode_mask(all_false)) == all_false);
}

TEST_CASE("overlay replaces exactly the masked pixels") {
    const RgbImage img = fixtures::orange_block_image();

    SUBCASE("all-false mask is the identity") {
        const BinaryMask mask(img.width(), img.height());
        CHECK(overlay(img, mask, {1, 0, 0}).data() == img.data());
    }
    SUBCASE("all-true mask paints everything") {
        const BinaryMask mask(img.width(), img.height(), true);
        const RgbImage out = overlay(img, mask, {1, 0, 0});
        for (std::size_t i = 0; i < out.pixel_count(); ++i) {
            CHECK(out.data()[3 * i] == 1.0);
            CHECK(out.data()[3 * i + 1] == 0.0);
        }
    }
    SUBCASE("single-pixel mask changes one pixel") {
        BinaryMask mask(img.width(), img.height());
        mask.set(3, 2, true);
        const RgbImage out = overlay(img, mask, {0, 1, 0});
        std::size_t changed = 0;
        for (std::size_t i = 0; i < out.pixel_count(); ++i)
            if (out.data()[3 * i] != img.data()[3 * i] ||
                out.data()[3 * i + 1] != img.data()[3 * i + 1] ||
                out.data()[3 * i + 2] != img.data()[3 * i + 2])
                ++changed;
        CHECK(changed == 1);
    }
    SUBCASE("dimension mismatch throws") {
        const BinaryMask mask(3, 3);
        CHECK_THROWS_AS(overlay(img, mask, {1, 0, 0}), DimensionMismatch);
    }
}

TEST_CASE("clamp_to_gray clamps channels then averages") {
    ConvertedImage c(3, 1);
    double* a = c.pixel(0, 0);
    a[0] = -1.3178;
    a[1] = -0.8529;
    a[2] = -3.5714;
    double* b = c.pixel(1, 0);
    b[0] = b[1] = b[2] = 2.0;
    double* d = c.pixel(2, 0);
    d[0] = 0.6;
    d[1] = -0.3;
    d[2] = 0.9;

    const GrayImage gray = clamp_to_gray(c);
    CHECK(gray.at(0, 0) == 0.0);
    CHECK(gray.at(1, 0) == 1.0);
    CHECK(gray.at(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("clamp_to_gray is monotone in each channel") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> wide(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        ConvertedImage c(1, 1);
        for (double& v : c.data()) v = wide(rng);
        ConvertedImage raised = c;
        const int k = static_cast<int>(rng() % 3);
        raised.data()[static_cast<std::size_t>(k)] += std::abs(wide(rng));
        CHECK(clamp_to_gray(raised).at(0, 0) >= clamp_to_gray(c).at(0, 0));
    }
}
