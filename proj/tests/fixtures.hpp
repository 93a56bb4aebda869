#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "flamelens/image.hpp"
#include "flamelens/pso.hpp"

namespace flamelens::fixtures {

inline constexpr Vec3 kOrange{1.0, 0.55, 0.1};
inline constexpr Vec3 kDarkRed{0.5, 0.1, 0.1};

/// 64x64 dark-gray field with a 16x16 orange block at (24,24).
inline RgbImage orange_block_image() {
    RgbImage img(64, 64);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (int k = 0; k < 3; ++k) img.data()[3 * i + k] = 0.2;
    for (std::size_t y = 24; y < 40; ++y)
        for (std::size_t x = 24; x < 40; ++x) {
            double* p = img.pixel(x, y);
            p[0] = kOrange[0];
            p[1] = kOrange[1];
            p[2] = kOrange[2];
        }
    return img;
}

inline BinaryMask orange_block_truth() {
    BinaryMask mask(64, 64);
    for (std::size_t y = 24; y < 40; ++y)
        for (std::size_t x = 24; x < 40; ++x) mask.set(x, y, true);
    return mask;
}

inline RgbImage uniform_image(std::size_t w, std::size_t h, const Vec3& colour) {
    RgbImage img(w, h);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (int k = 0; k < 3; ++k) img.data()[3 * i + k] = colour[k];
    return img;
}

/// 800 orange + 800 dark-red constant pixels.
inline FeatureMatrix constant_halves_feature() {
    std::vector<Vec3> fire(FeatureMatrix::kHalf, kOrange);
    std::vector<Vec3> background(FeatureMatrix::kHalf, kDarkRed);
    return FeatureMatrix::build(fire, background);
}

/// Constant halves with channels jittered by +-0.05, clamped to [0,1].
inline FeatureMatrix noisy_halves_feature(std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    auto jittered = [&](const Vec3& base) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) p[k] = std::clamp(base[k] + jitter(rng), 0.0, 1.0);
        return p;
    };
    std::vector<Vec3> fire, background;
    for (std::size_t i = 0; i < FeatureMatrix::kHalf; ++i) fire.push_back(jittered(kOrange));
    for (std::size_t i = 0; i < FeatureMatrix::kHalf; ++i)
        background.push_back(jittered(kDarkRed));
    return FeatureMatrix::build(fire, background);
}

inline RgbImage random_image(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RgbImage img(w, h);
    for (double& v : img.data()) v = unit(rng);
    return img;
}

inline std::vector<Vec3> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec3> points(n);
    for (Vec3& p : points)
        for (double& v : p) v = unit(rng);
    return points;
}

/// Image used by the rescue-path check: a 24x24 orange block, an 8x8 block of
/// a colour that is stage-1 white but dim after the stage-2 transform, and a
/// near-black field.
inline RgbImage rescue_fixture_image() {
    RgbImage img(64, 64);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (int k = 0; k < 3; ++k) img.data()[3 * i + k] = 0.05;
    for (std::size_t y = 8; y < 32; ++y)
        for (std::size_t x = 8; x < 32; ++x) {
            double* p = img.pixel(x, y);
            p[0] = kOrange[0];
            p[1] = kOrange[1];
            p[2] = kOrange[2];
        }
    for (std::size_t y = 48; y < 56; ++y)
        for (std::size_t x = 48; x < 56; ++x) {
            double* p = img.pixel(x, y);
            p[0] = 0.6;
            p[1] = 0.2;
            p[2] = 0.0;
        }
    return img;
}

}  // namespace flamelens::fixtures
