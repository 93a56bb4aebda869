#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace flamelens {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// RGB triple with channels in [0,1].
struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
};

/// Raster of normalized RGB triples, row-major, channels in [0,1].
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(std::size_t width, std::size_t height)
        : width_(width), height_(height), data_(width * height * 3, 0.0) {}

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }

    double* pixel(std::size_t x, std::size_t y) { return data_.data() + 3 * (y * width_ + x); }
    const double* pixel(std::size_t x, std::size_t y) const {
        return data_.data() + 3 * (y * width_ + x);
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t width_ = 0, height_ = 0;
    std::vector<double> data_;
};

/// Raster of converted triples; values are unbounded (conversion rows carry
/// negative weights).
class ConvertedImage {
public:
    ConvertedImage() = default;
    ConvertedImage(std::size_t width, std::size_t height)
        : width_(width), height_(height), data_(width * height * 3, 0.0) {}

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }

    double* pixel(std::size_t x, std::size_t y) { return data_.data() + 3 * (y * width_ + x); }
    const double* pixel(std::size_t x, std::size_t y) const {
        return data_.data() + 3 * (y * width_ + x);
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t width_ = 0, height_ = 0;
    std::vector<double> data_;
};

/// Single-channel raster with values in [0,1].
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height)
        : width_(width), height_(height), data_(width * height, 0.0) {}

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }

    double& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
    double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t width_ = 0, height_ = 0;
    std::vector<double> data_;
};

/// Per-pixel fire/non-fire decision, true = fire.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(std::size_t width, std::size_t height, bool fill = false)
        : width_(width), height_(height), data_(width * height, fill ? 1 : 0) {}

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }

    bool at(std::size_t x, std::size_t y) const { return data_[y * width_ + x] != 0; }
    void set(std::size_t x, std::size_t y, bool v) { data_[y * width_ + x] = v ? 1 : 0; }

    bool get(std::size_t i) const { return data_[i] != 0; }
    void set(std::size_t i, bool v) { data_[i] = v ? 1 : 0; }

    std::size_t popcount() const;

    bool operator==(const BinaryMask& other) const = default;

    std::vector<unsigned char>& data() { return data_; }
    const std::vector<unsigned char>& data() const { return data_; }

private:
    std::size_t width_ = 0, height_ = 0;
    std::vector<unsigned char> data_;  // 0/1
};

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);

/// Replaces mask-true pixels by the highlight colour.
RgbImage overlay(const RgbImage& image, const BinaryMask& mask, const Rgb& highlight);

/// Clamps each converted channel to [0,1] then averages the three channels.
/// This is the single scalarization used ahead of every Otsu step.
GrayImage clamp_to_gray(const ConvertedImage& c);

}  // namespace flamelens
