#include "flamelens/image.hpp"

#include <algorithm>
#include <numeric>

namespace flamelens {

std::size_t BinaryMask::popcount() const {
    return static_cast<std::size_t>(
        std::count(data_.begin(), data_.end(), static_cast<unsigned char>(1)));
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("mask_and: dimension mismatch");
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < out.pixel_count(); ++i) out.set(i, a.get(i) && b.get(i));
    return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("mask_or: dimension mismatch");
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < out.pixel_count(); ++i) out.set(i, a.get(i) || b.get(i));
    return out;
}

RgbImage overlay(const RgbImage& image, const BinaryMask& mask, const Rgb& highlight) {
    if (image.width() != mask.width() || image.height() != mask.height())
        throw DimensionMismatch("overlay: image and mask dimensions differ");
    RgbImage out = image;
    for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
        if (mask.get(i)) {
            double* p = out.data().data() + 3 * i;
            p[0] = highlight.r;
            p[1] = highlight.g;
            p[2] = highlight.b;
        }
    }
    return out;
}

GrayImage clamp_to_gray(const ConvertedImage& c) {
    GrayImage out(c.width(), c.height());
    for (std::size_t i = 0; i < c.pixel_count(); ++i) {
        const double* p = c.data().data() + 3 * i;
        double sum = 0.0;
        for (int k = 0; k < 3; ++k) sum += std::clamp(p[k], 0.0, 1.0);
        out.data()[i] = sum / 3.0;
    }
    return out;
}

}  // namespace flamelens
