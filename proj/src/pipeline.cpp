#include "flamelens/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flamelens {

RgbImage contrast_enhance(const RgbImage& img, const GammaExponents& g) {
    RgbImage out(img.width(), img.height());
    const std::array<double, 3> gamma{g.r, g.g, g.b};
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* src = img.data().data() + 3 * i;
        double* dst = out.data().data() + 3 * i;
        for (int k = 0; k < 3; ++k) dst[k] = std::pow(src[k], gamma[k]);
    }
    return out;
}

ConvertedImage convert_image(const RgbImage& img, const ConversionMatrix& w) {
    ConvertedImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double* x = img.data().data() + 3 * i;
        double* y = out.data().data() + 3 * i;
        for (int k = 0; k < 3; ++k)
            y[k] = x[0] * w.w[0][k] + x[1] * w.w[1][k] + x[2] * w.w[2][k];
    }
    return out;
}

OtsuResult otsu_threshold(const GrayImage& gray) {
    std::array<std::size_t, 256> hist{};
    for (double v : gray.data())
        hist[static_cast<std::size_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))]++;

    const std::size_t occupied =
        static_cast<std::size_t>(std::count_if(hist.begin(), hist.end(),
                                               [](std::size_t c) { return c > 0; }));
    if (occupied < 2)
        return OtsuResult{1.0, BinaryMask(gray.width(), gray.height(), false)};

    const double total = static_cast<double>(gray.pixel_count());
    double total_sum = 0.0;
    for (int b = 0; b < 256; ++b) total_sum += static_cast<double>(b) * static_cast<double>(hist[b]);

    int best_t = 0;
    double best_var = -1.0;
    double count0 = 0.0, sum0 = 0.0;
    for (int t = 0; t < 255; ++t) {
        count0 += static_cast<double>(hist[t]);
        sum0 += static_cast<double>(t) * static_cast<double>(hist[t]);
        const double count1 = total - count0;
        if (count0 == 0.0 || count1 == 0.0) continue;
        const double mu0 = sum0 / count0;
        const double mu1 = (total_sum - sum0) / count1;
        const double var = count0 * count1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }

    OtsuResult result;
    result.threshold = (static_cast<double>(best_t) + 0.5) / 255.0;
    result.mask = BinaryMask(gray.width(), gray.height());
    for (std::size_t i = 0; i < gray.pixel_count(); ++i)
        result.mask.set(i, gray.data()[i] > result.threshold);
    return result;
}

BinaryMask white_rescue(const ConvertedImage& stage1_converted, double tau) {
    BinaryMask out(stage1_converted.width(), stage1_converted.height());
    for (std::size_t i = 0; i < stage1_converted.pixel_count(); ++i) {
        const double* p = stage1_converted.data().data() + 3 * i;
        bool white = true;
        for (int k = 0; k < 3; ++k) white = white && std::clamp(p[k], 0.0, 1.0) >= tau;
        out.set(i, white);
    }
    return out;
}

BinaryMask morph_close(const BinaryMask& mask, std::size_t radius) {
    if (radius < 1) throw std::invalid_argument("morph_close radius must be >= 1");
    const auto w = static_cast<std::ptrdiff_t>(mask.width());
    const auto h = static_cast<std::ptrdiff_t>(mask.height());
    const auto r = static_cast<std::ptrdiff_t>(radius);

    // Windows clip at the border: dilation sees false outside, erosion true.
    BinaryMask dilated(mask.width(), mask.height());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            bool any = false;
            for (std::ptrdiff_t dy = std::max<std::ptrdiff_t>(0, y - r);
                 !any && dy <= std::min(h - 1, y + r); ++dy)
                for (std::ptrdiff_t dx = std::max<std::ptrdiff_t>(0, x - r);
                     !any && dx <= std::min(w - 1, x + r); ++dx)
                    any = mask.at(static_cast<std::size_t>(dx), static_cast<std::size_t>(dy));
            dilated.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), any);
        }
    }
    BinaryMask closed(mask.width(), mask.height());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            bool all = true;
            for (std::ptrdiff_t dy = std::max<std::ptrdiff_t>(0, y - r);
                 all && dy <= std::min(h - 1, y + r); ++dy)
                for (std::ptrdiff_t dx = std::max<std::ptrdiff_t>(0, x - r);
                     all && dx <= std::min(w - 1, x + r); ++dx)
                    all = dilated.at(static_cast<std::size_t>(dx), static_cast<std::size_t>(dy));
            closed.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), all);
        }
    }
    return closed;
}

namespace {

RgbImage apply_mask(const RgbImage& img, const BinaryMask& mask) {
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        if (!mask.get(i)) continue;
        for (int k = 0; k < 3; ++k) out.data()[3 * i + k] = img.data()[3 * i + k];
    }
    return out;
}

}  // namespace

BinaryMask detect_linear(const RgbImage& img, const PipelineConfig& cfg) {
    const RgbImage enhanced = contrast_enhance(img, cfg.stage2_gamma);
    const ConvertedImage converted = convert_image(enhanced, cfg.stage2_matrix);
    BinaryMask mask = otsu_threshold(clamp_to_gray(converted)).mask;
    if (cfg.morph_close_radius) mask = morph_close(mask, *cfg.morph_close_radius);
    return mask;
}

BinaryMask detect_nonlinear(const RgbImage& img, const PipelineConfig& cfg,
                            NonlinearTrace* trace) {
    // Stage 1
    const RgbImage e1 = contrast_enhance(img, cfg.stage1_gamma);
    const ConvertedImage c1 = convert_image(e1, cfg.stage1_matrix);
    const BinaryMask m1 = otsu_threshold(clamp_to_gray(c1)).mask;

    // White-pixel rescue on the stage-1 conversion, inside the stage-1 mask.
    const BinaryMask rescue = mask_and(white_rescue(c1, cfg.white_threshold), m1);

    // Stage 2 runs on the stage-1 masked original; filler pixels are black and
    // the intersection keeps them from re-entering through a low threshold.
    const RgbImage d = apply_mask(img, m1);
    const RgbImage e2 = contrast_enhance(d, cfg.stage2_gamma);
    const ConvertedImage c2 = convert_image(e2, cfg.stage2_matrix);
    const BinaryMask m2 = mask_and(otsu_threshold(clamp_to_gray(c2)).mask, m1);

    BinaryMask final_mask = mask_or(m2, rescue);
    if (trace) *trace = NonlinearTrace{m1, rescue, m2, final_mask};
    if (cfg.morph_close_radius) final_mask = morph_close(final_mask, *cfg.morph_close_radius);
    return final_mask;
}

}  // namespace flamelens
