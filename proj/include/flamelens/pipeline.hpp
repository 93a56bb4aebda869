#pragma once

#include <optional>

#include "flamelens/image.hpp"
#include "flamelens/matrix.hpp"

namespace flamelens {

/// Per-channel gamma exponents for the contrast-enhancement step.
struct GammaExponents {
    double r = 1.0, g = 1.0, b = 1.0;
};

inline constexpr GammaExponents kStage1Gamma{1.5, 0.7, 0.9};
inline constexpr GammaExponents kStage2Gamma{4.0, 0.9, 2.0};

struct PipelineConfig {
    ConversionMatrix stage1_matrix = preset_eq8();
    ConversionMatrix stage2_matrix = preset_eq10();
    GammaExponents stage1_gamma = kStage1Gamma;
    GammaExponents stage2_gamma = kStage2Gamma;
    double white_threshold = 0.8;
    std::optional<std::size_t> morph_close_radius;  // off by default
};

/// Per-channel gamma: (r,g,b) -> (r^gr, g^gg, b^gb). Stays in [0,1].
RgbImage contrast_enhance(const RgbImage& img, const GammaExponents& g);

/// Applies the conversion matrix to every pixel.
ConvertedImage convert_image(const RgbImage& img, const ConversionMatrix& w);

struct OtsuResult {
    double threshold = 1.0;
    BinaryMask mask;
};

/// 256-bin between-class-variance thresholding; ties resolve to the lowest
/// threshold, a constant image yields an all-false mask. Mask is true where
/// gray > threshold.
OtsuResult otsu_threshold(const GrayImage& gray);

/// True where all three converted channels, clamped to [0,1], are >= tau.
BinaryMask white_rescue(const ConvertedImage& stage1_converted, double tau);

/// Binary dilation then erosion with a square element of side 2*radius+1.
BinaryMask morph_close(const BinaryMask& mask, std::size_t radius);

/// Direct detector: enhance with the stage-2 gammas, convert with the stage-2
/// matrix, Otsu-threshold the clamped gray.
BinaryMask detect_linear(const RgbImage& img, const PipelineConfig& cfg);

/// Intermediate masks of the two-stage detector, exposed for auditing.
struct NonlinearTrace {
    BinaryMask stage1_mask;
    BinaryMask rescue_mask;  // subset of stage1_mask
    BinaryMask stage2_mask;  // already intersected with stage1_mask
    BinaryMask final_mask;   // stage2_mask OR rescue_mask (before closing)
};

/// Two-stage detector: stage-1 enhance/convert/threshold, white-pixel rescue
/// on the stage-1 conversion, stage-2 re-enhancement of the masked original,
/// final mask = stage-2 mask OR rescue mask.
BinaryMask detect_nonlinear(const RgbImage& img, const PipelineConfig& cfg,
                            NonlinearTrace* trace = nullptr);

}  // namespace flamelens
