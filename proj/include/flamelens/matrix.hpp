#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "flamelens/clustering.hpp"

namespace flamelens {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 3x3 conversion matrix W. A pixel converts as a row vector: y = x * W,
/// so rows index the input channels and columns the output channels.
struct ConversionMatrix {
    std::array<std::array<double, 3>, 3> w{};

    static ConversionMatrix identity();
    static ConversionMatrix zero();

    bool operator==(const ConversionMatrix& other) const = default;
};

Vec3 convert_pixel(const Vec3& x, const ConversionMatrix& w);
std::vector<Vec3> convert_pixels(const std::vector<Vec3>& pixels, const ConversionMatrix& w);

/// The stage-1 matrix published for the first transformation step.
ConversionMatrix preset_eq8();
/// The trained colour-differentiating matrix (also the stage-2 matrix).
ConversionMatrix preset_eq10();
/// Looks up "eq8" or "eq10"; empty for anything else.
std::optional<ConversionMatrix> preset_by_name(std::string_view name);

/// JSON round-trip as {"rows": [[...],[...],[...]]} with full double precision.
void save_matrix(const ConversionMatrix& w, const std::filesystem::path& path);
ConversionMatrix load_matrix(const std::filesystem::path& path);

std::string matrix_to_json(const ConversionMatrix& w);
ConversionMatrix matrix_from_json(const std::string& text);

}  // namespace flamelens
