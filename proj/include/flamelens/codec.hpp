#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flamelens/image.hpp"

namespace flamelens {

struct MalformedImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EncodeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decodes PNG or JPEG bytes into a normalized RGB image. 8-bit channels are
/// divided by 255; alpha is discarded; grayscale sources are replicated to
/// three channels.
RgbImage decode_image(const std::vector<std::uint8_t>& bytes);

/// Encodes a mask as an 8-bit gray PNG, true -> 255, false -> 0.
std::vector<std::uint8_t> encode_mask(const BinaryMask& mask);

/// Encodes an RGB image as an 8-bit PNG (channels rounded from [0,1] to 0..255).
std::vector<std::uint8_t> encode_image(const RgbImage& image);

/// Decodes an 8-bit gray PNG into a mask, pixel > 127 -> true.
BinaryMask decode_mask(const std::vector<std::uint8_t>& bytes);

RgbImage load_image(const std::filesystem::path& path);
BinaryMask load_mask(const std::filesystem::path& path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);
void save_image(const RgbImage& image, const std::filesystem::path& path);

}  // namespace flamelens
