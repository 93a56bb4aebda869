#include "flamelens/codec.hpp"

#include <cmath>
#include <fstream>

#include <opencv2/imgcodecs.hpp>

namespace flamelens {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedImage("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EncodeFailure("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw EncodeFailure("write failed: " + path.string());
}

}  // namespace

RgbImage decode_image(const std::vector<std::uint8_t>& bytes) {
    cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1,
                const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat bgr = cv::imdecode(raw, cv::IMREAD_COLOR);  // drops alpha, expands gray
    if (bgr.empty()) throw MalformedImage("undecodable image bytes");
    RgbImage img(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows));
    for (int y = 0; y < bgr.rows; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            double* p = img.pixel(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
            p[0] = row[x][2] / 255.0;
            p[1] = row[x][1] / 255.0;
            p[2] = row[x][0] / 255.0;
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_mask(const BinaryMask& mask) {
    cv::Mat gray(static_cast<int>(mask.height()), static_cast<int>(mask.width()), CV_8UC1);
    for (std::size_t i = 0; i < mask.pixel_count(); ++i)
        gray.data[i] = mask.get(i) ? 255 : 0;
    std::vector<std::uint8_t> out;
    if (!cv::imencode(".png", gray, out)) throw EncodeFailure("PNG encode failed");
    return out;
}

std::vector<std::uint8_t> encode_image(const RgbImage& image) {
    cv::Mat bgr(static_cast<int>(image.height()), static_cast<int>(image.width()), CV_8UC3);
    for (std::size_t y = 0; y < image.height(); ++y) {
        cv::Vec3b* row = bgr.ptr<cv::Vec3b>(static_cast<int>(y));
        for (std::size_t x = 0; x < image.width(); ++x) {
            const double* p = image.pixel(x, y);
            row[x][2] = static_cast<std::uint8_t>(std::lround(p[0] * 255.0));
            row[x][1] = static_cast<std::uint8_t>(std::lround(p[1] * 255.0));
            row[x][0] = static_cast<std::uint8_t>(std::lround(p[2] * 255.0));
        }
    }
    std::vector<std::uint8_t> out;
    if (!cv::imencode(".png", bgr, out)) throw EncodeFailure("PNG encode failed");
    return out;
}

BinaryMask decode_mask(const std::vector<std::uint8_t>& bytes) {
    cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1,
                const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat gray = cv::imdecode(raw, cv::IMREAD_GRAYSCALE);
    if (gray.empty()) throw MalformedImage("undecodable mask bytes");
    BinaryMask mask(static_cast<std::size_t>(gray.cols), static_cast<std::size_t>(gray.rows));
    for (int y = 0; y < gray.rows; ++y) {
        const std::uint8_t* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x)
            mask.set(static_cast<std::size_t>(y) * mask.width() + static_cast<std::size_t>(x),
                     row[x] > 127);
    }
    return mask;
}

RgbImage load_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

BinaryMask load_mask(const std::filesystem::path& path) { return decode_mask(read_file(path)); }

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    write_file(path, encode_mask(mask));
}

void save_image(const RgbImage& image, const std::filesystem::path& path) {
    write_file(path, encode_image(image));
}

}  // namespace flamelens
