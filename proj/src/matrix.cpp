#include "flamelens/matrix.hpp"

#include <fstream>

#include <json.hpp>

namespace flamelens {

ConversionMatrix ConversionMatrix::identity() {
    ConversionMatrix m;
    for (int i = 0; i < 3; ++i) m.w[i][i] = 1.0;
    return m;
}

ConversionMatrix ConversionMatrix::zero() { return ConversionMatrix{}; }

Vec3 convert_pixel(const Vec3& x, const ConversionMatrix& w) {
    Vec3 y{};
    for (int k = 0; k < 3; ++k)
        y[k] = x[0] * w.w[0][k] + x[1] * w.w[1][k] + x[2] * w.w[2][k];
    return y;
}

std::vector<Vec3> convert_pixels(const std::vector<Vec3>& pixels, const ConversionMatrix& w) {
    std::vector<Vec3> out(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) out[i] = convert_pixel(pixels[i], w);
    return out;
}

ConversionMatrix preset_eq8() {
    return ConversionMatrix{{{{3.2753, 1.9701, 1.8017},
                              {-0.0269, -0.0774, 0.2938},
                              {-3.0439, -1.9676, -2.3011}}}};
}

ConversionMatrix preset_eq10() {
    return ConversionMatrix{{{{1.7673, 2.9860, -0.9186},
                              {0.1479, -0.9451, -1.2610},
                              {-3.2330, -2.8938, -1.3918}}}};
}

std::optional<ConversionMatrix> preset_by_name(std::string_view name) {
    if (name == "eq8") return preset_eq8();
    if (name == "eq10") return preset_eq10();
    return std::nullopt;
}

std::string matrix_to_json(const ConversionMatrix& w) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(w.w[i]);
    return nlohmann::json{{"rows", rows}}.dump(2) + "\n";
}

ConversionMatrix matrix_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array() ||
        doc["rows"].size() != 3)
        throw ParseError("matrix JSON must be {\"rows\": [[..],[..],[..]]} with 3 rows");
    ConversionMatrix m;
    for (int i = 0; i < 3; ++i) {
        const auto& row = doc["rows"][static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 3)
            throw ParseError("matrix row must have exactly 3 entries");
        for (int j = 0; j < 3; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) throw ParseError("matrix entry must be numeric");
            m.w[i][j] = v.get<double>();
        }
    }
    return m;
}

void save_matrix(const ConversionMatrix& w, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << matrix_to_json(w);
    if (!out) throw IoError("write failed: " + path.string());
}

ConversionMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return matrix_from_json(text);
}

}  // namespace flamelens
