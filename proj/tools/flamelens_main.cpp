#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flamelens/codec.hpp"
#include "flamelens/evaluation.hpp"
#include "flamelens/pipeline.hpp"
#include "flamelens/pso.hpp"

namespace fs = std::filesystem;
using namespace flamelens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rect {
    std::size_t x = 0, y = 0, w = 0, h = 0;
};

Rect parse_rect(const std::string& text) {
    Rect r;
    if (std::sscanf(text.c_str(), "%zu,%zu,%zu,%zu", &r.x, &r.y, &r.w, &r.h) != 4 ||
        r.w == 0 || r.h == 0)
        throw UsageError("expected rectangle as x,y,w,h: " + text);
    return r;
}

Rgb parse_colour(const std::string& text) {
    Rgb c;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &c.r, &c.g, &c.b) != 3)
        throw UsageError("expected colour as r,g,b: " + text);
    return c;
}

// Region pixels in row-major order, from a rectangle or a mask PNG.
std::vector<Vec3> region_pixels(const RgbImage& img, const std::string& rect_spec,
                                const std::string& mask_path) {
    std::vector<Vec3> pixels;
    if (!mask_path.empty()) {
        const BinaryMask mask = load_mask(mask_path);
        if (mask.width() != img.width() || mask.height() != img.height())
            throw UsageError("region mask dimensions do not match the sample image");
        for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
            if (!mask.get(i)) continue;
            const double* p = img.data().data() + 3 * i;
            pixels.push_back({p[0], p[1], p[2]});
        }
    } else {
        const Rect r = parse_rect(rect_spec);
        if (r.x + r.w > img.width() || r.y + r.h > img.height())
            throw UsageError("region rectangle exceeds the image bounds");
        for (std::size_t y = r.y; y < r.y + r.h; ++y)
            for (std::size_t x = r.x; x < r.x + r.w; ++x) {
                const double* p = img.pixel(x, y);
                pixels.push_back({p[0], p[1], p[2]});
            }
    }
    return pixels;
}

// Deterministic stride subsample down to exactly 800 pixels.
std::vector<Vec3> subsample_region(const std::vector<Vec3>& pixels) {
    if (pixels.size() < FeatureMatrix::kHalf)
        throw UsageError("region too small: need at least 800 pixels, got " +
                         std::to_string(pixels.size()));
    std::vector<Vec3> out;
    out.reserve(FeatureMatrix::kHalf);
    for (std::size_t i = 0; i < FeatureMatrix::kHalf; ++i)
        out.push_back(pixels[i * pixels.size() / FeatureMatrix::kHalf]);
    return out;
}

nlohmann::json load_config_file(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("config file: ") + e.what());
    }
}

// Config-file values apply only where the flag was not given on the command
// line.
template <typename T>
void merge_option(const CLI::Option* opt, const nlohmann::json& section, const char* key,
                  T& value) {
    if (opt->count() > 0) return;
    if (section.contains(key)) value = section[key].get<T>();
}

PsoConfig pso_config_from(const CLI::App& cmd, const nlohmann::json& config) {
    PsoConfig cfg;
    const nlohmann::json section =
        config.contains("pso") ? config["pso"] : nlohmann::json::object();
    merge_option(cmd.get_option("--swarm"), section, "swarm_size", cfg.swarm_size);
    merge_option(cmd.get_option("--iterations"), section, "max_iterations", cfg.max_iterations);
    merge_option(cmd.get_option("--omega"), section, "omega", cfg.omega);
    merge_option(cmd.get_option("--c1"), section, "c1", cfg.c1);
    merge_option(cmd.get_option("--c2"), section, "c2", cfg.c2);
    merge_option(cmd.get_option("--init-min"), section, "init_min", cfg.init_min);
    merge_option(cmd.get_option("--init-max"), section, "init_max", cfg.init_max);
    merge_option(cmd.get_option("--velocity-clamp"), section, "velocity_clamp",
                 cfg.velocity_clamp);
    merge_option(cmd.get_option("--seed"), section, "seed", cfg.seed);
    return cfg;
}

PipelineConfig pipeline_config_from(const nlohmann::json& config, const std::string& matrix_path,
                                    const std::string& preset,
                                    std::optional<std::size_t> close_radius) {
    PipelineConfig cfg;
    const nlohmann::json section =
        config.contains("pipeline") ? config["pipeline"] : nlohmann::json::object();
    if (section.contains("white_threshold"))
        cfg.white_threshold = section["white_threshold"].get<double>();
    if (section.contains("stage1_gamma")) {
        const auto& g = section["stage1_gamma"];
        cfg.stage1_gamma = {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>()};
    }
    if (section.contains("stage2_gamma")) {
        const auto& g = section["stage2_gamma"];
        cfg.stage2_gamma = {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>()};
    }
    if (section.contains("morph_close"))
        cfg.morph_close_radius = section["morph_close"].get<std::size_t>();
    if (close_radius) cfg.morph_close_radius = close_radius;

    if (!matrix_path.empty()) {
        cfg.stage2_matrix = load_matrix(matrix_path);
    } else if (!preset.empty()) {
        const auto m = preset_by_name(preset);
        if (!m) throw UsageError("unknown preset '" + preset + "' (expected eq8 or eq10)");
        cfg.stage2_matrix = *m;
    }
    return cfg;
}

std::size_t default_jobs() {
    if (const char* env = std::getenv("FLAMELENS_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flamelens: colour-matrix fire-pixel detection"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)");

    // train
    auto* train = app.add_subcommand("train", "Train a conversion matrix on a sample image");
    std::string train_image, fire_rect, fire_mask, bg_rect, bg_mask, out_matrix;
    train->add_option("--image", train_image, "Sample image (PNG/JPEG)")->required();
    train->add_option("--fire", fire_rect, "Fire region rectangle x,y,w,h");
    train->add_option("--fire-mask", fire_mask, "Fire region mask PNG");
    train->add_option("--background", bg_rect, "Background region rectangle x,y,w,h");
    train->add_option("--background-mask", bg_mask, "Background region mask PNG");
    train->add_option("--out", out_matrix, "Output matrix JSON path")->required();
    PsoConfig defaults;
    std::size_t opt_swarm = defaults.swarm_size, opt_iters = defaults.max_iterations;
    double opt_omega = defaults.omega, opt_c1 = defaults.c1, opt_c2 = defaults.c2;
    double opt_init_min = defaults.init_min, opt_init_max = defaults.init_max;
    double opt_vclamp = defaults.velocity_clamp;
    std::uint64_t opt_seed = defaults.seed;
    train->add_option("--swarm", opt_swarm, "Swarm size");
    train->add_option("--iterations", opt_iters, "Maximum PSO iterations");
    train->add_option("--omega", opt_omega, "Inertia/constriction coefficient");
    train->add_option("--c1", opt_c1, "Personal acceleration coefficient");
    train->add_option("--c2", opt_c2, "Social acceleration coefficient");
    train->add_option("--init-min", opt_init_min, "Lower bound of initial matrix entries");
    train->add_option("--init-max", opt_init_max, "Upper bound of initial matrix entries");
    train->add_option("--velocity-clamp", opt_vclamp, "Per-component velocity bound");
    train->add_option("--seed", opt_seed, "RNG seed");

    // detect
    auto* detect = app.add_subcommand("detect", "Detect fire pixels in an image");
    std::string det_image, det_method = "nonlinear", det_matrix, det_preset, det_out, det_overlay;
    std::optional<std::size_t> det_close;
    detect->add_option("--image", det_image, "Input image")->required();
    detect->add_option("--method", det_method, "linear|nonlinear")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    detect->add_option("--matrix", det_matrix, "Trained matrix JSON (stage-2 matrix)");
    detect->add_option("--preset", det_preset, "Built-in matrix: eq8 or eq10");
    detect->add_option("--out", det_out, "Output mask PNG")->required();
    detect->add_option("--overlay", det_overlay, "Optional overlay PNG");
    detect->add_option("--close", det_close, "Morphological closing radius");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a detector over a manifest");
    std::string eval_manifest, eval_method = "nonlinear", eval_matrix, eval_preset, eval_report;
    std::size_t eval_jobs = default_jobs();
    std::optional<std::size_t> eval_close;
    eval->add_option("--manifest", eval_manifest, "Manifest file or dataset directory")
        ->required();
    eval->add_option("--method", eval_method, "linear|nonlinear")
        ->check(CLI::IsMember({"linear", "nonlinear"}));
    eval->add_option("--matrix", eval_matrix, "Trained matrix JSON (stage-2 matrix)");
    eval->add_option("--preset", eval_preset, "Built-in matrix: eq8 or eq10");
    eval->add_option("--report", eval_report, "JSON report output path");
    eval->add_option("--jobs", eval_jobs, "Worker count (default from FLAMELENS_JOBS)");
    eval->add_option("--close", eval_close, "Morphological closing radius");

    // overlay
    auto* over = app.add_subcommand("overlay", "Render a mask over an image");
    std::string ov_image, ov_mask, ov_out, ov_colour = "1,0,0";
    over->add_option("--image", ov_image, "Input image")->required();
    over->add_option("--mask", ov_mask, "Mask PNG")->required();
    over->add_option("--out", ov_out, "Output PNG")->required();
    over->add_option("--colour", ov_colour, "Highlight colour r,g,b in [0,1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const nlohmann::json config = load_config_file(config_path);

        if (*train) {
            if (fire_rect.empty() == fire_mask.empty())
                throw UsageError("give exactly one of --fire or --fire-mask");
            if (bg_rect.empty() == bg_mask.empty())
                throw UsageError("give exactly one of --background or --background-mask");
            const RgbImage img = load_image(train_image);
            const auto fire = subsample_region(region_pixels(img, fire_rect, fire_mask));
            const auto background = subsample_region(region_pixels(img, bg_rect, bg_mask));
            const FeatureMatrix feature = FeatureMatrix::build(fire, background);

            PsoConfig cfg = pso_config_from(*train, config);
            if (train->get_option("--swarm")->count()) cfg.swarm_size = opt_swarm;
            if (train->get_option("--iterations")->count()) cfg.max_iterations = opt_iters;
            if (train->get_option("--omega")->count()) cfg.omega = opt_omega;
            if (train->get_option("--c1")->count()) cfg.c1 = opt_c1;
            if (train->get_option("--c2")->count()) cfg.c2 = opt_c2;
            if (train->get_option("--init-min")->count()) cfg.init_min = opt_init_min;
            if (train->get_option("--init-max")->count()) cfg.init_max = opt_init_max;
            if (train->get_option("--velocity-clamp")->count()) cfg.velocity_clamp = opt_vclamp;
            if (train->get_option("--seed")->count()) cfg.seed = opt_seed;

            const PsoResult result = pso_search(feature, cfg);
            save_matrix(result.best, out_matrix);
            std::cout << "cost " << result.cost << " after " << result.iterations_used
                      << " iterations -> " << out_matrix << "\n";
        } else if (*detect) {
            const PipelineConfig cfg =
                pipeline_config_from(config, det_matrix, det_preset, det_close);
            const RgbImage img = load_image(det_image);
            const BinaryMask mask = det_method == "linear" ? detect_linear(img, cfg)
                                                           : detect_nonlinear(img, cfg);
            save_mask(mask, det_out);
            if (!det_overlay.empty())
                save_image(overlay(img, mask, Rgb{1.0, 0.0, 0.0}), det_overlay);
            const double fraction =
                mask.pixel_count() == 0
                    ? 0.0
                    : static_cast<double>(mask.popcount()) /
                          static_cast<double>(mask.pixel_count());
            std::cout << "fire pixels: " << mask.popcount() << " (" << fraction << ")\n";
        } else if (*eval) {
            const PipelineConfig cfg =
                pipeline_config_from(config, eval_matrix, eval_preset, eval_close);
            const auto pairs = load_manifest(eval_manifest);
            const DetectorKind kind =
                eval_method == "linear" ? DetectorKind::Linear : DetectorKind::Nonlinear;
            const ScoreReport report = batch_evaluate(pairs, kind, cfg, eval_jobs);
            if (!eval_report.empty()) {
                std::ofstream out(eval_report);
                if (!out) throw IoError("cannot open report path " + eval_report);
                out << report_to_json(report);
            }
            std::cout << report_to_text(report);
            if (!pairs.empty() && report.failed == pairs.size()) return kExitRuntime;
        } else if (*over) {
            const Rgb colour = parse_colour(ov_colour);
            const RgbImage img = load_image(ov_image);
            const BinaryMask mask = load_mask(ov_mask);
            save_image(overlay(img, mask, colour), ov_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
