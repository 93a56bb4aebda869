#include "flamelens/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "flamelens/codec.hpp"

namespace flamelens {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth) {
    if (pred.width() != truth.width() || pred.height() != truth.height())
        throw DimensionMismatch("confusion: mask dimensions differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        const bool p = pred.get(i), t = truth.get(i);
        if (p && t)
            ++c.tp;
        else if (p && !t)
            ++c.fp;
        else if (!p && t)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

Metrics metrics(const ConfusionCounts& c) {
    Metrics m;
    if (c.fp + c.tn > 0) m.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
    if (c.fn + c.tp > 0) m.fnr = static_cast<double>(c.fn) / static_cast<double>(c.fn + c.tp);
    if (2 * c.tp + c.fp + c.fn > 0)
        m.fscore = static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
    return m;
}

ScoreReport batch_evaluate(const std::vector<EvalPair>& pairs, DetectorKind detector,
                           const PipelineConfig& cfg, std::size_t jobs) {
    ScoreReport report;
    report.per_image.resize(pairs.size());

    auto run_one = [&](std::size_t i) {
        PairResult& r = report.per_image[i];
        r.pair = pairs[i];
        try {
            const RgbImage img = load_image(pairs[i].image_path);
            const BinaryMask truth = load_mask(pairs[i].mask_path);
            if (img.width() != truth.width() || img.height() != truth.height())
                throw DimensionMismatch("image and truth mask dimensions differ");
            const BinaryMask pred = detector == DetectorKind::Linear
                                        ? detect_linear(img, cfg)
                                        : detect_nonlinear(img, cfg);
            r.counts = confusion(pred, truth);
            r.per_image = metrics(*r.counts);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, pairs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < pairs.size(); i += workers) run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    for (const PairResult& r : report.per_image) {
        if (r.counts)
            report.aggregate += *r.counts;
        else
            ++report.failed;
    }
    report.pooled = metrics(report.aggregate);
    return report;
}

std::vector<EvalPair> load_manifest(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::vector<EvalPair> pairs;

    if (fs::is_directory(path)) {
        const fs::path frames = path / "frames";
        const fs::path masks = path / "masks";
        if (!fs::is_directory(frames) || !fs::is_directory(masks))
            throw IoError("directory manifest needs frames/ and masks/ under " + path.string());
        std::vector<fs::path> names;
        for (const auto& entry : fs::directory_iterator(frames))
            if (entry.is_regular_file()) names.push_back(entry.path().filename());
        std::sort(names.begin(), names.end());
        for (const auto& name : names) pairs.push_back({frames / name, masks / name});
        return pairs;
    }

    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    const fs::path base = path.parent_path();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("manifest line missing tab separator: " + line);
        fs::path img = line.substr(0, tab);
        fs::path mask = line.substr(tab + 1);
        if (img.is_relative()) img = base / img;
        if (mask.is_relative()) mask = base / mask;
        pairs.push_back({img, mask});
    }
    return pairs;
}

namespace {

nlohmann::json metric_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::string metric_text(const std::optional<double>& v) {
    if (!v) return "n/a";
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << *v;
    return out.str();
}

}  // namespace

std::string report_to_json(const ScoreReport& report) {
    nlohmann::json per_image = nlohmann::json::array();
    for (const PairResult& r : report.per_image) {
        nlohmann::json entry{{"image", r.pair.image_path.string()},
                             {"mask", r.pair.mask_path.string()}};
        if (r.counts) {
            entry["counts"] = {{"tp", r.counts->tp},
                               {"fp", r.counts->fp},
                               {"tn", r.counts->tn},
                               {"fn", r.counts->fn}};
            entry["fpr"] = metric_json(r.per_image.fpr);
            entry["fnr"] = metric_json(r.per_image.fnr);
            entry["fscore"] = metric_json(r.per_image.fscore);
        } else {
            entry["error"] = r.error;
        }
        per_image.push_back(std::move(entry));
    }
    nlohmann::json doc{
        {"per_image", per_image},
        {"aggregate",
         {{"tp", report.aggregate.tp},
          {"fp", report.aggregate.fp},
          {"tn", report.aggregate.tn},
          {"fn", report.aggregate.fn}}},
        {"pooled",
         {{"fpr", metric_json(report.pooled.fpr)},
          {"fnr", metric_json(report.pooled.fnr)},
          {"fscore", metric_json(report.pooled.fscore)}}},
        {"failed", report.failed}};
    return doc.dump(2) + "\n";
}

std::string report_to_text(const ScoreReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(32) << "image" << std::right << std::setw(10) << "fpr"
        << std::setw(10) << "fnr" << std::setw(10) << "fscore" << "\n";
    for (const PairResult& r : report.per_image) {
        out << std::left << std::setw(32) << r.pair.image_path.filename().string();
        if (r.counts) {
            out << std::right << std::setw(10) << metric_text(r.per_image.fpr) << std::setw(10)
                << metric_text(r.per_image.fnr) << std::setw(10)
                << metric_text(r.per_image.fscore) << "\n";
        } else {
            out << "  ERROR: " << r.error << "\n";
        }
    }
    out << std::left << std::setw(32) << "POOLED" << std::right << std::setw(10)
        << metric_text(report.pooled.fpr) << std::setw(10) << metric_text(report.pooled.fnr)
        << std::setw(10) << metric_text(report.pooled.fscore) << "\n";
    if (report.failed > 0) out << report.failed << " pair(s) failed\n";
    return out.str();
}

}  // namespace flamelens
