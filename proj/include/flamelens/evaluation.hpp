#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flamelens/image.hpp"
#include "flamelens/pipeline.hpp"

namespace flamelens {

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& other) {
        tp += other.tp;
        fp += other.fp;
        tn += other.tn;
        fn += other.fn;
        return *this;
    }
};

/// FPR / FNR / F-score; a metric with a zero denominator is reported as
/// empty ("n/a"), never silently zero.
struct Metrics {
    std::optional<double> fpr;
    std::optional<double> fnr;
    std::optional<double> fscore;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth);
Metrics metrics(const ConfusionCounts& c);

enum class DetectorKind { Linear, Nonlinear };

struct EvalPair {
    std::filesystem::path image_path;
    std::filesystem::path mask_path;
};

struct PairResult {
    EvalPair pair;
    std::optional<ConfusionCounts> counts;  // empty when the pair failed
    Metrics per_image;
    std::string error;  // non-empty when counts is empty
};

struct ScoreReport {
    std::vector<PairResult> per_image;
    ConfusionCounts aggregate;
    Metrics pooled;
    std::size_t failed = 0;
};

/// Runs the chosen detector over every pair and accumulates confusion counts.
/// Per-pair failures are recorded in the report and evaluation continues.
/// Results follow pair order regardless of worker scheduling.
ScoreReport batch_evaluate(const std::vector<EvalPair>& pairs, DetectorKind detector,
                           const PipelineConfig& cfg, std::size_t jobs = 1);

/// Manifest: one `image_path<TAB>mask_path` line per pair; relative paths
/// resolve against the manifest directory. Alternatively a directory with
/// frames/NAME.png + masks/NAME.png.
std::vector<EvalPair> load_manifest(const std::filesystem::path& path);

std::string report_to_json(const ScoreReport& report);
std::string report_to_text(const ScoreReport& report);

}  // namespace flamelens
