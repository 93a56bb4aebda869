#pragma once

#include <cstdint>
#include <vector>

#include "flamelens/clustering.hpp"
#include "flamelens/matrix.hpp"

namespace flamelens {

struct WrongCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfRangeChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 40x40 labelled training grid: rows 0-19 hold fire pixels, rows 20-39 hold
/// background pixels, 800 each, channels in [0,1].
class FeatureMatrix {
public:
    static constexpr std::size_t kSide = 40;
    static constexpr std::size_t kHalf = 800;
    static constexpr std::size_t kTotal = 1600;

    /// fire pixels fill rows 0-19 in supplied order, background rows 20-39.
    static FeatureMatrix build(const std::vector<Vec3>& fire_pixels,
                               const std::vector<Vec3>& background_pixels);

    const std::vector<Vec3>& pixels() const { return pixels_; }
    bool is_fire(std::size_t index) const { return index < kHalf; }

private:
    FeatureMatrix() = default;
    std::vector<Vec3> pixels_;  // row-major, 1600 entries
};

struct PsoConfig {
    std::size_t swarm_size = 50;
    std::size_t max_iterations = 200;
    double omega = 0.7298;
    double c1 = 1.4962;
    double c2 = 1.4962;
    double init_min = -5.0;
    double init_max = 5.0;
    double velocity_clamp = 2.0;
    std::uint64_t seed = 42;
};

struct Particle {
    ConversionMatrix position;
    std::array<std::array<double, 3>, 3> velocity{};
    ConversionMatrix personal_best_position;
    std::size_t personal_best_cost = 0;
};

struct PsoResult {
    ConversionMatrix best;
    std::size_t cost = 0;
    std::size_t iterations_used = 0;
    std::vector<std::size_t> cost_trace;  // global best per iteration, non-increasing
};

/// The canonical medoid init used for every clustering call during training:
/// grid index 0 (fire half) and grid index 800 (background half).
inline constexpr std::array<std::size_t, 2> kCanonicalInit{0, FeatureMatrix::kHalf};

/// Reference clustering of the unconverted feature pixels, computed once per
/// training run.
Assignment reference_assignment(const FeatureMatrix& feature);

/// Transformation error of a candidate matrix: converts all 1600 feature
/// pixels, reclusters with the canonical init, aligns labels to the reference
/// clustering and counts the pixels whose class changed.
std::size_t conversion_cost(const ConversionMatrix& w, const FeatureMatrix& feature,
                            const Assignment& reference);

/// One velocity/position step. randoms holds the per-component U[0,1] draws
/// r1 and r2; personal-best fields are untouched.
Particle update_particle(const Particle& p, const ConversionMatrix& global_best,
                         const PsoConfig& cfg,
                         const std::array<std::array<std::array<double, 3>, 3>, 2>& randoms);

/// Swarm search for a matrix with zero transformation error. Stops at cost 0
/// or after max_iterations. Deterministic for a fixed (feature, cfg).
PsoResult pso_search(const FeatureMatrix& feature, const PsoConfig& cfg);

}  // namespace flamelens
