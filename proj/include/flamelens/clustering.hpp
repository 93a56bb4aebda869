#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace flamelens {

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec3 = std::array<double, 3>;

/// Two-class clustering result. Labels are 1 or 2; each medoid index refers
/// into the clustered point list.
struct Assignment {
    std::vector<int> labels;               // per point, in {1,2}
    std::array<std::size_t, 2> medoids{};  // medoids[0] serves class 1
    double total_cost = 0.0;               // summed L1 to the assigned medoid
};

/// Component-wise absolute difference, summed.
double l1_distance(const Vec3& a, const Vec3& b);

/// Two-class K-medoids under L1 distance.
///
/// Alternates nearest-medoid assignment (ties to class 1) and in-class medoid
/// update (ties to the lowest point index) until the labels stop changing or
/// 100 sweeps elapse. When every point collapses onto both medoids the
/// nearest-medoid tie rule sends all points to class 1.
Assignment kmedoids_two(const std::vector<Vec3>& points, std::array<std::size_t, 2> init,
                        std::vector<double>* sweep_costs = nullptr);

/// Exhaustive oracle: tries every medoid pair, keeps the global minimum cost
/// (ties to the lexicographically smallest pair). Limited to 12 points.
Assignment brute_force_two(const std::vector<Vec3>& points);

/// Returns candidate with its two labels possibly swapped, in the orientation
/// that disagrees with reference on the fewest points (ties keep the original
/// orientation).
Assignment align_labels(const Assignment& reference, const Assignment& candidate);

/// Count of points whose label differs between two equal-length assignments.
std::size_t mismatch_count(const Assignment& a, const Assignment& b);

}  // namespace flamelens
