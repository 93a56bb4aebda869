#include "flamelens/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace flamelens {

double l1_distance(const Vec3& a, const Vec3& b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

namespace {

// Nearest-medoid labels, ties to class 1.
std::vector<int> assign_nearest(const std::vector<Vec3>& points,
                                const std::array<std::size_t, 2>& medoids) {
    std::vector<int> labels(points.size());
    const Vec3& m1 = points[medoids[0]];
    const Vec3& m2 = points[medoids[1]];
    for (std::size_t i = 0; i < points.size(); ++i)
        labels[i] = l1_distance(points[i], m1) <= l1_distance(points[i], m2) ? 1 : 2;
    return labels;
}

double assignment_cost(const std::vector<Vec3>& points, const std::vector<int>& labels,
                       const std::array<std::size_t, 2>& medoids) {
    double cost = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        cost += l1_distance(points[i], points[medoids[labels[i] - 1]]);
    return cost;
}

// Best in-class medoid under summed L1 distance, ties to the lowest index.
// Summed L1 separates per component, so each component is scored against a
// sorted copy with prefix sums instead of the quadratic scan.
std::size_t best_medoid(const std::vector<Vec3>& points, const std::vector<std::size_t>& members) {
    const std::size_t n = members.size();
    std::array<std::vector<double>, 3> sorted;
    std::array<std::vector<double>, 3> prefix;
    for (int k = 0; k < 3; ++k) {
        sorted[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) sorted[k][i] = points[members[i]][k];
        std::sort(sorted[k].begin(), sorted[k].end());
        prefix[k].resize(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) prefix[k][i + 1] = prefix[k][i] + sorted[k][i];
    }
    auto component_sum = [&](int k, double x) {
        // sum over members of |v - x|
        const auto& s = sorted[k];
        const auto& p = prefix[k];
        const std::size_t below =
            static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin());
        const double left = x * static_cast<double>(below) - p[below];
        const double right = (p[n] - p[below]) - x * static_cast<double>(n - below);
        return left + right;
    };
    std::size_t best = members[0];
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t idx : members) {
        double cost = 0.0;
        for (int k = 0; k < 3; ++k) cost += component_sum(k, points[idx][k]);
        if (cost < best_cost || (cost == best_cost && idx < best)) {
            best_cost = cost;
            best = idx;
        }
    }
    return best;
}

}  // namespace

Assignment kmedoids_two(const std::vector<Vec3>& points, std::array<std::size_t, 2> init,
                        std::vector<double>* sweep_costs) {
    if (points.size() < 2) throw DegenerateInput("kmedoids_two needs at least 2 points");
    if (init[0] >= points.size() || init[1] >= points.size() || init[0] == init[1])
        throw std::invalid_argument("kmedoids_two: invalid initial medoid indices");

    std::array<std::size_t, 2> medoids = init;
    std::vector<int> labels = assign_nearest(points, medoids);
    if (sweep_costs) sweep_costs->push_back(assignment_cost(points, labels, medoids));

    for (int sweep = 0; sweep < 100; ++sweep) {
        std::array<std::vector<std::size_t>, 2> members;
        for (std::size_t i = 0; i < points.size(); ++i)
            members[static_cast<std::size_t>(labels[i] - 1)].push_back(i);
        for (int c = 0; c < 2; ++c)
            if (!members[c].empty()) medoids[c] = best_medoid(points, members[c]);

        std::vector<int> next = assign_nearest(points, medoids);
        if (sweep_costs) sweep_costs->push_back(assignment_cost(points, next, medoids));
        if (next == labels) break;
        labels = std::move(next);
    }

    return Assignment{labels, medoids, assignment_cost(points, labels, medoids)};
}

Assignment brute_force_two(const std::vector<Vec3>& points) {
    if (points.size() < 2) throw DegenerateInput("brute_force_two needs at least 2 points");
    if (points.size() > 12) throw TooLarge("brute_force_two limited to 12 points");

    Assignment best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            std::array<std::size_t, 2> medoids{i, j};
            std::vector<int> labels = assign_nearest(points, medoids);
            const double cost = assignment_cost(points, labels, medoids);
            if (cost < best_cost) {
                best_cost = cost;
                best = Assignment{std::move(labels), medoids, cost};
            }
        }
    }
    return best;
}

std::size_t mismatch_count(const Assignment& a, const Assignment& b) {
    if (a.labels.size() != b.labels.size())
        throw LengthMismatch("assignments cover different point counts");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.labels.size(); ++i)
        if (a.labels[i] != b.labels[i]) ++n;
    return n;
}

Assignment align_labels(const Assignment& reference, const Assignment& candidate) {
    if (reference.labels.size() != candidate.labels.size())
        throw LengthMismatch("assignments cover different point counts");
    std::size_t direct = 0, swapped = 0;
    for (std::size_t i = 0; i < reference.labels.size(); ++i) {
        if (reference.labels[i] != candidate.labels[i])
            ++direct;
        else
            ++swapped;
    }
    if (direct <= swapped) return candidate;

    Assignment out = candidate;
    for (int& label : out.labels) label = 3 - label;
    std::swap(out.medoids[0], out.medoids[1]);
    return out;
}

}  // namespace flamelens
