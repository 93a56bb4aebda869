#include <doctest.h>

#include <random>

#include "flamelens/clustering.hpp"
#include "fixtures.hpp"

using namespace flamelens;

TEST_CASE("l1_distance") {
    CHECK(l1_distance({0, 0, 0}, {0, 0, 0}) == 0.0);
    CHECK(l1_distance({1, 0, 0}, {0, 1, 0}) == 2.0);
    CHECK(l1_distance({0.2, 0.5, 0.9}, {0.1, 0.7, 0.4}) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("kmedoids_two on tiny inputs") {
    SUBCASE("two points are their own medoids") {
        const Assignment a = kmedoids_two({{0, 0, 0}, {1, 1, 1}}, {0, 1});
        CHECK(a.labels == std::vector<int>{1, 2});
        CHECK(a.total_cost == 0.0);
    }
    SUBCASE("two tight pairs split cleanly") {
        const std::vector<Vec3> points{{0, 0, 0}, {0.1, 0, 0}, {1, 1, 1}, {0.9, 1, 1}};
        const Assignment a = kmedoids_two(points, {0, 2});
        CHECK(a.labels == std::vector<int>{1, 1, 2, 2});
        const Assignment oracle = brute_force_two(points);
        CHECK(a.total_cost == doctest::Approx(oracle.total_cost).epsilon(1e-12));
        CHECK(mismatch_count(oracle, align_labels(oracle, a)) == 0);
    }
    SUBCASE("all points identical collapse to class 1") {
        const std::vector<Vec3> points(5, Vec3{0.3, 0.3, 0.3});
        const Assignment a = kmedoids_two(points, {0, 1});
        CHECK(a.total_cost == 0.0);
        for (int label : a.labels) CHECK(label == 1);
    }
    SUBCASE("fewer than two points is degenerate") {
        CHECK_THROWS_AS(kmedoids_two({{0, 0, 0}}, {0, 0}), DegenerateInput);
    }
}

TEST_CASE("brute_force_two") {
    SUBCASE("two points cost zero") {
        CHECK(brute_force_two({{0, 0, 0}, {1, 1, 1}}).total_cost == 0.0);
    }
    SUBCASE("three collinear points: middle joins the nearer extreme") {
        const std::vector<Vec3> points{{0, 0, 0}, {0.5, 0.5, 0.5}, {1, 1, 1}};
        const Assignment a = brute_force_two(points);
        // all medoid pairs tie at cost 1.5; lexicographically smallest pair wins
        CHECK(a.medoids == std::array<std::size_t, 2>{0, 1});
        CHECK(a.total_cost == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(a.labels[2] == 2);
    }
    SUBCASE("rejects more than 12 points") {
        CHECK_THROWS_AS(brute_force_two(std::vector<Vec3>(13)), TooLarge);
    }
}

TEST_CASE("align_labels picks the better orientation") {
    const Assignment reference{{1, 1, 2, 2}, {0, 2}, 0.0};

    SUBCASE("identical candidate is untouched") {
        const Assignment out = align_labels(reference, reference);
        CHECK(out.labels == reference.labels);
        CHECK(mismatch_count(reference, out) == 0);
    }
    SUBCASE("fully flipped candidate is swapped back") {
        const Assignment flipped{{2, 2, 1, 1}, {2, 0}, 0.0};
        const Assignment out = align_labels(reference, flipped);
        CHECK(mismatch_count(reference, out) == 0);
    }
    SUBCASE("majority disagreement triggers the swap") {
        const Assignment candidate{{2, 2, 2, 1}, {2, 0}, 0.0};
        const Assignment out = align_labels(reference, candidate);
        CHECK(out.labels == std::vector<int>{1, 1, 1, 2});
        CHECK(mismatch_count(reference, out) == 1);
    }
    SUBCASE("length mismatch throws") {
        const Assignment shorter{{1, 2}, {0, 1}, 0.0};
        CHECK_THROWS_AS(align_labels(reference, shorter), LengthMismatch);
    }
}

TEST_CASE("align_labels never increases the mismatch count") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        Assignment a{{}, {0, 1}, 0.0}, b{{}, {0, 1}, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            a.labels.push_back(1 + static_cast<int>(rng() % 2));
            b.labels.push_back(1 + static_cast<int>(rng() % 2));
        }
        const std::size_t direct = mismatch_count(a, b);
        const std::size_t aligned = mismatch_count(a, align_labels(a, b));
        CHECK(aligned <= direct);
        CHECK(aligned <= n - direct);
    }
}

TEST_CASE("kmedoids sweep cost is non-increasing") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto points = fixtures::random_points(rng, 2 + rng() % 30);
        std::vector<double> sweep_costs;
        kmedoids_two(points, {0, 1}, &sweep_costs);
        for (std::size_t i = 1; i < sweep_costs.size(); ++i)
            CHECK(sweep_costs[i] <= sweep_costs[i - 1] + 1e-9);
    }
}

TEST_CASE("uniform positive scaling preserves the partition") {
    std::mt19937_64 rng(29);
    // power-of-two scales multiply exactly, so every distance comparison is
    // reproduced bit-for-bit
    const double scales[]{0.25, 0.5, 2.0, 4.0, 8.0};
    for (int trial = 0; trial < 50; ++trial) {
        const auto points = fixtures::random_points(rng, 2 + rng() % 20);
        const double s = scales[rng() % 5];
        std::vector<Vec3> scaled = points;
        for (Vec3& p : scaled)
            for (double& v : p) v *= s;
        CHECK(kmedoids_two(points, {0, 1}).labels == kmedoids_two(scaled, {0, 1}).labels);
    }
}

TEST_CASE("kmedoids never beats the exhaustive oracle and usually matches it") {
    std::mt19937_64 rng(31);
    int optimal = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + rng() % 9;  // up to 10 points
        const auto points = fixtures::random_points(rng, n);
        const Assignment oracle = brute_force_two(points);

        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                best = std::min(best, kmedoids_two(points, {i, j}).total_cost);

        CHECK(best >= oracle.total_cost - 1e-9);
        if (best <= oracle.total_cost + 1e-9) ++optimal;
    }
    CHECK(optimal >= trials * 9 / 10);
}
