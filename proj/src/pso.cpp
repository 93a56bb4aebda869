#include "flamelens/pso.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <thread>

namespace flamelens {

namespace {

// Chunked parallel index loop. Results must be written to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += workers) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

FeatureMatrix FeatureMatrix::build(const std::vector<Vec3>& fire_pixels,
                                   const std::vector<Vec3>& background_pixels) {
    if (fire_pixels.size() != kHalf)
        throw WrongCount("expected exactly 800 fire pixels, got " +
                         std::to_string(fire_pixels.size()));
    if (background_pixels.size() != kHalf)
        throw WrongCount("expected exactly 800 background pixels, got " +
                         std::to_string(background_pixels.size()));
    auto check = [](const std::vector<Vec3>& pixels) {
        for (const Vec3& p : pixels)
            for (double v : p)
                if (!(v >= 0.0 && v <= 1.0))
                    throw OutOfRangeChannel("feature pixel channel outside [0,1]");
    };
    check(fire_pixels);
    check(background_pixels);

    FeatureMatrix f;
    f.pixels_.reserve(kTotal);
    f.pixels_.insert(f.pixels_.end(), fire_pixels.begin(), fire_pixels.end());
    f.pixels_.insert(f.pixels_.end(), background_pixels.begin(), background_pixels.end());
    return f;
}

Assignment reference_assignment(const FeatureMatrix& feature) {
    return kmedoids_two(feature.pixels(), kCanonicalInit);
}

std::size_t conversion_cost(const ConversionMatrix& w, const FeatureMatrix& feature,
                            const Assignment& reference) {
    const std::vector<Vec3> converted = convert_pixels(feature.pixels(), w);
    const Assignment clustered = kmedoids_two(converted, kCanonicalInit);
    const Assignment aligned = align_labels(reference, clustered);
    return mismatch_count(reference, aligned);
}

Particle update_particle(const Particle& p, const ConversionMatrix& global_best,
                         const PsoConfig& cfg,
                         const std::array<std::array<std::array<double, 3>, 3>, 2>& randoms) {
    Particle out = p;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double r1 = randoms[0][i][j];
            const double r2 = randoms[1][i][j];
            double vel = cfg.omega * p.velocity[i][j] +
                         cfg.c1 * r1 * (p.personal_best_position.w[i][j] - p.position.w[i][j]) +
                         cfg.c2 * r2 * (global_best.w[i][j] - p.position.w[i][j]);
            vel = std::clamp(vel, -cfg.velocity_clamp, cfg.velocity_clamp);
            out.velocity[i][j] = vel;
            out.position.w[i][j] = p.position.w[i][j] + vel;
        }
    }
    return out;
}

PsoResult pso_search(const FeatureMatrix& feature, const PsoConfig& cfg) {
    if (cfg.swarm_size < 2) throw std::invalid_argument("swarm_size must be >= 2");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(cfg.velocity_clamp > 0.0))
        throw std::invalid_argument("velocity_clamp must be positive");

    const Assignment reference = reference_assignment(feature);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> init_dist(cfg.init_min, cfg.init_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Particle> swarm(cfg.swarm_size);
    for (Particle& p : swarm) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) p.position.w[i][j] = init_dist(rng);
        p.personal_best_position = p.position;
    }

    std::vector<std::size_t> costs(cfg.swarm_size);
    auto evaluate_swarm = [&] {
        parallel_for(cfg.swarm_size,
                     [&](std::size_t x) { costs[x] = conversion_cost(swarm[x].position, feature, reference); });
    };

    evaluate_swarm();
    for (std::size_t x = 0; x < cfg.swarm_size; ++x) swarm[x].personal_best_cost = costs[x];

    std::size_t best_index = 0;
    for (std::size_t x = 1; x < cfg.swarm_size; ++x)
        if (swarm[x].personal_best_cost < swarm[best_index].personal_best_cost) best_index = x;
    ConversionMatrix global_best = swarm[best_index].personal_best_position;
    std::size_t global_best_cost = swarm[best_index].personal_best_cost;

    PsoResult result;
    result.cost_trace.push_back(global_best_cost);

    std::size_t iterations = 0;
    while (global_best_cost > 0 && iterations < cfg.max_iterations) {
        // All random draws for this iteration come from the single seeded
        // stream before any particle moves, so the parallel evaluation below
        // cannot perturb the sequence.
        std::vector<std::array<std::array<std::array<double, 3>, 3>, 2>> randoms(cfg.swarm_size);
        for (auto& r : randoms)
            for (int which = 0; which < 2; ++which)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) r[which][i][j] = unit(rng);

        for (std::size_t x = 0; x < cfg.swarm_size; ++x)
            swarm[x] = update_particle(swarm[x], global_best, cfg, randoms[x]);

        evaluate_swarm();
        for (std::size_t x = 0; x < cfg.swarm_size; ++x) {
            if (costs[x] < swarm[x].personal_best_cost) {
                swarm[x].personal_best_cost = costs[x];
                swarm[x].personal_best_position = swarm[x].position;
            }
            if (swarm[x].personal_best_cost < global_best_cost) {
                global_best_cost = swarm[x].personal_best_cost;
                global_best = swarm[x].personal_best_position;
            }
        }

        ++iterations;
        result.cost_trace.push_back(global_best_cost);
    }

    result.best = global_best;
    result.cost = global_best_cost;
    result.iterations_used = iterations;
    return result;
}

}  // namespace flamelens
