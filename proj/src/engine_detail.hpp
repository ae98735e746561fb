#pragma once

// Shared machinery of the norm engines: ball geometry, start generation and the
// multi-start fan-out.

#include "tnl/norms.hpp"
#include "tnl/seeding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace tnl::detail {

/// Enumeration guard on the number of extreme-point tuples.
inline constexpr double kEnumerateBudget = 16777216.0;  // 2^24

inline bool is_enumerable_ball(const SequenceSpace& ball) {
  return ball.exponent().is_infinite() || ball.exponent().is_one();
}

/// Extreme points of the unit ball of `ball` (of its positive part).
inline std::vector<Vec> extreme_points(const SequenceSpace& ball, bool positive) {
  const int m = ball.dim();
  const Vec& v = ball.weights();
  std::vector<Vec> pts;
  if (ball.exponent().is_infinite()) {
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      Vec y(m);
      for (int i = 0; i < m; ++i) {
        const bool bit = (mask >> i) & 1u;
        y[i] = positive ? (bit ? 1.0 / v[i] : 0.0) : (bit ? -1.0 : 1.0) / v[i];
      }
      pts.push_back(std::move(y));
    }
  } else if (ball.exponent().is_one()) {
    for (int i = 0; i < m; ++i) {
      Vec y = Vec::Zero(m);
      y[i] = 1.0 / v[i];
      pts.push_back(y);
      if (!positive) pts.push_back(-y);
    }
  }
  return pts;
}

/// Random direction scaled onto the boundary of the unit ball.
inline Vec random_ball_point(std::mt19937_64& rng, const SequenceSpace& ball, bool positive) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec y(ball.dim());
  double n = 0.0;
  do {
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = gauss(rng);
    if (positive) y = y.cwiseAbs();
    n = norm(ball, y);
  } while (n == 0.0);
  return y / n;
}

/// Points of the grid {-1, ..., 1}^m (or {0, ..., 1}^m when positive) with
/// `levels` values per coordinate, scaled onto the ball boundary. At most
/// `budget` points, taken at a fixed stride.
inline std::vector<Vec> grid_directions(const SequenceSpace& ball, bool positive, int levels,
                                        std::size_t budget) {
  const int m = ball.dim();
  levels = std::max(levels, 2);
  double total = std::pow(static_cast<double>(levels), m);
  const auto count = static_cast<std::uint64_t>(total);
  const std::uint64_t stride =
      std::max<std::uint64_t>(1, count / std::max<std::size_t>(budget, 1));
  std::vector<Vec> out;
  for (std::uint64_t code = 0; code < count && out.size() < budget; code += stride) {
    Vec y(m);
    std::uint64_t c = code;
    for (int i = 0; i < m; ++i) {
      const double t = static_cast<double>(c % levels) / (levels - 1);
      y[i] = positive ? t : 2.0 * t - 1.0;
      c /= levels;
    }
    const double n = norm(ball, y);
    if (n == 0.0) continue;
    out.push_back(y / n);
  }
  return out;
}

inline int resolve_threads(int requested, int work) {
  int t = requested;
  if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::clamp(t, 1, std::max(work, 1));
}

/// Runs body(i) for i in [0, count) on `threads` workers; results land in
/// slot i, so the outcome does not depend on scheduling.
template <class Result, class Body>
std::vector<Result> run_indexed(int count, int threads, Body&& body) {
  std::vector<Result> results(count);
  const int workers = resolve_threads(threads, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) results[i] = body(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) results[i] = body(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

struct StartResult {
  double value = -1.0;
  std::vector<Vec> args;
  int iterations = 0;
};

/// Max by value; ties go to the lower start index.
inline std::size_t best_index(const std::vector<StartResult>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].value > results[best].value) best = i;
  }
  return best;
}

}  // namespace tnl::detail
