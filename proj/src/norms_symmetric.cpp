#include "engine_detail.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace tnl {

namespace {

using detail::StartResult;

bool svd_applicable(const SymmetricTensor& u) {
  return u.order() == 2 && u.space().exponent().is_two() && u.space().unit_weights();
}

Eigen::MatrixXd as_matrix(const SymmetricTensor& u) {
  const int m = u.dim();
  using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajorMatrix>(u.full().coeffs().data(), m, m);
}

NormEstimate finish(const SymmetricTensor& u, Vec x, Method method, Rigor rigor) {
  NormEstimate est;
  est.value = std::abs(evaluate_polynomial(u, x));
  est.certificates = {std::move(x)};
  est.method = method;
  est.rigor = rigor;
  return est;
}

Vec project_to_ball(Vec x, const SequenceSpace& ball, bool positive) {
  if (positive) x = x.cwiseMax(0.0);
  const Vec& v = ball.weights();
  const Exponent q = ball.exponent();
  if (q.is_infinite()) {
    const Vec bound = v.cwiseInverse();
    return x.cwiseMax(-bound).cwiseMin(bound);
  }
  if (q.is_one()) {
    if (v.dot(x.cwiseAbs()) <= 1.0) return x;
    // soft-threshold |x_i| - lambda v_i; bisection on lambda for sum v_i |x_i| = 1
    double lo = 0.0;
    double hi = x.cwiseAbs().cwiseQuotient(v).maxCoeff();
    auto shrink = [&](double lambda) {
      return (x.cwiseAbs() - lambda * v).cwiseMax(0.0).eval();
    };
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (v.dot(shrink(mid)) > 1.0 ? lo : hi) = mid;
    }
    return shrink(hi).cwiseProduct(x.unaryExpr([](double a) { return a < 0.0 ? -1.0 : 1.0; }));
  }
  const double n = norm(ball, x);
  return n > 1.0 ? Vec(x / n) : x;
}

// Projected gradient ascent on sigma * P over the ball, with a linear-maximizer
// step as a second candidate; a step is taken only when it improves.
StartResult sym_ascend(const SymmetricTensor& u, const SequenceSpace& ball, bool positive,
                       double sigma, const Vec& start, const EngineConfig& config) {
  Vec x = project_to_ball(start, ball, positive);
  double f = sigma * evaluate_polynomial(u, x);
  double step = 1.0;
  int stall = 0;
  int it = 0;
  const int max_iters = 4 * config.max_sweeps;
  for (; it < max_iters && stall < 2; ++it) {
    const Vec g = sigma * polynomial_gradient(u, x);
    double best_f = f;
    Vec best_x;

    const LinearMax lm = linear_max_over_ball(g, ball, positive);
    const double f_lin = sigma * evaluate_polynomial(u, lm.attainer);
    if (f_lin > best_f) {
      best_f = f_lin;
      best_x = lm.attainer;
    }

    double t = step;
    for (int tries = 0; tries < 60; ++tries, t *= 0.5) {
      Vec y = project_to_ball(x + t * g, ball, positive);
      const double fy = sigma * evaluate_polynomial(u, y);
      if (fy > f) {
        if (fy > best_f) {
          best_f = fy;
          best_x = std::move(y);
        }
        step = std::min(2.0 * t, 1e6);
        break;
      }
    }
    if (best_x.size() == 0) break;
    stall = best_f - f < config.stall_tol ? stall + 1 : 0;
    f = best_f;
    x = std::move(best_x);
  }
  StartResult r;
  r.value = std::abs(evaluate_polynomial(u, x));
  r.args = {std::move(x)};
  r.iterations = it;
  return r;
}

std::vector<double> signs_for(const SymmetricTensor& u, bool positive) {
  if (positive || u.order() % 2 == 1) return {1.0};
  return {1.0, -1.0};
}

StartResult best_from_starts(const SymmetricTensor& u, const SequenceSpace& ball, bool positive,
                             const std::vector<Vec>& starts, const EngineConfig& config) {
  const std::vector<double> sigmas = signs_for(u, positive);
  const int runs = static_cast<int>(starts.size() * sigmas.size());
  auto results = detail::run_indexed<StartResult>(runs, config.threads, [&](int r) {
    return sym_ascend(u, ball, positive, sigmas[r % sigmas.size()], starts[r / sigmas.size()],
                      config);
  });
  StartResult best = results[detail::best_index(results)];
  best.iterations = 0;
  for (const auto& r : results) best.iterations += r.iterations;
  return best;
}

std::vector<Vec> random_starts(const SequenceSpace& ball, bool positive,
                               const EngineConfig& config) {
  const int starts = std::max(config.starts, 1);
  const bool has_extreme = detail::is_enumerable_ball(ball);
  const std::vector<Vec> pts = has_extreme ? detail::extreme_points(ball, positive)
                                           : std::vector<Vec>{};
  std::vector<Vec> out;
  out.reserve(starts);
  for (int s = 0; s < starts; ++s) {
    std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(s)));
    if (has_extreme && s < starts / 2) {
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      out.push_back(pts[pick(rng)]);
    } else {
      out.push_back(detail::random_ball_point(rng, ball, positive));
    }
  }
  return out;
}

NormEstimate alternating_sym(const SymmetricTensor& u, const SequenceSpace& ball, bool positive,
                             const EngineConfig& config) {
  StartResult best = best_from_starts(u, ball, positive, random_starts(ball, positive, config),
                                      config);
  NormEstimate est = finish(u, best.args.front(), Method::alternating, Rigor::lower_bound);
  est.starts = std::max(config.starts, 1);
  est.iterations = best.iterations;
  return est;
}

NormEstimate grid_sym(const SymmetricTensor& u, const SequenceSpace& ball, bool positive,
                      const EngineConfig& config) {
  NormEstimate first = alternating_sym(u, ball, positive, config);
  const std::vector<Vec> seeds = detail::grid_directions(ball, positive, config.grid_points, 256);
  NormEstimate est = first;
  double second = 0.0;
  int iterations = first.iterations;
  if (!seeds.empty()) {
    StartResult best = best_from_starts(u, ball, positive, seeds, config);
    second = best.value;
    iterations += best.iterations;
    if (second > first.value) est = finish(u, best.args.front(), Method::grid, Rigor::approx);
  }
  est.method = Method::grid;
  est.rigor = Rigor::approx;
  est.gap = std::abs(first.value - second);
  est.starts = first.starts + static_cast<int>(seeds.size());
  est.iterations = iterations;
  return est;
}

NormEstimate svd_sym(const SymmetricTensor& u, bool positive) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(as_matrix(u));
  const auto& values = eig.eigenvalues();
  const Eigen::Index last = values.size() - 1;
  Eigen::Index pick = last;
  if (!positive && std::abs(values[0]) > std::abs(values[last])) pick = 0;
  Vec x = eig.eigenvectors().col(pick);
  // Perron: the modulus of the top eigenvector of a nonnegative matrix attains it
  if (positive) x = x.cwiseAbs();
  NormEstimate est = finish(u, std::move(x), Method::svd, Rigor::exact);
  est.iterations = 1;
  return est;
}

// sup |x^T A x| over the box |x_i| <= b_i. The optimum lies in the relative
// interior of some face where the free block is stationary; faces with a
// singular free block carry their optimum on a smaller face as well.
NormEstimate quadratic_box(const SymmetricTensor& u, const SequenceSpace& ball) {
  const int m = u.dim();
  const Eigen::MatrixXd a = as_matrix(u);
  const Vec bound = ball.weights().cwiseInverse();
  double best = -1.0;
  Vec best_x = Vec::Zero(m);
  std::vector<int> state(m, 0);  // 0 free, 1 at +b, 2 at -b
  const long faces = static_cast<long>(std::pow(3.0, m));
  for (long code = 0; code < faces; ++code) {
    long c = code;
    std::vector<int> free_idx;
    Vec x = Vec::Zero(m);
    for (int i = 0; i < m; ++i) {
      state[i] = static_cast<int>(c % 3);
      c /= 3;
      if (state[i] == 0) {
        free_idx.push_back(i);
      } else {
        x[i] = state[i] == 1 ? bound[i] : -bound[i];
      }
    }
    if (!free_idx.empty()) {
      const int f = static_cast<int>(free_idx.size());
      Eigen::MatrixXd aff(f, f);
      Vec rhs(f);
      for (int r = 0; r < f; ++r) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
          if (state[j] != 0) s += a(free_idx[r], j) * x[j];
        }
        rhs[r] = -s;
        for (int col = 0; col < f; ++col) aff(r, col) = a(free_idx[r], free_idx[col]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(aff);
      if (!lu.isInvertible()) continue;
      const Vec xf = lu.solve(rhs);
      bool feasible = true;
      for (int r = 0; r < f; ++r) {
        const int i = free_idx[r];
        if (std::abs(xf[r]) > bound[i] * (1.0 + 1e-12)) feasible = false;
        x[i] = std::clamp(xf[r], -bound[i], bound[i]);
      }
      if (!feasible) continue;
    }
    const double value = std::abs(x.dot(a * x));
    if (value > best) {
      best = value;
      best_x = x;
    }
  }
  NormEstimate est = finish(u, std::move(best_x), Method::enumerate, Rigor::exact);
  est.iterations = static_cast<int>(faces);
  return est;
}

// sup |x^T A x| over sum v_i |x_i| <= 1 (positive part when `positive`). On the
// face with support S and signs s, x_i = s_i t_i / v_i with t in the simplex;
// stationary points solve the bordered system [C 1; 1^T 0].
NormEstimate quadratic_cross_polytope(const SymmetricTensor& u, const SequenceSpace& ball,
                                      bool positive) {
  const int m = u.dim();
  const Eigen::MatrixXd a = as_matrix(u);
  const Vec& v = ball.weights();
  double best = -1.0;
  Vec best_x = Vec::Zero(m);
  const int base = positive ? 2 : 3;
  const long faces = static_cast<long>(std::pow(static_cast<double>(base), m));
  for (long code = 1; code < faces; ++code) {
    long c = code;
    std::vector<int> support;
    std::vector<double> sign;
    for (int i = 0; i < m; ++i) {
      const int s = static_cast<int>(c % base);
      c /= base;
      if (s == 0) continue;
      support.push_back(i);
      sign.push_back(s == 1 ? 1.0 : -1.0);
    }
    const int k = static_cast<int>(support.size());
    Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int r = 0; r < k; ++r) {
      for (int col = 0; col < k; ++col) {
        bordered(r, col) = a(support[r], support[col]) * sign[r] * sign[col] /
                           (v[support[r]] * v[support[col]]);
      }
      bordered(r, k) = 1.0;
      bordered(k, r) = 1.0;
    }
    Vec rhs = Vec::Zero(k + 1);
    rhs[k] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bordered);
    if (!lu.isInvertible()) continue;
    Vec t = lu.solve(rhs).head(k);
    if ((t.array() < -1e-12).any()) continue;
    t = t.cwiseMax(0.0);
    t /= t.sum();
    Vec x = Vec::Zero(m);
    for (int r = 0; r < k; ++r) x[support[r]] = sign[r] * t[r] / v[support[r]];
    const double value = std::abs(x.dot(a * x));
    if (value > best) {
      best = value;
      best_x = x;
    }
  }
  NormEstimate est = finish(u, std::move(best_x), Method::enumerate, Rigor::exact);
  est.iterations = static_cast<int>(faces);
  return est;
}

// Candidate points: {-b, 0, b}^m for the box, +-e_i / v_i for the cross-polytope
// (positive parts when `positive`).
std::vector<Vec> symmetric_candidates(const SequenceSpace& ball, bool positive) {
  const int m = ball.dim();
  if (ball.exponent().is_one()) return detail::extreme_points(ball, positive);
  const Vec bound = ball.weights().cwiseInverse();
  const int base = positive ? 2 : 3;
  const long count = static_cast<long>(std::pow(static_cast<double>(base), m));
  std::vector<Vec> out;
  out.reserve(count);
  for (long code = 0; code < count; ++code) {
    long c = code;
    Vec x(m);
    for (int i = 0; i < m; ++i) {
      const int s = static_cast<int>(c % base);
      c /= base;
      x[i] = s == 0 ? 0.0 : (s == 1 ? bound[i] : -bound[i]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

NormEstimate best_candidate(const SymmetricTensor& u, const std::vector<Vec>& candidates,
                            Rigor rigor) {
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double value = std::abs(evaluate_polynomial(u, candidates[i]));
    if (value > best) {
      best = value;
      best_i = i;
    }
  }
  NormEstimate est = finish(u, candidates[best_i], Method::enumerate, rigor);
  est.iterations = static_cast<int>(candidates.size());
  return est;
}

NormEstimate enumerate_sym(const SymmetricTensor& u, const SequenceSpace& ball, bool positive,
                           const EngineConfig& config) {
  const int n = u.order();
  if (n == 1) {
    const LinearMax lm = linear_max_over_ball(u.full().coeffs(), ball, positive);
    return finish(u, lm.attainer, Method::enumerate, Rigor::exact);
  }
  if (!detail::is_enumerable_ball(ball)) {
    throw IncompatibleMethod("enumerate needs dual exponent 1 or inf");
  }
  const bool box = ball.exponent().is_infinite();
  if (positive && box) {
    // the polynomial of a positive tensor is monotone on the positive orthant
    return finish(u, ball.weights().cwiseInverse(), Method::enumerate, Rigor::exact);
  }
  if (n == 2) return box ? quadratic_box(u, ball) : quadratic_cross_polytope(u, ball, positive);
  if (u.is_diagonal()) {
    // separable sum_i a_i x_i^n: optimum at a candidate point in both geometries
    return best_candidate(u, symmetric_candidates(ball, positive), Rigor::exact);
  }
  // no certificate for higher-order non-diagonal forms: candidates polished by ascent
  std::vector<Vec> candidates = symmetric_candidates(ball, positive);
  NormEstimate est = best_candidate(u, candidates, Rigor::lower_bound);
  std::vector<Vec> starts = random_starts(ball, positive, config);
  starts.push_back(est.certificates.front());
  const StartResult polished = best_from_starts(u, ball, positive, starts, config);
  if (polished.value > est.value) {
    const int iterations = est.iterations;
    est = finish(u, polished.args.front(), Method::enumerate, Rigor::lower_bound);
    est.iterations = iterations;
  }
  est.iterations += polished.iterations;
  est.starts = static_cast<int>(starts.size());
  return est;
}

NormEstimate sym_engine(const SymmetricTensor& u, bool positive, const EngineConfig& config) {
  const SequenceSpace ball = dual_of(u.space());
  Method method = config.method;
  if (method == Method::automatic) {
    if (u.order() == 1) {
      method = Method::enumerate;
    } else if (svd_applicable(u)) {
      method = Method::svd;
    } else if (detail::is_enumerable_ball(ball)) {
      method = Method::enumerate;
    } else {
      method = Method::alternating;
    }
  }
  switch (method) {
    case Method::enumerate:
      return enumerate_sym(u, ball, positive, config);
    case Method::svd:
      if (!svd_applicable(u)) throw IncompatibleMethod("svd needs order 2, p = 2 and unit weights");
      return svd_sym(u, positive);
    case Method::alternating:
      return alternating_sym(u, ball, positive, config);
    case Method::grid:
      return grid_sym(u, ball, positive, config);
    case Method::automatic:
      break;
  }
  throw IncompatibleMethod("unresolved method");
}

}  // namespace

bool has_exact_symmetric(const SymmetricTensor& u) {
  if (u.order() == 1 || svd_applicable(u)) return true;
  const SequenceSpace ball = dual_of(u.space());
  return detail::is_enumerable_ball(ball) && (u.order() == 2 || u.is_diagonal());
}

bool has_exact_positive_symmetric(const SymmetricTensor& u) {
  if (u.order() == 1 || svd_applicable(u)) return true;
  const SequenceSpace ball = dual_of(u.space());
  if (ball.exponent().is_infinite()) return true;
  return ball.exponent().is_one() && (u.order() == 2 || u.is_diagonal());
}

NormEstimate sym_injective_norm(const SymmetricTensor& u, const EngineConfig& config) {
  return sym_engine(u, false, config);
}

NormEstimate positive_sym_injective_norm(const SymmetricTensor& u, const EngineConfig& config) {
  return sym_engine(modulus(u), true, config);
}

}  // namespace tnl
