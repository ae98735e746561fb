#include "engine_detail.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace tnl {

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::enumerate: return "enumerate";
    case Method::svd: return "svd";
    case Method::alternating: return "alternating";
    case Method::grid: return "grid";
  }
  return "?";
}

std::string to_string(Rigor r) {
  switch (r) {
    case Rigor::exact: return "exact";
    case Rigor::lower_bound: return "lower_bound";
    case Rigor::approx: return "approx";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "auto" || text == "automatic") return Method::automatic;
  if (text == "enumerate") return Method::enumerate;
  if (text == "svd") return Method::svd;
  if (text == "alternating") return Method::alternating;
  if (text == "grid") return Method::grid;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

namespace {

using detail::StartResult;

bool svd_applicable(const SequenceSpace& space, int order) {
  return order == 2 && space.exponent().is_two() && space.unit_weights();
}

double enumeration_tuples(const SequenceSpace& ball, int order, bool positive) {
  const double per_arg = static_cast<double>(detail::extreme_points(ball, positive).size());
  return std::pow(per_arg, order);
}

bool enumerate_applicable(const SequenceSpace& ball, int order, bool positive) {
  if (order == 1) return true;
  return detail::is_enumerable_ball(ball) &&
         enumeration_tuples(ball, order, positive) <= detail::kEnumerateBudget;
}

NormEstimate finish(const FullTensor& u, std::vector<Vec> certs, Method method, Rigor rigor) {
  NormEstimate est;
  est.value = std::abs(evaluate_multilinear(u, certs));
  est.certificates = std::move(certs);
  est.method = method;
  est.rigor = rigor;
  return est;
}

// Extreme points for arguments 1..n-1, closed-form optimum for argument n.
NormEstimate enumerate_full(const FullTensor& u, const SequenceSpace& ball, bool positive) {
  const int n = u.order();
  const int m = u.dim();
  const std::vector<Vec> pts = n > 1 ? detail::extreme_points(ball, positive) : std::vector<Vec>{};
  std::vector<Vec> args(n, Vec::Zero(m));
  std::vector<std::size_t> digit(n > 1 ? n - 1 : 0, 0);
  double best = -1.0;
  std::vector<Vec> best_args;
  int visited = 0;
  while (true) {
    for (int j = 0; j + 1 < n; ++j) args[j] = pts[digit[j]];
    const LinearMax lm = linear_max_over_ball(contract_except(u, args, n - 1), ball, positive);
    ++visited;
    if (lm.value > best) {
      best = lm.value;
      best_args = args;
      best_args[n - 1] = lm.attainer;
    }
    int j = 0;
    while (j + 1 < n && ++digit[j] == pts.size()) digit[j++] = 0;
    if (j + 1 >= n) break;
  }
  NormEstimate est = finish(u, std::move(best_args), Method::enumerate, Rigor::exact);
  est.iterations = visited;
  return est;
}

NormEstimate svd_full(const FullTensor& u, bool positive) {
  const int m = u.dim();
  using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajorMatrix b = Eigen::Map<const RowMajorMatrix>(u.coeffs().data(), m, m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec left = svd.matrixU().col(0);
  Vec right = svd.matrixV().col(0);
  if (positive) {
    // |x|^T |B| |y| >= |x^T |B| y|, so the moduli of top singular vectors attain
    left = left.cwiseAbs();
    right = right.cwiseAbs();
  }
  NormEstimate est = finish(u, {left, right}, Method::svd, Rigor::exact);
  est.iterations = 1;
  return est;
}

// One multi-start trajectory: cyclic exact maximization over each argument.
StartResult ascend(const FullTensor& u, const SequenceSpace& ball, bool positive,
                   std::vector<Vec> args, const EngineConfig& config) {
  const int n = u.order();
  StartResult r;
  double value = -1.0;
  int stall = 0;
  int sweep = 0;
  for (; sweep < config.max_sweeps && stall < 2; ++sweep) {
    double current = 0.0;
    for (int step = 0; step < n; ++step) {
      const int k = (step + 1) % n;
      const LinearMax lm = linear_max_over_ball(contract_except(u, args, k), ball, positive);
      args[k] = lm.attainer;
      current = lm.value;
    }
    stall = current - value < config.stall_tol ? stall + 1 : 0;
    value = std::max(value, current);
  }
  r.value = std::abs(evaluate_multilinear(u, args));
  r.args = std::move(args);
  r.iterations = sweep;
  return r;
}

NormEstimate alternating_full(const FullTensor& u, const SequenceSpace& ball, bool positive,
                              const EngineConfig& config) {
  const int n = u.order();
  const int starts = std::max(config.starts, 1);
  const bool has_extreme = detail::is_enumerable_ball(ball);
  const std::vector<Vec> pts = has_extreme ? detail::extreme_points(ball, positive)
                                           : std::vector<Vec>{};
  auto results = detail::run_indexed<StartResult>(starts, config.threads, [&](int s) {
    std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(s)));
    const bool extreme_start = has_extreme && s < starts / 2;
    std::vector<Vec> args(n);
    for (int j = 0; j < n; ++j) {
      if (extreme_start) {
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        args[j] = pts[pick(rng)];
      } else {
        args[j] = detail::random_ball_point(rng, ball, positive);
      }
    }
    return ascend(u, ball, positive, std::move(args), config);
  });
  const std::size_t best = detail::best_index(results);
  NormEstimate est = finish(u, results[best].args, Method::alternating, Rigor::lower_bound);
  est.starts = starts;
  for (const auto& r : results) est.iterations += r.iterations;
  return est;
}

NormEstimate grid_full(const FullTensor& u, const SequenceSpace& ball, bool positive,
                       const EngineConfig& config) {
  NormEstimate first = alternating_full(u, ball, positive, config);
  const int n = u.order();
  const std::vector<Vec> seeds = detail::grid_directions(ball, positive, config.grid_points, 256);
  const Vec ones = Vec::Ones(u.dim());
  const Vec rest = ones / norm(ball, ones);
  auto results =
      detail::run_indexed<StartResult>(static_cast<int>(seeds.size()), config.threads, [&](int s) {
        std::vector<Vec> args(n, rest);
        args[0] = seeds[s];
        return ascend(u, ball, positive, std::move(args), config);
      });
  NormEstimate est;
  double second = 0.0;
  if (!results.empty()) {
    const std::size_t best = detail::best_index(results);
    second = results[best].value;
    if (second > first.value) {
      est = finish(u, results[best].args, Method::grid, Rigor::approx);
    }
  }
  if (est.certificates.empty()) {
    est = first;
    est.method = Method::grid;
    est.rigor = Rigor::approx;
  }
  est.gap = std::abs(first.value - second);
  est.starts = first.starts + static_cast<int>(seeds.size());
  est.iterations = first.iterations;
  for (const auto& r : results) est.iterations += r.iterations;
  return est;
}

NormEstimate full_engine(const FullTensor& u, bool positive, const EngineConfig& config) {
  const SequenceSpace ball = dual_of(u.space());
  const int n = u.order();
  Method method = config.method;
  if (method == Method::automatic) {
    if (svd_applicable(u.space(), n)) {
      method = Method::svd;
    } else if (enumerate_applicable(ball, n, positive)) {
      method = Method::enumerate;
    } else {
      method = Method::alternating;
    }
  }
  switch (method) {
    case Method::enumerate:
      if (!enumerate_applicable(ball, n, positive)) {
        throw IncompatibleMethod(
            "enumerate needs dual exponent 1 or inf and at most 2^24 extreme-point tuples");
      }
      return enumerate_full(u, ball, positive);
    case Method::svd:
      if (!svd_applicable(u.space(), n)) {
        throw IncompatibleMethod("svd needs order 2, p = 2 and unit weights");
      }
      return svd_full(u, positive);
    case Method::alternating:
      return alternating_full(u, ball, positive, config);
    case Method::grid:
      return grid_full(u, ball, positive, config);
    case Method::automatic:
      break;
  }
  throw IncompatibleMethod("unresolved method");
}

}  // namespace

bool has_exact_injective(const SequenceSpace& space, int order) {
  return svd_applicable(space, order) || enumerate_applicable(dual_of(space), order, false);
}

NormEstimate injective_norm(const FullTensor& u, const EngineConfig& config) {
  return full_engine(u, false, config);
}

NormEstimate positive_injective_norm(const FullTensor& u, const EngineConfig& config) {
  return full_engine(modulus(u), true, config);
}

}  // namespace tnl
