#include "tnl/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tnl {

double CheckReport::quantity(std::string_view name) const {
  for (const auto& [key, value] : quantities) {
    if (key == name) return value;
  }
  throw std::out_of_range("no quantity named '" + std::string(name) + "'");
}

namespace {

std::string hex_hash(const FullTensor& u) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(tensor_hash(u)));
  return buf;
}

InstanceInfo describe(const FullTensor& u) {
  InstanceInfo info;
  info.p = u.space().exponent().to_string();
  info.m = u.dim();
  info.n = u.order();
  info.tensor_hash = hex_hash(u);
  return info;
}

double relative_difference(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

std::vector<double> flatten(const std::vector<Vec>& certificates) {
  std::vector<double> out;
  for (const Vec& c : certificates) out.insert(out.end(), c.data(), c.data() + c.size());
  return out;
}

bool all_exact(std::initializer_list<const NormEstimate*> estimates) {
  return std::all_of(estimates.begin(), estimates.end(),
                     [](const NormEstimate* e) { return e->rigor == Rigor::exact; });
}

bool classical_exponent(Exponent p) { return p.is_one() || p.is_two() || p.is_infinite(); }

// Default tolerance of an inequality between norm estimates.
double comparison_tolerance(const CheckOptions& options, Exponent p,
                            std::initializer_list<const NormEstimate*> estimates) {
  if (options.tolerance) return *options.tolerance;
  if (all_exact(estimates)) return 1e-9;
  return classical_exponent(p) ? 1e-6 : 1e-4;
}

// Default tolerance of an equality between norm estimates.
double equality_tolerance(const CheckOptions& options,
                          std::initializer_list<const NormEstimate*> estimates) {
  if (options.tolerance) return *options.tolerance;
  return all_exact(estimates) ? 1e-9 : 1e-4;
}

// The side of an inequality that must not be underestimated: exact when
// possible, otherwise the strongest search available.
EngineConfig large_side(const EngineConfig& config, bool exact, bool enumerable) {
  EngineConfig c = config;
  if (c.method == Method::automatic && !exact) c.method = enumerable ? Method::enumerate : Method::grid;
  return c;
}

bool enumerable_dual(const SequenceSpace& space) {
  const Exponent p = space.exponent();
  return p.is_one() || p.is_infinite();
}

NormEstimate large_full(const FullTensor& u, const EngineConfig& config) {
  const bool exact = has_exact_injective(u.space(), u.order());
  EngineConfig c = config;
  if (c.method == Method::automatic && !exact) c.method = Method::grid;
  return injective_norm(u, c);
}

NormEstimate large_sym(const SymmetricTensor& u, const EngineConfig& config) {
  return sym_injective_norm(
      u, large_side(config, has_exact_symmetric(u), enumerable_dual(u.space())));
}

}  // namespace

CheckReport check_diagonal_four_norms(const Vec& a, const SequenceSpace& space, int order,
                                      const CheckOptions& options) {
  const FullTensor u = FullTensor::diagonal(space, order, a);
  const SymmetricTensor us = SymmetricTensor::diagonal(space, order, a);
  const NormEstimate eps = injective_norm(u, options.engine);
  const NormEstimate seps = sym_injective_norm(us, options.engine);
  const NormEstimate peps = positive_injective_norm(u, options.engine);
  const NormEstimate pseps = positive_sym_injective_norm(us, options.engine);

  const double values[4] = {eps.value, seps.value, peps.value, pseps.value};
  double spread = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) spread = std::max(spread, relative_difference(values[i], values[j]));
  }
  CheckReport r;
  r.check_id = "thm3.6";
  r.instance = describe(u);
  r.quantities = {{"eps", eps.value},
                  {"s_eps", seps.value},
                  {"pos_eps", peps.value},
                  {"pos_s_eps", pseps.value},
                  {"max_rel_diff", spread}};
  r.tolerance = equality_tolerance(options, {&eps, &seps, &peps, &pseps});
  r.passed = spread <= r.tolerance;
  r.witnesses = {{"diagonal", std::vector<double>(a.data(), a.data() + a.size())},
                 {"eps_certificate", flatten(eps.certificates)},
                 {"s_eps_certificate", flatten(seps.certificates)},
                 {"pos_eps_certificate", flatten(peps.certificates)},
                 {"pos_s_eps_certificate", flatten(pseps.certificates)}};
  return r;
}

CheckReport check_diagonal_unconditionality(const Vec& a, const SequenceSpace& space, int order,
                                            const CheckOptions& options) {
  const int m = space.dim();
  if (m > 16) throw std::invalid_argument("sign-pattern enumeration limited to dim <= 16");
  double eps_min = INFINITY, eps_max = 0.0, seps_min = INFINITY, seps_max = 0.0;
  Vec theta_eps_min, theta_seps_min;
  bool exact = true;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    Vec theta(m);
    for (int i = 0; i < m; ++i) theta[i] = (mask >> i) & 1u ? -1.0 : 1.0;
    const Vec flipped = theta.cwiseProduct(a);
    const NormEstimate eps =
        injective_norm(FullTensor::diagonal(space, order, flipped), options.engine);
    const NormEstimate seps =
        sym_injective_norm(SymmetricTensor::diagonal(space, order, flipped), options.engine);
    exact = exact && eps.rigor == Rigor::exact && seps.rigor == Rigor::exact;
    if (eps.value < eps_min) {
      eps_min = eps.value;
      theta_eps_min = theta;
    }
    if (seps.value < seps_min) {
      seps_min = seps.value;
      theta_seps_min = theta;
    }
    eps_max = std::max(eps_max, eps.value);
    seps_max = std::max(seps_max, seps.value);
  }
  const double eps_spread = relative_difference(eps_min, eps_max);
  const double seps_spread = relative_difference(seps_min, seps_max);
  CheckReport r;
  r.check_id = "uncond";
  r.instance = describe(FullTensor::diagonal(space, order, a));
  r.quantities = {{"eps_min", eps_min},   {"eps_max", eps_max},
                  {"s_eps_min", seps_min}, {"s_eps_max", seps_max},
                  {"eps_spread", eps_spread}, {"s_eps_spread", seps_spread}};
  r.tolerance = options.tolerance.value_or(exact ? 1e-9 : 1e-4);
  r.passed = eps_spread <= r.tolerance && seps_spread <= r.tolerance;
  r.witnesses = {{"diagonal", std::vector<double>(a.data(), a.data() + a.size())},
                 {"theta_eps_min", std::vector<double>(theta_eps_min.data(),
                                                       theta_eps_min.data() + m)},
                 {"theta_s_eps_min", std::vector<double>(theta_seps_min.data(),
                                                         theta_seps_min.data() + m)}};
  return r;
}

CheckReport check_projection_contractive(const FullTensor& u, const CheckOptions& options) {
  const NormEstimate projected = injective_norm(diagonal_project(u), options.engine);
  const NormEstimate full = large_full(u, options.engine);
  CheckReport r;
  r.check_id = "lemma3.1";
  r.instance = describe(u);
  r.quantities = {{"eps_Qu", projected.value}, {"eps_u", full.value},
                  {"excess", projected.value - full.value}};
  r.tolerance = comparison_tolerance(options, u.space().exponent(), {&projected, &full});
  r.passed = projected.value <= full.value + r.tolerance;
  r.witnesses = {{"Qu_certificate", flatten(projected.certificates)},
                 {"u_certificate", flatten(full.certificates)}};
  return r;
}

CheckReport check_sym_projection_contractive(const FullTensor& u, const CheckOptions& options) {
  const SymmetricTensor su = symmetrize(u);
  const NormEstimate projected = sym_injective_norm(diagonal_project(su), options.engine);
  const NormEstimate full = large_sym(su, options.engine);
  CheckReport r;
  r.check_id = "lemma3.2";
  r.instance = describe(su.full());
  r.quantities = {{"s_eps_Qs_su", projected.value}, {"s_eps_su", full.value},
                  {"excess", projected.value - full.value}};
  r.tolerance = comparison_tolerance(options, u.space().exponent(), {&projected, &full});
  r.passed = projected.value <= full.value + r.tolerance;
  r.witnesses = {{"Qs_su_certificate", flatten(projected.certificates)},
                 {"su_certificate", flatten(full.certificates)}};
  return r;
}

CheckReport check_basis_disjointness(const MultiIndex& first, const MultiIndex& second,
                                     std::span<const Vec> positive_duals) {
  const int n = static_cast<int>(first.size());
  if (n == 0) throw std::invalid_argument("multi-indices must be nonempty");
  if (second.size() != first.size() || static_cast<int>(positive_duals.size()) != n) {
    throw std::invalid_argument("multi-indices and dual points must have the same length");
  }
  if (first == second) throw std::invalid_argument("multi-indices must differ");
  const auto m = positive_duals.front().size();
  for (int j = 0; j < n; ++j) {
    if (positive_duals[j].size() != m) throw std::invalid_argument("dual dimension mismatch");
    if ((positive_duals[j].array() < 0.0).any()) {
      throw std::invalid_argument("dual points must be positive");
    }
    if (first[j] < 0 || first[j] >= m || second[j] < 0 || second[j] >= m) {
      throw std::out_of_range("multi-index entry out of range");
    }
  }

  // u*_{j,1} = alpha_j f_{k_j} with alpha_j = x*_j(e_{k_j}); u*_{j,2} = x*_j - u*_{j,1}
  std::vector<Vec> parts[2];
  bool orthant = true;
  for (int j = 0; j < n; ++j) {
    Vec p1 = Vec::Zero(m);
    p1[second[j]] = positive_duals[j][second[j]];
    Vec p2 = positive_duals[j] - p1;
    orthant = orthant && (p1.array() >= 0.0).all() && (p2.array() >= 0.0).all();
    parts[0].push_back(std::move(p1));
    parts[1].push_back(std::move(p2));
  }
  double bound = 0.0;
  for (std::uint32_t choice = 0; choice < (1u << n); ++choice) {
    double at_first = 1.0;
    double at_second = 1.0;
    for (int j = 0; j < n; ++j) {
      const Vec& part = parts[(choice >> j) & 1u][j];
      at_first *= part[first[j]];
      at_second *= part[second[j]];
    }
    bound += std::min(at_first, at_second);
  }
  CheckReport r;
  r.check_id = "thm3.3";
  r.instance.m = static_cast<int>(m);
  r.instance.n = n;
  r.quantities = {{"partition_bound", bound}, {"orthant", orthant ? 1.0 : 0.0}};
  r.tolerance = 1e-12;
  r.passed = orthant && bound <= r.tolerance;
  r.witnesses = {{"first_index", std::vector<double>(first.begin(), first.end())},
                 {"second_index", std::vector<double>(second.begin(), second.end())}};
  return r;
}

CheckReport check_lemma35(std::span<const Vec> positive_duals, const SequenceSpace& space) {
  if (positive_duals.empty()) throw std::invalid_argument("need at least one dual point");
  const SequenceSpace dual = dual_of(space);
  const Vec mean = holder_mean_functional(positive_duals);
  const double lhs = norm(dual, mean);
  const double inv_n = 1.0 / static_cast<double>(positive_duals.size());
  double rhs = 1.0;
  for (const Vec& x : positive_duals) rhs *= std::pow(norm(dual, x), inv_n);
  CheckReport r;
  r.check_id = "lemma3.5";
  r.instance.p = space.exponent().to_string();
  r.instance.m = space.dim();
  r.instance.n = static_cast<int>(positive_duals.size());
  r.quantities = {{"mean_norm", lhs}, {"product_bound", rhs}};
  r.tolerance = 1e-12;
  r.passed = lhs <= rhs + r.tolerance;
  r.witnesses = {{"mean", std::vector<double>(mean.data(), mean.data() + mean.size())}};
  return r;
}

CheckReport check_holder(std::span<const Vec> vectors, std::span<const Exponent> exponents) {
  if (vectors.empty()) throw std::invalid_argument("need at least one vector");
  const HolderResult h = holder_check(vectors, exponents);
  CheckReport r;
  r.check_id = "holder";
  r.instance.m = static_cast<int>(vectors.front().size());
  r.instance.n = static_cast<int>(vectors.size());
  r.quantities = {{"lhs", h.lhs}, {"rhs", h.rhs}};
  r.tolerance = 1e-12;
  r.passed = h.holds;
  std::vector<double> recips;
  for (const Exponent& p : exponents) recips.push_back(p.reciprocal());
  r.witnesses = {{"reciprocal_exponents", recips}};
  return r;
}

CheckReport check_polarization(std::span<const Vec> vectors, const SequenceSpace& space) {
  if (vectors.empty()) throw std::invalid_argument("need at least one vector");
  const FullTensor expanded = polarization_expand(vectors).expand(space);
  const SymmetricTensor direct = symmetrize(FullTensor::rank_one(space, vectors));
  const double diff = (expanded.coeffs() - direct.full().coeffs()).cwiseAbs().maxCoeff();
  CheckReport r;
  r.check_id = "polarization";
  r.instance = describe(direct.full());
  r.quantities = {{"max_abs_diff", diff}};
  r.tolerance = 1e-12;
  r.passed = diff <= r.tolerance;
  return r;
}

CheckReport check_rademacher(const RankOneSum& terms, const SequenceSpace& space) {
  if (terms.terms.empty()) throw std::invalid_argument("need at least one rank-one term");
  const FullTensor plain = terms.expand(space);
  const FullTensor averaged = rademacher_average(terms, space);
  const double diff = (plain.coeffs() - averaged.coeffs()).cwiseAbs().maxCoeff();
  CheckReport r;
  r.check_id = "rademacher";
  r.instance = describe(plain);
  r.quantities = {{"max_abs_diff", diff}, {"terms", static_cast<double>(terms.terms.size())}};
  r.tolerance = 1e-10;
  r.passed = diff <= r.tolerance;
  return r;
}

CheckReport check_sandwich24(const FullTensor& u, const CheckOptions& options) {
  const SymmetricTensor su = symmetrize(u);
  const int n = u.order();
  double constant = 1.0;
  for (int k = 1; k <= n; ++k) constant *= static_cast<double>(n) / k;  // n^n / n!
  // eps sits on the large side of the left inequality; s,eps on the large side
  // of the right one, so both use their strongest estimates
  const NormEstimate eps = large_full(su.full(), options.engine);
  const NormEstimate seps = large_sym(su, options.engine);
  CheckReport r;
  r.check_id = "sandwich2.4";
  r.instance = describe(su.full());
  r.quantities = {{"s_eps", seps.value},
                  {"eps", eps.value},
                  {"constant", constant},
                  {"upper", constant * seps.value}};
  r.tolerance = options.tolerance.value_or(1e-6);
  r.passed = seps.value <= eps.value + r.tolerance &&
             eps.value <= constant * seps.value + r.tolerance;
  r.witnesses = {{"eps_certificate", flatten(eps.certificates)},
                 {"s_eps_certificate", flatten(seps.certificates)}};
  return r;
}

CheckReport check_norm_ordering(const FullTensor& u, const CheckOptions& options) {
  const SymmetricTensor su = symmetrize(u);
  const NormEstimate eps = injective_norm(u, options.engine);
  const NormEstimate peps = [&] {
    EngineConfig c = options.engine;
    if (c.method == Method::automatic && !has_exact_injective(u.space(), u.order())) {
      c.method = Method::grid;
    }
    return positive_injective_norm(u, c);
  }();
  const NormEstimate seps = sym_injective_norm(su, options.engine);
  const NormEstimate pseps = positive_sym_injective_norm(
      su, large_side(options.engine, has_exact_positive_symmetric(su), enumerable_dual(u.space())));
  CheckReport r;
  r.check_id = "ordering";
  r.instance = describe(u);
  r.quantities = {{"eps", eps.value}, {"pos_eps", peps.value},
                  {"s_eps", seps.value}, {"pos_s_eps", pseps.value}};
  r.tolerance = comparison_tolerance(options, u.space().exponent(), {&eps, &peps, &seps, &pseps});
  r.passed = eps.value <= peps.value + r.tolerance && seps.value <= pseps.value + r.tolerance;
  return r;
}

CheckReport check_multiplier_monotonicity(const FullTensor& u, std::span<const Vec> multipliers,
                                          const CheckOptions& options) {
  if (static_cast<int>(multipliers.size()) != u.order()) {
    throw std::invalid_argument("expected one multiplier per tensor factor");
  }
  double product = 1.0;
  for (const Vec& t : multipliers) product *= t.cwiseAbs().maxCoeff();
  const FullTensor moved = apply_multipliers(u, multipliers);
  const NormEstimate moved_eps = injective_norm(moved, options.engine);
  const NormEstimate eps = large_full(u, options.engine);

  // the symmetric statement uses one operator on every factor
  const SymmetricTensor su = symmetrize(u);
  const double single = multipliers.front().cwiseAbs().maxCoeff();
  const std::vector<Vec> same(u.order(), multipliers.front());
  const SymmetricTensor moved_su = SymmetricTensor::from_full(apply_multipliers(su.full(), same),
                                                              1e-12);
  const NormEstimate moved_seps = sym_injective_norm(moved_su, options.engine);
  const NormEstimate seps = large_sym(su, options.engine);
  const double single_power = std::pow(single, u.order());

  CheckReport r;
  r.check_id = "lemma2.1";
  r.instance = describe(u);
  r.quantities = {{"eps_Tu", moved_eps.value},   {"eps_u", eps.value},
                  {"operator_norms", product},    {"s_eps_Tu", moved_seps.value},
                  {"s_eps_u", seps.value},        {"operator_norm_pow", single_power}};
  r.tolerance = comparison_tolerance(options, u.space().exponent(),
                                     {&moved_eps, &eps, &moved_seps, &seps});
  r.passed = moved_eps.value <= product * eps.value + r.tolerance &&
             moved_seps.value <= single_power * seps.value + r.tolerance;
  return r;
}

CheckReport check_regular_modulus(const FullTensor& u, std::span<const Vec> positive_duals,
                                  int grid_k) {
  const double oracle = regular_modulus_oracle(u, positive_duals, grid_k);
  const double direct = evaluate_multilinear(modulus(u), positive_duals);
  // partition of each x_j into its atoms x_j(i) e_i
  const int n = u.order();
  const int m = u.dim();
  double partition_sum = 0.0;
  for (Eigen::Index flat = 0; flat < u.coeffs().size(); ++flat) {
    const MultiIndex idx = unflatten(flat, m, n);
    std::vector<Vec> atoms(n, Vec::Zero(m));
    for (int j = 0; j < n; ++j) atoms[j][idx[j]] = positive_duals[j][idx[j]];
    partition_sum += std::abs(evaluate_multilinear(u, atoms));
  }
  CheckReport r;
  r.check_id = "lemma2.3";
  r.instance = describe(u);
  r.quantities = {{"grid_sup", oracle},
                  {"modulus_value", direct},
                  {"atomic_partition_sum", partition_sum},
                  {"grid_gap", direct - oracle}};
  r.tolerance = 1e-12 * std::max(1.0, direct);
  r.passed = oracle <= direct + r.tolerance && std::abs(partition_sum - direct) <= r.tolerance;
  return r;
}

}  // namespace tnl
