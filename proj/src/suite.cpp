#include "engine_detail.hpp"
#include "tnl/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace tnl {

namespace {

const std::vector<std::string> kChecks = {
    "holder",   "lemma2.1", "lemma2.3",    "lemma3.1", "lemma3.2", "lemma3.5", "ordering",
    "polarization", "rademacher", "sandwich2.4", "thm3.3", "thm3.6", "uncond"};

// Checks whose statement does not involve the exponent of the space.
bool exponent_free(std::string_view id) {
  return id == "holder" || id == "polarization" || id == "rademacher" || id == "thm3.3";
}

bool equality_style(std::string_view id) { return id == "thm3.6" || id == "uncond"; }

Vec uniform(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(m);
  for (int i = 0; i < m; ++i) v[i] = dist(rng);
  return v;
}

std::vector<Vec> uniform_list(std::mt19937_64& rng, int count, int m, double lo, double hi) {
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) out.push_back(uniform(rng, m, lo, hi));
  return out;
}

FullTensor tensor_for(const InstanceSpec& spec, const SequenceSpace& space, std::mt19937_64& rng) {
  if (spec.tensor) return *spec.tensor;
  return FullTensor(space, spec.n, uniform(rng, static_cast<int>(power_size(spec.m, spec.n)),
                                           -1.0, 1.0));
}

MultiIndex random_index(std::mt19937_64& rng, int m, int n) {
  std::uniform_int_distribution<int> pick(0, m - 1);
  MultiIndex idx(n);
  for (int& i : idx) i = pick(rng);
  return idx;
}

int modulus_grid(int m, int n) { return std::pow(3.0, m * n) <= 1e5 ? 3 : 2; }

CheckReport dispatch(const std::string& id, const InstanceSpec& spec) {
  std::mt19937_64 rng(derive_seed(spec.seed, "instance"));
  CheckOptions options = spec.options;
  options.engine.seed = derive_seed(spec.seed, "engine");
  const SequenceSpace space(spec.m, spec.p);
  const int m = spec.m;
  const int n = spec.n;

  if (id == "thm3.6" || id == "uncond") {
    const Vec a = spec.diagonal ? *spec.diagonal : uniform(rng, m, -1.0, 1.0);
    return id == "thm3.6" ? check_diagonal_four_norms(a, space, n, options)
                          : check_diagonal_unconditionality(a, space, n, options);
  }
  if (id == "lemma3.1") return check_projection_contractive(tensor_for(spec, space, rng), options);
  if (id == "lemma3.2") {
    return check_sym_projection_contractive(tensor_for(spec, space, rng), options);
  }
  if (id == "sandwich2.4") return check_sandwich24(tensor_for(spec, space, rng), options);
  if (id == "ordering") return check_norm_ordering(tensor_for(spec, space, rng), options);
  if (id == "lemma2.1") {
    const FullTensor u = tensor_for(spec, space, rng);
    const std::vector<Vec> multipliers = uniform_list(rng, u.order(), u.dim(), -1.0, 1.0);
    return check_multiplier_monotonicity(u, multipliers, options);
  }
  if (id == "lemma2.3") {
    const FullTensor u = tensor_for(spec, space, rng);
    const std::vector<Vec> duals = uniform_list(rng, u.order(), u.dim(), 0.0, 1.0);
    return check_regular_modulus(u, duals, modulus_grid(u.dim(), u.order()));
  }
  if (id == "lemma3.5") return check_lemma35(uniform_list(rng, n, m, 0.0, 1.0), space);
  if (id == "holder") {
    // reciprocal exponents drawn from a flat Dirichlet distribution
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> r(n);
    for (double& x : r) x = expo(rng);
    double total = 0.0;
    for (double x : r) total += x;
    std::vector<Exponent> exponents;
    double used = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      exponents.emplace_back(total / r[k]);
      used += exponents.back().reciprocal();
    }
    const double rest = 1.0 - used;
    exponents.push_back(rest > 0.0 ? Exponent(1.0 / rest) : Exponent::infinity());
    return check_holder(uniform_list(rng, n, m, -1.0, 1.0), exponents);
  }
  if (id == "polarization") return check_polarization(uniform_list(rng, n, m, -1.0, 1.0), space);
  if (id == "rademacher") {
    const int max_terms = std::min(6, 24 / std::max(1, n - 1));
    std::uniform_int_distribution<int> count(1, max_terms);
    RankOneSum terms;
    const int k = count(rng);
    std::uniform_real_distribution<double> scale(-1.0, 1.0);
    for (int t = 0; t < k; ++t) {
      terms.terms.push_back({scale(rng), uniform_list(rng, n, m, -1.0, 1.0)});
    }
    return check_rademacher(terms, space);
  }
  if (id == "thm3.3") {
    MultiIndex first, second;
    if (spec.index_pair) {
      std::tie(first, second) = *spec.index_pair;
    } else {
      if (m < 2) throw std::invalid_argument("thm3.3 needs dim >= 2");
      first = random_index(rng, m, n);
      do {
        second = random_index(rng, m, n);
      } while (second == first);
    }
    return check_basis_disjointness(first, second, uniform_list(rng, n, m, 0.0, 1.0));
  }
  throw std::invalid_argument("unknown check id '" + id + "'");
}

}  // namespace

const std::vector<std::string>& known_checks() { return kChecks; }

bool is_known_check(std::string_view id) {
  return std::find(kChecks.begin(), kChecks.end(), id) != kChecks.end();
}

bool exact_exponent(Exponent p, int order) {
  return p.is_one() || p.is_infinite() || (p.is_two() && order == 2);
}

CheckReport run_check(const std::string& check_id, const InstanceSpec& spec) {
  if (!is_known_check(check_id)) throw std::invalid_argument("unknown check id '" + check_id + "'");
  if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("dim and order must be positive");
  CheckReport r = dispatch(check_id, spec);
  r.instance.p = exponent_free(check_id) ? "-" : spec.p.to_string();
  r.instance.m = spec.m;
  r.instance.n = spec.n;
  r.instance.seed = spec.seed;
  r.instance.index = spec.index;
  return r;
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  std::vector<std::string> checks = config.checks;
  for (const std::string& id : checks) {
    if (!is_known_check(id)) throw std::invalid_argument("unknown check id '" + id + "'");
  }
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());

  struct Job {
    std::string check;
    InstanceSpec spec;
  };
  std::vector<Job> jobs;
  for (const std::string& id : checks) {
    int index = 0;
    const std::vector<Exponent> exponents =
        exponent_free(id) ? std::vector<Exponent>{Exponent(1.0)} : config.exponents;
    for (const Exponent& p : exponents) {
      for (int m : config.dims) {
        for (int n : config.orders) {
          if (equality_style(id) && !exact_exponent(p, n)) continue;
          if (id == "thm3.3" && m < 2) continue;
          for (int s = 0; s < config.samples; ++s) {
            InstanceSpec spec;
            spec.p = p;
            spec.m = m;
            spec.n = n;
            const std::string pname = exponent_free(id) ? "-" : p.to_string();
            spec.seed = derive_seed(config.seed, id + "/" + pname + "/" + std::to_string(m) + "/" +
                                                     std::to_string(n) + "/" + std::to_string(s));
            spec.index = index++;
            spec.options.engine.method = config.method;
            spec.options.engine.starts = config.starts;
            spec.options.engine.threads = 1;
            if (auto it = config.tolerances.find(id); it != config.tolerances.end()) {
              spec.options.tolerance = it->second;
            }
            jobs.push_back({id, std::move(spec)});
          }
        }
      }
    }
  }
  // jobs are already in (check id, instance index) order
  return detail::run_indexed<CheckReport>(static_cast<int>(jobs.size()), config.threads,
                                          [&](int j) { return run_check(jobs[j].check, jobs[j].spec); });
}

SuiteSummary summarize(const std::vector<CheckReport>& reports) {
  SuiteSummary summary;
  std::set<std::string> ids;
  for (const CheckReport& r : reports) {
    ids.insert(r.check_id);
    ++summary.instances;
    if (!r.passed) {
      if (summary.failures == 0) summary.first_failure = &r;
      ++summary.failures;
    }
  }
  summary.checks = static_cast<int>(ids.size());
  return summary;
}

}  // namespace tnl
