// Acceptance criteria runner. Usage: acceptance <criterion 1..9>
// Prints one PASS/FAIL line for the criterion; exit status 0 on PASS.

#include "tnl/io.hpp"
#include "tnl/seeding.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#ifndef TNL_CLI_PATH
#error "TNL_CLI_PATH must point at the tnl executable"
#endif

using namespace tnl;

namespace {

constexpr std::uint64_t kMaster = 20240601;

struct Tally {
  long total = 0;
  long failed = 0;
  double worst = 0.0;  // largest violation seen
  std::string first;
  std::map<std::string, long> failures_by_cell;

  void record(bool ok, double violation, const std::string& where, const std::string& key = "") {
    ++total;
    worst = std::max(worst, violation);
    if (!ok) {
      if (failed == 0) first = where;
      ++failed;
      if (!key.empty()) ++failures_by_cell[key];
    }
  }
  bool ok() const { return failed == 0 && total > 0; }
};

std::string key(Exponent p, int m, int n) {
  return "p=" + p.to_string() + " m=" + std::to_string(m) + " n=" + std::to_string(n);
}

std::string cell(const char* tag, Exponent p, int m, int n, int s) {
  std::ostringstream o;
  o << tag << " p=" << p.to_string() << " m=" << m << " n=" << n << " #" << s;
  return o.str();
}

std::mt19937_64 rng_for(const std::string& path) {
  return std::mt19937_64(derive_seed(kMaster, path));
}

Vec uniform(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vec v(m);
  for (int i = 0; i < m; ++i) v[i] = d(rng);
  return v;
}

std::vector<Vec> uniform_list(std::mt19937_64& rng, int count, int m, double lo, double hi) {
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) out.push_back(uniform(rng, m, lo, hi));
  return out;
}

FullTensor random_tensor(std::mt19937_64& rng, const SequenceSpace& space, int n) {
  return FullTensor(space, n, uniform(rng, static_cast<int>(power_size(space.dim(), n)), -1, 1));
}

const std::vector<Exponent> kClassical{Exponent(1.0), Exponent(2.0), Exponent::infinity()};
const std::vector<Exponent> kEndpoints{Exponent(1.0), Exponent::infinity()};

// Round-robin over (p, m, n) cells so `count` instances cover the grid evenly.
struct Cell {
  Exponent p;
  int m;
  int n;
};

std::vector<Cell> cells(const std::vector<Exponent>& exponents, bool p2_only_n2) {
  std::vector<Cell> out;
  for (const Exponent& p : exponents) {
    for (int m : {2, 3, 4}) {
      for (int n : {2, 3}) {
        if (p2_only_n2 && p.is_two() && n != 2) continue;
        out.push_back({p, m, n});
      }
    }
  }
  return out;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int verdict(int id, const std::string& title, const std::vector<std::pair<std::string, Tally>>& parts,
            const Clock& clock) {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [name, t] : parts) {
    ok = ok && t.ok();
    detail << "  " << name << ": " << (t.total - t.failed) << "/" << t.total
           << " passed, worst violation " << t.worst << '\n';
    if (!t.ok() && !t.first.empty()) detail << "    first failure: " << t.first << '\n';
    for (const auto& [key, count] : t.failures_by_cell) {
      detail << "    failures at " << key << ": " << count << '\n';
    }
  }
  std::printf("criterion %d: %s  %s  (%.1f s)\n%s", id, ok ? "PASS" : "FAIL", title.c_str(),
              clock.seconds(), detail.str().c_str());
  return ok ? 0 : 1;
}

// Rigorous upper bound on sup |P_u| over [-1,1]^m: the maximum over a
// points^m grid plus Lipschitz slack, using |grad P|_1 <= n sum |b|.
double box_sup_upper_bound(const SymmetricTensor& u, int points) {
  const int m = u.dim();
  const double h = 2.0 / (points - 1);
  const double lipschitz = u.order() * u.full().coeffs().cwiseAbs().sum();
  std::vector<int> digit(m, 0);
  Vec x(m);
  double best = 0.0;
  while (true) {
    for (int i = 0; i < m; ++i) x[i] = -1.0 + h * digit[i];
    best = std::max(best, std::abs(evaluate_polynomial(u, x)));
    int d = 0;
    while (d < m && ++digit[d] == points) digit[d++] = 0;
    if (d == m) break;
  }
  return best + lipschitz * h / 2.0;
}

CheckOptions with_tolerance(double tol) {
  CheckOptions o;
  o.tolerance = tol;
  return o;
}

int criterion1() {
  Clock clock;
  Tally t;
  Tally exactness;
  Tally closed_form;
  for (const Cell& c : cells(kClassical, true)) {
    const SequenceSpace space(c.m, c.p);
    for (int s = 0; s < 100; ++s) {
      auto rng = rng_for(cell("c1", c.p, c.m, c.n, s));
      const Vec a = uniform(rng, c.m, -1, 1);
      const SymmetricTensor sd = SymmetricTensor::diagonal(space, c.n, a);
      exactness.record(has_exact_injective(space, c.n) && has_exact_symmetric(sd) &&
                           has_exact_positive_symmetric(sd),
                       0.0, cell("inexact oracle", c.p, c.m, c.n, s));
      const CheckReport r = check_diagonal_four_norms(a, space, c.n, with_tolerance(1e-9));
      std::ostringstream where;
      where << cell("thm3.6", c.p, c.m, c.n, s) << " eps=" << r.quantity("eps")
            << " s_eps=" << r.quantity("s_eps") << " pos_eps=" << r.quantity("pos_eps")
            << " pos_s_eps=" << r.quantity("pos_s_eps");
      t.record(r.passed, r.quantity("max_rel_diff"), where.str(), key(c.p, c.m, c.n));
      if (c.p.is_one() && c.n % 2 == 0) {
        // on the unit box sum a_i x_i^n ranges over [-sum a^-, sum a^+]
        const double closed = std::max(a.cwiseMax(0.0).sum(), (-a).cwiseMax(0.0).sum());
        closed_form.record(std::abs(closed - r.quantity("s_eps")) <= 1e-12 * closed, 0.0,
                           where.str());
      }
    }
  }
  return verdict(1, "four norms of diagonal tensors agree within 1e-9 relative",
                 {{"pairwise agreement", t},
                  {"exact oracles", exactness},
                  {"s,eps equals max(sum a+, sum a-) at p=1, even n", closed_form}},
                 clock);
}

int criterion2() {
  Clock clock;
  Tally t;
  for (const Cell& c : cells(kClassical, true)) {
    const SequenceSpace space(c.m, c.p);
    for (int s = 0; s < 100; ++s) {
      auto rng = rng_for(cell("c2", c.p, c.m, c.n, s));
      const Vec a = uniform(rng, c.m, -1, 1);
      const CheckReport r = check_diagonal_unconditionality(a, space, c.n, with_tolerance(1e-9));
      std::ostringstream where;
      where << cell("uncond", c.p, c.m, c.n, s) << " eps in [" << r.quantity("eps_min") << ", "
            << r.quantity("eps_max") << "] s_eps in [" << r.quantity("s_eps_min") << ", "
            << r.quantity("s_eps_max") << "]";
      t.record(r.passed, std::max(r.quantity("eps_spread"), r.quantity("s_eps_spread")),
               where.str(), key(c.p, c.m, c.n));
    }
  }
  return verdict(2, "eps and s,eps norms of diagonals are sign-pattern invariant within 1e-9",
                 {{"sign invariance", t}}, clock);
}

int criterion3() {
  Clock clock;
  Tally full;
  Tally sym;
  Tally certified;
  const std::vector<Cell> grid = cells(kEndpoints, false);
  for (int s = 0; s < 500; ++s) {
    const Cell& c = grid[s % grid.size()];
    auto rng = rng_for(cell("c3", c.p, c.m, c.n, s));
    const FullTensor u = random_tensor(rng, SequenceSpace(c.m, c.p), c.n);
    const CheckReport r1 = check_projection_contractive(u, with_tolerance(1e-9));
    full.record(r1.passed, std::max(0.0, r1.quantity("excess")), cell("Q", c.p, c.m, c.n, s),
                key(c.p, c.m, c.n));
    const CheckReport r2 = check_sym_projection_contractive(u, with_tolerance(1e-9));
    std::ostringstream where;
    where << cell("Q_s", c.p, c.m, c.n, s) << " ||Q_s s(u)||=" << r2.quantity("s_eps_Qs_su")
          << " ||s(u)||=" << r2.quantity("s_eps_su");
    sym.record(r2.passed, std::max(0.0, r2.quantity("excess")), where.str(), key(c.p, c.m, c.n));
    if (!r2.passed && c.p.is_one() && c.m <= 3) {
      const double upper = box_sup_upper_bound(symmetrize(u), c.m == 2 ? 2001 : 201);
      std::ostringstream w;
      w << where.str() << " certified ||s(u)|| <= " << upper;
      certified.record(upper < r2.quantity("s_eps_Qs_su"), 0.0, w.str());
    }
  }
  return verdict(3, "diagonal projections Q and Q_s are contractive (500 tensors, tol 1e-9)",
                 {{"Q on eps", full},
                  {"Q_s on s,eps", sym},
                  {"Q_s failures certified by grid + Lipschitz bound (p=1, m<=3)", certified}},
                 clock);
}

int criterion4() {
  Clock clock;
  Tally t;
  Tally constants;
  const std::vector<Cell> grid = cells(kClassical, false);
  for (int s = 0; s < 200; ++s) {
    const Cell& c = grid[s % grid.size()];
    auto rng = rng_for(cell("c4", c.p, c.m, c.n, s));
    const FullTensor u = random_tensor(rng, SequenceSpace(c.m, c.p), c.n);
    const CheckReport r = check_sandwich24(u, with_tolerance(1e-6));
    const double expected = c.n == 2 ? 2.0 : 4.5;
    constants.record(r.quantity("constant") == expected, std::abs(r.quantity("constant") - expected),
                     cell("constant", c.p, c.m, c.n, s));
    const double violation =
        std::max({0.0, r.quantity("s_eps") - r.quantity("eps"), r.quantity("eps") - r.quantity("upper")});
    t.record(r.passed, violation, cell("sandwich", c.p, c.m, c.n, s));
  }
  return verdict(4, "s,eps <= eps <= (n^n/n!) s,eps on 200 symmetrized tensors, tol 1e-6",
                 {{"sandwich", t}, {"constants 2 and 4.5", constants}}, clock);
}

int criterion5() {
  Clock clock;
  Tally polar;
  Tally rade;
  for (int s = 0; s < 100; ++s) {
    const int n = 2 + s % 2;
    const int m = 2 + (s / 2) % 3;
    const SequenceSpace space(m, Exponent(2.0));
    auto rng = rng_for(cell("c5", Exponent(2.0), m, n, s));
    const CheckReport r = check_polarization(uniform_list(rng, n, m, -1, 1), space);
    const double diff = r.quantity("max_abs_diff");
    polar.record(diff <= 1e-10, diff, cell("polarization", Exponent(2.0), m, n, s));

    std::uniform_int_distribution<int> count(1, 6);
    RankOneSum terms;
    const int k = count(rng);
    std::uniform_real_distribution<double> scale(-1.0, 1.0);
    for (int j = 0; j < k; ++j) terms.terms.push_back({scale(rng), uniform_list(rng, n, m, -1, 1)});
    const CheckReport q = check_rademacher(terms, space);
    const double qd = q.quantity("max_abs_diff");
    rade.record(qd <= 1e-10, qd, cell("rademacher", Exponent(2.0), m, n, s));
  }
  return verdict(5, "polarization and sign-averaging identities hold coordinatewise within 1e-10",
                 {{"polarization", polar}, {"rademacher", rade}}, clock);
}

int criterion6() {
  Clock clock;
  Tally l35;
  Tally holder;
  const std::vector<Cell> grid = cells(kClassical, false);
  for (int s = 0; s < 1000; ++s) {
    const Cell& c = grid[s % grid.size()];
    auto rng = rng_for(cell("c6", c.p, c.m, c.n, s));
    const CheckReport r = check_lemma35(uniform_list(rng, c.n, c.m, 0, 1), SequenceSpace(c.m, c.p));
    l35.record(r.passed, std::max(0.0, r.quantity("mean_norm") - r.quantity("product_bound")),
               cell("lemma3.5", c.p, c.m, c.n, s));

    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(c.n);
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    std::vector<Exponent> exps;
    double used = 0.0;
    for (int k = 0; k + 1 < c.n; ++k) {
      exps.emplace_back(total / w[k]);
      used += exps.back().reciprocal();
    }
    exps.push_back(used < 1.0 ? Exponent(1.0 / (1.0 - used)) : Exponent::infinity());
    const CheckReport h = check_holder(uniform_list(rng, c.n, c.m, 0, 1), exps);
    holder.record(h.passed, std::max(0.0, h.quantity("lhs") - h.quantity("rhs")),
                  cell("holder", c.p, c.m, c.n, s));
  }
  return verdict(6, "geometric-mean functional bound and Holder inequality within 1e-12",
                 {{"mean functional", l35}, {"holder", holder}}, clock);
}

int criterion7() {
  Clock clock;
  Tally t;
  for (int m : {2, 3}) {
    for (int n : {2, 3}) {
      const long count = static_cast<long>(power_size(m, n));
      for (long a = 0; a < count; ++a) {
        for (long b = 0; b < count; ++b) {
          if (a == b) continue;
          const MultiIndex first = unflatten(a, m, n);
          const MultiIndex second = unflatten(b, m, n);
          for (int s = 0; s < 20; ++s) {
            std::ostringstream where;
            where << "m=" << m << " n=" << n << " pair " << a << "," << b << " #" << s;
            auto rng = rng_for("c7 " + where.str());
            const CheckReport r =
                check_basis_disjointness(first, second, uniform_list(rng, n, m, 0, 1));
            t.record(r.passed && r.quantity("partition_bound") <= 1e-12,
                     r.quantity("partition_bound"), where.str());
          }
        }
      }
    }
  }
  return verdict(7, "partition bound vanishes for every distinct basis pair (m <= 3, n in {2,3})",
                 {{"disjointness", t}}, clock);
}

int criterion8() {
  Clock clock;
  Tally ascent;
  std::vector<Cell> grid = cells(kEndpoints, false);
  for (int m : {2, 3, 4}) grid.push_back({Exponent(2.0), m, 2});
  EngineConfig alternating;
  alternating.method = Method::alternating;
  alternating.starts = 32;
  for (int s = 0; s < 200; ++s) {
    const Cell& c = grid[s % grid.size()];
    auto rng = rng_for(cell("c8", c.p, c.m, c.n, s));
    const FullTensor u = random_tensor(rng, SequenceSpace(c.m, c.p), c.n);
    alternating.seed = derive_seed(kMaster, cell("c8 engine", c.p, c.m, c.n, s));
    const NormEstimate oracle = injective_norm(u);
    const NormEstimate ascended = injective_norm(u, alternating);
    const double rel = std::abs(oracle.value - ascended.value) / std::max(oracle.value, 1e-300);
    std::ostringstream where;
    where << cell("ascent", c.p, c.m, c.n, s) << " oracle=" << oracle.value << " ("
          << to_string(oracle.method) << ") ascent=" << ascended.value;
    ascent.record(oracle.rigor == Rigor::exact && rel <= 1e-6, rel, where.str(),
                  key(c.p, c.m, c.n));
  }

  Tally modulus_oracle;
  for (int s = 0; s < 50; ++s) {
    const int m = 2;
    const int n = 2 + s % 2;
    auto rng = rng_for(cell("c8 modulus", Exponent(1.0), m, n, s));
    const FullTensor u = random_tensor(rng, SequenceSpace(m, Exponent(1.0)), n);
    const std::vector<Vec> duals = uniform_list(rng, n, m, 0, 1);
    const double grid_sup = regular_modulus_oracle(u, duals, 2);
    const double direct = evaluate_multilinear(modulus(u), duals);
    const double diff = std::abs(grid_sup - direct);
    std::ostringstream where;
    where << "tiny m=" << m << " n=" << n << " #" << s << " corner sup=" << grid_sup
          << " modulus value=" << direct;
    modulus_oracle.record(diff <= 1e-12 * std::max(1.0, direct), diff, where.str(),
                          key(Exponent(1.0), m, n));
  }
  return verdict(8, "alternating ascent matches exact oracles; corner grid matches the modulus",
                 {{"ascent vs enumerate/svd (1e-6 rel)", ascent},
                  {"corner-grid sup vs modulus", modulus_oracle}},
                 clock);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int criterion9() {
  Clock clock;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("tnl_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config = root / "suite.json";
  {
    std::ofstream out(config);
    out << R"({"checks": ["holder", "lemma2.1", "lemma2.3", "lemma3.1", "lemma3.2", "lemma3.5",
               "ordering", "polarization", "rademacher", "sandwich2.4", "thm3.3", "thm3.6",
               "uncond"],
  "exponents": [1, 2, "inf", 3], "dims": [2, 3], "orders": [2, 3], "samples": 4,
  "seed": 777})";
  }
  Tally t;
  for (int run = 0; run < 2; ++run) {
    const std::string cmd = std::string("\"") + TNL_CLI_PATH + "\" suite \"" + config.string() +
                            "\" --out \"" + (root / ("run" + std::to_string(run))).string() +
                            "\" > \"" + (root / ("stdout" + std::to_string(run))).string() + "\"";
    const int rc = std::system(cmd.c_str());
    t.record(rc != -1 && fs::exists(root / ("run" + std::to_string(run)) / "report.csv"), 0.0,
             "suite run " + std::to_string(run) + " produced no report");
  }
  for (const char* name : {"report.csv", "report.json"}) {
    const std::string a = slurp(root / "run0" / name);
    const std::string b = slurp(root / "run1" / name);
    t.record(!a.empty() && a == b, a == b ? 0.0 : 1.0, std::string(name) + " differs between runs");
  }
  t.record(slurp(root / "stdout0") == slurp(root / "stdout1"), 0.0, "summary output differs");
  fs::remove_all(root);
  return verdict(9, "suite reports are byte-identical across runs with the same seed",
                 {{"determinism", t}}, clock);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..9>\n";
    return 2;
  }
  switch (std::atoi(argv[1])) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    default:
      std::cerr << "unknown criterion '" << argv[1] << "'\n";
      return 2;
  }
}
