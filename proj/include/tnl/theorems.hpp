#pragma once

#include "tnl/norms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tnl {

struct InstanceInfo {
  std::string p = "-";  ///< exponent, "inf", or "-" when the check has none
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int index = 0;
  std::string tensor_hash;  ///< hex, empty when the instance has no tensor
};

/// Outcome of one verification routine on one instance.
struct CheckReport {
  std::string check_id;
  InstanceInfo instance;
  std::vector<std::pair<std::string, double>> quantities;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, std::vector<double>>> witnesses;

  /// Throws std::out_of_range for an unknown name.
  double quantity(std::string_view name) const;
};

/// Knobs shared by the norm-based checks.
struct CheckOptions {
  EngineConfig engine;
  /// replaces the check's default tolerance
  std::optional<double> tolerance;
};

/// Four norms of sum_i a_i e_i^{(x)n}; passes when they agree pairwise (relative).
CheckReport check_diagonal_four_norms(const Vec& a, const SequenceSpace& space, int order,
                                      const CheckOptions& options = {});

/// ||sum theta_i a_i e_i^{(x)n}|| in the eps and s,eps norms for every sign
/// pattern theta; passes when each norm is constant over the patterns.
CheckReport check_diagonal_unconditionality(const Vec& a, const SequenceSpace& space, int order,
                                            const CheckOptions& options = {});

/// ||Q(u)||_eps <= ||u||_eps.
CheckReport check_projection_contractive(const FullTensor& u, const CheckOptions& options = {});

/// ||Q_s(s(u))||_{s,eps} <= ||s(u)||_{s,eps}.
CheckReport check_sym_projection_contractive(const FullTensor& u,
                                             const CheckOptions& options = {});

/// Evaluates the partition bound certifying that the basis tensors at two
/// distinct multi-indices have zero meet at the positive dual points.
CheckReport check_basis_disjointness(const MultiIndex& first, const MultiIndex& second,
                                     std::span<const Vec> positive_duals);

/// Dual norm of the geometric-mean functional <= prod ||x_k||^{1/n}.
CheckReport check_lemma35(std::span<const Vec> positive_duals, const SequenceSpace& space);

CheckReport check_holder(std::span<const Vec> vectors, std::span<const Exponent> exponents);

/// Polarization expansion equals the symmetrized rank-one tensor coordinatewise.
CheckReport check_polarization(std::span<const Vec> vectors, const SequenceSpace& space);

/// Sign averaging reproduces the plain rank-one sum coordinatewise.
CheckReport check_rademacher(const RankOneSum& terms, const SequenceSpace& space);

/// ||s(u)||_{s,eps} <= ||s(u)||_eps <= (n^n / n!) ||s(u)||_{s,eps}.
CheckReport check_sandwich24(const FullTensor& u, const CheckOptions& options = {});

/// ||u||_eps <= ||u||_{|eps|} and ||s(u)||_{s,eps} <= ||s(u)||_{s,|eps|}.
CheckReport check_norm_ordering(const FullTensor& u, const CheckOptions& options = {});

/// Coordinate multipliers T_j with ||T_j|| <= 1 never increase the eps norm,
/// and a single T applied to every factor never increases the s,eps norm
/// beyond ||T||^n.
CheckReport check_multiplier_monotonicity(const FullTensor& u, std::span<const Vec> multipliers,
                                          const CheckOptions& options = {});

/// The grid sup never exceeds T_{modulus(u)} at the same dual points, and the
/// atomic partition of the arguments attains it.
CheckReport check_regular_modulus(const FullTensor& u, std::span<const Vec> positive_duals,
                                  int grid_k);

/// Check ids understood by run_check / run_suite, sorted.
const std::vector<std::string>& known_checks();
bool is_known_check(std::string_view id);

/// One instance of a named check. Unset overrides are drawn from `seed`.
struct InstanceSpec {
  Exponent p = Exponent(1.0);
  int m = 2;
  int n = 2;
  std::uint64_t seed = 0;
  int index = 0;
  std::optional<Vec> diagonal;
  std::optional<FullTensor> tensor;
  std::optional<std::pair<MultiIndex, MultiIndex>> index_pair;
  CheckOptions options;
};

/// Throws std::invalid_argument for an unknown check id.
CheckReport run_check(const std::string& check_id, const InstanceSpec& spec);

/// True when equality-style checks can run at (p, n): exact oracles exist.
bool exact_exponent(Exponent p, int order);

struct SuiteConfig {
  std::vector<std::string> checks;
  std::vector<Exponent> exponents{Exponent(1.0), Exponent(2.0), Exponent::infinity()};
  std::vector<int> dims{2, 3, 4};
  std::vector<int> orders{2, 3};
  int samples = 100;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  Method method = Method::automatic;
  int starts = 32;
  /// instance-level workers; 0 picks hardware concurrency
  int threads = 0;
};

struct SuiteSummary {
  int checks = 0;
  int instances = 0;
  int failures = 0;
  const CheckReport* first_failure = nullptr;
};

/// Runs every configured check over the exponent/dim/order grid. Reports are
/// ordered by check id, then instance index; the output depends only on the
/// config. Throws std::invalid_argument for unknown check ids.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

SuiteSummary summarize(const std::vector<CheckReport>& reports);

}  // namespace tnl
