#pragma once

#include "tnl/symmetric.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnl {

enum class Method { automatic, enumerate, svd, alternating, grid };
enum class Rigor { exact, lower_bound, approx };

std::string to_string(Method m);
std::string to_string(Rigor r);
Method parse_method(std::string_view text);

/// Raised when a method cannot be applied to the tensor's exponent or shape.
class IncompatibleMethod : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a brute-force oracle would exceed its enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineConfig {
  Method method = Method::automatic;
  int starts = 32;
  std::uint64_t seed = 0;
  int max_sweeps = 500;
  /// improvement below this for two consecutive sweeps stops an ascent
  double stall_tol = 1e-12;
  /// worker threads for multi-start; 0 picks hardware concurrency
  int threads = 1;
  /// grid points per coordinate for grid-seeded refinement
  int grid_points = 9;
};

struct NormEstimate {
  double value = 0.0;
  /// dual points attaining `value` (n of them, or one for polynomials)
  std::vector<Vec> certificates;
  Method method = Method::enumerate;
  Rigor rigor = Rigor::exact;
  int iterations = 0;
  int starts = 0;
  std::optional<double> gap;
};

/// ||u||_eps = sup |T_u| over the product of dual unit balls.
NormEstimate injective_norm(const FullTensor& u, const EngineConfig& config = {});

/// ||u||_{s,eps} = sup |P_u| over the dual unit ball.
NormEstimate sym_injective_norm(const SymmetricTensor& u, const EngineConfig& config = {});

/// ||u||_{|eps|}: injective norm of modulus(u) over the positive parts of the
/// dual balls.
NormEstimate positive_injective_norm(const FullTensor& u, const EngineConfig& config = {});

/// ||u||_{s,|eps|}: sup of P_{modulus(u)} over the positive part of the dual ball.
NormEstimate positive_sym_injective_norm(const SymmetricTensor& u,
                                         const EngineConfig& config = {});

/// True when `injective_norm` has an exact method for this shape and exponent.
bool has_exact_injective(const SequenceSpace& space, int order);
/// True when `sym_injective_norm` has an exact method for u.
bool has_exact_symmetric(const SymmetricTensor& u);
bool has_exact_positive_symmetric(const SymmetricTensor& u);

/// Brute-force sup of |T_u(y_1..y_n)| over grid points of the boxes
/// |y_k| <= x_k (grid_k points per coordinate, corners included).
/// Throws BudgetExceeded when grid_k^(m n) > 1e7.
double regular_modulus_oracle(const FullTensor& u, std::span<const Vec> positive_duals,
                              int grid_k);

}  // namespace tnl
