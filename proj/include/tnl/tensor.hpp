#pragma once

#include "tnl/lattice.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace tnl {

/// 0-based multi-index (i_1, ..., i_n).
using MultiIndex = std::vector<int>;

/// Row-major flat position of idx in an m^n array (i_1 varies slowest).
Eigen::Index flat_index(std::span<const int> idx, int dim);
MultiIndex unflatten(Eigen::Index flat, int dim, int order);
Eigen::Index power_size(int dim, int order);

/// Dense order-n coefficient array over the basis of a SequenceSpace:
/// u = sum b_{i_1..i_n} e_{i_1} (x) ... (x) e_{i_n}.
class FullTensor {
 public:
  FullTensor(SequenceSpace space, int order);
  FullTensor(SequenceSpace space, int order, Vec coeffs);

  /// x_1 (x) ... (x) x_n
  static FullTensor rank_one(SequenceSpace space, std::span<const Vec> factors);
  /// sum_i a_i e_i^{(x)n}
  static FullTensor diagonal(SequenceSpace space, int order, const Eigen::Ref<const Vec>& a);

  int order() const { return order_; }
  int dim() const { return space_.dim(); }
  const SequenceSpace& space() const { return space_; }
  const Vec& coeffs() const { return coeffs_; }

  double operator()(std::span<const int> idx) const { return coeffs_[flat_index(idx, dim())]; }
  double at(std::initializer_list<int> idx) const;

  bool is_diagonal() const;
  bool is_positive() const { return (coeffs_.array() >= 0.0).all(); }

 private:
  SequenceSpace space_;
  int order_;
  Vec coeffs_;
};

FullTensor operator+(const FullTensor& a, const FullTensor& b);
FullTensor operator*(double s, const FullTensor& a);

/// Outer product x_1 (x) ... (x) x_n as a flat row-major array.
Vec outer_product(std::span<const Vec> factors);

/// T_u(y_1, ..., y_n) = sum b_{i_1..i_n} (y_1)_{i_1} ... (y_n)_{i_n}.
double evaluate_multilinear(const FullTensor& u, std::span<const Vec> args);

/// Gradient of T_u in argument k: the functional obtained by contracting every
/// other mode, so that evaluate_multilinear = args[k] . contract_except(...).
Vec contract_except(const FullTensor& u, std::span<const Vec> args, int k);

/// Q: keeps b_{i..i}, zeroes everything else.
FullTensor diagonal_project(const FullTensor& u);

/// Coefficientwise |b|.
FullTensor modulus(const FullTensor& u);

/// Applies the diagonal isometry a_i -> theta_i a_i to tensor factor `factor`.
/// Throws unless every theta_i is +1 or -1.
FullTensor sign_flip(const FullTensor& u, const Eigen::Ref<const Vec>& theta, int factor = 0);

/// Applies the coordinate multiplier diag(t_j) to factor j, for every j.
FullTensor apply_multipliers(const FullTensor& u, std::span<const Vec> multipliers);

/// Diagonal coefficients (b_{1..1}, ..., b_{m..m}).
Vec diagonal_of(const FullTensor& u);

/// FNV-1a over the coefficient bytes and shape; stable instance identifier.
std::uint64_t tensor_hash(const FullTensor& u);

class SymmetricTensor;

/// One summand lambda * x_1 (x) ... (x) x_n.
struct RankOneTerm {
  double scale = 1.0;
  std::vector<Vec> factors;
};

/// u = sum_k lambda_k x_{1,k} (x) ... (x) x_{n,k}.
struct RankOneSum {
  std::vector<RankOneTerm> terms;

  int order() const;
  FullTensor expand(const SequenceSpace& space) const;
  /// sum_k lambda_k prod_j <y_j, x_{j,k}>, evaluated term by term.
  double evaluate(std::span<const Vec> args) const;
};

/// 2^n-term polarization of x_1 (x)_s ... (x)_s x_n:
///   (1 / (2^n n!)) sum_{delta} delta_1...delta_n (sum_i delta_i x_i)^{(x)n}.
RankOneSum polarization_expand(std::span<const Vec> vectors);

/// Exact sign average recovering sum_k x_{1,k} (x) ... (x) x_{n,k}. Factors
/// 1..n-1 carry independent sign systems s^(1)..s^(n-1); the last factor carries
/// their product, so only k_1 = ... = k_n survives the average. For n = 2 this is
/// the classical single-sequence Rademacher average. All 2^{K(n-1)} sign
/// patterns are enumerated (K = term count); K > 20 or K(n-1) > 24 is rejected.
FullTensor rademacher_average(const RankOneSum& terms, const SequenceSpace& space);

/// Average of a single Rademacher sequence applied to every factor. Equals the
/// plain sum for n = 2 only; kept to document that behaviour.
FullTensor rademacher_average_single_sequence(const RankOneSum& terms,
                                              const SequenceSpace& space);

}  // namespace tnl
