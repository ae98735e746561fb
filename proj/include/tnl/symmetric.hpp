#pragma once

#include "tnl/tensor.hpp"

#include <map>

namespace tnl {

/// Symmetric tensor in the basis e_{i_1} (x)_s ... (x)_s e_{i_n}, i_1 >= ... >= i_n.
/// The canonical coefficient at a nonincreasing index is the full-array value at
/// that index, so the full array is the orbit-wise constant extension.
class SymmetricTensor {
 public:
  using Canonical = std::map<MultiIndex, double>;

  /// Throws if `full` is not permutation-invariant within `tol`.
  static SymmetricTensor from_full(FullTensor full, double tol = 1e-12);
  /// Keys must be nonincreasing multi-indices of length `order`.
  static SymmetricTensor from_canonical(SequenceSpace space, int order, const Canonical& coeffs);
  /// sum_i a_i e_i^{(x)n}
  static SymmetricTensor diagonal(SequenceSpace space, int order, const Eigen::Ref<const Vec>& a);

  int order() const { return full_.order(); }
  int dim() const { return full_.dim(); }
  const SequenceSpace& space() const { return full_.space(); }
  const FullTensor& full() const { return full_; }

  Canonical canonical() const;
  bool is_diagonal() const { return full_.is_diagonal(); }

 private:
  explicit SymmetricTensor(FullTensor full) : full_(std::move(full)) {}
  FullTensor full_;
};

/// Sorts idx into nonincreasing order.
MultiIndex canonical_index(MultiIndex idx);
/// Number of distinct permutations of idx.
long orbit_size(const MultiIndex& idx);

/// s(u): average of u over all n! permutations of its factors.
SymmetricTensor symmetrize(const FullTensor& u);

/// Largest |b_idx - b_{sigma(idx)}| over all indices and permutations.
double symmetry_defect(const FullTensor& u);

/// P_u(y) = T_u(y, ..., y).
double evaluate_polynomial(const SymmetricTensor& u, const Eigen::Ref<const Vec>& y);

/// Gradient of P_u at y: n * T_u(., y, ..., y).
Vec polynomial_gradient(const SymmetricTensor& u, const Eigen::Ref<const Vec>& y);

/// Q_s; agrees with diagonal_project on the full array.
SymmetricTensor diagonal_project(const SymmetricTensor& u);
SymmetricTensor modulus(const SymmetricTensor& u);

}  // namespace tnl
