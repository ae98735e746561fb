#include "tnl/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tnl {

MultiIndex canonical_index(MultiIndex idx) {
  std::sort(idx.begin(), idx.end(), std::greater<>());
  return idx;
}

long orbit_size(const MultiIndex& idx) {
  long num = 1;
  for (std::size_t k = 2; k <= idx.size(); ++k) num *= static_cast<long>(k);
  MultiIndex sorted = canonical_index(idx);
  std::size_t run = 1;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    if (k < sorted.size() && sorted[k] == sorted[k - 1]) {
      ++run;
    } else {
      for (std::size_t r = 2; r <= run; ++r) num /= static_cast<long>(r);
      run = 1;
    }
  }
  return num;
}

namespace {

// Visits the image of idx under each of the n! permutations.
template <class F>
void for_each_permutation(const MultiIndex& idx, F&& visit) {
  MultiIndex perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  MultiIndex image(idx.size());
  do {
    for (std::size_t k = 0; k < idx.size(); ++k) image[k] = idx[perm[k]];
    visit(image);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

double symmetry_defect(const FullTensor& u) {
  const int m = u.dim();
  double defect = 0.0;
  for (Eigen::Index f = 0; f < u.coeffs().size(); ++f) {
    const MultiIndex idx = unflatten(f, m, u.order());
    const double b = u.coeffs()[f];
    for_each_permutation(idx, [&](const MultiIndex& image) {
      defect = std::max(defect, std::abs(b - u(image)));
    });
  }
  return defect;
}

SymmetricTensor SymmetricTensor::from_full(FullTensor full, double tol) {
  const double defect = symmetry_defect(full);
  if (defect > tol) {
    throw std::invalid_argument("tensor is not permutation-invariant (defect " +
                                std::to_string(defect) + ")");
  }
  return SymmetricTensor(std::move(full));
}

SymmetricTensor SymmetricTensor::from_canonical(SequenceSpace space, int order,
                                                const Canonical& coeffs) {
  FullTensor shape(space, order);
  Vec b = Vec::Zero(shape.coeffs().size());
  const int m = space.dim();
  for (const auto& [idx, value] : coeffs) {
    if (static_cast<int>(idx.size()) != order) {
      throw std::invalid_argument("canonical index has wrong arity");
    }
    if (!std::is_sorted(idx.begin(), idx.end(), std::greater<>())) {
      throw std::invalid_argument("canonical index must be nonincreasing");
    }
    for_each_permutation(idx, [&](const MultiIndex& image) { b[flat_index(image, m)] = value; });
  }
  return SymmetricTensor(FullTensor(std::move(space), order, std::move(b)));
}

SymmetricTensor SymmetricTensor::diagonal(SequenceSpace space, int order,
                                          const Eigen::Ref<const Vec>& a) {
  return SymmetricTensor(FullTensor::diagonal(std::move(space), order, a));
}

SymmetricTensor::Canonical SymmetricTensor::canonical() const {
  Canonical out;
  const int m = dim();
  for (Eigen::Index f = 0; f < full_.coeffs().size(); ++f) {
    MultiIndex idx = unflatten(f, m, order());
    if (std::is_sorted(idx.begin(), idx.end(), std::greater<>())) {
      out.emplace(std::move(idx), full_.coeffs()[f]);
    }
  }
  return out;
}

SymmetricTensor symmetrize(const FullTensor& u) {
  const int m = u.dim();
  const int n = u.order();
  Vec b = Vec::Zero(u.coeffs().size());
  for (Eigen::Index f = 0; f < b.size(); ++f) {
    const MultiIndex idx = unflatten(f, m, n);
    if (!std::is_sorted(idx.begin(), idx.end(), std::greater<>())) continue;
    // average over all n! permutations sigma (repeated entries repeat images)
    double total = 0.0;
    long count = 0;
    for_each_permutation(idx, [&](const MultiIndex& image) {
      total += u(image);
      ++count;
    });
    const double value = total / static_cast<double>(count);
    for_each_permutation(idx, [&](const MultiIndex& image) { b[flat_index(image, m)] = value; });
  }
  return SymmetricTensor::from_full(FullTensor(u.space(), n, std::move(b)), 0.0);
}

double evaluate_polynomial(const SymmetricTensor& u, const Eigen::Ref<const Vec>& y) {
  std::vector<Vec> args(u.order(), y);
  return evaluate_multilinear(u.full(), args);
}

Vec polynomial_gradient(const SymmetricTensor& u, const Eigen::Ref<const Vec>& y) {
  std::vector<Vec> args(u.order(), y);
  return static_cast<double>(u.order()) * contract_except(u.full(), args, 0);
}

SymmetricTensor diagonal_project(const SymmetricTensor& u) {
  return SymmetricTensor::diagonal(u.space(), u.order(), diagonal_of(u.full()));
}

SymmetricTensor modulus(const SymmetricTensor& u) {
  return SymmetricTensor::from_full(modulus(u.full()), 0.0);
}

}  // namespace tnl
