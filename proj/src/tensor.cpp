#include "tnl/tensor.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tnl {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_args(const FullTensor& u, std::span<const Vec> args) {
  if (static_cast<int>(args.size()) != u.order()) {
    throw std::invalid_argument("expected one dual argument per tensor factor");
  }
  for (const Vec& a : args) {
    if (a.size() != u.dim()) throw std::invalid_argument("dual argument dimension mismatch");
  }
}

}  // namespace

Eigen::Index power_size(int dim, int order) {
  Eigen::Index s = 1;
  for (int k = 0; k < order; ++k) s *= dim;
  return s;
}

Eigen::Index flat_index(std::span<const int> idx, int dim) {
  Eigen::Index f = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim) throw std::out_of_range("multi-index entry out of range");
    f = f * dim + i;
  }
  return f;
}

MultiIndex unflatten(Eigen::Index flat, int dim, int order) {
  MultiIndex idx(order);
  for (int k = order - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % dim);
    flat /= dim;
  }
  return idx;
}

FullTensor::FullTensor(SequenceSpace space, int order)
    : FullTensor(space, order, Vec::Zero(power_size(space.dim(), std::max(order, 0)))) {}

FullTensor::FullTensor(SequenceSpace space, int order, Vec coeffs)
    : space_(std::move(space)), order_(order), coeffs_(std::move(coeffs)) {
  if (order_ < 1) throw std::invalid_argument("tensor order must be >= 1");
  const auto expected = power_size(space_.dim(), order_);
  if (coeffs_.size() != expected) {
    throw std::invalid_argument("coefficient array has length " + std::to_string(coeffs_.size()) +
                                ", expected dim^order = " + std::to_string(expected));
  }
  if (!coeffs_.allFinite()) throw std::invalid_argument("coefficients must be finite");
}

FullTensor FullTensor::rank_one(SequenceSpace space, std::span<const Vec> factors) {
  for (const Vec& f : factors) {
    if (f.size() != space.dim()) throw std::invalid_argument("factor dimension mismatch");
  }
  const int order = static_cast<int>(factors.size());
  return FullTensor(std::move(space), order, outer_product(factors));
}

FullTensor FullTensor::diagonal(SequenceSpace space, int order, const Eigen::Ref<const Vec>& a) {
  if (a.size() != space.dim()) throw std::invalid_argument("diagonal length must equal dim");
  const int m = space.dim();
  FullTensor t(std::move(space), order);
  for (int i = 0; i < m; ++i) {
    MultiIndex idx(order, i);
    t.coeffs_[flat_index(idx, m)] = a[i];
  }
  return t;
}

double FullTensor::at(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != order_) throw std::invalid_argument("index arity mismatch");
  return (*this)(std::span<const int>(idx.begin(), idx.size()));
}

bool FullTensor::is_diagonal() const {
  const int m = dim();
  for (Eigen::Index f = 0; f < coeffs_.size(); ++f) {
    if (coeffs_[f] == 0.0) continue;
    const MultiIndex idx = unflatten(f, m, order_);
    for (int k = 1; k < order_; ++k) {
      if (idx[k] != idx[0]) return false;
    }
  }
  return true;
}

FullTensor operator+(const FullTensor& a, const FullTensor& b) {
  if (!(a.space() == b.space()) || a.order() != b.order()) {
    throw std::invalid_argument("cannot add tensors over different spaces or orders");
  }
  return FullTensor(a.space(), a.order(), a.coeffs() + b.coeffs());
}

FullTensor operator*(double s, const FullTensor& a) {
  return FullTensor(a.space(), a.order(), s * a.coeffs());
}

Vec outer_product(std::span<const Vec> factors) {
  if (factors.empty()) throw std::invalid_argument("outer product needs at least one factor");
  Vec w = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) {
    RowMajorMatrix block = w * factors[j].transpose();
    w = Eigen::Map<const Vec>(block.data(), block.size());
  }
  return w;
}

double evaluate_multilinear(const FullTensor& u, std::span<const Vec> args) {
  require_args(u, args);
  const int m = u.dim();
  Vec w = u.coeffs();
  // contract the last mode repeatedly: (m^{k-1} x m) * y_k
  for (int k = u.order() - 1; k >= 0; --k) {
    Eigen::Map<const RowMajorMatrix> block(w.data(), w.size() / m, m);
    w = block * args[k];
  }
  return w[0];
}

Vec contract_except(const FullTensor& u, std::span<const Vec> args, int k) {
  require_args(u, args);
  if (k < 0 || k >= u.order()) throw std::out_of_range("mode index out of range");
  const int m = u.dim();
  Vec w = u.coeffs();
  for (int j = u.order() - 1; j > k; --j) {
    Eigen::Map<const RowMajorMatrix> block(w.data(), w.size() / m, m);
    w = block * args[j];
  }
  for (int j = 0; j < k; ++j) {
    Eigen::Map<const RowMajorMatrix> block(w.data(), m, w.size() / m);
    w = block.transpose() * args[j];
  }
  return w;
}

FullTensor diagonal_project(const FullTensor& u) {
  return FullTensor::diagonal(u.space(), u.order(), diagonal_of(u));
}

Vec diagonal_of(const FullTensor& u) {
  const int m = u.dim();
  Vec a(m);
  for (int i = 0; i < m; ++i) {
    MultiIndex idx(u.order(), i);
    a[i] = u(idx);
  }
  return a;
}

FullTensor modulus(const FullTensor& u) {
  return FullTensor(u.space(), u.order(), u.coeffs().cwiseAbs());
}

FullTensor apply_multipliers(const FullTensor& u, std::span<const Vec> multipliers) {
  if (static_cast<int>(multipliers.size()) != u.order()) {
    throw std::invalid_argument("expected one multiplier per tensor factor");
  }
  for (const Vec& t : multipliers) {
    if (t.size() != u.dim()) throw std::invalid_argument("multiplier dimension mismatch");
  }
  return FullTensor(u.space(), u.order(), u.coeffs().cwiseProduct(outer_product(multipliers)));
}

FullTensor sign_flip(const FullTensor& u, const Eigen::Ref<const Vec>& theta, int factor) {
  if (theta.size() != u.dim()) throw std::invalid_argument("sign vector dimension mismatch");
  if (!(theta.array().abs() == 1.0).all()) {
    throw std::invalid_argument("sign vector entries must be +1 or -1");
  }
  if (factor < 0 || factor >= u.order()) throw std::out_of_range("factor index out of range");
  std::vector<Vec> mult(u.order(), Vec::Ones(u.dim()));
  mult[factor] = theta;
  return apply_multipliers(u, mult);
}

std::uint64_t tensor_hash(const FullTensor& u) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::int32_t shape[2] = {u.order(), u.dim()};
  mix(shape, sizeof shape);
  mix(u.coeffs().data(), sizeof(double) * static_cast<std::size_t>(u.coeffs().size()));
  return h;
}

int RankOneSum::order() const {
  if (terms.empty()) throw std::invalid_argument("empty rank-one sum has no order");
  return static_cast<int>(terms.front().factors.size());
}

FullTensor RankOneSum::expand(const SequenceSpace& space) const {
  FullTensor out(space, order());
  Vec acc = Vec::Zero(out.coeffs().size());
  for (const RankOneTerm& t : terms) {
    if (static_cast<int>(t.factors.size()) != out.order()) {
      throw std::invalid_argument("rank-one terms of mixed order");
    }
    for (const Vec& f : t.factors) {
      if (f.size() != space.dim()) throw std::invalid_argument("factor dimension mismatch");
    }
    acc += t.scale * outer_product(t.factors);
  }
  return FullTensor(space, out.order(), std::move(acc));
}

double RankOneSum::evaluate(std::span<const Vec> args) const {
  double total = 0.0;
  for (const RankOneTerm& t : terms) {
    if (t.factors.size() != args.size()) throw std::invalid_argument("argument count mismatch");
    double prod = t.scale;
    for (std::size_t j = 0; j < args.size(); ++j) prod *= args[j].dot(t.factors[j]);
    total += prod;
  }
  return total;
}

RankOneSum polarization_expand(std::span<const Vec> vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n < 1) throw std::invalid_argument("polarization needs at least one vector");
  if (n > 20) throw std::invalid_argument("polarization order too large");
  const auto m = vectors.front().size();
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  const double prefactor = 1.0 / (std::ldexp(1.0, n) * factorial);

  RankOneSum sum;
  for (std::uint32_t pattern = 0; pattern < (1u << n); ++pattern) {
    Vec x = Vec::Zero(m);
    double sign = 1.0;
    for (int i = 0; i < n; ++i) {
      if (vectors[i].size() != m) throw std::invalid_argument("vectors in different spaces");
      const double delta = (pattern >> i) & 1u ? -1.0 : 1.0;
      sign *= delta;
      x += delta * vectors[i];
    }
    sum.terms.push_back({sign * prefactor, std::vector<Vec>(n, x)});
  }
  return sum;
}

namespace {

void validate_rademacher_input(const RankOneSum& terms, const SequenceSpace& space) {
  const int n = terms.order();
  for (const RankOneTerm& t : terms.terms) {
    if (static_cast<int>(t.factors.size()) != n) {
      throw std::invalid_argument("rank-one terms of mixed order");
    }
    for (const Vec& f : t.factors) {
      if (f.size() != space.dim()) throw std::invalid_argument("factor dimension mismatch");
    }
  }
  if (terms.terms.size() > 20) throw std::invalid_argument("more than 20 terms in sign average");
}

}  // namespace

FullTensor rademacher_average(const RankOneSum& terms, const SequenceSpace& space) {
  validate_rademacher_input(terms, space);
  const int n = terms.order();
  const int count = static_cast<int>(terms.terms.size());
  const int bits = count * (n - 1);
  if (bits > 24) throw std::invalid_argument("sign enumeration exceeds 2^24 patterns");
  const auto m = space.dim();

  Vec acc = Vec::Zero(power_size(m, n));
  std::vector<Vec> factors(n, Vec::Zero(m));
  const std::uint64_t patterns = std::uint64_t{1} << bits;
  for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
    for (Vec& f : factors) f.setZero();
    for (int k = 0; k < count; ++k) {
      const RankOneTerm& t = terms.terms[k];
      double product = t.scale;
      for (int j = 0; j + 1 < n; ++j) {
        const double s = (pattern >> (j * count + k)) & 1u ? -1.0 : 1.0;
        factors[j] += s * t.factors[j];
        product *= s;
      }
      factors[n - 1] += product * t.factors[n - 1];
    }
    acc += outer_product(factors);
  }
  acc /= static_cast<double>(patterns);
  return FullTensor(space, n, std::move(acc));
}

FullTensor rademacher_average_single_sequence(const RankOneSum& terms,
                                              const SequenceSpace& space) {
  validate_rademacher_input(terms, space);
  const int n = terms.order();
  const int count = static_cast<int>(terms.terms.size());
  const auto m = space.dim();
  Vec acc = Vec::Zero(power_size(m, n));
  std::vector<Vec> factors(n, Vec::Zero(m));
  const std::uint64_t patterns = std::uint64_t{1} << count;
  for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
    for (Vec& f : factors) f.setZero();
    for (int k = 0; k < count; ++k) {
      const double s = (pattern >> k) & 1u ? -1.0 : 1.0;
      const RankOneTerm& t = terms.terms[k];
      factors[0] += s * t.scale * t.factors[0];
      for (int j = 1; j < n; ++j) factors[j] += s * t.factors[j];
    }
    acc += outer_product(factors);
  }
  acc /= static_cast<double>(patterns);
  return FullTensor(space, n, std::move(acc));
}

}  // namespace tnl
