#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>

namespace tnl {

using Vec = Eigen::VectorXd;

/// Exponent p of an l_p norm, p in [1, inf]. Infinity is a distinct state,
/// so endpoint dispatch never compares against a large finite double.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(double p);

  static Exponent infinity();

  bool is_infinite() const { return infinite_; }
  bool is_one() const { return !infinite_ && value_ == 1.0; }
  bool is_two() const { return !infinite_ && value_ == 2.0; }

  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
  /// +inf for the infinite exponent.
  double value() const;

  /// "inf" or the shortest round-trip decimal form.
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_ = 1.0;
  bool infinite_ = false;
};

/// Parses "inf" / "infinity" or a decimal number >= 1.
Exponent parse_exponent(std::string_view text);

/// q with 1/p + 1/q = 1; 1 <-> inf.
Exponent conjugate_exponent(Exponent p);

/// Weighted l_p lattice on R^m ordered coordinatewise:
///   ||x|| = (sum_i w_i |x_i|^p)^{1/p},  ||x|| = max_i w_i |x_i| for p = inf.
class SequenceSpace {
 public:
  SequenceSpace(int dim, Exponent p);
  SequenceSpace(int dim, Exponent p, Vec weights);

  int dim() const { return dim_; }
  Exponent exponent() const { return exponent_; }
  const Vec& weights() const { return weights_; }
  bool unit_weights() const;

  friend bool operator==(const SequenceSpace& a, const SequenceSpace& b);

 private:
  int dim_;
  Exponent exponent_;
  Vec weights_;
};

/// The dual lattice under the pairing <y, x> = sum_i y_i x_i. For finite q the
/// dual weights are w^(1-q); at the endpoints they are 1/w. dual_of is an
/// involution.
SequenceSpace dual_of(const SequenceSpace& space);

double norm(const SequenceSpace& space, const Eigen::Ref<const Vec>& x);

/// Unweighted l_p norm.
double lp_norm(const Eigen::Ref<const Vec>& x, Exponent p);

inline Vec lattice_abs(const Eigen::Ref<const Vec>& x) { return x.cwiseAbs(); }
inline Vec meet(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& y) {
  return x.cwiseMin(y);
}

/// Signed power sign(a)|a|^p.
double signed_pow(double a, double p);

struct LinearMax {
  double value = 0.0;
  Vec attainer;
};

/// max <c, y> over the unit ball of `ball` (its positive part when `positive`).
/// The value is the dual norm of c (of c^+ when positive) and the attainer
/// reproduces it. Ties: sign(0) = +1 for q = inf, smallest index for q = 1.
LinearMax linear_max_over_ball(const Eigen::Ref<const Vec>& c, const SequenceSpace& ball,
                               bool positive = false);

/// Coordinatewise geometric mean prod_k (x_k)_i^{1/n} of positive functionals.
Vec holder_mean_functional(std::span<const Vec> functionals);

struct HolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = sum_i prod_k |b_i^(k)|, rhs = prod_k ||b^(k)||_{p_k}. Requires
/// sum_k 1/p_k = 1 within 1e-12.
HolderResult holder_check(std::span<const Vec> vectors, std::span<const Exponent> exponents);

}  // namespace tnl
