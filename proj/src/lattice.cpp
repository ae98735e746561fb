#include "tnl/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tnl {

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("exponent must satisfy p >= 1");
  }
  if (std::isinf(p)) {
    infinite_ = true;
    value_ = 0.0;
  } else {
    value_ = p;
  }
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = 0.0;
  return e;
}

double Exponent::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, end);
}

Exponent parse_exponent(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return Exponent::infinity();
  double p = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent(p);
}

Exponent conjugate_exponent(Exponent p) {
  if (p.is_infinite()) return Exponent(1.0);
  if (p.is_one()) return Exponent::infinity();
  return Exponent(p.value() / (p.value() - 1.0));
}

SequenceSpace::SequenceSpace(int dim, Exponent p)
    : SequenceSpace(dim, p, Vec::Ones(std::max(dim, 0))) {}

SequenceSpace::SequenceSpace(int dim, Exponent p, Vec weights)
    : dim_(dim), exponent_(p), weights_(std::move(weights)) {
  if (dim_ < 1) throw std::invalid_argument("sequence space needs dim >= 1");
  if (weights_.size() != dim_) throw std::invalid_argument("weights length must equal dim");
  if (!(weights_.array() > 0.0).all() || !weights_.allFinite()) {
    throw std::invalid_argument("weights must be finite and strictly positive");
  }
}

bool SequenceSpace::unit_weights() const { return (weights_.array() == 1.0).all(); }

bool operator==(const SequenceSpace& a, const SequenceSpace& b) {
  return a.dim_ == b.dim_ && a.exponent_ == b.exponent_ && a.weights_ == b.weights_;
}

SequenceSpace dual_of(const SequenceSpace& space) {
  const Exponent p = space.exponent();
  const Exponent q = conjugate_exponent(p);
  if (p.is_infinite() || p.is_one()) {
    return SequenceSpace(space.dim(), q, space.weights().cwiseInverse());
  }
  // unit weights stay exactly 1 so the dual of l_p^m is literally l_q^m
  if (space.unit_weights()) return SequenceSpace(space.dim(), q);
  Vec w = space.weights().array().pow(1.0 - q.value()).matrix();
  return SequenceSpace(space.dim(), q, std::move(w));
}

double norm(const SequenceSpace& space, const Eigen::Ref<const Vec>& x) {
  if (x.size() != space.dim()) throw std::invalid_argument("vector dimension mismatch");
  const Exponent p = space.exponent();
  const auto& w = space.weights();
  if (p.is_infinite()) {
    return x.size() == 0 ? 0.0 : w.cwiseProduct(x.cwiseAbs()).maxCoeff();
  }
  if (p.is_one()) return w.dot(x.cwiseAbs());
  if (p.is_two()) return std::sqrt(w.dot(x.cwiseAbs2()));
  const double pv = p.value();
  // scale by the largest entry so |x_i|^p cannot under- or overflow
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double s = (w.array() * (x.cwiseAbs().array() / scale).pow(pv)).sum();
  return scale * std::pow(s, 1.0 / pv);
}

double lp_norm(const Eigen::Ref<const Vec>& x, Exponent p) {
  if (x.size() == 0) return 0.0;
  return norm(SequenceSpace(static_cast<int>(x.size()), p), x);
}

double signed_pow(double a, double p) {
  if (a == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(a), p), a);
}

LinearMax linear_max_over_ball(const Eigen::Ref<const Vec>& c, const SequenceSpace& ball,
                               bool positive) {
  const int m = ball.dim();
  if (c.size() != m) throw std::invalid_argument("functional dimension mismatch");
  const Exponent q = ball.exponent();
  const Vec& v = ball.weights();
  LinearMax out;
  out.attainer = Vec::Zero(m);

  if (q.is_infinite()) {
    // box |y_i| <= 1/v_i: every coordinate at its bound, sign(0) = +1
    for (int i = 0; i < m; ++i) {
      if (positive) {
        out.attainer[i] = c[i] >= 0.0 ? 1.0 / v[i] : 0.0;
      } else {
        out.attainer[i] = (c[i] >= 0.0 ? 1.0 : -1.0) / v[i];
      }
    }
    out.value = c.dot(out.attainer);
    return out;
  }

  if (q.is_one()) {
    // cross-polytope sum v_i |y_i| <= 1: best vertex, smallest index on ties
    int best = 0;
    double best_ratio = -1.0;
    for (int i = 0; i < m; ++i) {
      const double r = (positive ? std::max(c[i], 0.0) : std::abs(c[i])) / v[i];
      if (r > best_ratio) {
        best_ratio = r;
        best = i;
      }
    }
    if (positive && c[best] < 0.0) return out;  // c <= 0 everywhere, value 0
    out.attainer[best] = (c[best] >= 0.0 ? 1.0 : -1.0) / v[best];
    out.value = best_ratio;
    return out;
  }

  // 1 < q < inf: substitute z_i = v_i^{1/q} y_i to reach the unweighted ball
  const double qv = q.value();
  const double pv = conjugate_exponent(q).value();
  Vec scale = v.array().pow(-1.0 / qv).matrix();
  Vec d = c.cwiseProduct(scale);
  if (positive) d = d.cwiseMax(0.0);
  const double dn = lp_norm(d, Exponent(pv));
  if (dn == 0.0) return out;
  for (int i = 0; i < m; ++i) {
    const double z = signed_pow(d[i] / dn, pv - 1.0);
    out.attainer[i] = z * scale[i];
  }
  out.value = dn;
  return out;
}

Vec holder_mean_functional(std::span<const Vec> functionals) {
  if (functionals.empty()) throw std::invalid_argument("need at least one functional");
  const auto m = functionals.front().size();
  const double inv_n = 1.0 / static_cast<double>(functionals.size());
  Vec out = Vec::Ones(m);
  for (const Vec& f : functionals) {
    if (f.size() != m) throw std::invalid_argument("functional dimension mismatch");
    if ((f.array() < 0.0).any()) {
      throw std::invalid_argument("geometric mean needs positive functionals");
    }
    out.array() *= f.array().pow(inv_n);
  }
  return out;
}

HolderResult holder_check(std::span<const Vec> vectors, std::span<const Exponent> exponents) {
  if (vectors.empty() || vectors.size() != exponents.size()) {
    throw std::invalid_argument("need one exponent per vector");
  }
  double recip = 0.0;
  for (const Exponent& p : exponents) recip += p.reciprocal();
  if (std::abs(recip - 1.0) > 1e-12) {
    throw std::invalid_argument("exponents are not conjugate: sum of 1/p_k != 1");
  }
  const auto m = vectors.front().size();
  Vec prod = Vec::Ones(m);
  HolderResult r;
  r.rhs = 1.0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != m) throw std::invalid_argument("vector dimension mismatch");
    prod.array() *= vectors[k].array().abs();
    r.rhs *= lp_norm(vectors[k], exponents[k]);
  }
  r.lhs = prod.sum();
  r.holds = r.lhs <= r.rhs + 1e-12;
  return r;
}

}  // namespace tnl
