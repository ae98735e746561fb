#include "tnl/norms.hpp"

#include <cmath>

namespace tnl {

double regular_modulus_oracle(const FullTensor& u, std::span<const Vec> positive_duals,
                              int grid_k) {
  const int n = u.order();
  const int m = u.dim();
  if (static_cast<int>(positive_duals.size()) != n) {
    throw std::invalid_argument("expected one dual point per tensor factor");
  }
  for (const Vec& x : positive_duals) {
    if (x.size() != m) throw std::invalid_argument("dual point dimension mismatch");
    if ((x.array() < 0.0).any()) throw std::invalid_argument("dual points must be positive");
  }
  if (grid_k < 2) throw std::invalid_argument("grid needs at least the two corners per axis");
  const int digits = m * n;
  if (std::pow(static_cast<double>(grid_k), digits) > 1e7) {
    throw BudgetExceeded("grid_k^(m n) exceeds 1e7 points");
  }

  // coordinate (j, i) runs over grid_k points of [-x_j(i), x_j(i)]
  std::vector<int> digit(digits, 0);
  std::vector<Vec> args(n, Vec::Zero(m));
  auto level = [grid_k](int d, double half_width) {
    return half_width * (2.0 * d / (grid_k - 1) - 1.0);
  };
  double best = 0.0;
  while (true) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) args[j][i] = level(digit[j * m + i], positive_duals[j][i]);
    }
    best = std::max(best, std::abs(evaluate_multilinear(u, args)));
    int d = 0;
    while (d < digits && ++digit[d] == grid_k) digit[d++] = 0;
    if (d == digits) break;
  }
  return best;
}

}  // namespace tnl
