#include "misc/collocation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace misc::colloc {

int level_to_nodes(int level) {
  if (level < 0) throw std::invalid_argument("level_to_nodes: level must be >= 0");
  if (level == 0) return 0;
  if (level == 1) return 1;
  return (1 << (level - 1)) + 1;
}

int new_point_count(int level) {
  if (level < 1) throw std::invalid_argument("new_point_count: level must be >= 1");
  return level_to_nodes(level) - level_to_nodes(level - 1);
}

std::vector<double> cc_nodes(int level) {
  if (level <= 0) return {};
  const int m = level_to_nodes(level);
  if (m == 1) return {0.0};  // midpoint convention, nested in all higher levels
  std::vector<double> nodes(m);
  for (int j = 0; j < m; ++j)
    nodes[j] = std::cos(j * std::numbers::pi / (m - 1));
  return nodes;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<double> cc_weights(int level) {
  if (level <= 0) return {};
  const std::vector<double> x = cc_nodes(level);
  const int m = static_cast<int>(x.size());
  if (m == 1) return {1.0};

  // Expected value of each Lagrange basis polynomial under the uniform
  // density 1/2 on [-1,1], integrated exactly by a Gauss-Legendre rule of
  // degree >= 2m.
  std::vector<double> gx, gw;
  gauss_legendre(m + 1, gx, gw);

  std::vector<double> out(m, 0.0);
  for (int q = 0; q < m + 1; ++q) {
    for (int j = 0; j < m; ++j) {
      double lj = 1.0;
      for (int k = 0; k < m; ++k) {
        if (k != j) lj *= (gx[q] - x[k]) / (x[j] - x[k]);
      }
      out[j] += 0.5 * gw[q] * lj;
    }
  }
  return out;
}

std::vector<double> map_to_interval(const std::vector<double>& nodes, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("map_to_interval: need a < b");
  std::vector<double> out(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    out[j] = 0.5 * (a + b) + 0.5 * (b - a) * nodes[j];
  return out;
}

double lebesgue_estimate(const std::vector<int>& levels) {
  double prod = 1.0;
  for (int level : levels) {
    if (level < 1) throw std::invalid_argument("lebesgue_estimate: levels must be >= 1");
    const int q = level_to_nodes(level);
    if (q >= 2) prod *= 2.0 / std::numbers::pi * std::log(q - 1.0) + 1.0;
  }
  return prod;
}

TensorGrid tensor_grid(const std::vector<int>& levels,
                       const std::vector<std::pair<double, double>>& intervals) {
  const int n = static_cast<int>(levels.size());
  if (intervals.size() != levels.size())
    throw std::invalid_argument("tensor_grid: levels/intervals size mismatch");

  std::vector<std::vector<double>> nodes(n), weights(n);
  std::size_t cardinality = 1;
  for (int k = 0; k < n; ++k) {
    if (levels[k] < 1) throw std::invalid_argument("tensor_grid: levels must be >= 1");
    nodes[k] = map_to_interval(cc_nodes(levels[k]), intervals[k].first, intervals[k].second);
    weights[k] = cc_weights(levels[k]);
    cardinality *= nodes[k].size();
  }

  TensorGrid grid;
  grid.levels = levels;
  grid.points.reserve(cardinality);
  grid.weights.reserve(cardinality);
  std::vector<int> ord(n, 0);
  for (std::size_t p = 0; p < cardinality; ++p) {
    std::vector<double> pt(n);
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
      pt[k] = nodes[k][ord[k]];
      w *= weights[k][ord[k]];
    }
    grid.points.push_back(std::move(pt));
    grid.weights.push_back(w);
    for (int k = n - 1; k >= 0; --k) {
      if (++ord[k] < static_cast<int>(nodes[k].size())) break;
      ord[k] = 0;
    }
  }
  return grid;
}

NodeKey node_key(int level, int ordinal) {
  if (level < 1) throw std::invalid_argument("node_key: level must be >= 1");
  const int m = level_to_nodes(level);
  if (ordinal < 0 || ordinal >= m) throw std::invalid_argument("node_key: ordinal out of range");
  // Node ordinal j at level l is cos(j pi / 2^{l-1}); level 1's midpoint is
  // cos(pi/2). Reduce the fraction so nested nodes share one key.
  int num = (m == 1) ? 1 : ordinal;
  int den = (m == 1) ? 1 : level - 1;
  while (num != 0 && num % 2 == 0 && den > 0) {
    num /= 2;
    --den;
  }
  if (num == 0) den = 0;
  return NodeKey{num, den};
}

}  // namespace misc::colloc
