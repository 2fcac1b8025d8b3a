#pragma once

#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

namespace misc::colloc {

/// Level-to-nodes function for the nested Clenshaw-Curtis family:
/// m(0) = 0, m(1) = 1, m(l) = 2^{l-1} + 1.
int level_to_nodes(int level);

/// Number of collocation points added when refining level-1 -> level
/// (1 for level 1, 2 for level 2, 2^{level-2} beyond).
int new_point_count(int level);

/// Clenshaw-Curtis points on [-1,1] in cosine order,
/// y_j = cos((j-1) pi / (m-1)), j = 1..m. Level 1 is the midpoint {0};
/// level 0 yields the empty list (null-operator convention).
std::vector<double> cc_nodes(int level);

/// Quadrature weights for the uniform measure on [-1,1]: expected values of
/// the Lagrange basis polynomials (density 1/2 absorbed, so they sum to 1).
std::vector<double> cc_weights(int level);

/// Affine image of [-1,1] nodes on [a,b]; weights are unchanged since the
/// uniform density normalization is interval-independent.
std::vector<double> map_to_interval(const std::vector<double>& nodes, double a, double b);

/// Product of the per-direction Lebesgue-constant bounds:
/// 1 for a single node, (2/pi) log(q-1) + 1 for q >= 2 nodes.
double lebesgue_estimate(const std::vector<int>& levels);

struct TensorGrid {
  std::vector<int> levels;
  std::vector<std::vector<double>> points;  // cardinality x N
  std::vector<double> weights;
  std::size_t cardinality() const { return points.size(); }
};

/// Cartesian product of per-direction Clenshaw-Curtis rules mapped onto the
/// given intervals, with tensor-product weights.
TensorGrid tensor_grid(const std::vector<int>& levels,
                       const std::vector<std::pair<double, double>>& intervals);

/// Canonical identifier of a Clenshaw-Curtis node that is stable across
/// levels: the node cos(num * pi / 2^log2_den) in lowest terms. Nested reuse
/// of cached point evaluations keys on this, never on float coordinates.
struct NodeKey {
  int num = 0;
  int log2_den = 0;
  auto operator<=>(const NodeKey&) const = default;
};

NodeKey node_key(int level, int ordinal);

/// Gauss-Legendre rule on [-1,1] (reference rule for exact integration of
/// Lagrange basis polynomials; exact through degree 2n-1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace misc::colloc
