#pragma once

#include <compare>
#include <iosfwd>
#include <set>
#include <vector>

namespace misc {

/// A pair [alpha, beta] of positive integer vectors: spatial discretization
/// levels (length D) and stochastic interpolation levels (length N).
struct MultiIndex {
  std::vector<int> alpha;
  std::vector<int> beta;

  MultiIndex() = default;
  MultiIndex(std::vector<int> a, std::vector<int> b)
      : alpha(std::move(a)), beta(std::move(b)) {}

  int spatial_dims() const { return static_cast<int>(alpha.size()); }
  int stochastic_dims() const { return static_cast<int>(beta.size()); }
  int dims() const { return spatial_dims() + stochastic_dims(); }

  /// Component access across the concatenated [alpha, beta] vector.
  int component(int k) const {
    return k < spatial_dims() ? alpha[k] : beta[k - spatial_dims()];
  }
  int& component(int k) {
    return k < spatial_dims() ? alpha[k] : beta[k - spatial_dims()];
  }

  bool all_positive() const;

  /// Returns the index with component k decremented, or an index containing
  /// a zero component (callers handle the null-operator convention).
  MultiIndex backward(int k) const {
    MultiIndex out = *this;
    --out.component(k);
    return out;
  }
  MultiIndex forward(int k) const {
    MultiIndex out = *this;
    ++out.component(k);
    return out;
  }

  static MultiIndex ones(int D, int N) {
    return MultiIndex(std::vector<int>(D, 1), std::vector<int>(N, 1));
  }

  auto operator<=>(const MultiIndex&) const = default;
};

std::ostream& operator<<(std::ostream&, const MultiIndex&);

/// A finite downward-closed collection of multi-indices with membership and
/// frontier queries. Members are kept sorted so iteration is deterministic.
class IndexSet {
 public:
  IndexSet(int D, int N) : D_(D), N_(N) {}

  int D() const { return D_; }
  int N() const { return N_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(const MultiIndex& idx) const { return members_.count(idx) > 0; }
  bool insert(const MultiIndex& idx);

  const std::set<MultiIndex>& members() const { return members_; }

  /// Every member has all its backward neighbors (where component > 1) in the set.
  bool is_downward_closed() const;

  /// Indices outside the set whose backward neighbors are all inside
  /// (the candidates an adaptive construction would consider next).
  std::vector<MultiIndex> forward_margin() const;

  bool operator==(const IndexSet& other) const {
    return D_ == other.D_ && N_ == other.N_ && members_ == other.members_;
  }

 private:
  int D_;
  int N_;
  std::set<MultiIndex> members_;
};

/// Minimal downward-closed superset of the given candidates.
IndexSet downward_closure(int D, int N, const std::vector<MultiIndex>& candidates);

/// Line-based text format: header "D N", then one index per line as D+N integers.
void write_index_set(std::ostream&, const IndexSet&);
IndexSet read_index_set(std::istream&);

}  // namespace misc
