#include "misc/multi_index.hpp"

#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace misc {

bool MultiIndex::all_positive() const {
  for (int a : alpha)
    if (a < 1) return false;
  for (int b : beta)
    if (b < 1) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& idx) {
  os << "[";
  for (int i = 0; i < idx.spatial_dims(); ++i) os << (i ? "," : "") << idx.alpha[i];
  os << ";";
  for (int j = 0; j < idx.stochastic_dims(); ++j) os << (j ? "," : "") << idx.beta[j];
  os << "]";
  return os;
}

bool IndexSet::insert(const MultiIndex& idx) {
  if (idx.spatial_dims() != D_ || idx.stochastic_dims() != N_)
    throw std::invalid_argument("IndexSet::insert: dimension mismatch");
  if (!idx.all_positive())
    throw std::invalid_argument("IndexSet::insert: components must be >= 1");
  return members_.insert(idx).second;
}

bool IndexSet::is_downward_closed() const {
  for (const MultiIndex& idx : members_) {
    for (int k = 0; k < idx.dims(); ++k) {
      if (idx.component(k) > 1 && !contains(idx.backward(k))) return false;
    }
  }
  return true;
}

std::vector<MultiIndex> IndexSet::forward_margin() const {
  std::set<MultiIndex> margin;
  for (const MultiIndex& idx : members_) {
    for (int k = 0; k < idx.dims(); ++k) {
      MultiIndex cand = idx.forward(k);
      if (contains(cand)) continue;
      bool admissible = true;
      for (int j = 0; j < cand.dims() && admissible; ++j) {
        if (cand.component(j) > 1 && !contains(cand.backward(j))) admissible = false;
      }
      if (admissible) margin.insert(std::move(cand));
    }
  }
  return {margin.begin(), margin.end()};
}

IndexSet downward_closure(int D, int N, const std::vector<MultiIndex>& candidates) {
  IndexSet out(D, N);
  std::deque<MultiIndex> queue(candidates.begin(), candidates.end());
  while (!queue.empty()) {
    MultiIndex idx = std::move(queue.front());
    queue.pop_front();
    if (!out.insert(idx)) continue;
    for (int k = 0; k < idx.dims(); ++k) {
      if (idx.component(k) > 1) {
        MultiIndex back = idx.backward(k);
        if (!out.contains(back)) queue.push_back(std::move(back));
      }
    }
  }
  return out;
}

void write_index_set(std::ostream& os, const IndexSet& set) {
  os << set.D() << " " << set.N() << "\n";
  for (const MultiIndex& idx : set.members()) {
    for (int i = 0; i < idx.spatial_dims(); ++i) os << idx.alpha[i] << " ";
    for (int j = 0; j < idx.stochastic_dims(); ++j)
      os << idx.beta[j] << (j + 1 == idx.stochastic_dims() ? "" : " ");
    os << "\n";
  }
}

IndexSet read_index_set(std::istream& is) {
  int D = -1, N = -1;
  if (!(is >> D >> N) || D < 0 || N < 0)
    throw std::runtime_error("index set: malformed header, expected 'D N'");
  IndexSet out(D, N);
  std::string line;
  std::getline(is, line);  // rest of header line
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    MultiIndex idx{std::vector<int>(D), std::vector<int>(N)};
    for (int k = 0; k < D + N; ++k) {
      if (!(ls >> idx.component(k)))
        throw std::runtime_error("index set: expected " + std::to_string(D + N) +
                                 " integers per line, got: " + line);
    }
    out.insert(idx);
  }
  return out;
}

}  // namespace misc
