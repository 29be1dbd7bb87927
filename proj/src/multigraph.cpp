#include "ecm/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ecm {

MultiGraph::MultiGraph(std::size_t n, std::vector<PairMultiplicity> pairs,
                       std::vector<std::uint32_t> self_loops, std::shared_ptr<const DegreeSequence> degrees)
    : n_(n), pairs_(std::move(pairs)), self_loops_(std::move(self_loops)), degrees_(std::move(degrees)) {
  if (!degrees_ || degrees_->size() != n_) throw std::invalid_argument("MultiGraph: degree sequence size mismatch");
  if (self_loops_.size() != n_) throw std::invalid_argument("MultiGraph: self-loop table size mismatch");
}

std::uint32_t MultiGraph::multiplicity(Vertex u, Vertex v) const {
  if (u == v) return 0;
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{u, v},
                             [](const PairMultiplicity& p, const std::pair<Vertex, Vertex>& key) {
                               return p.u < key.first || (p.u == key.first && p.v < key.second);
                             });
  if (it == pairs_.end() || it->u != u || it->v != v) return 0;
  return it->count;
}

bool MultiGraph::is_simple() const {
  return std::all_of(self_loops_.begin(), self_loops_.end(), [](auto s) { return s == 0; }) &&
         std::all_of(pairs_.begin(), pairs_.end(), [](const auto& p) { return p.count == 1; });
}

MultiGraph pair_half_edges(const DegreeSequence& degs, Stream& stream) {
  return pair_half_edges(std::make_shared<const DegreeSequence>(degs), stream);
}

MultiGraph pair_half_edges(std::shared_ptr<const DegreeSequence> shared, Stream& stream) {
  if (!shared) throw std::invalid_argument("pair_half_edges: null degree sequence");
  const DegreeSequence& degs = *shared;
  if (degs.l_n % 2 != 0) throw std::invalid_argument("pair_half_edges: total degree is odd");
  const std::size_t n = degs.size();
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("pair_half_edges: too many vertices");

  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(degs.l_n));
  for (std::size_t v = 0; v < n; ++v)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degs.degrees[v]), static_cast<Vertex>(v));

  for (std::size_t i = stubs.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(stream.below(i));
    std::swap(stubs[i - 1], stubs[j]);
  }

  std::vector<std::uint32_t> loops(n, 0);
  std::vector<std::uint64_t> keys;
  keys.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    Vertex a = stubs[i], b = stubs[i + 1];
    if (a == b) {
      ++loops[a];
      continue;
    }
    if (a > b) std::swap(a, b);
    keys.push_back((static_cast<std::uint64_t>(a) << 32) | b);
  }
  std::sort(keys.begin(), keys.end());

  std::vector<PairMultiplicity> pairs;
  pairs.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    pairs.push_back({static_cast<Vertex>(keys[i] >> 32), static_cast<Vertex>(keys[i] & 0xffffffffU),
                     static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return MultiGraph(n, std::move(pairs), std::move(loops), std::move(shared));
}

}  // namespace ecm
