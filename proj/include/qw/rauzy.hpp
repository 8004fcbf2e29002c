#pragma once

// Rauzy graphs G_n: vertices L_n, one edge u -> v per w in L_{n+1} with
// prefix u and suffix v. Graphs are only built from saturated horizons.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qw/error.hpp"
#include "qw/factor_index.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

class RauzyGraph {
public:
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    Word witness; // the length-(n+1) factor
  };

  RauzyGraph(std::size_t order, std::size_t horizon, std::vector<Word> vertices, std::vector<Edge> edges)
      : order_(order), horizon_(horizon), vertices_(std::move(vertices)), edges_(std::move(edges)),
        out_(vertices_.size()), in_(vertices_.size()) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      out_[edges_[e].from].push_back(e);
      in_[edges_[e].to].push_back(e);
    }
  }

  std::size_t order() const noexcept { return order_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Word> &vertices() const noexcept { return vertices_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const Word &vertex(std::size_t v) const { return vertices_.at(v); }

  /// Vertices are sorted lexicographically.
  std::optional<std::size_t> find(const Word &u) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), u);
    if (it == vertices_.end() || *it != u)
      return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  const std::vector<std::size_t> &out_edges(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t> &in_edges(std::size_t v) const { return in_.at(v); }
  std::size_t out_degree(std::size_t v) const { return out_.at(v).size(); }
  std::size_t in_degree(std::size_t v) const { return in_.at(v).size(); }

private:
  std::size_t order_;
  std::size_t horizon_;
  std::vector<Word> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

/// G_n of the indexed text (no saturation check).
inline RauzyGraph rauzy_from_index(const FactorIndex &index, std::size_t n) {
  if (n == 0)
    throw DomainError("Rauzy graph order must be positive");
  if (index.size() < n + 1)
    throw HorizonError("text too short for a Rauzy graph of this order");
  auto vcls = index.classes(n);
  auto ecls = index.classes(n + 1);
  std::vector<Word> vertices;
  vertices.reserve(vcls.size());
  for (std::size_t p : vcls.representative)
    vertices.push_back(index.text().slice(p, n));
  std::vector<RauzyGraph::Edge> edges;
  edges.reserve(ecls.size());
  for (std::size_t p : ecls.representative)
    edges.push_back({vcls.class_of[p], vcls.class_of[p + 1], index.text().slice(p, n + 1)});
  return RauzyGraph(n, index.size(), std::move(vertices), std::move(edges));
}

/// G_n from x_{0 -> horizon-1}. Refused (HorizonError) unless p_n and
/// p_{n+1} are unchanged at twice the horizon.
inline RauzyGraph build_rauzy(const WordStream &x, std::size_t n, std::size_t horizon) {
  if (n == 0)
    throw DomainError("Rauzy graph order must be positive");
  if (horizon < 2 * (n + 1))
    throw HorizonError("Rauzy graph of order n needs horizon >= 2(n+1)");
  FactorIndex index(x.prefix(horizon));
  auto here = index.distinct_counts(n + 1);
  auto doubled = FactorIndex(x.prefix(2 * horizon)).distinct_counts(n + 1);
  if (here[n] != doubled[n] || here[n + 1] != doubled[n + 1])
    throw HorizonError("factor sets of length " + std::to_string(n) + " and " + std::to_string(n + 1) +
                       " are not saturated at horizon " + std::to_string(horizon));
  return rauzy_from_index(index, n);
}

/// Doubles the horizon from `start` until build_rauzy accepts it.
inline RauzyGraph build_rauzy_saturated(const WordStream &x, std::size_t n, std::size_t start,
                                        std::size_t max_horizon) {
  for (std::size_t h = std::max(start, 2 * (n + 1)); 2 * h <= max_horizon; h *= 2) {
    try {
      return build_rauzy(x, n, h);
    } catch (const HorizonError &) {
    }
  }
  throw HorizonError("no saturated horizon below " + std::to_string(max_horizon) + " for order " +
                     std::to_string(n));
}

struct SpecialFactors {
  std::vector<Word> left;  // in-degree > 1
  std::vector<Word> right; // out-degree > 1
};

inline SpecialFactors special_factors(const RauzyGraph &g) {
  SpecialFactors s;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.in_degree(v) > 1)
      s.left.push_back(g.vertex(v));
    if (g.out_degree(v) > 1)
      s.right.push_back(g.vertex(v));
  }
  return s;
}

struct EightShape {
  bool eight = false;
  /// Edge counts of the two loops through the center (shorter first); zero
  /// when the graph is not eight-shaped.
  std::size_t short_loop = 0;
  std::size_t long_loop = 0;
};

/// True iff g is exactly two cycles through `center` that share no other vertex.
inline EightShape eight_shape(const RauzyGraph &g, const Word &center) {
  auto c = g.find(center);
  if (!c)
    throw DomainError("center is not a vertex of the Rauzy graph");
  EightShape r;
  if (g.in_degree(*c) != 2 || g.out_degree(*c) != 2)
    return r;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (v != *c && (g.in_degree(v) != 1 || g.out_degree(v) != 1))
      return r;
  std::vector<bool> seen(g.vertex_count(), false);
  seen[*c] = true;
  std::size_t loops[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    std::size_t v = g.edges()[g.out_edges(*c)[static_cast<std::size_t>(k)]].to;
    std::size_t len = 1;
    while (v != *c) {
      if (seen[v])
        return r;
      seen[v] = true;
      v = g.edges()[g.out_edges(v).front()].to;
      ++len;
    }
    loops[k] = len;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    return r; // disconnected remainder
  r.eight = true;
  r.short_loop = std::min(loops[0], loops[1]);
  r.long_loop = std::max(loops[0], loops[1]);
  return r;
}

struct DeconnectResult {
  bool ok = false;
  bool acyclic = false;
  /// Edge count of the longest path in the pruned graph (valid when acyclic).
  std::size_t longest_path = 0;
  std::size_t limit = 0;
};

/// Removes `removed` from g; ok iff what remains is acyclic with every path
/// of at most K' n edges. Longest path via topological order.
inline DeconnectResult deconnect_check(const RauzyGraph &g, const std::vector<Word> &removed, std::size_t k_prime) {
  const std::size_t nv = g.vertex_count();
  std::vector<bool> gone(nv, false);
  for (const auto &w : removed)
    if (auto v = g.find(w))
      gone[*v] = true;
  std::vector<std::size_t> indeg(nv, 0);
  for (const auto &e : g.edges())
    if (!gone[e.from] && !gone[e.to])
      ++indeg[e.to];
  std::vector<std::size_t> order, longest(nv, 0);
  for (std::size_t v = 0; v < nv; ++v)
    if (!gone[v] && indeg[v] == 0)
      order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t v = order[i];
    for (std::size_t e : g.out_edges(v)) {
      std::size_t w = g.edges()[e].to;
      if (gone[w])
        continue;
      longest[w] = std::max(longest[w], longest[v] + 1);
      if (--indeg[w] == 0)
        order.push_back(w);
    }
  }
  std::size_t alive = static_cast<std::size_t>(std::count(gone.begin(), gone.end(), false));
  DeconnectResult r;
  r.limit = k_prime * g.order();
  r.acyclic = order.size() == alive;
  if (r.acyclic) {
    for (std::size_t v : order)
      r.longest_path = std::max(r.longest_path, longest[v]);
    r.ok = r.longest_path <= r.limit;
  }
  return r;
}

/// Graphviz export: left/right special vertices filled, removed vertices dashed.
inline void write_dot(std::ostream &os, const RauzyGraph &g, const Alphabet &alphabet,
                      const std::vector<Word> &removed = {}) {
  std::set<Word> gone(removed.begin(), removed.end());
  os << "digraph G" << g.order() << " {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    bool left = g.in_degree(v) > 1, right = g.out_degree(v) > 1;
    bool dashed = gone.count(g.vertex(v)) > 0;
    os << "  v" << v << " [label=\"" << render(g.vertex(v), alphabet) << "\"";
    if (left || right)
      os << ", fillcolor=" << (left && right ? "gold" : left ? "lightblue" : "lightpink");
    if (left || right || dashed)
      os << ", style=\"" << (left || right ? "filled" : "") << (dashed && (left || right) ? "," : "")
         << (dashed ? "dashed" : "") << "\"";
    os << "];\n";
  }
  for (const auto &e : g.edges()) {
    os << "  v" << e.from << " -> v" << e.to << " [label=\"" << render(e.witness, alphabet) << "\"";
    if (gone.count(g.vertex(e.from)) || gone.count(g.vertex(e.to)))
      os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
}

} // namespace qw
