#ifndef ERP_GRAPH_HPP
#define ERP_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "erp/error.hpp"

namespace erp {

// Finite undirected multigraph. Loops and parallel edges are allowed, and a
// graph may carry "circles": closed curves with one edge and no vertices.
// Circles only ever appear as gluing output; ordinary inputs have circles = 0.
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // endpoints in [0, vertex_count)
  int circles = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// A graph together with an ordered list of open ends: degree-1 vertices whose
// unique half edge is the gluing interface. Open-end order defines the labels
// 1..l, so isomorphism (and the canonical key) must fix that order.
struct Fragment {
  Multigraph graph;
  std::vector<int> open_ends;

  int label_count() const { return static_cast<int>(open_ends.size()); }
};

void validate(const Multigraph& g);
void validate(const Fragment& f);

// degree counts a loop twice at its vertex
int degree(const Multigraph& g, int v);
int max_degree(const Multigraph& g);

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

// Relabel vertices by perm (old index -> new index); edges normalized u <= v.
Multigraph relabel(const Multigraph& g, const std::vector<int>& perm);

// Glue matching open ends of f and h: neighbors of identically labeled open
// ends get connected and the open ends disappear. Chains of bare edges
// (edges whose both endpoints are open ends) that close without touching an
// internal vertex become circles. Vertices of the result are internal(f)
// first, then internal(h), both in original order.
Multigraph glue(const Fragment& f, const Fragment& h);

// Exact isomorphism-invariant key: minimum serialization over all vertex
// permutations (<= 8 vertices). Fragments permute internal vertices only;
// open ends stay pinned in label order.
std::string canonical_key(const Multigraph& g);
std::string canonical_key(const Fragment& f);

// All fragments with exactly `labels` open ends, at most max_internal_vertices
// internal vertices and at most max_edges edges, up to isomorphism, sorted by
// canonical key. allow_bare_edges admits edges joining two open ends.
// labels = 0 enumerates plain multigraphs (isolated vertices included).
std::vector<Fragment> enumerate_fragments(int labels, int max_internal_vertices,
                                          int max_edges, bool allow_bare_edges);

// Convenience: the labels = 0 corpus as plain multigraphs.
std::vector<Multigraph> graph_corpus(int max_vertices, int max_edges);

// Small named graphs used throughout the tests and fixtures.
Multigraph cycle_graph(int len);     // len >= 1; len 1 = loop, len 2 = double edge
Multigraph path_graph(int len);      // path with len edges, len + 1 vertices
Multigraph complete_graph(int n);
Multigraph circle_only(int circles);

}  // namespace erp

#endif
