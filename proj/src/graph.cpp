#include "erp/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace erp {

namespace {

constexpr int kCanonicalLimit = 8;  // brute-force permutation bound

std::pair<int, int> norm_edge(int u, int v) {
  return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
}

void append_int(std::string& s, int x) {
  s += std::to_string(x);
}

// Serialization used for canonical keys. Injective on (vertex_count, circles,
// edge multiset) once edges are normalized and sorted.
std::string serialize(int vertex_count, int circles,
                      const std::vector<std::pair<int, int>>& edges, char tag, int extra) {
  std::string s(1, tag);
  append_int(s, vertex_count);
  s += '.';
  append_int(s, circles);
  s += '.';
  append_int(s, extra);
  s += ':';
  for (auto [u, v] : edges) {
    append_int(s, u);
    s += '-';
    append_int(s, v);
    s += ',';
  }
  return s;
}

}  // namespace

void validate(const Multigraph& g) {
  if (g.vertex_count < 0) throw Error(ErrorCode::NegativeCount, "vertex_count < 0");
  if (g.circles < 0) throw Error(ErrorCode::NegativeCount, "circles < 0");
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
      throw Error(ErrorCode::OutOfRangeEndpoint,
                  "edge endpoint outside [0, " + std::to_string(g.vertex_count) + ")");
  }
}

void validate(const Fragment& f) {
  validate(f.graph);
  if (f.graph.circles != 0)
    throw Error(ErrorCode::InvalidInput, "fragments carry no circles");
  std::set<int> seen;
  for (int o : f.open_ends) {
    if (o < 0 || o >= f.graph.vertex_count)
      throw Error(ErrorCode::OutOfRangeEndpoint, "open end out of range");
    if (!seen.insert(o).second)
      throw Error(ErrorCode::InvalidInput, "duplicate open end");
    if (degree(f.graph, o) != 1)
      throw Error(ErrorCode::InvalidInput,
                  "open end " + std::to_string(o) + " must have degree exactly 1");
  }
}

int degree(const Multigraph& g, int v) {
  int d = 0;
  for (auto [u, w] : g.edges) {
    if (u == v) ++d;
    if (w == v) ++d;  // loop counts twice
  }
  return d;
}

int max_degree(const Multigraph& g) {
  int m = 0;
  for (int v = 0; v < g.vertex_count; ++v) m = std::max(m, degree(g, v));
  return m;
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  validate(a);
  validate(b);
  Multigraph g;
  g.vertex_count = a.vertex_count + b.vertex_count;
  g.circles = a.circles + b.circles;
  g.edges = a.edges;
  for (auto [u, v] : b.edges) g.edges.emplace_back(u + a.vertex_count, v + a.vertex_count);
  return g;
}

Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count)
    throw Error(ErrorCode::ShapeMismatch, "permutation size != vertex_count");
  Multigraph out;
  out.vertex_count = g.vertex_count;
  out.circles = g.circles;
  out.edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) out.edges.push_back(norm_edge(perm[u], perm[v]));
  return out;
}

Multigraph glue(const Fragment& f, const Fragment& h) {
  validate(f);
  validate(h);
  const int l = f.label_count();
  if (h.label_count() != l)
    throw Error(ErrorCode::LabelCountMismatch,
                std::to_string(l) + " vs " + std::to_string(h.label_count()) + " open ends");

  // Map internal vertices of f to 0..mf-1 and of h to mf..mf+mh-1.
  auto internal_map = [](const Fragment& fr) {
    std::vector<int> map_to(fr.graph.vertex_count, -1);
    std::set<int> open(fr.open_ends.begin(), fr.open_ends.end());
    int next = 0;
    for (int v = 0; v < fr.graph.vertex_count; ++v)
      if (!open.count(v)) map_to[v] = next++;
    return std::make_pair(map_to, next);
  };
  auto [fmap, mf] = internal_map(f);
  auto [hmap, mh] = internal_map(h);

  Multigraph out;
  out.vertex_count = mf + mh;

  // Per fragment and label slot t: either the slot terminates at an internal
  // vertex (terminal >= 0, in combined ids) or continues through a bare edge
  // to another slot of the same fragment (inner >= 0 holds that label slot).
  struct SlotInfo {
    int terminal = -1;
    int inner = -1;
  };
  auto build_slots = [l](const Fragment& fr, const std::vector<int>& vmap, int offset) {
    std::vector<SlotInfo> slots(l);
    std::vector<int> label_of(fr.graph.vertex_count, -1);
    for (int t = 0; t < l; ++t) label_of[fr.open_ends[t]] = t;
    for (int t = 0; t < l; ++t) {
      int o = fr.open_ends[t];
      for (auto [u, v] : fr.graph.edges) {
        if (u != o && v != o) continue;
        int w = (u == o) ? v : u;
        if (label_of[w] >= 0)
          slots[t].inner = label_of[w];
        else
          slots[t].terminal = vmap[w] + offset;
        break;  // open ends have degree exactly 1
      }
    }
    return slots;
  };
  std::vector<SlotInfo> slots[2] = {build_slots(f, fmap, 0), build_slots(h, hmap, mf)};

  // Internal-internal edges copy over untouched.
  auto copy_internal = [&out](const Fragment& fr, const std::vector<int>& vmap, int offset) {
    for (auto [u, v] : fr.graph.edges)
      if (vmap[u] >= 0 && vmap[v] >= 0)
        out.edges.push_back(norm_edge(vmap[u] + offset, vmap[v] + offset));
  };
  copy_internal(f, fmap, 0);
  copy_internal(h, hmap, mf);

  // Walks: start from a slot anchored at an internal vertex, alternate
  // mate (cross to the other fragment, same label) and inner (bare-edge hop
  // within a fragment) until another internal vertex terminates the edge.
  std::vector<std::vector<bool>> visited(2, std::vector<bool>(l, false));
  for (int side = 0; side < 2; ++side) {
    for (int t = 0; t < l; ++t) {
      if (visited[side][t] || slots[side][t].terminal < 0) continue;
      int v = slots[side][t].terminal;
      int cs = side, ct = t;
      for (;;) {
        visited[cs][ct] = true;
        int ms = 1 - cs, mt = ct;  // mate slot
        visited[ms][mt] = true;
        if (slots[ms][mt].terminal >= 0) {
          out.edges.push_back(norm_edge(v, slots[ms][mt].terminal));
          break;
        }
        cs = ms;
        ct = slots[ms][mt].inner;
      }
    }
  }

  // Leftover slots lie on closed mate/inner cycles: each cycle is a circle.
  out.circles = f.graph.circles + h.graph.circles;
  for (int side = 0; side < 2; ++side) {
    for (int t = 0; t < l; ++t) {
      if (visited[side][t]) continue;
      int cs = side, ct = t;
      do {
        visited[cs][ct] = true;
        int ms = 1 - cs, mt = ct;
        visited[ms][mt] = true;
        cs = ms;
        ct = slots[ms][mt].inner;
      } while (!(cs == side && ct == t));
      ++out.circles;
    }
  }

  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string canonical_key(const Multigraph& g) {
  validate(g);
  if (g.vertex_count > kCanonicalLimit)
    throw Error(ErrorCode::TooLarge,
                "canonical_key is brute force; vertex_count <= " + std::to_string(kCanonicalLimit));
  std::vector<int> perm(g.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(g.edges.size());
    for (auto [u, v] : g.edges) mapped.push_back(norm_edge(perm[u], perm[v]));
    std::sort(mapped.begin(), mapped.end());
    std::string s = serialize(g.vertex_count, g.circles, mapped, 'G', 0);
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best = serialize(0, g.circles, {}, 'G', 0);
  return best;
}

std::string canonical_key(const Fragment& f) {
  validate(f);
  const int l = f.label_count();
  std::set<int> open(f.open_ends.begin(), f.open_ends.end());
  std::vector<int> internal;
  for (int v = 0; v < f.graph.vertex_count; ++v)
    if (!open.count(v)) internal.push_back(v);
  const int m = static_cast<int>(internal.size());
  if (m > kCanonicalLimit)
    throw Error(ErrorCode::TooLarge, "canonical_key fragment internal bound exceeded");

  // Canonical ids: internal vertices take 0..m-1 under a permutation,
  // the label-t open end is pinned at m + t.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> vmap(f.graph.vertex_count, -1);
  for (int t = 0; t < l; ++t) vmap[f.open_ends[t]] = m + t;
  std::string best;
  do {
    for (int i = 0; i < m; ++i) vmap[internal[i]] = order[i];
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(f.graph.edges.size());
    for (auto [u, v] : f.graph.edges) mapped.push_back(norm_edge(vmap[u], vmap[v]));
    std::sort(mapped.begin(), mapped.end());
    std::string s = serialize(m, 0, mapped, 'F', l);
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(order.begin(), order.end()));
  if (best.empty()) best = serialize(0, 0, {}, 'F', l);
  return best;
}

namespace {

// Enumeration helper: all ways to split labels 0..l-1 into bare pairs and
// singles. Each entry: pairs (list of label pairs), singles (list of labels).
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singles;
};

void enumerate_matchings(int l, bool allow_bare, std::vector<int>& state,
                         std::vector<Matching>& out) {
  int first = -1;
  for (int t = 0; t < l; ++t)
    if (state[t] == 0) { first = t; break; }
  if (first < 0) {
    Matching m;
    for (int t = 0; t < l; ++t)
      if (state[t] == 1) m.singles.push_back(t);
    for (int t = 0; t < l; ++t)
      if (state[t] > 1 && state[t] - 2 > t) m.pairs.emplace_back(t, state[t] - 2);
    out.push_back(std::move(m));
    return;
  }
  state[first] = 1;  // single
  enumerate_matchings(l, allow_bare, state, out);
  state[first] = 0;
  if (allow_bare) {
    for (int u = first + 1; u < l; ++u) {
      if (state[u] != 0) continue;
      state[first] = u + 2;  // paired with u (offset encoding)
      state[u] = first + 2;
      enumerate_matchings(l, allow_bare, state, out);
      state[first] = 0;
      state[u] = 0;
    }
  }
}

// Multisets of internal-vertex edge slots of size 0..budget.
void enumerate_edge_multisets(const std::vector<std::pair<int, int>>& slots, int budget,
                              size_t from, std::vector<std::pair<int, int>>& cur,
                              const std::function<void()>& emit) {
  emit();
  if (budget == 0) return;
  for (size_t i = from; i < slots.size(); ++i) {
    cur.push_back(slots[i]);
    enumerate_edge_multisets(slots, budget - 1, i, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Fragment> enumerate_fragments(int labels, int max_internal_vertices,
                                          int max_edges, bool allow_bare_edges) {
  if (labels < 0 || max_internal_vertices < 0 || max_edges < 0)
    throw Error(ErrorCode::NegativeCount, "enumeration bounds must be nonnegative");
  if (max_internal_vertices > kCanonicalLimit)
    throw Error(ErrorCode::TooLarge, "enumeration bound exceeds canonical-key limit");

  std::map<std::string, Fragment> found;

  std::vector<Matching> matchings;
  std::vector<int> state(labels, 0);
  enumerate_matchings(labels, allow_bare_edges, state, matchings);

  for (int vi = 0; vi <= max_internal_vertices; ++vi) {
    // internal ids 0..vi-1, open end of label t at vertex vi + t
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < vi; ++i)
      for (int j = i; j < vi; ++j) slots.emplace_back(i, j);

    for (const Matching& m : matchings) {
      if (!m.singles.empty() && vi == 0) continue;
      int fixed = static_cast<int>(m.pairs.size() + m.singles.size());
      if (fixed > max_edges) continue;

      // every assignment of single open ends to internal anchor vertices
      std::vector<int> anchor(m.singles.size(), 0);
      for (;;) {
        Fragment f;
        f.graph.vertex_count = vi + labels;
        for (auto [a, b] : m.pairs) f.graph.edges.emplace_back(vi + a, vi + b);
        for (size_t s = 0; s < m.singles.size(); ++s)
          f.graph.edges.emplace_back(anchor[s], vi + m.singles[s]);
        for (int t = 0; t < labels; ++t) f.open_ends.push_back(vi + t);

        std::vector<std::pair<int, int>> cur;
        enumerate_edge_multisets(slots, max_edges - fixed, 0, cur, [&]() {
          Fragment g = f;
          for (auto e : cur) g.graph.edges.push_back(e);
          std::string key = canonical_key(g);
          found.emplace(std::move(key), std::move(g));
        });

        // odometer over anchors
        size_t pos = 0;
        while (pos < anchor.size() && ++anchor[pos] == vi) anchor[pos++] = 0;
        if (pos == anchor.size()) break;
        if (anchor.empty()) break;
      }
    }
  }

  std::vector<Fragment> out;
  out.reserve(found.size());
  for (auto& [key, frag] : found) out.push_back(std::move(frag));
  return out;  // std::map iteration order = sorted by canonical key
}

std::vector<Multigraph> graph_corpus(int max_vertices, int max_edges) {
  std::vector<Multigraph> out;
  for (const Fragment& f : enumerate_fragments(0, max_vertices, max_edges, false))
    out.push_back(f.graph);
  return out;
}

Multigraph cycle_graph(int len) {
  if (len < 1) throw Error(ErrorCode::NegativeCount, "cycle length must be >= 1");
  Multigraph g;
  if (len == 1) {
    g.vertex_count = 1;
    g.edges = {{0, 0}};
    return g;
  }
  g.vertex_count = len;
  for (int i = 0; i < len; ++i) g.edges.push_back({std::min(i, (i + 1) % len), std::max(i, (i + 1) % len)});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Multigraph path_graph(int len) {
  if (len < 0) throw Error(ErrorCode::NegativeCount, "path length must be >= 0");
  Multigraph g;
  g.vertex_count = len + 1;
  for (int i = 0; i < len; ++i) g.edges.push_back({i, i + 1});
  return g;
}

Multigraph complete_graph(int n) {
  if (n < 0) throw Error(ErrorCode::NegativeCount, "order must be >= 0");
  Multigraph g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  return g;
}

Multigraph circle_only(int circles) {
  Multigraph g;
  g.circles = circles;
  validate(g);
  return g;
}

}  // namespace erp
