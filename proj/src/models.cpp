#include "erp/models.hpp"

#include <algorithm>
#include <functional>

namespace erp {

namespace {

Complex cpow_int(Complex base, int e) {
  Complex out(1.0, 0.0);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// ---- shared bucket-elimination engine -------------------------------------
//
// Contracts a product of dense factors over variables with a common domain,
// summing out one variable at a time along a greedy minimum-boundary order.
// Tables are mixed-radix little-endian in the order of `vars`.

struct Factor {
  std::vector<int> vars;        // strictly increasing
  std::vector<Complex> table;   // size = domain^vars.size()
};

Complex contract_all(std::vector<Factor> factors, int domain, int var_count) {
  Complex scalar(1.0, 0.0);
  auto absorb_scalars = [&]() {
    for (auto it = factors.begin(); it != factors.end();) {
      if (it->vars.empty()) {
        scalar *= it->table[0];
        it = factors.erase(it);
      } else {
        ++it;
      }
    }
  };
  absorb_scalars();
  if (domain == 0) return factors.empty() ? scalar : Complex(0.0, 0.0);

  std::vector<bool> alive(var_count, false);
  for (const Factor& f : factors)
    for (int v : f.vars) alive[v] = true;

  for (;;) {
    // pick the live variable whose elimination touches the fewest variables
    int best_var = -1;
    size_t best_size = 0;
    for (int v = 0; v < var_count; ++v) {
      if (!alive[v]) continue;
      std::vector<int> joined;
      for (const Factor& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end())
          for (int w : f.vars)
            if (std::find(joined.begin(), joined.end(), w) == joined.end())
              joined.push_back(w);
      if (best_var < 0 || joined.size() < best_size) {
        best_var = v;
        best_size = joined.size();
      }
    }
    if (best_var < 0) break;

    std::vector<Factor> touching;
    for (auto it = factors.begin(); it != factors.end();) {
      if (std::find(it->vars.begin(), it->vars.end(), best_var) != it->vars.end()) {
        touching.push_back(std::move(*it));
        it = factors.erase(it);
      } else {
        ++it;
      }
    }
    std::vector<int> joined;
    for (const Factor& f : touching)
      for (int w : f.vars)
        if (std::find(joined.begin(), joined.end(), w) == joined.end()) joined.push_back(w);
    std::sort(joined.begin(), joined.end());

    std::vector<int> kept;
    for (int w : joined)
      if (w != best_var) kept.push_back(w);

    size_t joined_size = 1, kept_size = 1;
    for (size_t i = 0; i < joined.size(); ++i) joined_size *= domain;
    for (size_t i = 0; i < kept.size(); ++i) kept_size *= domain;

    Factor merged;
    merged.vars = kept;
    merged.table.assign(kept_size, Complex(0.0, 0.0));

    std::vector<int> assign(joined.size(), 0);
    // per touching factor, position of each of its vars inside `joined`
    std::vector<std::vector<int>> positions(touching.size());
    for (size_t t = 0; t < touching.size(); ++t)
      for (int w : touching[t].vars)
        positions[t].push_back(
            static_cast<int>(std::find(joined.begin(), joined.end(), w) - joined.begin()));
    std::vector<int> kept_pos;
    for (int w : kept)
      kept_pos.push_back(
          static_cast<int>(std::find(joined.begin(), joined.end(), w) - joined.begin()));

    for (size_t flat = 0; flat < joined_size; ++flat) {
      Complex prod(1.0, 0.0);
      for (size_t t = 0; t < touching.size(); ++t) {
        size_t idx = 0, stride = 1;
        for (int pos : positions[t]) {
          idx += static_cast<size_t>(assign[pos]) * stride;
          stride *= domain;
        }
        prod *= touching[t].table[idx];
      }
      size_t kidx = 0, kstride = 1;
      for (int pos : kept_pos) {
        kidx += static_cast<size_t>(assign[pos]) * kstride;
        kstride *= domain;
      }
      merged.table[kidx] += prod;

      size_t p = 0;
      while (p < assign.size() && ++assign[p] == domain) assign[p++] = 0;
      if (p == assign.size()) break;
    }

    alive[best_var] = false;
    if (merged.vars.empty())
      scalar *= merged.table[0];
    else
      factors.push_back(std::move(merged));
  }
  absorb_scalars();
  return scalar;
}

// ---- vertex model evaluators ----------------------------------------------

Complex eval_vertex_reference(const VertexModel& m, const Multigraph& g) {
  const int n = m.colors();
  if (g.vertex_count == 0) return Complex(1.0, 0.0);
  if (n == 0) return Complex(0.0, 0.0);
  std::vector<int> psi(g.vertex_count, 0);
  Complex total(0.0, 0.0);
  for (;;) {
    Complex prod(1.0, 0.0);
    for (int v = 0; v < g.vertex_count; ++v) prod *= m.a[psi[v]];
    for (auto [u, v] : g.edges) prod *= m.b(psi[u], psi[v]);
    total += prod;
    // lexicographic: last vertex varies fastest
    int p = g.vertex_count - 1;
    while (p >= 0 && ++psi[p] == n) psi[p--] = 0;
    if (p < 0) break;
  }
  return total;
}

Complex eval_vertex_optimized(const VertexModel& m, const Multigraph& g) {
  const int n = m.colors();
  std::vector<Factor> factors;
  for (int v = 0; v < g.vertex_count; ++v) {
    Factor f;
    f.vars = {v};
    f.table.resize(n);
    for (int c = 0; c < n; ++c) f.table[c] = m.a[c];
    factors.push_back(std::move(f));
  }
  for (auto [u, v] : g.edges) {
    Factor f;
    if (u == v) {
      f.vars = {u};
      f.table.resize(n);
      for (int c = 0; c < n; ++c) f.table[c] = m.b(c, c);
    } else {
      f.vars = {std::min(u, v), std::max(u, v)};
      f.table.resize(static_cast<size_t>(n) * n);
      for (int cu = 0; cu < n; ++cu)
        for (int cv = 0; cv < n; ++cv)
          f.table[static_cast<size_t>(cv) * n + cu] = m.b(cu, cv);  // (vars[0]=min) fastest
    }
    factors.push_back(std::move(f));
  }
  return contract_all(std::move(factors), n, g.vertex_count);
}

// ---- edge model evaluators ------------------------------------------------

using MomentFn = std::function<Complex(const std::vector<int>&)>;

Complex eval_edge_reference(const MomentFn& h, int k, const Multigraph& g) {
  const int m = g.edge_count();
  if (m == 0) {
    Complex prod(1.0, 0.0);
    std::vector<int> zero(static_cast<size_t>(std::max(k, 0)), 0);
    for (int v = 0; v < g.vertex_count; ++v) prod *= h(zero);
    return prod;
  }
  if (k == 0) return Complex(0.0, 0.0);
  std::vector<int> phi(m, 0);
  Complex total(0.0, 0.0);
  std::vector<std::vector<int>> alpha(g.vertex_count, std::vector<int>(k, 0));
  for (;;) {
    for (auto& a : alpha) std::fill(a.begin(), a.end(), 0);
    for (int e = 0; e < m; ++e) {
      alpha[g.edges[e].first][phi[e]] += 1;
      alpha[g.edges[e].second][phi[e]] += 1;  // loop: same vertex twice
    }
    Complex prod(1.0, 0.0);
    for (int v = 0; v < g.vertex_count; ++v) prod *= h(alpha[v]);
    total += prod;
    int p = m - 1;
    while (p >= 0 && ++phi[p] == k) phi[p--] = 0;
    if (p < 0) break;
  }
  return total;
}

Complex eval_edge_optimized(const MomentFn& h, int k, const Multigraph& g) {
  // variables = edges; one factor per vertex over its distinct incident edges
  std::vector<Factor> factors;
  for (int v = 0; v < g.vertex_count; ++v) {
    std::vector<int> incident;       // distinct edge ids
    std::vector<int> multiplicity;   // 2 for loops
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [x, y] = g.edges[e];
      if (x != v && y != v) continue;
      incident.push_back(e);
      multiplicity.push_back(x == y ? 2 : 1);
    }
    Factor f;
    f.vars = incident;
    size_t size = 1;
    for (size_t i = 0; i < incident.size(); ++i) size *= static_cast<size_t>(std::max(k, 1));
    if (incident.empty()) size = 1;
    f.table.resize(size);
    if (k == 0 && !incident.empty()) {
      // no colorings exist; contract_all already returns 0 for live vars
      f.table.assign(size, Complex(0.0, 0.0));
      factors.push_back(std::move(f));
      continue;
    }
    std::vector<int> assign(incident.size(), 0);
    std::vector<int> alpha(static_cast<size_t>(std::max(k, 0)), 0);
    for (size_t flat = 0; flat < size; ++flat) {
      std::fill(alpha.begin(), alpha.end(), 0);
      for (size_t i = 0; i < incident.size(); ++i) alpha[assign[i]] += multiplicity[i];
      f.table[flat] = h(alpha);
      size_t p = 0;
      while (p < assign.size() && ++assign[p] == k) assign[p++] = 0;
      if (p == assign.size()) break;
    }
    factors.push_back(std::move(f));
  }
  return contract_all(std::move(factors), k, g.edge_count());
}

Complex circle_factor(int k, int circles) {
  Complex f(1.0, 0.0);
  for (int i = 0; i < circles; ++i) f *= static_cast<double>(k);
  return f;
}

}  // namespace

void validate(const VertexModel& m, const Tolerance& tol) {
  if (m.b.rows() != m.colors() || m.b.cols() != m.colors())
    throw Error(ErrorCode::ShapeMismatch, "b must be n x n with n = len(a)");
  const double scale = 1.0 + m.b.norm();
  if ((m.b - m.b.transpose()).norm() > tol.equality * scale)
    throw Error(ErrorCode::NotSymmetric, "b must be symmetric");
  for (int i = 0; i < m.colors(); ++i)
    if (std::abs(m.a[i]) == 0.0)
      throw Error(ErrorCode::InvalidModel, "vertex weight a[" + std::to_string(i) + "] is zero");
}

void validate(const EdgeModelEval& h, const Tolerance& tol, bool distinct_points) {
  if (h.k < 0) throw Error(ErrorCode::NegativeCount, "k < 0");
  for (const EdgeTerm& t : h.terms) {
    if (t.point.size() != h.k)
      throw Error(ErrorCode::ShapeMismatch, "term point length != k");
    if (std::abs(t.weight) == 0.0)
      throw Error(ErrorCode::InvalidModel, "zero term weight");
  }
  if (distinct_points) {
    for (size_t i = 0; i < h.terms.size(); ++i)
      for (size_t j = i + 1; j < h.terms.size(); ++j) {
        double dist = (h.terms[i].point - h.terms[j].point).cwiseAbs().maxCoeff();
        double mag = std::max(h.terms[i].point.cwiseAbs().maxCoeff(),
                              h.terms[j].point.cwiseAbs().maxCoeff());
        if (h.k == 0) { dist = 0.0; mag = 0.0; }
        if (dist <= tol.equality * (1.0 + mag))
          throw Error(ErrorCode::TermsTooClose,
                      "points " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide within tolerance");
      }
  }
}

void validate(const EdgeModelTable& h) {
  if (h.k < 0 || h.d < 0) throw Error(ErrorCode::NegativeCount, "k and d must be >= 0");
  for (const auto& [alpha, c] : h.coeffs) {
    if (static_cast<int>(alpha.size()) != h.k)
      throw Error(ErrorCode::ShapeMismatch, "exponent vector length != k");
    int total = 0;
    for (int e : alpha) {
      if (e < 0) throw Error(ErrorCode::NegativeCount, "negative exponent");
      total += e;
    }
    if (total > h.d) throw Error(ErrorCode::DegreeExceedsTable, "exponent beyond table degree");
  }
}

Complex eval_vertex(const VertexModel& m, const Multigraph& g,
                    std::optional<Complex> circle_value, EvalBackend backend) {
  validate(m);
  validate(g);
  Complex circ(1.0, 0.0);
  if (g.circles > 0) {
    if (!circle_value)
      throw Error(ErrorCode::CirclesUndefined,
                  "graph has circles; vertex models need an explicit circle value");
    for (int i = 0; i < g.circles; ++i) circ *= *circle_value;
  }
  Complex core = backend == EvalBackend::Reference ? eval_vertex_reference(m, g)
                                                   : eval_vertex_optimized(m, g);
  return circ * core;
}

Complex moment(const EdgeModelEval& h, const std::vector<int>& alpha) {
  Complex total(0.0, 0.0);
  for (const EdgeTerm& t : h.terms) {
    Complex prod = t.weight;
    for (int c = 0; c < h.k; ++c) prod *= cpow_int(t.point[c], alpha[c]);
    total += prod;
  }
  return total;
}

Complex eval_edge(const EdgeModelEval& h, const Multigraph& g, EvalBackend backend) {
  validate(h);
  validate(g);
  MomentFn fn = [&h](const std::vector<int>& alpha) { return moment(h, alpha); };
  Complex core = backend == EvalBackend::Reference ? eval_edge_reference(fn, h.k, g)
                                                   : eval_edge_optimized(fn, h.k, g);
  return circle_factor(h.k, g.circles) * core;
}

Complex eval_edge(const EdgeModelTable& h, const Multigraph& g, EvalBackend backend) {
  validate(h);
  validate(g);
  if (max_degree(g) > h.d)
    throw Error(ErrorCode::DegreeExceedsTable,
                "graph max degree " + std::to_string(max_degree(g)) + " exceeds table degree " +
                    std::to_string(h.d));
  MomentFn fn = [&h](const std::vector<int>& alpha) {
    auto it = h.coeffs.find(alpha);
    return it == h.coeffs.end() ? Complex(0.0, 0.0) : it->second;
  };
  Complex core = backend == EvalBackend::Reference ? eval_edge_reference(fn, h.k, g)
                                                   : eval_edge_optimized(fn, h.k, g);
  return circle_factor(h.k, g.circles) * core;
}

DegreeProfile degree_profile(const Multigraph& g, int k, int d) {
  validate(g);
  if (k < 0) throw Error(ErrorCode::NegativeCount, "k < 0");
  if (g.circles != 0)
    throw Error(ErrorCode::CirclesUndefined, "degree profiles are for circle-free graphs");
  if (max_degree(g) > d)
    throw Error(ErrorCode::DegreeExceedsTable, "graph max degree exceeds d");
  DegreeProfile p;
  p.k = k;
  p.d = d;
  const int m = g.edge_count();
  if (k == 0 && m > 0) return p;  // no colorings
  std::vector<int> phi(m, 0);
  for (;;) {
    std::vector<std::vector<int>> sig(g.vertex_count, std::vector<int>(k, 0));
    for (int e = 0; e < m; ++e) {
      sig[g.edges[e].first][phi[e]] += 1;
      sig[g.edges[e].second][phi[e]] += 1;
    }
    std::sort(sig.begin(), sig.end());
    p.counts[sig] += 1;
    if (m == 0) break;
    int q = m - 1;
    while (q >= 0 && ++phi[q] == k) phi[q--] = 0;
    if (q < 0) break;
  }
  return p;
}

Complex eval_via_profile(const DegreeProfile& p, const EdgeModelTable& h) {
  validate(h);
  if (p.k != h.k) throw Error(ErrorCode::ShapeMismatch, "profile k != table k");
  if (p.d > h.d) throw Error(ErrorCode::DegreeExceedsTable, "profile degree exceeds table");
  Complex total(0.0, 0.0);
  for (const auto& [sig, count] : p.counts) {
    Complex prod(static_cast<double>(count), 0.0);
    for (const auto& alpha : sig) {
      auto it = h.coeffs.find(alpha);
      prod *= it == h.coeffs.end() ? Complex(0.0, 0.0) : it->second;
    }
    total += prod;
  }
  return total;
}

bool is_twin_free(const VertexModel& m, const Tolerance& tol) {
  const int n = m.colors();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool equal = true;
      for (int c = 0; c < n && equal; ++c)
        equal = approx_equal(m.b(i, c), m.b(j, c), tol.equality);
      if (equal) return false;
    }
  return true;
}

VertexModel twin_reduce(const VertexModel& m, const Tolerance& tol) {
  validate(m, tol);
  VertexModel cur = m;
  for (;;) {
    const int n = cur.colors();
    int ti = -1, tj = -1;
    for (int i = 0; i < n && ti < 0; ++i)
      for (int j = i + 1; j < n && ti < 0; ++j) {
        bool equal = true;
        for (int c = 0; c < n && equal; ++c)
          equal = approx_equal(cur.b(i, c), cur.b(j, c), tol.equality);
        if (equal) { ti = i; tj = j; }
      }
    if (ti < 0) return cur;

    const Complex sum = cur.a[ti] + cur.a[tj];
    const double mag = std::max(std::abs(cur.a[ti]), std::abs(cur.a[tj]));
    std::vector<int> keep;
    for (int c = 0; c < n; ++c) {
      if (c == ti) continue;
      if (std::abs(sum) <= tol.equality * (1.0 + mag) && c == tj) continue;
      keep.push_back(c);
    }
    VertexModel next;
    next.a.resize(static_cast<int>(keep.size()));
    next.b.resize(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
    for (size_t x = 0; x < keep.size(); ++x) {
      next.a[static_cast<int>(x)] = keep[x] == tj && std::abs(sum) > tol.equality * (1.0 + mag)
                                        ? sum
                                        : cur.a[keep[x]];
      for (size_t y = 0; y < keep.size(); ++y)
        next.b(static_cast<int>(x), static_cast<int>(y)) = cur.b(keep[x], keep[y]);
    }
    cur = std::move(next);
    if (cur.colors() == 0) return cur;
  }
}

Complex oracle_cycle(const VertexModel& m, int len) {
  validate(m);
  if (len < 1) throw Error(ErrorCode::NegativeCount, "cycle length must be >= 1");
  Eigen::MatrixXcd t = m.a.asDiagonal() * m.b;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(m.colors(), m.colors());
  for (int i = 0; i < len; ++i) power *= t;
  return power.trace();
}

}  // namespace erp
