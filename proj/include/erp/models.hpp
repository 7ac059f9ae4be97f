#ifndef ERP_MODELS_HPP
#define ERP_MODELS_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "erp/graph.hpp"
#include "erp/tolerance.hpp"

namespace erp {

// Weighted vertex coloring model: color weights a and a symmetric matrix of
// edge weights b. The partition function sums, over all colorings of the
// vertices, the product of vertex weights and per-edge entries of b.
struct VertexModel {
  Eigen::VectorXcd a;
  Eigen::MatrixXcd b;

  int colors() const { return static_cast<int>(a.size()); }
};

// Edge coloring model in evaluation form: h = sum of weight * ev_point, a
// linear functional on polynomials in k variables. h(x^alpha) = sum_i
// weight_i * point_i^alpha.
struct EdgeTerm {
  Complex weight;
  Eigen::VectorXcd point;  // length k
};

struct EdgeModelEval {
  int k = 0;
  std::vector<EdgeTerm> terms;
};

// Edge coloring model tabulated on monomials of total degree <= d. Keys are
// exponent vectors of length k; absent keys mean coefficient zero.
struct EdgeModelTable {
  int k = 0;
  int d = 0;
  std::map<std::vector<int>, Complex> coeffs;
};

void validate(const VertexModel& m, const Tolerance& tol = Tolerance{});
// distinct_points additionally enforces pairwise-distinct points (required by
// realness checks; plain evaluation tolerates coincident points).
void validate(const EdgeModelEval& h, const Tolerance& tol = Tolerance{},
              bool distinct_points = false);
void validate(const EdgeModelTable& h);

enum class EvalBackend { Reference, Optimized };

// Partition function of the vertex model on g. Graphs with circles need
// circle_value (the weight of one circle); otherwise CIRCLES_UNDEFINED.
Complex eval_vertex(const VertexModel& m, const Multigraph& g,
                    std::optional<Complex> circle_value = std::nullopt,
                    EvalBackend backend = EvalBackend::Optimized);

// Partition function of the edge model on g; a circle contributes a factor k.
Complex eval_edge(const EdgeModelEval& h, const Multigraph& g,
                  EvalBackend backend = EvalBackend::Optimized);
Complex eval_edge(const EdgeModelTable& h, const Multigraph& g,
                  EvalBackend backend = EvalBackend::Optimized);

// h(x^alpha) in evaluation form.
Complex moment(const EdgeModelEval& h, const std::vector<int>& alpha);

// Aggregated edge colorings of g: for each coloring, the multiset of
// per-vertex exponent signatures; counts how many colorings share a multiset.
// Isolated vertices contribute the zero signature. Loops add 2.
struct DegreeProfile {
  int k = 0;
  int d = 0;  // max vertex degree admitted
  // multiset (sorted list) of exponent vectors -> number of colorings
  std::map<std::vector<std::vector<int>>, long long> counts;
};

DegreeProfile degree_profile(const Multigraph& g, int k, int d);
Complex eval_via_profile(const DegreeProfile& p, const EdgeModelTable& h);

// Twins: colors i < j with identical rows of b (within tolerance). Merging
// adds a_i into a_j and drops i; a canceling pair (a_i + a_j = 0) drops both.
// The partition function is preserved either way.
VertexModel twin_reduce(const VertexModel& m, const Tolerance& tol = Tolerance{});
bool is_twin_free(const VertexModel& m, const Tolerance& tol = Tolerance{});

// Closed form for cycles: trace((diag(a) b)^len), len >= 1. Independent
// cross-check for the evaluators (len 1 = loop, len 2 = double edge).
Complex oracle_cycle(const VertexModel& m, int len);

}  // namespace erp

#endif
