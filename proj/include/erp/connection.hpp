#ifndef ERP_CONNECTION_HPP
#define ERP_CONNECTION_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erp/graph.hpp"
#include "erp/models.hpp"

namespace erp {

// A graph invariant; complex-valued in general, but connection matrices are
// only formed when values on the corpus are real (within tolerance).
using GraphEvaluator = std::function<Complex(const Multigraph&)>;

GraphEvaluator make_vertex_evaluator(const VertexModel& m,
                                     std::optional<Complex> circle_value = std::nullopt);
GraphEvaluator make_edge_evaluator(const EdgeModelEval& h);

// M[i][j] = p(F_i * F_j) over a corpus of fragments with the same number of
// open ends. Symmetric real matrix; complex entries beyond tolerance raise
// NOT_REAL_VALUES.
struct ConnectionMatrix {
  int l = 0;
  std::vector<std::string> fragment_keys;
  Eigen::MatrixXd m;
  std::optional<Complex> circle_value;
};

ConnectionMatrix connection_matrix(const GraphEvaluator& p, int l,
                                   const std::vector<Fragment>& fragments,
                                   std::optional<Complex> circle_value = std::nullopt,
                                   const Tolerance& tol = Tolerance{});

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  std::optional<Eigen::VectorXd> witness;  // eigenvector of the minimum eigenvalue
};

// PSD with floor -psd_tol*(1+||M||_F); the witness certifies the violation.
PsdReport psd_check(const Eigen::MatrixXd& m, const Tolerance& tol = Tolerance{});

struct NegativityWitness {
  int l = 0;
  std::vector<std::string> fragment_keys;
  Eigen::VectorXd lambda;     // coefficients over the fragment corpus
  double quadratic_form = 0;  // lambda^T M lambda, recomputed from scratch
  double min_eigenvalue = 0;
};

struct FragmentBounds {
  int max_internal_vertices = 1;
  int max_edges = 3;
};

// Scan l = 1..max_l over enumerated circle-free corpora (plus bare-edge
// corpora per entry of circle_values, if any) for a non-PSD connection
// matrix. The quadratic form of a found witness is recomputed with the
// reference evaluator before it is returned.
std::optional<NegativityWitness> witness_search(const VertexModel& m, int max_l,
                                                const FragmentBounds& bounds,
                                                const std::vector<Complex>& circle_values = {},
                                                const Tolerance& tol = Tolerance{});

// p(F disjoint-union H) = p(F) p(H) and p(empty) = 1 over all corpus pairs.
bool multiplicativity_check(const GraphEvaluator& p, const std::vector<Multigraph>& corpus,
                            const Tolerance& tol = Tolerance{});

}  // namespace erp

#endif
