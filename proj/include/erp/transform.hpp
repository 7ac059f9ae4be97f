#ifndef ERP_TRANSFORM_HPP
#define ERP_TRANSFORM_HPP

#include <optional>
#include <vector>

#include "erp/linalg.hpp"
#include "erp/models.hpp"

namespace erp {

// From a vertex model (a, b) and a factorization U^T U = b (columns u_i) to
// the edge model h = sum_i a_i ev_{u_i}: both sides then have identical
// partition functions on every graph. When no U is supplied the default
// symmetric factorization is used, so k = rank(b).
struct TransformResult {
  EdgeModelEval edge_model;
  Eigen::MatrixXcd u;  // the factorization actually used, k x n
  bool uu_star_real = false;
};

TransformResult vertex_to_edge(const VertexModel& m,
                               std::optional<Eigen::MatrixXcd> u = std::nullopt,
                               const Tolerance& tol = Tolerance{});

// Inverse direction: weights become a, the Gram-type matrix U^T U becomes b.
VertexModel evaluation_to_vertex(const EdgeModelEval& h, const Tolerance& tol = Tolerance{});

// Tabulate h on all monomials of total degree <= d.
EdgeModelTable materialize(const EdgeModelEval& h, int d);

// An evaluation-form model is real iff its terms are closed under complex
// conjugation: an involutive pairing sigma with conj(u_i) = u_{sigma(i)} and
// conj(a_i) = a_{sigma(i)}. Matching is nearest-neighbor under the equality
// tolerance; two candidates within tolerance is an error (TERMS_TOO_CLOSE).
struct RealnessCheck {
  bool real = false;
  std::vector<int> pairing;  // sigma, valid when real
  int unmatched = -1;        // witness index when not real
};

RealnessCheck is_real_edge_model(const EdgeModelEval& h, const Tolerance& tol = Tolerance{});

// Act by a complex orthogonal g on the points: u_i -> g * (u_i padded to l).
// Partition functions are invariant under this action.
EdgeModelEval apply_group(const EdgeModelEval& h, const Eigen::MatrixXcd& g, int l,
                          const Tolerance& tol = Tolerance{});

}  // namespace erp

#endif
