#ifndef ERP_KEMPF_NESS_HPP
#define ERP_KEMPF_NESS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "erp/linalg.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

namespace erp {

// Norm functional on the complex orthogonal orbit of a point matrix W (l x n):
// f_W(g) = ||g W||_F^2. Left multiplication by real orthogonal matrices and
// right action of the stabilizer leave f invariant; e is a critical point iff
// W W* is real, and then it is the global minimum over the whole group.
struct KnProblem {
  Eigen::MatrixXcd w;
};

// Group element with its orthogonality defect tracked; API boundaries reject
// points whose defect exceeds the boundary tolerance.
struct KnPoint {
  Eigen::MatrixXcd g;
  double orthogonality_defect = 0.0;
};

KnPoint make_kn_point(const Eigen::MatrixXcd& g, const Tolerance& tol = Tolerance{});

double kn_value(const KnProblem& w, const Eigen::MatrixXcd& g);

// Derivative of t -> f(exp(t z) g) at t = 0 for a tangent direction z
// (complex skew-symmetric).
double kn_directional_derivative(const KnProblem& w, const Eigen::MatrixXcd& g,
                                 const Eigen::MatrixXcd& z);

// Riemannian gradient at g in the left-translated tangent space, a complex
// skew-symmetric matrix: 2i (T' V'^T - V' T'^T) with V' + iT' = g W.
// <gradient, z> reproduces the directional derivative under Re tr(A* B).
Eigen::MatrixXcd kn_gradient(const KnProblem& w, const Eigen::MatrixXcd& g);

// ||T V^T - V T^T||_F with W = V + iT; zero iff W W* is real iff e critical.
double critical_residual(const KnProblem& w);

struct DescentOptions {
  int iterations = 500;
  double step = 0.1;
  std::uint64_t seed = 0;
  std::optional<Eigen::MatrixXcd> start;  // default: identity
};

struct DescentResult {
  KnPoint point;
  std::vector<double> f_history;  // f at start and after each accepted step
  int accepted_steps = 0;
};

// Gradient descent with retraction g <- exp(-step * gradient) * g and
// backtracking halving (at most 30 halvings per iteration). f never
// increases across accepted steps. Deterministic for fixed inputs.
DescentResult descend(const KnProblem& w, const DescentOptions& opt,
                      const Tolerance& tol = Tolerance{});

struct ConjugationSearchOptions {
  int budget = 4000;      // total descent iterations across restarts
  int restarts = 8;       // restart 0 starts at identity, others at random g
  double step = 0.1;
  double restart_scale = 0.3;
  std::uint64_t seed = 0;
  double closure_tol = 1e-8;  // pairing tolerance while testing closure
};

struct ConjugationSearchResult {
  std::optional<KnPoint> g;       // first group element achieving closure
  std::vector<double> f_history;  // history of the successful restart, else best
  int restart_index = -1;
};

// Searches O_l for g making {(g u_i; a_i)} closed under conjugation. Points
// are padded to length l (l >= k). Closure is tested at the start and after
// every accepted descent step; restarts run sequentially and the first
// success wins.
ConjugationSearchResult find_conjugating_g(const EdgeModelEval& h, int l,
                                           const ConjugationSearchOptions& opt,
                                           const Tolerance& tol = Tolerance{});

}  // namespace erp

#endif
