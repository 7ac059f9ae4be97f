#include "erp/kempf_ness.hpp"

#include <cmath>
#include <limits>

namespace erp {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step on seed xor a stride; decorrelates restart streams
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

KnPoint make_kn_point(const Eigen::MatrixXcd& g, const Tolerance& tol) {
  if (g.rows() != g.cols()) throw Error(ErrorCode::ShapeMismatch, "g must be square");
  KnPoint p{g, orthogonality_residual(g)};
  if (p.orthogonality_defect > tol.orthogonality_boundary)
    throw Error(ErrorCode::NotOrthogonal, "group element drifted off the orthogonal group");
  return p;
}

double kn_value(const KnProblem& w, const Eigen::MatrixXcd& g) {
  if (g.cols() != w.w.rows())
    throw Error(ErrorCode::ShapeMismatch, "g and W dimensions do not match");
  return (g * w.w).squaredNorm();
}

double kn_directional_derivative(const KnProblem& w, const Eigen::MatrixXcd& g,
                                 const Eigen::MatrixXcd& z) {
  const Eigen::MatrixXcd gw = g * w.w;
  // d/dt tr((exp(tz) gW)* (exp(tz) gW)) at 0 = tr((gW)* (z + z*) (gW))
  return ((gw.adjoint() * (z + z.adjoint()) * gw).trace()).real();
}

Eigen::MatrixXcd kn_gradient(const KnProblem& w, const Eigen::MatrixXcd& g) {
  const Eigen::MatrixXcd gw = g * w.w;
  const Eigen::MatrixXd v = gw.real();
  const Eigen::MatrixXd t = gw.imag();
  const Eigen::MatrixXd gamma = t * v.transpose() - v * t.transpose();  // real skew
  return Complex(0.0, 2.0) * gamma.cast<Complex>();
}

double critical_residual(const KnProblem& w) {
  const Eigen::MatrixXd v = w.w.real();
  const Eigen::MatrixXd t = w.w.imag();
  return (t * v.transpose() - v * t.transpose()).norm();
}

DescentResult descend(const KnProblem& w, const DescentOptions& opt, const Tolerance& tol) {
  const int l = static_cast<int>(w.w.rows());
  Eigen::MatrixXcd g =
      opt.start ? *opt.start : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(l, l));
  if (g.rows() != l || g.cols() != l)
    throw Error(ErrorCode::ShapeMismatch, "start point must be l x l");

  DescentResult result;
  double f = kn_value(w, g);
  result.f_history.push_back(f);

  const double grad_floor = tol.equality * (1.0 + w.w.squaredNorm());
  for (int it = 0; it < opt.iterations; ++it) {
    const Eigen::MatrixXcd grad = kn_gradient(w, g);
    if (grad.norm() <= grad_floor) break;  // at a critical point
    double step = opt.step;
    bool accepted = false;
    for (int half = 0; half <= 30; ++half) {
      const Eigen::MatrixXcd trial = matrix_exp(-step * grad) * g;
      const double ft = kn_value(w, trial);
      if (ft < f) {
        g = trial;
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no decrease within 30 halvings
    result.f_history.push_back(f);
    ++result.accepted_steps;
  }
  result.point = make_kn_point(g, tol);
  return result;
}

ConjugationSearchResult find_conjugating_g(const EdgeModelEval& h, int l,
                                           const ConjugationSearchOptions& opt,
                                           const Tolerance& tol) {
  validate(h, tol);
  if (l < h.k)
    throw Error(ErrorCode::DimensionTooSmall, "l must be at least the point dimension");

  const int n = static_cast<int>(h.terms.size());
  KnProblem problem;
  problem.w = Eigen::MatrixXcd::Zero(l, n);
  for (int i = 0; i < n; ++i) problem.w.col(i).head(h.k) = h.terms[i].point;

  Tolerance closure_tol = tol;
  closure_tol.equality = opt.closure_tol;

  auto closed_at = [&](const Eigen::MatrixXcd& g) {
    EdgeModelEval moved;
    moved.k = l;
    const Eigen::MatrixXcd gw = g * problem.w;
    for (int i = 0; i < n; ++i) moved.terms.push_back({h.terms[i].weight, gw.col(i)});
    try {
      return is_real_edge_model(moved, closure_tol).real;
    } catch (const Error&) {
      return false;  // ambiguous pairing: treat as not (yet) closed
    }
  };

  ConjugationSearchResult result;
  const int restarts = std::max(1, opt.restarts);
  const int iters_per_restart = std::max(1, opt.budget / restarts);
  double best_f = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXcd start =
        r == 0 ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(l, l))
               : random_complex_orthogonal(l, opt.restart_scale, derive_seed(opt.seed, r), tol);

    if (closed_at(start)) {
      result.g = make_kn_point(start, tol);
      result.f_history = {kn_value(problem, start)};
      result.restart_index = r;
      return result;
    }

    // descend manually so closure can be tested at every accepted iterate
    Eigen::MatrixXcd g = start;
    double f = kn_value(problem, g);
    std::vector<double> history{f};
    const double grad_floor = tol.equality * (1.0 + problem.w.squaredNorm());
    for (int it = 0; it < iters_per_restart; ++it) {
      const Eigen::MatrixXcd grad = kn_gradient(problem, g);
      if (grad.norm() <= grad_floor) break;
      double step = opt.step;
      bool accepted = false;
      for (int half = 0; half <= 30; ++half) {
        const Eigen::MatrixXcd trial = matrix_exp(-step * grad) * g;
        const double ft = kn_value(problem, trial);
        if (ft < f) {
          g = trial;
          f = ft;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      history.push_back(f);
      if (closed_at(g)) {
        result.g = make_kn_point(g, tol);
        result.f_history = std::move(history);
        result.restart_index = r;
        return result;
      }
    }
    if (f < best_f) {
      best_f = f;
      result.f_history = std::move(history);
      result.restart_index = r;
    }
  }
  result.g.reset();
  return result;
}

}  // namespace erp
