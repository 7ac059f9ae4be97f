#include "erp/connection.hpp"

namespace erp {

GraphEvaluator make_vertex_evaluator(const VertexModel& m, std::optional<Complex> circle_value) {
  validate(m);
  return [m, circle_value](const Multigraph& g) { return eval_vertex(m, g, circle_value); };
}

GraphEvaluator make_edge_evaluator(const EdgeModelEval& h) {
  validate(h);
  return [h](const Multigraph& g) { return eval_edge(h, g); };
}

ConnectionMatrix connection_matrix(const GraphEvaluator& p, int l,
                                   const std::vector<Fragment>& fragments,
                                   std::optional<Complex> circle_value, const Tolerance& tol) {
  const int n = static_cast<int>(fragments.size());
  ConnectionMatrix out;
  out.l = l;
  out.circle_value = circle_value;
  out.m.resize(n, n);
  for (const Fragment& f : fragments) {
    if (f.label_count() != l)
      throw Error(ErrorCode::LabelCountMismatch, "fragment has wrong number of open ends");
    out.fragment_keys.push_back(canonical_key(f));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Complex value = p(glue(fragments[i], fragments[j]));
      if (std::abs(value.imag()) > tol.equality * (1.0 + std::abs(value)))
        throw Error(ErrorCode::NotRealValues,
                    "connection matrix entry is not real; the invariant must be real-valued");
      out.m(i, j) = value.real();
      out.m(j, i) = value.real();
    }
  return out;
}

PsdReport psd_check(const Eigen::MatrixXd& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix must be square");
  const double scale = 1.0 + m.norm();
  if ((m - m.transpose()).norm() > tol.equality * scale)
    throw Error(ErrorCode::NotSymmetric, "psd_check needs a symmetric matrix");
  PsdReport report;
  if (m.rows() == 0) {
    report.psd = true;
    return report;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("psd_check: eigensolver failed");
  report.min_eigenvalue = solver.eigenvalues()[0];
  report.psd = report.min_eigenvalue >= -tol.psd * scale;
  if (!report.psd) report.witness = solver.eigenvectors().col(0);
  return report;
}

std::optional<NegativityWitness> witness_search(const VertexModel& m, int max_l,
                                                const FragmentBounds& bounds,
                                                const std::vector<Complex>& circle_values,
                                                const Tolerance& tol) {
  validate(m);

  auto try_corpus = [&](int l, bool bare,
                        std::optional<Complex> circle_value) -> std::optional<NegativityWitness> {
    std::vector<Fragment> fragments =
        enumerate_fragments(l, bounds.max_internal_vertices, bounds.max_edges, bare);
    if (fragments.empty()) return std::nullopt;
    GraphEvaluator p = make_vertex_evaluator(m, circle_value);
    ConnectionMatrix cm = connection_matrix(p, l, fragments, circle_value, tol);
    PsdReport report = psd_check(cm.m, tol);
    if (report.psd) return std::nullopt;

    NegativityWitness w;
    w.l = l;
    w.fragment_keys = cm.fragment_keys;
    w.lambda = *report.witness;
    w.min_eigenvalue = report.min_eigenvalue;
    // recompute the quadratic form from scratch with the reference backend
    double q = 0.0;
    const int n = static_cast<int>(fragments.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex value = eval_vertex(m, glue(fragments[i], fragments[j]), circle_value,
                                          EvalBackend::Reference);
        q += w.lambda[i] * w.lambda[j] * value.real();
      }
    w.quadratic_form = q;
    if (q >= -tol.psd * (1.0 + cm.m.norm()))
      throw NumericalError("witness_search: witness did not re-verify");
    return w;
  };

  for (int l = 1; l <= max_l; ++l) {
    if (auto w = try_corpus(l, false, std::nullopt)) return w;
    for (const Complex cv : circle_values)
      if (auto w = try_corpus(l, true, cv)) return w;
  }
  return std::nullopt;
}

bool multiplicativity_check(const GraphEvaluator& p, const std::vector<Multigraph>& corpus,
                            const Tolerance& tol) {
  const Complex unit = p(Multigraph{});
  if (!approx_rel(unit, Complex(1.0, 0.0), tol.partition)) return false;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Complex pi = p(corpus[i]);
    for (size_t j = i; j < corpus.size(); ++j) {
      const Complex pj = p(corpus[j]);
      const Complex joint = p(disjoint_union(corpus[i], corpus[j]));
      if (!approx_rel(joint, pi * pj, tol.partition)) return false;
    }
  }
  return true;
}

}  // namespace erp
