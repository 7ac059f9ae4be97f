#include "erp/transform.hpp"

#include <algorithm>

namespace erp {

TransformResult vertex_to_edge(const VertexModel& m, std::optional<Eigen::MatrixXcd> u,
                               const Tolerance& tol) {
  validate(m, tol);
  TransformResult out;
  if (u) {
    if (u->cols() != m.colors())
      throw Error(ErrorCode::ShapeMismatch, "U must have one column per color");
    const double scale = 1.0 + m.b.norm();
    if ((u->transpose() * (*u) - m.b).norm() > tol.equality * scale * 10.0)
      throw Error(ErrorCode::FactorizationMismatch, "U^T U != b");
    out.u = *u;
  } else {
    out.u = factor_symmetric(m.b, tol).u;
  }
  out.edge_model.k = static_cast<int>(out.u.rows());
  for (int i = 0; i < m.colors(); ++i)
    out.edge_model.terms.push_back({m.a[i], out.u.col(i)});
  out.uu_star_real = is_real_matrix(out.u * out.u.adjoint(), tol.equality);
  return out;
}

VertexModel evaluation_to_vertex(const EdgeModelEval& h, const Tolerance& tol) {
  validate(h, tol);
  const int n = static_cast<int>(h.terms.size());
  VertexModel m;
  m.a.resize(n);
  Eigen::MatrixXcd u(h.k, n);
  for (int i = 0; i < n; ++i) {
    m.a[i] = h.terms[i].weight;
    u.col(i) = h.terms[i].point;
  }
  m.b = u.transpose() * u;
  // enforce exact symmetry against roundoff
  m.b = 0.5 * (m.b + m.b.transpose()).eval();
  return m;
}

namespace {

void enumerate_exponents(int k, int d, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur.push_back(e);
    enumerate_exponents(k, d - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

EdgeModelTable materialize(const EdgeModelEval& h, int d) {
  validate(h);
  if (d < 0) throw Error(ErrorCode::NegativeCount, "d < 0");
  EdgeModelTable t;
  t.k = h.k;
  t.d = d;
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur;
  enumerate_exponents(h.k, d, cur, alphas);
  for (const auto& alpha : alphas) t.coeffs[alpha] = moment(h, alpha);
  return t;
}

RealnessCheck is_real_edge_model(const EdgeModelEval& h, const Tolerance& tol) {
  validate(h, tol, /*distinct_points=*/true);
  const int n = static_cast<int>(h.terms.size());
  RealnessCheck out;
  out.pairing.assign(n, -1);

  auto stack_distance = [&](int i, int j) {
    // distance between conj(term_i) and term_j over the stacked (point; weight)
    double dist = std::abs(std::conj(h.terms[i].weight) - h.terms[j].weight);
    double mag = std::max(std::abs(h.terms[i].weight), std::abs(h.terms[j].weight));
    for (int c = 0; c < h.k; ++c) {
      dist = std::max(dist, std::abs(std::conj(h.terms[i].point[c]) - h.terms[j].point[c]));
      mag = std::max({mag, std::abs(h.terms[i].point[c]), std::abs(h.terms[j].point[c])});
    }
    return std::make_pair(dist, mag);
  };

  for (int i = 0; i < n; ++i) {
    int match = -1;
    for (int j = 0; j < n; ++j) {
      auto [dist, mag] = stack_distance(i, j);
      if (dist <= tol.equality * (1.0 + mag)) {
        if (match >= 0)
          throw Error(ErrorCode::TermsTooClose,
                      "conjugate of term " + std::to_string(i) + " matches two terms");
        match = j;
      }
    }
    if (match < 0) {
      out.real = false;
      out.unmatched = i;
      out.pairing.clear();
      return out;
    }
    out.pairing[i] = match;
  }
  for (int i = 0; i < n; ++i) {
    if (out.pairing[out.pairing[i]] != i)
      throw Error(ErrorCode::TermsTooClose, "conjugation pairing is not involutive");
  }
  out.real = true;
  return out;
}

EdgeModelEval apply_group(const EdgeModelEval& h, const Eigen::MatrixXcd& g, int l,
                          const Tolerance& tol) {
  validate(h, tol);
  if (l < h.k)
    throw Error(ErrorCode::DimensionTooSmall,
                "l = " + std::to_string(l) + " < k = " + std::to_string(h.k));
  if (g.rows() != l || g.cols() != l)
    throw Error(ErrorCode::ShapeMismatch, "g must be l x l");
  if (orthogonality_residual(g) > tol.orthogonality_boundary)
    throw Error(ErrorCode::NotOrthogonal, "g^T g != I within tolerance");
  EdgeModelEval out;
  out.k = l;
  for (const EdgeTerm& t : h.terms) {
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(l);
    padded.head(h.k) = t.point;
    out.terms.push_back({t.weight, g * padded});
  }
  return out;
}

}  // namespace erp
