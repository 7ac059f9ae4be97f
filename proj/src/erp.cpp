#include "erp/erp.hpp"

#include <algorithm>

namespace erp {

const char* to_string(ErpStatus s) {
  switch (s) {
    case ErpStatus::Erp:     return "ERP";
    case ErpStatus::NotErp:  return "NOT_ERP";
    case ErpStatus::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

bool is_real_model(const VertexModel& m, const Tolerance& tol) {
  for (int i = 0; i < m.colors(); ++i)
    if (std::abs(m.a[i].imag()) > tol.equality * (1.0 + std::abs(m.a[i]))) return false;
  return is_real_matrix(m.b, tol.equality);
}

}  // namespace

ErpVerdict erp_decide_real(const VertexModel& m, const Tolerance& tol) {
  validate(m, tol);
  if (!is_real_model(m, tol))
    throw Error(ErrorCode::NotRealModel, "erp_decide_real needs real a and real symmetric b");
  if (!is_twin_free(m, tol))
    throw Error(ErrorCode::NotTwinFree, "run twin_reduce first");

  ErpVerdict verdict;
  const int n = m.colors();
  for (int i = 0; i < n; ++i)
    if (m.a[i].real() <= 0.0) {
      verdict.notes.push_back("warning: a[" + std::to_string(i) + "] is not positive");
      break;
    }

  const Eigen::MatrixXd b = m.b.real();
  SpectralDecomposition dec = eig_real_symmetric(b, tol);
  std::vector<SpectralProjector> projectors = spectral_projectors(dec, tol);
  const double rho = n == 0 ? 0.0 : dec.eigenvalues.cwiseAbs().maxCoeff();
  const double zero_gate = tol.equality * (1.0 + rho);
  const double resid_gate = tol.equality * (1.0 + rho);

  // For each color, scan candidates in index order and keep the first match.
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    FailureWitness witness;
    witness.i = i;
    for (int j = 0; j < n; ++j) {
      PairViolation v;
      v.j = j;
      if (!approx_equal(m.a[i], m.a[j], tol.equality)) {
        v.weight_mismatch = true;
        v.a_i = m.a[i];
        v.a_j = m.a[j];
        witness.violations.push_back(std::move(v));
        continue;
      }
      bool ok = true;
      for (const SpectralProjector& p : projectors) {
        if (std::abs(p.lambda) <= zero_gate) continue;  // kernel: unconstrained
        const int sigma = p.lambda > 0 ? +1 : -1;
        Eigen::VectorXd probe = Eigen::VectorXd::Zero(n);
        probe[i] += 1.0;
        probe[j] -= sigma;  // e_i - e_j for positive, e_i + e_j for negative
        if (i == j && sigma > 0) continue;  // identically zero
        Eigen::VectorXd residual = p.p * probe;
        if (residual.norm() > resid_gate) {
          v.lambda = p.lambda;
          v.sigma = sigma;
          v.residual = residual;
          v.residual_norm = residual.norm();
          witness.violations.push_back(v);
          ok = false;
          break;
        }
      }
      if (ok) {
        partner[i] = j;
        break;
      }
    }
    if (partner[i] < 0) {
      verdict.status = ErpStatus::NotErp;
      verdict.witness = std::move(witness);
      verdict.notes.push_back("color " + std::to_string(i) + " has no valid partner");
      return verdict;
    }
  }

  verdict.status = ErpStatus::Erp;
  TransformResult t = vertex_to_edge(m, std::nullopt, tol);
  verdict.certificate = t.edge_model;
  verdict.notes.push_back("spectral pairing: every color matched");
  return verdict;
}

bool necessary_condition(const VertexModel& m, const Tolerance& tol) {
  validate(m, tol);
  SymmetricFactorization f = factor_symmetric(m.b, tol);
  return is_real_matrix(f.u * f.u.adjoint(), tol.equality);
}

namespace {

// Make closure exact: average each term with the conjugate of its partner.
EdgeModelEval symmetrize_certificate(const EdgeModelEval& h, const std::vector<int>& pairing) {
  EdgeModelEval out;
  out.k = h.k;
  out.terms.resize(h.terms.size());
  for (size_t i = 0; i < h.terms.size(); ++i) {
    const EdgeTerm& a = h.terms[i];
    const EdgeTerm& b = h.terms[pairing[i]];
    out.terms[i].weight = 0.5 * (a.weight + std::conj(b.weight));
    out.terms[i].point = 0.5 * (a.point + b.point.conjugate());
  }
  return out;
}

}  // namespace

ErpVerdict erp_decide_complex(const VertexModel& m, const Tolerance& tol, int budget,
                              std::uint64_t seed) {
  validate(m, tol);
  if (!is_twin_free(m, tol))
    throw Error(ErrorCode::NotTwinFree, "run twin_reduce first");

  if (is_real_model(m, tol)) {
    ErpVerdict verdict = erp_decide_real(m, tol);
    verdict.notes.insert(verdict.notes.begin(), "real model: spectral decision");
    return verdict;
  }

  ErpVerdict verdict;
  TransformResult t = vertex_to_edge(m, std::nullopt, tol);
  const int k = t.edge_model.k;

  // already closed at the identity?
  {
    Tolerance loose = tol;
    loose.equality = std::max(tol.equality, 1e-8);
    try {
      RealnessCheck rc = is_real_edge_model(t.edge_model, loose);
      if (rc.real) {
        verdict.status = ErpStatus::Erp;
        verdict.certificate = symmetrize_certificate(t.edge_model, rc.pairing);
        verdict.notes.push_back("terms already conjugation-closed at the identity");
        return verdict;
      }
    } catch (const Error&) {
      // ambiguous pairing at identity: fall through to the search
    }
  }

  for (int l = k; l <= k + 2; ++l) {
    ConjugationSearchOptions opt;
    opt.budget = budget;
    opt.seed = seed + static_cast<std::uint64_t>(l - k);
    ConjugationSearchResult found = find_conjugating_g(t.edge_model, l, opt, tol);
    if (!found.g) continue;
    EdgeModelEval moved = apply_group(t.edge_model, found.g->g, l, tol);
    Tolerance loose = tol;
    loose.equality = opt.closure_tol;
    RealnessCheck rc = is_real_edge_model(moved, loose);
    if (!rc.real) continue;
    EdgeModelEval cert = symmetrize_certificate(moved, rc.pairing);
    // the certificate must still compute the same partition function
    bool sound = true;
    for (const Multigraph& g : graph_corpus(3, 4)) {
      const Complex lhs = eval_edge(cert, g);
      const Complex rhs = eval_vertex(m, g);
      if (!approx_rel(lhs, rhs, tol.partition)) {
        sound = false;
        break;
      }
    }
    if (!sound) {
      verdict.notes.push_back("search found closure at l = " + std::to_string(l) +
                              " but the certificate failed verification");
      continue;
    }
    verdict.status = ErpStatus::Erp;
    verdict.certificate = cert;
    verdict.notes.push_back("conjugating element found at l = " + std::to_string(l) +
                            " (restart " + std::to_string(found.restart_index) + ")");
    return verdict;
  }

  verdict.status = ErpStatus::Unknown;
  verdict.notes.push_back("search budget exhausted without a conjugating element");
  return verdict;
}

}  // namespace erp
