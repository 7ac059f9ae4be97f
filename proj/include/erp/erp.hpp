#ifndef ERP_ERP_HPP
#define ERP_ERP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erp/kempf_ness.hpp"
#include "erp/linalg.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

namespace erp {

enum class ErpStatus { Erp, NotErp, Unknown };

const char* to_string(ErpStatus s);

// Evidence that color i admits no valid partner j: for every candidate j,
// one recorded condition fails beyond tolerance.
struct PairViolation {
  int j = -1;
  bool weight_mismatch = false;  // a_i != a_j
  Complex a_i, a_j;
  // otherwise, the first offending spectral projector:
  double lambda = 0.0;
  int sigma = 0;                 // +1: P(e_i - e_j) != 0;  -1: P(e_i + e_j) != 0
  Eigen::VectorXd residual;
  double residual_norm = 0.0;
};

struct FailureWitness {
  int i = -1;
  std::vector<PairViolation> violations;  // one entry per candidate j
};

struct ErpVerdict {
  ErpStatus status = ErpStatus::Unknown;
  std::optional<EdgeModelEval> certificate;  // real edge model, when Erp
  std::optional<FailureWitness> witness;     // when NotErp (real path)
  std::vector<std::string> notes;
};

// Decision for real models (real a, real symmetric b; twin-free required):
// reflection positivity holds iff every color i has a partner j with equal
// weight such that each positive-eigenvalue projector maps e_i - e_j to zero
// and each negative-eigenvalue projector maps e_i + e_j to zero (j = i
// allowed; zero eigenvalues unconstrained). The certificate is the edge model
// from the spectral factorization, which is then closed under conjugation.
ErpVerdict erp_decide_real(const VertexModel& m, const Tolerance& tol = Tolerance{});

// Necessary condition usable for any model: whether U U* is real for the
// default factorization of b.
bool necessary_condition(const VertexModel& m, const Tolerance& tol = Tolerance{});

// General decision: real models delegate to the spectral route; otherwise a
// Kempf-Ness search looks for a complex orthogonal g making the transformed
// term set conjugation-closed (padding l = k, k+1, k+2). Search failure is
// Unknown, never NotErp.
ErpVerdict erp_decide_complex(const VertexModel& m, const Tolerance& tol = Tolerance{},
                              int budget = 4000, std::uint64_t seed = 0);

}  // namespace erp

#endif
