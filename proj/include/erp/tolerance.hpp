#ifndef ERP_TOLERANCE_HPP
#define ERP_TOLERANCE_HPP

#include <algorithm>
#include <cmath>
#include <complex>

namespace erp {

using Complex = std::complex<double>;

// Every comparison in the library goes through one tolerance bundle so that
// a single --tol knob can rescale the whole pipeline coherently.
struct Tolerance {
  double equality = 1e-9;    // complex equality, absolute-plus-relative
  double partition = 1e-8;   // partition-function comparisons
  double psd = 1e-8;         // eigenvalue floor: lambda_min >= -psd*(1+||M||_F)
  double rank_pivot = 1e-9;  // pivot threshold: |pivot| > rank_pivot*(1+||M||_F)
  double cluster = 1e-9;     // eigenvalue clustering for spectral projectors
  double orthogonality = 1e-9;           // ||g^T g - I||_F for generated g
  double orthogonality_boundary = 1e-8;  // accepted on API boundaries

  // Rescale the bundle around a new equality tolerance, keeping the
  // default 1e-9 : 1e-8 ratio between exact and aggregate comparisons.
  static Tolerance scaled(double equality_tol) {
    Tolerance t;
    t.equality = equality_tol;
    t.partition = 10.0 * equality_tol;
    t.psd = 10.0 * equality_tol;
    t.rank_pivot = equality_tol;
    t.cluster = equality_tol;
    t.orthogonality = equality_tol;
    t.orthogonality_boundary = 10.0 * equality_tol;
    return t;
  }
};

// |x - y| <= tol * (1 + max(|x|, |y|))
inline bool approx_equal(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
}

inline bool approx_equal(double x, double y, double tol) {
  return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
}

// |x - y| <= tol * (1 + |reference|); used where one side is the trusted value
inline bool approx_rel(Complex x, Complex reference, double tol) {
  return std::abs(x - reference) <= tol * (1.0 + std::abs(reference));
}

}  // namespace erp

#endif
