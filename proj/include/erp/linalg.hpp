#ifndef ERP_LINALG_HPP
#define ERP_LINALG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "erp/error.hpp"
#include "erp/tolerance.hpp"

namespace erp {

// Eigendecomposition of a real symmetric matrix, eigenvalues descending,
// eigenvectors orthonormal in the columns of q.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd q;
};

SpectralDecomposition eig_real_symmetric(const Eigen::MatrixXd& b,
                                         const Tolerance& tol = Tolerance{});

// Orthogonal projector onto the span of an eigenvalue cluster.
struct SpectralProjector {
  double lambda;      // cluster representative (mean)
  Eigen::MatrixXd p;  // symmetric idempotent
};

// Clusters eigenvalues whose consecutive gaps are <= cluster_tol*(1+rho)
// with rho the spectral radius, then sums q_t q_t^T over each cluster.
std::vector<SpectralProjector> spectral_projectors(const SpectralDecomposition& d,
                                                   const Tolerance& tol = Tolerance{});

// U with U^T U = b and rank(U) = rank(b). Real input takes the spectral
// route (rows sqrt(lambda) q^T, with sqrt(lambda) = i*sqrt(|lambda|) for
// negative eigenvalues, so U U* comes out real diagonal); complex input is
// reduced by symmetric rank-one peeling (diagonal pivots, with e_i + e_j
// pivot vectors when the diagonal vanishes).
struct SymmetricFactorization {
  Eigen::MatrixXcd u;  // k x n, k = rank(b)
};

SymmetricFactorization factor_symmetric(const Eigen::MatrixXcd& b,
                                        const Tolerance& tol = Tolerance{});

// Numerical rank: pivots above rank_pivot*(1+||m||_F) under full-pivot
// Gaussian elimination.
int rank(const Eigen::MatrixXcd& m, const Tolerance& tol = Tolerance{});

bool is_real_matrix(const Eigen::MatrixXcd& m, double tol);

// exp(z) by scaling-and-squaring with a truncated Taylor series. Exact-skew
// inputs exponentiate to orthogonal matrices up to roundoff.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& z);

// Haar-free but deterministic sampling of complex orthogonal matrices:
// g = exp(X + iY), X and Y real skew-symmetric with entries uniform in
// [-scale, scale]. Throws NumericalError if ||g^T g - I||_F > tol.
Eigen::MatrixXcd random_complex_orthogonal(int l, double scale, std::uint64_t seed,
                                           const Tolerance& tol = Tolerance{});
// Same with Y = 0: a real orthogonal matrix.
Eigen::MatrixXd random_real_orthogonal(int l, double scale, std::uint64_t seed,
                                       const Tolerance& tol = Tolerance{});

double orthogonality_residual(const Eigen::MatrixXcd& g);

}  // namespace erp

#endif
