#include "erp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace erp {

namespace {

constexpr int kMaxDim = 64;

void check_square(const Eigen::MatrixXcd& m, const char* who) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::ShapeMismatch, std::string(who) + ": matrix must be square");
  if (m.rows() > kMaxDim)
    throw Error(ErrorCode::TooLarge, std::string(who) + ": dimension > 64");
}

}  // namespace

SpectralDecomposition eig_real_symmetric(const Eigen::MatrixXd& b, const Tolerance& tol) {
  check_square(b.cast<Complex>(), "eig_real_symmetric");
  const double scale = 1.0 + b.norm();
  if ((b - b.transpose()).norm() > tol.equality * scale)
    throw Error(ErrorCode::NotSymmetric, "eig_real_symmetric: input not symmetric");
  if (b.rows() == 0) return SpectralDecomposition{};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eig_real_symmetric: solver did not converge");
  const int n = static_cast<int>(b.rows());
  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.q.resize(n, n);
  // Eigen returns ascending order; the contract is descending.
  for (int i = 0; i < n; ++i) {
    d.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
    d.q.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return d;
}

std::vector<SpectralProjector> spectral_projectors(const SpectralDecomposition& d,
                                                   const Tolerance& tol) {
  const int n = static_cast<int>(d.eigenvalues.size());
  std::vector<SpectralProjector> out;
  if (n == 0) return out;
  const double rho = d.eigenvalues.cwiseAbs().maxCoeff();
  const double gap = tol.cluster * (1.0 + rho);
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i < n && std::abs(d.eigenvalues[i] - d.eigenvalues[i - 1]) <= gap) continue;
    SpectralProjector p;
    p.lambda = d.eigenvalues.segment(start, i - start).mean();
    p.p = d.q.middleCols(start, i - start) * d.q.middleCols(start, i - start).transpose();
    out.push_back(std::move(p));
    start = i;
  }
  return out;
}

int rank(const Eigen::MatrixXcd& m, const Tolerance& tol) {
  Eigen::MatrixXcd a = m;
  const double threshold = tol.rank_pivot * (1.0 + m.norm());
  const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
  int r = 0;
  while (r < rows && r < cols) {
    // full pivot: largest remaining entry
    int pi = r, pj = r;
    double best = 0.0;
    for (int i = r; i < rows; ++i)
      for (int j = r; j < cols; ++j)
        if (std::abs(a(i, j)) > best) { best = std::abs(a(i, j)); pi = i; pj = j; }
    if (best <= threshold) break;
    a.row(r).swap(a.row(pi));
    a.col(r).swap(a.col(pj));
    for (int i = r + 1; i < rows; ++i) {
      const Complex factor = a(i, r) / a(r, r);
      a.row(i).tail(cols - r) -= factor * a.row(r).tail(cols - r);
    }
    ++r;
  }
  return r;
}

bool is_real_matrix(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return true;
  const double mag = m.cwiseAbs().maxCoeff();
  return m.imag().cwiseAbs().maxCoeff() <= tol * (1.0 + mag);
}

namespace {

// Spectral route for real symmetric input: rows sqrt(lambda_t) q_t^T over the
// eigenvalues above the rank threshold; negative lambda take i*sqrt(|lambda|).
Eigen::MatrixXcd factor_real_spectral(const Eigen::MatrixXd& b, const Tolerance& tol) {
  SpectralDecomposition d = eig_real_symmetric(b, tol);
  const double threshold = tol.rank_pivot * (1.0 + b.norm());
  std::vector<int> keep;
  for (int i = 0; i < d.eigenvalues.size(); ++i)
    if (std::abs(d.eigenvalues[i]) > threshold) keep.push_back(i);
  Eigen::MatrixXcd u(static_cast<int>(keep.size()), b.cols());
  for (size_t r = 0; r < keep.size(); ++r) {
    const double lambda = d.eigenvalues[keep[r]];
    const Complex root = lambda >= 0 ? Complex(std::sqrt(lambda), 0.0)
                                     : Complex(0.0, std::sqrt(-lambda));
    u.row(static_cast<int>(r)) = root * d.q.col(keep[r]).transpose().cast<Complex>();
  }
  return u;
}

// Complex symmetric route: peel rank-one terms (r r^T) off the residual.
// Pivot vectors are e_i, or e_i + e_j when all diagonal entries are tiny;
// the bilinear pivot v^T R v is nonzero for one of these unless R vanishes.
Eigen::MatrixXcd factor_complex_peel(const Eigen::MatrixXcd& b, const Tolerance& tol) {
  const int n = static_cast<int>(b.rows());
  const double threshold = tol.rank_pivot * (1.0 + b.norm());
  Eigen::MatrixXcd residual = b;
  std::vector<Eigen::VectorXcd> rows;
  for (int step = 0; step < n; ++step) {
    int bi = -1, bj = -1;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(residual(i, i)) > best) { best = std::abs(residual(i, i)); bi = i; bj = i; }
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Complex piv = residual(i, i) + residual(j, j) + 2.0 * residual(i, j);
        if (std::abs(piv) > best) { best = std::abs(piv); bi = i; bj = j; }
      }
    if (best <= threshold) break;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[bi] += 1.0;
    v[bj] += 1.0;  // bi == bj collapses to 2*e_i; direction is all that matters
    if (bi == bj) v[bi] = 1.0;
    const Complex pivot = (v.transpose() * residual * v)(0, 0);
    Eigen::VectorXcd col = residual * v;
    Eigen::VectorXcd row = col / std::sqrt(pivot);
    residual -= row * row.transpose();
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXcd u(static_cast<int>(rows.size()), n);
  for (size_t r = 0; r < rows.size(); ++r) u.row(static_cast<int>(r)) = rows[r].transpose();
  return u;
}

}  // namespace

SymmetricFactorization factor_symmetric(const Eigen::MatrixXcd& b, const Tolerance& tol) {
  check_square(b, "factor_symmetric");
  const double scale = 1.0 + b.norm();
  if ((b - b.transpose()).norm() > tol.equality * scale)
    throw Error(ErrorCode::NotSymmetric, "factor_symmetric: input not symmetric");
  SymmetricFactorization f;
  if (is_real_matrix(b, tol.equality))
    f.u = factor_real_spectral(b.real(), tol);
  else
    f.u = factor_complex_peel(b, tol);
  if ((f.u.transpose() * f.u - b).norm() > 1e-7 * scale)
    throw NumericalError("factor_symmetric: residual blew up");
  return f;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& z) {
  check_square(z, "matrix_exp");
  const int n = static_cast<int>(z.rows());
  if (n == 0) return z;
  // Scale so the Taylor tail beyond 12 terms is far below double precision.
  const double norm = z.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.25) { scaled *= 0.5; ++squarings; }
  Eigen::MatrixXcd a = z / std::pow(2.0, squarings);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 12; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double orthogonality_residual(const Eigen::MatrixXcd& g) {
  const int n = static_cast<int>(g.rows());
  return (g.transpose() * g - Eigen::MatrixXcd::Identity(n, n)).norm();
}

namespace {

// mt19937_64 with explicit scaling; std::uniform_real_distribution output is
// implementation-defined, which would break byte-identical --seed runs.
struct Uniform {
  std::mt19937_64 eng;
  explicit Uniform(std::uint64_t seed) : eng(seed) {}
  double next() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * next(); }
};

Eigen::MatrixXd random_skew(int l, double scale, Uniform& u) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      x(i, j) = u.range(-scale, scale);
      x(j, i) = -x(i, j);
    }
  return x;
}

}  // namespace

Eigen::MatrixXcd random_complex_orthogonal(int l, double scale, std::uint64_t seed,
                                           const Tolerance& tol) {
  if (l < 0) throw Error(ErrorCode::NegativeCount, "dimension must be >= 0");
  Uniform u(seed);
  Eigen::MatrixXd x = random_skew(l, scale, u);
  Eigen::MatrixXd y = random_skew(l, scale, u);
  Eigen::MatrixXcd g = matrix_exp(x.cast<Complex>() + Complex(0, 1) * y.cast<Complex>());
  if (orthogonality_residual(g) > tol.orthogonality * (1.0 + std::sqrt(double(l))))
    throw NumericalError("random_complex_orthogonal: orthogonality residual too large");
  return g;
}

Eigen::MatrixXd random_real_orthogonal(int l, double scale, std::uint64_t seed,
                                       const Tolerance& tol) {
  if (l < 0) throw Error(ErrorCode::NegativeCount, "dimension must be >= 0");
  Uniform u(seed);
  Eigen::MatrixXcd g = matrix_exp(random_skew(l, scale, u).cast<Complex>());
  if (orthogonality_residual(g) > tol.orthogonality * (1.0 + std::sqrt(double(l))))
    throw NumericalError("random_real_orthogonal: orthogonality residual too large");
  return g.real();
}

}  // namespace erp
