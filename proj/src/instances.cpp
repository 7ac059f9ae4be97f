#include "erp/instances.hpp"

#include <algorithm>
#include <cmath>

#include "erp/linalg.hpp"

namespace erp {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace {

// Rejection helper: rows i and j of b equal entrywise at a loose gate.
bool has_equal_rows(const MatrixXcd& b) {
  const int n = static_cast<int>(b.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((b.row(i) - b.row(j)).cwiseAbs().maxCoeff() < 1e-6) return true;
    }
  }
  return false;
}

}  // namespace

VertexModel ones_complement_model(int n) {
  VertexModel m;
  m.a = VectorXcd::Ones(n);
  m.b = MatrixXcd::Ones(n, n) - MatrixXcd::Identity(n, n);
  return m;
}

VertexModel independent_set_model() {
  VertexModel m;
  m.a = VectorXcd::Ones(2);
  m.b = MatrixXcd::Ones(2, 2);
  m.b(1, 1) = Complex(0.0, 0.0);
  return m;
}

VertexModel negated_matching_model() {
  VertexModel m;
  m.a = VectorXcd::Ones(2);
  m.b = MatrixXcd::Zero(2, 2);
  m.b(0, 1) = Complex(-1.0, 0.0);
  m.b(1, 0) = Complex(-1.0, 0.0);
  return m;
}

VertexModel random_complex_model(int n, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    VertexModel m;
    m.a = VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double mag = rng.range(0.3, 1.2);
      const double arg = rng.range(0.0, 6.283185307179586);
      m.a(i) = Complex(mag * std::cos(arg), mag * std::sin(arg));
    }
    m.b = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const Complex z = rng.box(1.0);
        m.b(i, j) = z;
        m.b(j, i) = z;
      }
    }
    if (!has_equal_rows(m.b)) return m;
  }
  throw NumericalError("random_complex_model: rejection stalled");
}

VertexModel random_real_mixed_model(int n, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    // Random orthogonal basis from a skew exponential, real spectrum with a
    // forced sign mix so the spectral factorization exercises both branches.
    MatrixXd skew = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double v = rng.range(-1.5, 1.5);
        skew(i, j) = v;
        skew(j, i) = -v;
      }
    }
    const MatrixXcd q = matrix_exp(skew.cast<Complex>());
    VectorXcd lambda = VectorXcd::Zero(n);
    lambda(0) = Complex(rng.range(0.5, 2.0), 0.0);
    if (n > 1) lambda(1) = Complex(-rng.range(0.5, 2.0), 0.0);
    for (int i = 2; i < n; ++i) {
      const double mag = rng.range(0.2, 2.0);
      lambda(i) = Complex(rng.uniform() < 0.5 ? mag : -mag, 0.0);
    }
    VertexModel m;
    m.b = (q * lambda.asDiagonal() * q.transpose()).eval();
    m.b = ((m.b + m.b.transpose()) / 2.0).eval();
    m.a = VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) m.a(i) = Complex(rng.range(0.3, 1.5), 0.0);
    if (!has_equal_rows(m.b)) return m;
  }
  throw NumericalError("random_real_mixed_model: rejection stalled");
}

VertexModel plant_twins(const VertexModel& base, int pairs, bool zero_sum, Rng& rng) {
  VertexModel m = base;
  for (int p = 0; p < pairs; ++p) {
    const int n = m.colors();
    const int src = rng.below(n);
    // Append a copy of color `src`: duplicate its row/column in b.
    MatrixXcd b = MatrixXcd::Zero(n + 1, n + 1);
    b.topLeftCorner(n, n) = m.b;
    for (int t = 0; t < n; ++t) {
      b(n, t) = m.b(src, t);
      b(t, n) = m.b(t, src);
    }
    b(n, n) = m.b(src, src);
    b(n, src) = m.b(src, src);
    b(src, n) = m.b(src, src);
    VectorXcd a = VectorXcd::Zero(n + 1);
    a.head(n) = m.a;
    a(n) = zero_sum ? -m.a(src) : Complex(rng.range(0.3, 1.2), rng.range(-0.5, 0.5));
    m.a = a;
    m.b = b;
  }
  return m;
}

EdgeModelEval random_conjugation_closed_model(int k, int real_terms, int conj_pairs, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    EdgeModelEval h;
    h.k = k;
    for (int t = 0; t < real_terms; ++t) {
      EdgeTerm term;
      term.weight = Complex(rng.range(0.3, 1.5) * (rng.uniform() < 0.5 ? 1.0 : -1.0), 0.0);
      term.point = VectorXcd::Zero(k);
      for (int i = 0; i < k; ++i) term.point(i) = Complex(rng.range(-1.0, 1.0), 0.0);
      h.terms.push_back(term);
    }
    for (int p = 0; p < conj_pairs; ++p) {
      EdgeTerm term;
      term.weight = rng.box(1.0);
      term.point = VectorXcd::Zero(k);
      for (int i = 0; i < k; ++i) term.point(i) = rng.box(1.0);
      EdgeTerm mate;
      mate.weight = std::conj(term.weight);
      mate.point = term.point.conjugate();
      h.terms.push_back(term);
      h.terms.push_back(mate);
    }
    // Require pairwise separation so the realness pairing is unambiguous.
    bool ok = true;
    for (std::size_t i = 0; i < h.terms.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < h.terms.size() && ok; ++j) {
        double d = std::abs(h.terms[i].weight - h.terms[j].weight);
        for (int c = 0; c < k; ++c) {
          d = std::max(d, std::abs(h.terms[i].point(c) - h.terms[j].point(c)));
        }
        if (d < 1e-3) ok = false;
      }
    }
    if (ok) return h;
  }
  throw NumericalError("random_conjugation_closed_model: rejection stalled");
}

EdgeModelEval random_eval_model(int k, int terms, Rng& rng) {
  EdgeModelEval h;
  h.k = k;
  for (int t = 0; t < terms; ++t) {
    EdgeTerm term;
    const double mag = rng.range(0.3, 1.2);
    const double arg = rng.range(0.0, 6.283185307179586);
    term.weight = Complex(mag * std::cos(arg), mag * std::sin(arg));
    term.point = VectorXcd::Zero(k);
    for (int i = 0; i < k; ++i) term.point(i) = rng.box(1.0);
    h.terms.push_back(term);
  }
  return h;
}

}  // namespace erp
