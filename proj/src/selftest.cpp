#include "erp/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "erp/connection.hpp"
#include "erp/erp.hpp"
#include "erp/graph.hpp"
#include "erp/instances.hpp"
#include "erp/kempf_ness.hpp"
#include "erp/linalg.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

namespace erp {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string fmt(double x) {
  std::ostringstream o;
  o << std::scientific << std::setprecision(3) << x;
  return o.str();
}

// 200 random complex twin-free models (n <= 3) against every corpus graph
// with <= 4 vertices and <= 6 edges: the vertex partition function and the
// transformed edge partition function agree to 1e-8 relative.
CriterionResult c1(std::uint64_t seed) {
  CriterionResult r{"1", "transform-equivalence", false, 0.0, ""};
  Timer t;
  const auto corpus = graph_corpus(4, 6);
  Rng rng(mix(seed ^ 0x01));
  double worst = 0.0;
  long long checks = 0;
  for (int i = 0; i < 200; ++i) {
    const VertexModel m = random_complex_model(1 + i % 3, rng);
    const TransformResult tr = vertex_to_edge(m);
    for (const auto& g : corpus) {
      const Complex pv = eval_vertex(m, g);
      const Complex pe = eval_edge(tr.edge_model, g);
      worst = std::max(worst, std::abs(pe - pv) / (1.0 + std::abs(pv)));
      ++checks;
    }
  }
  r.seconds = t.seconds();
  r.pass = worst <= 1e-8 && r.seconds < 60.0;
  std::ostringstream d;
  d << "200 models x " << corpus.size() << " graphs (" << checks
    << " checks), worst rel err " << fmt(worst);
  r.detail = d.str();
  return r;
}

// The all-ones / complement-matrix family is reflection positive exactly at
// two colors.
CriterionResult c2(std::uint64_t) {
  CriterionResult r{"2", "complement-family-verdicts", false, 0.0, ""};
  Timer t;
  bool ok = true;
  std::ostringstream d;
  for (int n = 2; n <= 5; ++n) {
    const ErpVerdict v = erp_decide_real(ones_complement_model(n));
    const bool want_erp = n == 2;
    ok = ok && v.status == (want_erp ? ErpStatus::Erp : ErpStatus::NotErp);
    d << "n=" << n << ":" << to_string(v.status) << (n < 5 ? " " : "");
  }
  r.seconds = t.seconds();
  r.pass = ok && r.seconds < 1.0;
  r.detail = d.str();
  return r;
}

// Independent-set model: not reflection positive; its counts on C4 and K2
// match the brute-force values 7 and 3.
CriterionResult c3(std::uint64_t) {
  CriterionResult r{"3", "independent-set-fixture", false, 0.0, ""};
  Timer t;
  const VertexModel m = independent_set_model();
  const ErpVerdict v = erp_decide_real(m);
  const Complex c4_opt = eval_vertex(m, cycle_graph(4));
  const Complex c4_ref = eval_vertex(m, cycle_graph(4), std::nullopt, EvalBackend::Reference);
  const Complex k2_opt = eval_vertex(m, complete_graph(2));
  const Complex k2_ref = eval_vertex(m, complete_graph(2), std::nullopt, EvalBackend::Reference);
  const bool ok = v.status == ErpStatus::NotErp && std::abs(c4_opt - Complex(7.0, 0.0)) <= 1e-9 &&
                  std::abs(c4_ref - Complex(7.0, 0.0)) <= 1e-9 &&
                  std::abs(k2_opt - Complex(3.0, 0.0)) <= 1e-9 &&
                  std::abs(k2_ref - Complex(3.0, 0.0)) <= 1e-9;
  r.seconds = t.seconds();
  r.pass = ok && r.seconds < 1.0;
  std::ostringstream d;
  d << to_string(v.status) << ", C4=" << c4_opt.real() << ", K2=" << k2_opt.real();
  r.detail = d.str();
  return r;
}

// The two-color certificate materializes with real coefficients at degree 6
// and reproduces the proper-2-coloring counts on cycles C3..C8.
CriterionResult c4(std::uint64_t) {
  CriterionResult r{"4", "certificate-soundness", false, 0.0, ""};
  Timer t;
  const VertexModel m = ones_complement_model(2);
  const ErpVerdict v = erp_decide_real(m);
  if (v.status != ErpStatus::Erp || !v.certificate) {
    r.seconds = t.seconds();
    r.detail = "no certificate produced";
    return r;
  }
  const EdgeModelEval cert = *v.certificate;
  const EdgeModelTable table = materialize(cert, 6);
  double worst_imag = 0.0;
  for (const auto& [alpha, coeff] : table.coeffs) {
    worst_imag = std::max(worst_imag, std::abs(coeff.imag()));
  }
  double worst_val = 0.0;
  const double expected[6] = {0.0, 2.0, 0.0, 2.0, 0.0, 2.0};
  for (int len = 3; len <= 8; ++len) {
    const Complex via_cert = eval_edge(cert, cycle_graph(len));
    const Complex oracle =
        eval_vertex(m, cycle_graph(len), std::nullopt, EvalBackend::Reference);
    worst_val = std::max(worst_val, std::abs(via_cert - Complex(expected[len - 3], 0.0)));
    worst_val = std::max(worst_val, std::abs(oracle - Complex(expected[len - 3], 0.0)));
  }
  r.seconds = t.seconds();
  r.pass = worst_imag <= 1e-9 && worst_val <= 1e-9;
  std::ostringstream d;
  d << table.coeffs.size() << " coefficients, max |imag| " << fmt(worst_imag)
    << ", worst cycle err " << fmt(worst_val);
  r.detail = d.str();
  return r;
}

// On random twin-free real models with mixed-sign spectra the projector
// decision agrees with the conjugation-closure test on the spectral
// transform, case by case.
CriterionResult c5(std::uint64_t seed) {
  CriterionResult r{"5", "decision-coherence", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x05));
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const VertexModel m = random_real_mixed_model(2 + i % 3, rng);
    const ErpVerdict v = erp_decide_real(m);
    bool closed = false;
    try {
      closed = is_real_edge_model(vertex_to_edge(m).edge_model).real;
    } catch (const Error&) {
      closed = false;
    }
    if (v.status != ErpStatus::Unknown && (v.status == ErpStatus::Erp) == closed) ++agree;
  }
  r.seconds = t.seconds();
  r.pass = agree == 100;
  r.detail = std::to_string(agree) + "/100 agree";
  return r;
}

// Witness fixture: the negated-matching model yields a quadratic form of -2
// within the small fragment bounds; the three-color complement model yields
// no witness at the same bounds.
CriterionResult c6(std::uint64_t) {
  CriterionResult r{"6", "witness-fixture", false, 0.0, ""};
  Timer t;
  const FragmentBounds bounds{1, 3};
  std::ostringstream d;
  bool ok = true;
  const auto w = witness_search(negated_matching_model(), 3, bounds);
  if (w) {
    ok = std::abs(w->quadratic_form + 2.0) <= 1e-9;
    d << "q=" << w->quadratic_form << " at l=" << w->l;
  } else {
    ok = false;
    d << "no witness found";
  }
  const auto none = witness_search(ones_complement_model(3), 3, bounds);
  ok = ok && !none;
  d << "; three-color model: " << (none ? "unexpected witness" : "none");
  r.seconds = t.seconds();
  r.pass = ok;
  r.detail = d.str();
  return r;
}

// All connection matrices of the two-color certificate model over the
// circle-free corpora (l <= 2, <= 3 internal vertices, <= 4 edges) are PSD.
CriterionResult c7(std::uint64_t) {
  CriterionResult r{"7", "connection-psd", false, 0.0, ""};
  Timer t;
  const VertexModel m = ones_complement_model(2);
  const GraphEvaluator p = make_vertex_evaluator(m);
  bool ok = true;
  double worst = 0.0;
  std::ostringstream d;
  for (int l = 0; l <= 2; ++l) {
    const auto frags = enumerate_fragments(l, 3, 4, false);
    const ConnectionMatrix cm = connection_matrix(p, l, frags);
    const PsdReport rep = psd_check(cm.m);
    ok = ok && rep.psd;
    worst = std::min(worst, rep.min_eigenvalue);
    d << "l=" << l << ":" << frags.size() << (l < 2 ? " " : "");
  }
  r.seconds = t.seconds();
  r.pass = ok && r.seconds < 120.0;
  r.detail = d.str() + " fragments, min eig " + fmt(worst);
  return r;
}

// Partition functions of evaluation models are invariant under the complex
// orthogonal action, on the <= 4 vertex corpus.
CriterionResult c8(std::uint64_t seed) {
  CriterionResult r{"8", "group-invariance", false, 0.0, ""};
  Timer t;
  const auto corpus = graph_corpus(4, 6);
  Rng rng(mix(seed ^ 0x08));
  double worst = 0.0;
  for (int mi = 0; mi < 20; ++mi) {
    const int k = 1 + mi % 3;
    const EdgeModelEval h = random_eval_model(k, 2 + mi % 3, rng);
    std::vector<Complex> base;
    base.reserve(corpus.size());
    for (const auto& g : corpus) base.push_back(eval_edge(h, g));
    for (int gi = 0; gi < 20; ++gi) {
      const int l = k + rng.below(4 - k + 1);
      const MatrixXcd g = random_complex_orthogonal(l, 0.3, rng.eng());
      const EdgeModelEval hg = apply_group(h, g, l);
      for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
        const Complex pg = eval_edge(hg, corpus[ci]);
        worst = std::max(worst, std::abs(pg - base[ci]) / (1.0 + std::abs(base[ci])));
      }
    }
  }
  r.seconds = t.seconds();
  r.pass = worst <= 1e-7;
  std::ostringstream d;
  d << "20 models x 20 group elements x " << corpus.size() << " graphs, worst rel err "
    << fmt(worst);
  r.detail = d.str();
  return r;
}

MatrixXcd random_point_matrix(int l, int n, Rng& rng) {
  MatrixXcd w(l, n);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = rng.box(1.0);
  }
  return w;
}

MatrixXcd random_skew(int l, Rng& rng) {
  MatrixXcd z = MatrixXcd::Zero(l, l);
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      const Complex v = rng.box(1.0);
      z(i, j) = v;
      z(j, i) = -v;
    }
  }
  return z;
}

// Analytic directional derivatives match central finite differences, and the
// gradient reproduces them through the trace pairing.
CriterionResult c9a(std::uint64_t seed) {
  CriterionResult r{"9a", "gradient-finite-difference", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x9a));
  double worst_fd = 0.0;
  double worst_pair = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int l = 2 + i % 3;
    const int n = 2 + (i / 3) % 4;
    const KnProblem p{random_point_matrix(l, n, rng)};
    const MatrixXcd g = random_complex_orthogonal(l, 0.3, rng.eng());
    const MatrixXcd grad = kn_gradient(p, g);
    for (int dir = 0; dir < 3; ++dir) {
      const MatrixXcd z = random_skew(l, rng);
      const double dan = kn_directional_derivative(p, g, z);
      const double h = 1e-5;
      const double fp = kn_value(p, matrix_exp(h * z) * g);
      const double fm = kn_value(p, matrix_exp(-h * z) * g);
      const double dfd = (fp - fm) / (2.0 * h);
      worst_fd = std::max(worst_fd, std::abs(dfd - dan) / (1.0 + std::abs(dan)));
      const double dpair = (grad.adjoint() * z).trace().real();
      worst_pair = std::max(worst_pair, std::abs(dpair - dan) / (1.0 + std::abs(dan)));
    }
  }
  r.seconds = t.seconds();
  r.pass = worst_fd <= 1e-5 && worst_pair <= 1e-9;
  r.detail = "worst fd err " + fmt(worst_fd) + ", worst pairing err " + fmt(worst_pair);
  return r;
}

// When W W* is real the identity minimizes the norm functional: random group
// samples never dip below f(e).
CriterionResult c9b(std::uint64_t seed) {
  CriterionResult r{"9b", "identity-minimum", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x9b));
  double worst_drop = 0.0;
  int samples = 0;
  for (int i = 0; i < 100; ++i) {
    const int l = 2 + i % 3;
    const int real_cols = 1 + i % 2;
    const int pairs = 1 + (i / 2) % 2;
    MatrixXcd w(l, real_cols + 2 * pairs);
    int col = 0;
    for (int c = 0; c < real_cols; ++c, ++col) {
      for (int a = 0; a < l; ++a) w(a, col) = Complex(rng.range(-1.0, 1.0), 0.0);
    }
    for (int c = 0; c < pairs; ++c, col += 2) {
      for (int a = 0; a < l; ++a) {
        const Complex v = rng.box(1.0);
        w(a, col) = v;
        w(a, col + 1) = std::conj(v);
      }
    }
    const KnProblem p{w};
    const double fe = kn_value(p, MatrixXcd::Identity(l, l));
    for (int s = 0; s < 10; ++s) {
      const MatrixXcd g = random_complex_orthogonal(l, 0.5, rng.eng());
      worst_drop = std::max(worst_drop, fe - kn_value(p, g));
      ++samples;
    }
  }
  r.seconds = t.seconds();
  r.pass = worst_drop <= 1e-9 && samples == 1000;
  r.detail = std::to_string(samples) + " samples, worst drop below f(e) " + fmt(worst_drop);
  return r;
}

// Away from critical points descent strictly improves on the identity value.
CriterionResult c9c(std::uint64_t seed) {
  CriterionResult r{"9c", "descent-progress", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x9c));
  int improved = 0;
  double worst_gain = 1e300;
  for (int i = 0; i < 100; ++i) {
    const int l = 2 + i % 3;
    const int n = 2 + i % 4;
    KnProblem p{random_point_matrix(l, n, rng)};
    while (critical_residual(p) <= 0.1) p.w = random_point_matrix(l, n, rng);
    const double fe = kn_value(p, MatrixXcd::Identity(l, l));
    DescentOptions opt;
    opt.iterations = 120;
    opt.step = 0.1;
    const DescentResult res = descend(p, opt);
    const double gain = fe - res.f_history.back();
    worst_gain = std::min(worst_gain, gain);
    if (gain > 1e-6) ++improved;
  }
  r.seconds = t.seconds();
  r.pass = improved == 100;
  r.detail = std::to_string(improved) + "/100 improved, smallest gain " + fmt(worst_gain);
  return r;
}

// Planted recovery: conjugation-closed models pushed through a real
// orthogonal element are recovered as closed by the search.
CriterionResult c9d(std::uint64_t seed) {
  CriterionResult r{"9d", "planted-recovery", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x9d));
  int success = 0;
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + i % 3;
    const int l = std::min(4, k + i % 2);
    const EdgeModelEval h0 = random_conjugation_closed_model(k, 1 + i % 2, 1, rng);
    const MatrixXd g0 = random_real_orthogonal(l, 0.5, rng.eng());
    const EdgeModelEval planted = apply_group(h0, g0.cast<Complex>(), l);
    ConjugationSearchOptions opt;
    opt.budget = 4000;
    opt.restarts = 8;
    opt.seed = rng.eng();
    const ConjugationSearchResult res = find_conjugating_g(planted, l, opt);
    if (!res.g) continue;
    Tolerance closure;
    closure.equality = opt.closure_tol;
    try {
      if (is_real_edge_model(apply_group(planted, res.g->g, l), closure).real) ++success;
    } catch (const Error&) {
    }
  }
  r.seconds = t.seconds();
  r.pass = success >= 18;
  r.detail = std::to_string(success) + "/20 recovered";
  return r;
}

// Twin reduction removes planted twins and preserves partition functions on
// the corpus.
CriterionResult c10(std::uint64_t seed) {
  CriterionResult r{"10", "twin-reduction", false, 0.0, ""};
  Timer t;
  const auto corpus = graph_corpus(4, 6);
  Rng rng(mix(seed ^ 0x10));
  double worst = 0.0;
  int twin_free_count = 0;
  for (int i = 0; i < 100; ++i) {
    const int pairs = 1 + i % 2;
    const bool zero_sum = ((i / 2) % 2) == 1;
    const VertexModel base = random_complex_model(1 + pairs, rng);
    const VertexModel planted = plant_twins(base, pairs, zero_sum, rng);
    const VertexModel red = twin_reduce(planted);
    if (is_twin_free(red)) ++twin_free_count;
    for (const auto& g : corpus) {
      const Complex a = eval_vertex(planted, g);
      const Complex b = eval_vertex(red, g);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
  }
  r.seconds = t.seconds();
  r.pass = twin_free_count == 100 && worst <= 1e-8;
  std::ostringstream d;
  d << twin_free_count << "/100 twin-free, worst rel err " << fmt(worst);
  r.detail = d.str();
  return r;
}

// Symmetric factorization: residual and rank contracts on random complex
// symmetric matrices; real inputs additionally yield U U* real.
CriterionResult c11(std::uint64_t seed) {
  CriterionResult r{"11", "symmetric-factorization", false, 0.0, ""};
  Timer t;
  Rng rng(mix(seed ^ 0x11));
  double worst_resid = 0.0;
  double worst_real = 0.0;
  int rank_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 6;
    const bool make_real = i % 2 == 0;
    const bool low_rank = n >= 2 && i % 5 == 0;
    MatrixXcd b;
    if (make_real) {
      if (low_rank) {
        const int rk = 1 + rng.below(n - 1);
        const MatrixXd q = random_real_orthogonal(n, 1.0, rng.eng());
        VectorXd lambda = VectorXd::Zero(n);
        for (int j = 0; j < rk; ++j) {
          lambda(j) = rng.range(0.3, 2.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
        }
        const MatrixXd br = q * lambda.asDiagonal() * q.transpose();
        b = ((br + br.transpose()) / 2.0).cast<Complex>();
      } else {
        MatrixXd br(n, n);
        for (int a = 0; a < n; ++a) {
          for (int c = a; c < n; ++c) {
            br(a, c) = rng.range(-1.0, 1.0);
            br(c, a) = br(a, c);
          }
        }
        b = br.cast<Complex>();
      }
    } else {
      if (low_rank) {
        const int rk = 1 + rng.below(n - 1);
        MatrixXcd v(rk, n);
        for (int a = 0; a < rk; ++a) {
          for (int c = 0; c < n; ++c) v(a, c) = rng.box(1.0);
        }
        const MatrixXcd bc = v.transpose() * v;
        b = (bc + bc.transpose()) / 2.0;
      } else {
        b = MatrixXcd::Zero(n, n);
        for (int a = 0; a < n; ++a) {
          for (int c = a; c < n; ++c) {
            const Complex z = rng.box(1.0);
            b(a, c) = z;
            b(c, a) = z;
          }
        }
      }
    }
    const SymmetricFactorization f = factor_symmetric(b);
    const double resid = (f.u.transpose() * f.u - b).norm() / (1.0 + b.norm());
    worst_resid = std::max(worst_resid, resid);
    if (rank(f.u) == rank(b)) ++rank_ok;
    if (make_real) {
      const MatrixXcd uu = f.u * f.u.adjoint();
      worst_real = std::max(worst_real, uu.imag().cwiseAbs().maxCoeff());
    }
  }
  r.seconds = t.seconds();
  r.pass = worst_resid <= 1e-9 && rank_ok == 500 && worst_real <= 1e-9;
  std::ostringstream d;
  d << "worst resid " << fmt(worst_resid) << ", rank ok " << rank_ok
    << "/500, worst real-input U U* imag " << fmt(worst_real);
  r.detail = d.str();
  return r;
}

CriterionResult guarded(CriterionResult (*fn)(std::uint64_t), std::uint64_t seed,
                        const char* id, const char* name) {
  try {
    return fn(seed);
  } catch (const std::exception& e) {
    CriterionResult r{id, name, false, 0.0, ""};
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(guarded(c1, seed, "1", "transform-equivalence"));
  out.push_back(guarded(c2, seed, "2", "complement-family-verdicts"));
  out.push_back(guarded(c3, seed, "3", "independent-set-fixture"));
  out.push_back(guarded(c4, seed, "4", "certificate-soundness"));
  out.push_back(guarded(c5, seed, "5", "decision-coherence"));
  out.push_back(guarded(c6, seed, "6", "witness-fixture"));
  out.push_back(guarded(c7, seed, "7", "connection-psd"));
  out.push_back(guarded(c8, seed, "8", "group-invariance"));
  out.push_back(guarded(c9a, seed, "9a", "gradient-finite-difference"));
  out.push_back(guarded(c9b, seed, "9b", "identity-minimum"));
  out.push_back(guarded(c9c, seed, "9c", "descent-progress"));
  out.push_back(guarded(c9d, seed, "9d", "planted-recovery"));
  out.push_back(guarded(c10, seed, "10", "twin-reduction"));
  out.push_back(guarded(c11, seed, "11", "symmetric-factorization"));
  return out;
}

int report_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(3) << r.id
        << std::setw(28) << r.name << std::right << "(" << std::fixed << std::setprecision(2)
        << r.seconds << "s)  " << r.detail << "\n";
    out.unsetf(std::ios::floatfield);
  }
  return failures;
}

}  // namespace erp
