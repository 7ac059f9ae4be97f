#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "erp/instances.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

using namespace erp;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

// Three-row symmetric matrix whose first two rows coincide.
VertexModel twin_fixture(Complex a0, Complex a1, Complex a2) {
  VertexModel m;
  m.a = VectorXcd::Zero(3);
  m.a << a0, a1, a2;
  m.b = MatrixXcd::Zero(3, 3);
  m.b << Complex(1, 0), Complex(1, 0), Complex(2, 0),
         Complex(1, 0), Complex(1, 0), Complex(2, 0),
         Complex(2, 0), Complex(2, 0), Complex(5, 0);
  return m;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("complement model counts proper colorings") {
  const VertexModel m = ones_complement_model(3);
  CHECK(close(eval_vertex(m, complete_graph(3)), Complex(6, 0)));
  CHECK(close(eval_vertex(m, cycle_graph(4)), Complex(18, 0)));
  CHECK(close(eval_vertex(m, complete_graph(3), std::nullopt, EvalBackend::Reference),
              Complex(6, 0)));
  CHECK(close(eval_vertex(m, cycle_graph(4), std::nullopt, EvalBackend::Reference),
              Complex(18, 0)));
}

TEST_CASE("independent set model counts independent sets") {
  const VertexModel m = independent_set_model();
  CHECK(close(eval_vertex(m, cycle_graph(4)), Complex(7, 0)));
  CHECK(close(eval_vertex(m, complete_graph(2)), Complex(3, 0)));
  CHECK(close(eval_vertex(m, cycle_graph(4), std::nullopt, EvalBackend::Reference),
              Complex(7, 0)));
  CHECK(close(eval_vertex(m, complete_graph(2), std::nullopt, EvalBackend::Reference),
              Complex(3, 0)));
  // One vertex with a loop: sum of a_i * b_ii.
  CHECK(close(eval_vertex(m, cycle_graph(1)), Complex(1, 0)));
}

TEST_CASE("backends agree on random models across the corpus") {
  Rng rng(21);
  const auto corpus = graph_corpus(3, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const VertexModel m = random_complex_model(1 + trial % 3, rng);
    for (const auto& g : corpus) {
      const Complex a = eval_vertex(m, g, std::nullopt, EvalBackend::Optimized);
      const Complex b = eval_vertex(m, g, std::nullopt, EvalBackend::Reference);
      CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)));
    }
  }
}

TEST_CASE("cycle evaluations match the trace closed form") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const VertexModel m = random_complex_model(2 + trial % 2, rng);
    for (int len = 1; len <= 6; ++len) {
      const Complex via_eval = eval_vertex(m, cycle_graph(len));
      const Complex via_trace = oracle_cycle(m, len);
      CHECK(std::abs(via_eval - via_trace) <= 1e-9 * (1.0 + std::abs(via_trace)));
    }
  }
}

TEST_CASE("partition functions are multiplicative over disjoint union") {
  Rng rng(23);
  const VertexModel m = random_complex_model(3, rng);
  const Multigraph a = cycle_graph(3);
  const Multigraph b = path_graph(2);
  const Complex pa = eval_vertex(m, a);
  const Complex pb = eval_vertex(m, b);
  const Complex pu = eval_vertex(m, disjoint_union(a, b));
  CHECK(std::abs(pu - pa * pb) <= 1e-9 * (1.0 + std::abs(pu)));
  // Empty graph evaluates to one.
  CHECK(close(eval_vertex(m, Multigraph{}), Complex(1, 0)));
}

TEST_CASE("circles require an explicit value for vertex models") {
  const VertexModel m = independent_set_model();
  Multigraph g = cycle_graph(3);
  g.circles = 2;
  CHECK_THROWS_AS(eval_vertex(m, g), Error);
  const Complex with_value = eval_vertex(m, g, Complex(5, 0));
  const Complex base = eval_vertex(m, cycle_graph(3));
  CHECK(std::abs(with_value - base * 25.0) <= 1e-9 * (1.0 + std::abs(with_value)));
}

TEST_CASE("edge models give each circle a factor k") {
  Rng rng(24);
  const EdgeModelEval h = random_eval_model(3, 2, rng);
  CHECK(close(eval_edge(h, circle_only(2)), Complex(9, 0)));
  CHECK(close(eval_edge(h, circle_only(2), EvalBackend::Reference), Complex(9, 0)));
}

TEST_CASE("edge table evaluation matches hand values for the swap certificate") {
  // h(1) = 2, h(x1) = sqrt(2), h(x2) = 0, h(x1^2) = 1, h(x1 x2) = 0,
  // h(x2^2) = -1 tabulates the two-coloring invariant up to degree 2.
  EdgeModelTable t;
  t.k = 2;
  t.d = 2;
  t.coeffs[{0, 0}] = Complex(2, 0);
  t.coeffs[{1, 0}] = Complex(std::sqrt(2.0), 0);
  t.coeffs[{2, 0}] = Complex(1, 0);
  t.coeffs[{0, 2}] = Complex(-1, 0);
  CHECK(close(eval_edge(t, complete_graph(2)), Complex(2, 0)));
  CHECK(close(eval_edge(t, cycle_graph(1)), Complex(0, 0)));
  CHECK(close(eval_edge(t, complete_graph(2), EvalBackend::Reference), Complex(2, 0)));
  CHECK(close(eval_edge(t, cycle_graph(1), EvalBackend::Reference), Complex(0, 0)));
  // Isolated vertices weigh h(1) each.
  Multigraph isolated;
  isolated.vertex_count = 2;
  CHECK(close(eval_edge(t, isolated), Complex(4, 0)));
}

TEST_CASE("degree bound is enforced for tables") {
  EdgeModelTable t;
  t.k = 1;
  t.d = 1;
  t.coeffs[{0}] = Complex(1, 0);
  t.coeffs[{1}] = Complex(1, 0);
  CHECK_THROWS_AS(eval_edge(t, cycle_graph(1)), Error);  // loop needs degree 2
}

TEST_CASE("evaluation form and materialized table agree") {
  Rng rng(25);
  const auto corpus = graph_corpus(3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    const EdgeModelEval h = random_eval_model(1 + trial % 3, 2 + trial % 2, rng);
    const EdgeModelTable t = materialize(h, 6);
    for (const auto& g : corpus) {
      if (max_degree(g) > 6) continue;
      const Complex a = eval_edge(h, g);
      const Complex b = eval_edge(t, g);
      CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
      const Complex c = eval_edge(h, g, EvalBackend::Reference);
      CHECK(std::abs(a - c) <= 1e-9 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("moments evaluate points directly") {
  EdgeModelEval h;
  h.k = 2;
  EdgeTerm t1{Complex(2, 0), VectorXcd::Zero(2)};
  t1.point << Complex(0.5, 0), Complex(0, 1);
  h.terms.push_back(t1);
  CHECK(close(moment(h, {0, 0}), Complex(2, 0)));
  CHECK(close(moment(h, {1, 0}), Complex(1, 0)));
  CHECK(close(moment(h, {0, 2}), Complex(-2, 0)));
  CHECK(close(moment(h, {1, 1}), Complex(0, 1)));
}

TEST_CASE("profiles reproduce table evaluation") {
  Rng rng(26);
  const EdgeModelEval h = random_eval_model(2, 3, rng);
  const EdgeModelTable t = materialize(h, 6);
  for (const Multigraph& g : {cycle_graph(3), path_graph(3), complete_graph(3)}) {
    const DegreeProfile p = degree_profile(g, t.k, t.d);
    const Complex a = eval_via_profile(p, t);
    const Complex b = eval_edge(t, g);
    CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("twin merge accumulates weights") {
  const VertexModel m = twin_fixture(Complex(1, 0), Complex(2, 0), Complex(3, 0));
  CHECK_FALSE(is_twin_free(m));
  const VertexModel r = twin_reduce(m);
  CHECK(is_twin_free(r));
  REQUIRE(r.colors() == 2);
  CHECK(close(r.a(0), Complex(3, 0)));  // 1 + 2 merged
  CHECK(close(r.a(1), Complex(3, 0)));
  CHECK(close(r.b(0, 0), Complex(1, 0)));
  CHECK(close(r.b(0, 1), Complex(2, 0)));
  CHECK(close(r.b(1, 1), Complex(5, 0)));
}

TEST_CASE("canceling twins drop out") {
  const VertexModel m = twin_fixture(Complex(1, 0), Complex(-1, 0), Complex(2, 0));
  const VertexModel r = twin_reduce(m);
  REQUIRE(r.colors() == 1);
  CHECK(close(r.a(0), Complex(2, 0)));
  CHECK(close(r.b(0, 0), Complex(5, 0)));
}

TEST_CASE("twin reduction preserves partition functions") {
  Rng rng(27);
  const auto corpus = graph_corpus(3, 4);
  for (int trial = 0; trial < 12; ++trial) {
    const VertexModel base = random_complex_model(2, rng);
    const VertexModel planted = plant_twins(base, 1 + trial % 2, trial % 2 == 0, rng);
    const VertexModel reduced = twin_reduce(planted);
    CHECK(is_twin_free(reduced));
    for (const auto& g : corpus) {
      const Complex a = eval_vertex(planted, g);
      const Complex b = eval_vertex(reduced, g);
      CHECK(std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("model validation rejects malformed input") {
  VertexModel m;
  m.a = VectorXcd::Ones(2);
  m.b = MatrixXcd::Zero(2, 3);
  CHECK_THROWS_AS(validate(m), Error);  // not square

  m.b = MatrixXcd::Zero(2, 2);
  m.b(0, 1) = Complex(1, 0);  // asymmetric
  CHECK_THROWS_AS(validate(m), Error);

  m.b(1, 0) = Complex(1, 0);
  CHECK_NOTHROW(validate(m));

  m.a(0) = Complex(0, 0);
  CHECK_THROWS_AS(validate(m), Error);  // zero weight

  EdgeModelEval h;
  h.k = 2;
  h.terms.push_back(EdgeTerm{Complex(1, 0), VectorXcd::Zero(3)});
  CHECK_THROWS_AS(validate(h), Error);  // point length mismatch
}

}  // TEST_SUITE
