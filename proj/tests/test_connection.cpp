#include <doctest.h>

#include <cmath>
#include <complex>

#include "erp/connection.hpp"
#include "erp/instances.hpp"
#include "erp/transform.hpp"

using namespace erp;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace {

Fragment pendant_fragment() {
  Fragment f;
  f.graph.vertex_count = 2;
  f.graph.edges = {{0, 1}};
  f.open_ends = {1};
  return f;
}

Fragment pendant_with_loops(int loops) {
  Fragment f = pendant_fragment();
  for (int i = 0; i < loops; ++i) f.graph.edges.push_back({0, 0});
  return f;
}

Fragment cherry_fragment() {
  Fragment f;
  f.graph.vertex_count = 3;
  f.graph.edges = {{0, 1}, {0, 2}};
  f.open_ends = {1, 2};
  return f;
}

Fragment bare_edge_fragment() {
  Fragment f;
  f.graph.vertex_count = 2;
  f.graph.edges = {{0, 1}};
  f.open_ends = {0, 1};
  return f;
}

Fragment path_fragment(int internal) {
  Fragment f;
  f.graph.vertex_count = internal + 2;
  f.graph.edges.push_back({internal, 0});
  for (int i = 0; i + 1 < internal; ++i) f.graph.edges.push_back({i, i + 1});
  f.graph.edges.push_back({internal - 1, internal + 1});
  f.open_ends = {internal, internal + 1};
  return f;
}

}  // namespace

TEST_SUITE("connection") {

TEST_CASE("hand-computed matrix for the three-color complement model") {
  const VertexModel m = ones_complement_model(3);
  const GraphEvaluator p = make_vertex_evaluator(m);
  const ConnectionMatrix cm = connection_matrix(p, 2, {cherry_fragment(), path_fragment(2)});
  REQUIRE(cm.m.rows() == 2);
  REQUIRE(cm.fragment_keys.size() == 2);
  CHECK(cm.m(0, 0) == doctest::Approx(6.0).epsilon(1e-12));   // double edge
  CHECK(cm.m(0, 1) == doctest::Approx(6.0).epsilon(1e-12));   // triangle
  CHECK(cm.m(1, 0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(cm.m(1, 1) == doctest::Approx(18.0).epsilon(1e-12));  // four-cycle
}

TEST_CASE("path corpus gives powers of the eigenvalues") {
  // b = J - I on three colors has eigenvalues 2, -1, -1, so the cycle of
  // length s evaluates to 2^s + 2 (-1)^s and the matrix is a Gram matrix.
  const VertexModel m = ones_complement_model(3);
  const GraphEvaluator p = make_vertex_evaluator(m);
  std::vector<Fragment> corpus = {path_fragment(1), path_fragment(2), path_fragment(3)};
  const ConnectionMatrix cm = connection_matrix(p, 2, corpus);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int s = i + j + 2;
      const double expected = std::pow(2.0, s) + 2.0 * ((s % 2 == 0) ? 1.0 : -1.0);
      CHECK(cm.m(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  CHECK(psd_check(cm.m).psd);
}

TEST_CASE("psd check flags a negative direction") {
  MatrixXd bad = MatrixXd::Zero(2, 2);
  bad(0, 0) = 1;
  bad(1, 1) = -1;
  const PsdReport r = psd_check(bad);
  CHECK_FALSE(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  REQUIRE(r.witness.has_value());
  const double q = r.witness->transpose() * bad * (*r.witness);
  CHECK(q == doctest::Approx(-1.0).epsilon(1e-12));

  MatrixXd good(2, 2);
  good << 2, 1, 1, 2;
  CHECK(psd_check(good).psd);
}

TEST_CASE("complex values on the corpus are rejected") {
  VertexModel m;
  m.a = VectorXcd::Ones(1);
  m.b = Eigen::MatrixXcd::Identity(1, 1) * Complex(0, 1);
  const GraphEvaluator p = make_vertex_evaluator(m);
  CHECK_THROWS_AS(connection_matrix(p, 1, {pendant_fragment()}), Error);
}

TEST_CASE("witness search finds the negated matching failure") {
  const auto w = witness_search(negated_matching_model(), 1, FragmentBounds{1, 3});
  REQUIRE(w.has_value());
  CHECK(w->l == 1);
  CHECK(w->quadratic_form == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(w->min_eigenvalue == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(w->lambda.size() == static_cast<int>(w->fragment_keys.size()));
}

TEST_CASE("witness search comes up empty for a reflection positive model") {
  const auto w = witness_search(ones_complement_model(2), 2, FragmentBounds{1, 2});
  CHECK_FALSE(w.has_value());
}

TEST_CASE("hand-computed negated matching matrix at one open end") {
  const VertexModel m = negated_matching_model();
  const GraphEvaluator p = make_vertex_evaluator(m);
  std::vector<Fragment> corpus = {pendant_fragment(), pendant_with_loops(1),
                                  pendant_with_loops(2)};
  const ConnectionMatrix cm = connection_matrix(p, 1, corpus);
  MatrixXd expected = MatrixXd::Zero(3, 3);
  expected(0, 0) = -2;  // single edge: both proper colorings carry weight -1
  CHECK((cm.m - expected).norm() < 1e-12);
}

TEST_CASE("circles produced by gluing use the supplied value") {
  const VertexModel m = ones_complement_model(2);
  const GraphEvaluator p = make_vertex_evaluator(m, Complex(2, 0));
  const ConnectionMatrix cm =
      connection_matrix(p, 2, {bare_edge_fragment(), cherry_fragment()}, Complex(2, 0));
  CHECK(cm.m(0, 0) == doctest::Approx(2.0).epsilon(1e-12));  // circle
  CHECK(cm.m(0, 1) == doctest::Approx(0.0).epsilon(1e-12));  // loop, b has zero diagonal
  CHECK(cm.m(1, 1) == doctest::Approx(2.0).epsilon(1e-12));  // double edge
  REQUIRE(cm.circle_value.has_value());
}

TEST_CASE("edge model evaluators carry the circle factor") {
  const TransformResult t = vertex_to_edge(ones_complement_model(2));
  const GraphEvaluator p = make_edge_evaluator(t.edge_model);
  Multigraph circle = circle_only(1);
  CHECK(std::abs(p(circle) - Complex(2, 0)) < 1e-12);
}

TEST_CASE("multiplicativity holds for the invariant and fails for a corruption") {
  const VertexModel m = ones_complement_model(3);
  const GraphEvaluator p = make_vertex_evaluator(m);
  const std::vector<Multigraph> corpus = graph_corpus(3, 3);
  CHECK(multiplicativity_check(p, corpus));
  const GraphEvaluator shifted = [&](const Multigraph& g) { return p(g) + Complex(1, 0); };
  CHECK_FALSE(multiplicativity_check(shifted, corpus));
}

}  // TEST_SUITE
