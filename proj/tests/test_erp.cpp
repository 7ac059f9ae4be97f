#include <doctest.h>

#include <cmath>
#include <complex>

#include "erp/erp.hpp"
#include "erp/instances.hpp"
#include "erp/models.hpp"
#include "erp/transform.hpp"

using namespace erp;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

TEST_SUITE("erp") {

TEST_CASE("two colors with the swap matrix are reflection positive") {
  const ErpVerdict v = erp_decide_real(ones_complement_model(2));
  CHECK(v.status == ErpStatus::Erp);
  REQUIRE(v.certificate.has_value());
  CHECK(is_real_edge_model(*v.certificate).real);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("three or more complement colors are not reflection positive") {
  for (int n = 3; n <= 5; ++n) {
    const ErpVerdict v = erp_decide_real(ones_complement_model(n));
    CHECK(v.status == ErpStatus::NotErp);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->i >= 0);
    CHECK(v.witness->i < n);
    CHECK_FALSE(v.witness->violations.empty());
    CHECK_FALSE(v.certificate.has_value());
  }
}

TEST_CASE("independent set model fails the decision") {
  const ErpVerdict v = erp_decide_real(independent_set_model());
  CHECK(v.status == ErpStatus::NotErp);
  REQUIRE(v.witness.has_value());
}

TEST_CASE("negated matching model fails the decision") {
  const ErpVerdict v = erp_decide_real(negated_matching_model());
  CHECK(v.status == ErpStatus::NotErp);
}

TEST_CASE("mixed sign diagonal pins the failing color") {
  // b = diag(1, -1): color 0 partners with itself, color 1 has no partner.
  VertexModel m;
  m.a = VectorXcd::Ones(2);
  m.b = MatrixXcd::Identity(2, 2);
  m.b(1, 1) = Complex(-1, 0);
  const ErpVerdict v = erp_decide_real(m);
  CHECK(v.status == ErpStatus::NotErp);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->i == 1);
}

TEST_CASE("self-partnering covers definite matrices") {
  // b = I is positive definite: every color partners with itself.
  VertexModel m;
  m.a = VectorXcd::Ones(3);
  m.a(1) = Complex(2, 0);
  m.a(2) = Complex(0.5, 0);
  m.b = MatrixXcd::Identity(3, 3);
  const ErpVerdict v = erp_decide_real(m);
  CHECK(v.status == ErpStatus::Erp);
  REQUIRE(v.certificate.has_value());
  CHECK(is_real_edge_model(*v.certificate).real);
}

TEST_CASE("negative vertex weights only warn") {
  VertexModel m;
  m.a = VectorXcd::Ones(2);
  m.a(1) = Complex(-1, 0);
  m.b = MatrixXcd::Identity(2, 2);
  const ErpVerdict v = erp_decide_real(m);
  CHECK(v.status == ErpStatus::Erp);
  CHECK_FALSE(v.notes.empty());
}

TEST_CASE("decision requires a twin-free real model") {
  VertexModel twins;
  twins.a = VectorXcd::Ones(2);
  twins.b = MatrixXcd::Ones(2, 2);
  CHECK_THROWS_AS(erp_decide_real(twins), Error);

  VertexModel complex_model;
  complex_model.a = VectorXcd::Ones(1);
  complex_model.b = MatrixXcd::Identity(1, 1) * Complex(0, 1);
  CHECK_THROWS_AS(erp_decide_real(complex_model), Error);
}

TEST_CASE("the necessary condition holds for real models that pass or fail") {
  CHECK(necessary_condition(ones_complement_model(2)));
  // Necessary but not sufficient: the independent-set model also satisfies it.
  CHECK(necessary_condition(independent_set_model()));
}

TEST_CASE("the general decision delegates for real models") {
  const ErpVerdict a = erp_decide_complex(ones_complement_model(2));
  CHECK(a.status == ErpStatus::Erp);
  const ErpVerdict b = erp_decide_complex(ones_complement_model(3));
  CHECK(b.status == ErpStatus::NotErp);
}

TEST_CASE("a planted complex model is certified through the search") {
  Rng rng(41);
  const EdgeModelEval h = random_conjugation_closed_model(2, 1, 1, rng);
  const VertexModel m = evaluation_to_vertex(h);
  REQUIRE(is_twin_free(m));
  const ErpVerdict v = erp_decide_complex(m, Tolerance{}, 4000, 7);
  REQUIRE(v.status == ErpStatus::Erp);
  REQUIRE(v.certificate.has_value());
  CHECK(is_real_edge_model(*v.certificate).real);
  // The certificate reproduces the invariant.
  for (const auto& g : {complete_graph(2), cycle_graph(3), path_graph(2)}) {
    const Complex pv = eval_vertex(m, g);
    const Complex pc = eval_edge(*v.certificate, g);
    CHECK(std::abs(pv - pc) <= 1e-7 * (1.0 + std::abs(pv)));
  }
}

TEST_CASE("search failure reports unknown rather than a refutation") {
  // A random complex model is almost surely not reflection positive; the
  // search cannot prove that, so the verdict must stay open.
  Rng rng(43);
  VertexModel m = random_complex_model(2, rng);
  const ErpVerdict v = erp_decide_complex(m, Tolerance{}, 400, 3);
  CHECK((v.status == ErpStatus::Unknown || v.status == ErpStatus::Erp));
  if (v.status == ErpStatus::Unknown) {
    CHECK_FALSE(v.notes.empty());
  }
}

}  // TEST_SUITE
