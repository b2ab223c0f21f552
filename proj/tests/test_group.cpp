// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "hopfcert/errors.hpp"
#include "hopfcert/group.hpp"

using namespace hopfcert;
using namespace hopfcert::group;

namespace {

GroupElement el(int sign, const char* perm, const char* phase) {
  return {sign, Permutation::parse(perm, 8), Phase::parse(phase)};
}

// Catalog groups that resolve, with their names.
std::vector<TwistedSubgroup> resolved_catalog() {
  std::vector<TwistedSubgroup> out;
  for (const auto& name : catalog_names()) {
    try {
      out.push_back(catalog(name));
    } catch (const LookupError& e) {
      if (!e.unresolved()) throw;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("phases are reduced fractions mod 1") {
  CHECK(Phase::parse("3/4").num() == 3);
  CHECK(Phase::parse("3/4").den() == 4);
  CHECK(Phase::parse("-1/2") == Phase(1, 2));
  CHECK(Phase::parse("1").is_zero());
  CHECK(Phase(2, 6) == Phase(1, 3));
  CHECK((Phase(1, 3) + Phase(2, 3)).is_zero());
  CHECK(Phase(1, 4).times(6) == Phase(1, 2));
  CHECK((-Phase(1, 4)) == Phase(3, 4));
}

TEST_CASE("permutations parse, compose and print in cycle notation") {
  const auto p = Permutation::parse("(1234)(5678)", 8);
  CHECK(p(0) == 1);
  CHECK(p(3) == 0);
  CHECK(p.str() == "(1234)(5678)");
  CHECK(p.compose(p).str() == "(13)(24)(57)(68)");
  CHECK(p.compose(p.inverse()).is_identity());
  CHECK(Permutation(8).str() == "()");
  CHECK_THROWS_AS(Permutation::parse("(19)", 8), StructuralError);
  CHECK_THROWS_AS(Permutation::parse("(112)", 8), StructuralError);
}

TEST_CASE("group element composition") {
  const auto id = GroupElement::identity(8);
  const auto g = el(-1, "(17)(28)(35)(46)", "1/2");
  CHECK(compose(id, g) == g);
  CHECK(compose(g, g) == id);
  const auto r = el(1, "(1234)(5678)", "1/4");
  CHECK(compose(r, r) == el(1, "(13)(24)(57)(68)", "1/2"));
  CHECK(compose(r, r.inverse()) == id);
}

TEST_CASE("composition is associative on catalog groups") {
  for (const std::string name : {"+D4d", "-Z4c", "+D3bar"}) {
    const auto h = catalog(name);
    const auto& els = h.elements();
    for (const auto& a : els)
      for (const auto& b : els)
        for (const auto& c : els) REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("catalog groups are closed graphs of homomorphisms") {
  for (const auto& h : resolved_catalog()) {
    INFO(h.name());
    std::set<std::pair<int, Permutation>> seen;
    for (const auto& a : h.elements()) {
      CHECK(seen.insert({a.sign, a.perm}).second);
      CHECK(h.contains(a.inverse()));
      for (const auto& b : h.elements()) CHECK(h.contains(compose(a, b)));
    }
  }
}

TEST_CASE("catalog entries") {
  const auto z3 = catalog("Z3t");
  REQUIRE(z3.order() == 3);
  CHECK(z3.contains(el(1, "(254)(368)", "1/3")));
  CHECK(z3.contains(el(1, "(245)(386)", "2/3")));
  CHECK(catalog("D2d").order() == 4);
  // H·(Z2×O1)^o enumerates to |H|·|(Z2×O1)^o| = 24·4.
  CHECK(catalog("+S4").order() == 96);
  CHECK(catalog("+D4d").contains(el(-1, "()", "1/2")));
  CHECK_THROWS_AS(catalog("nonsense"), LookupError);
  try {
    catalog("+D3dbar");
    FAIL("D3d must not resolve");
  } catch (const LookupError& e) {
    CHECK(e.unresolved());
  }
}

TEST_CASE("invalid element sets are rejected") {
  // Missing the inverse of a 4-cycle.
  CHECK_THROWS_AS(TwistedSubgroup("bad", {GroupElement::identity(8), el(1, "(1234)(5678)", "0")}),
                  StructuralError);
  // Same spatial part twice with different phases.
  CHECK_THROWS_AS(TwistedSubgroup("bad", {GroupElement::identity(8), el(1, "()", "1/2")}),
                  StructuralError);
}

TEST_CASE("cube representation is orthogonal and a homomorphism") {
  for (bool with_sign : {true, false}) {
    const auto space = RepresentationSpace::cube(with_sign);
    CHECK(space.order() == (with_sign ? 96u : 48u));
    const auto els = space.elements();
    for (const auto& g : els) {
      const MatrixXd& a = space.action(g);
      CHECK((a.transpose() * a - MatrixXd::Identity(16, 16)).norm() < 1e-12);
    }
    for (const auto& g : space.generators())
      for (const auto& h : space.generators())
        CHECK((space.action(compose(g, h)) - space.action(g) * space.action(h)).norm() < 1e-12);
  }
}

TEST_CASE("l-folded representation matrices") {
  const auto space = RepresentationSpace::cube(true);
  const auto id = GroupElement::identity(8);
  CHECK((space.rep_matrix(id, 3) - MatrixXc::Identity(16, 16)).norm() < 1e-14);
  const auto g = el(-1, "()", "1/2");
  CHECK((space.rep_matrix(g, 1) - MatrixXc::Identity(16, 16)).norm() < 1e-14);
  CHECK((space.rep_matrix(g, 0) + MatrixXc::Identity(16, 16)).norm() < 1e-14);
}

TEST_CASE("fixed spaces") {
  const auto space = RepresentationSpace::cube(true);
  CHECK(fixed_space(space, trivial_subgroup(8), 1).dim() == 16);
  for (const std::string name : {"+S4", "-D4z", "+D4d", "-S4-", "+Z3t"})
    CHECK(fixed_space(space, catalog(name), 0).dim() == 0);
  const auto o4 = fixed_space(space, catalog("O4"), 0);
  REQUIRE(o4.dim() == 2);
  // Span of equal currents and equal voltages.
  for (int c = 0; c < 2; ++c)
    for (int m = 1; m < 8; ++m) {
      CHECK(std::abs(o4.columns(2 * m, c) - o4.columns(0, c)) < 1e-12);
      CHECK(std::abs(o4.columns(2 * m + 1, c) - o4.columns(1, c)) < 1e-12);
    }
}

TEST_CASE("fixed-space bases are orthonormal and invariant across the catalog") {
  const auto space = RepresentationSpace::cube(true);
  for (const auto& h : resolved_catalog()) {
    if (h.points() != 8) continue;
    for (int l = 0; l <= 4; ++l) {
      INFO(h.name() << " l=" << l);
      const auto b = fixed_space(space, h, l);
      if (b.dim() == 0) continue;
      CHECK((b.columns.adjoint() * b.columns - MatrixXc::Identity(b.dim(), b.dim())).norm() < 1e-10);
      for (const auto& g : h.elements())
        CHECK((space.rep_matrix(g, l) * b.columns - b.columns).norm() < 1e-10);
      const MatrixXc p = averaging_projector(space, h, l);
      CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("fixed spaces repeat with the phase period") {
  const auto space = RepresentationSpace::cube(true);
  const auto h = catalog("+Z4c");
  const auto p = static_cast<int>(h.phase_period());
  for (int l = 0; l < p; ++l)
    CHECK(fixed_space(space, h, l).dim() == fixed_space(space, h, l + p).dim());
}
