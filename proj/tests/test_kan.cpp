#include "doctest.h"
#include "support.hpp"

using namespace alex;
using namespace alex::testing;

TEST_CASE("lan along the identity is pointwise isomorphic") {
  Rng rng = make_rng(41, {});
  for (int t = 0; t < 20; ++t) {
    const Diagram<Vect> f = random_vect_diagram(random_poset(4, rng), rng);
    const KanExtension<Vect> ext = lan(PosetMap::identity(f.base()), f);
    for (Element p = 0; p < f.base().size(); ++p) {
      CHECK(ext.result.object(p) == f.object(p));
      CHECK(is_invertible(unit_leg(ext, p)));
    }
    CHECK(ext.result.is_functorial());
    CHECK(check_restriction(ext));
  }
}

TEST_CASE("lan along the inclusion of the bottom of a chain") {
  Diagram<Vect> f(point(), {{1}}, {});
  const KanExtension<Vect> ext = lan(PosetMap(point(), chain(2), {0}), f);
  CHECK(ext.result.object(0).dim == 1);
  CHECK(ext.result.object(1).dim == 1);
  CHECK(ext.result.edge_map(0, 1) == mat({{1}}));
}

TEST_CASE("lan and hat on the Λ pushout") {
  const Diagram<Vect> f = lambda_pushout();
  const DownSetLattice lat = down_set_lattice(f.base());
  const KanExtension<Vect> generic = lan(iota(lat), f);
  const KanExtension<Vect> fast = hat(f, lat);
  const Element whole = lat.sets.size() - 1;
  CHECK(generic.result.object(whole).dim == 2);
  CHECK(fast.result.object(whole).dim == 2);
  CHECK(fast.result.object(0).dim == 0);
  CHECK(fast.result.object(*lat.find(ds(f.base(), {X, Z}))).dim == 1);
}

TEST_CASE("generic lan and hat agree up to canonical isomorphism") {
  Rng rng = make_rng(42, {});
  for (int t = 0; t < 40; ++t) {
    const FinitePoset p = random_poset(1 + t % 4, rng);
    const DownSetLattice lat = down_set_lattice(p);
    const Diagram<Vect> f = random_vect_diagram(p, rng);
    const KanExtension<Vect> generic = lan(iota(lat), f);
    const KanExtension<Vect> fast = hat(f, lat);
    CHECK(generic.result.is_functorial());
    for (Element s = 0; s < lat.sets.size(); ++s) {
      // Comma element (p, D_p ⊆ S) corresponds to p in the sub-poset P_S.
      std::vector<Element> to_fast, to_generic;
      for (Element a : generic.commas[s].projection.assignment()) to_fast.push_back(*carrier_index(fast.commas[s], a));
      for (Element a : fast.commas[s].projection.assignment())
        to_generic.push_back(*carrier_index(generic.commas[s], a));
      const QMatrix forward = colimit_comparison(generic.comma_colimits[s], fast.comma_colimits[s], to_fast);
      const QMatrix backward = colimit_comparison(fast.comma_colimits[s], generic.comma_colimits[s], to_generic);
      CHECK(is_invertible(forward));
      CHECK(backward * forward == QMatrix::Identity(forward.cols(), forward.cols()));
    }
    for (const auto& [a, b] : lat.poset.hasse_edges())
      CHECK(generic.result.edge_map(a, b) == fast.result.edge_map(a, b));
  }
}

TEST_CASE("hat restricts to F along iota") {
  Rng rng = make_rng(43, {});
  for (int t = 0; t < 40; ++t) {
    const FinitePoset p = random_poset(1 + t % 5, rng);
    const DownSetLattice lat = down_set_lattice(p);
    CHECK(check_restriction(hat(random_vect_diagram(p, rng), lat)));
    CHECK(check_restriction(hat(random_finset_diagram(p, rng, {.max_value = 3}), lat)));
  }
}

TEST_CASE("Kan extensions compose up to canonical isomorphism") {
  Rng rng = make_rng(44, {});
  for (int t = 0; t < 40; ++t) {
    const FinitePoset a = random_poset(1 + t % 4, rng), b = random_poset(1 + (t / 2) % 4, rng),
                      c = random_poset(1 + (t / 3) % 3, rng);
    const PosetMap e1 = random_poset_map(a, b, rng), e2 = random_poset_map(b, c, rng);
    const Diagram<Vect> f = random_vect_diagram(a, rng);
    const KanExtension<Vect> inner = lan(e1, f);
    const KanExtension<Vect> outer = lan(e2, inner.result);
    const KanExtension<Vect> direct = lan(compose(e2, e1), f);
    for (Element q = 0; q < c.size(); ++q) CHECK(mutually_inverse(composition_comparison(inner, outer, direct, q)));

    const Diagram<FinSet> g = random_finset_diagram(a, rng, {.max_value = 3});
    const KanExtension<FinSet> ginner = lan(e1, g);
    const KanExtension<FinSet> gouter = lan(e2, ginner.result);
    const KanExtension<FinSet> gdirect = lan(compose(e2, e1), g);
    for (Element q = 0; q < c.size(); ++q)
      CHECK(mutually_inverse(composition_comparison(ginner, gouter, gdirect, q)));
  }
}

TEST_CASE("lan rejects mismatched inputs") {
  const Diagram<Vect> f = lambda_pushout();
  CHECK_THROWS_AS(lan(PosetMap::identity(chain(3)), f), Error);
  CHECK_THROWS_AS(hat(f, down_set_lattice(chain(3))), Error);
}
