#include "doctest.h"
#include "support.hpp"

using namespace alex;
using namespace alex::testing;

TEST_CASE("vect colimits satisfy the universal property against the all-pairs oracle") {
  Rng rng = make_rng(71, {});
  for (int t = 0; t < 150; ++t) {
    const FinitePoset p = random_poset(1 + t % 5, rng);
    const Diagram<Vect> d = random_vect_diagram(p, rng);
    const ColimitResult<Vect> c = colimit(d);
    CHECK(is_cocone(d, c.legs, c.object));
    const OracleColimit o = oracle_colimit(d);
    REQUIRE(o.dim == c.object.dim);
    const QMatrix u = factor_through(c, o.legs, VectObj{o.dim});
    const QMatrix v = oracle_factor(o, c.legs, c.object.dim);
    for (Element q = 0; q < p.size(); ++q) CHECK(v * o.legs[q] == c.leg(q));
    CHECK(v * u == QMatrix::Identity(c.object.dim, c.object.dim));
    CHECK(u * v == QMatrix::Identity(o.dim, o.dim));
  }
}

TEST_CASE("finset colimits agree with graph components") {
  Rng rng = make_rng(72, {});
  for (int t = 0; t < 150; ++t) {
    const FinitePoset p = random_poset(1 + t % 5, rng);
    const Diagram<FinSet> d = random_finset_diagram(p, rng, {.max_value = 3});
    const ColimitResult<FinSet> c = colimit(d);
    CHECK(is_cocone(d, c.legs, c.object));
    const OracleSetColimit o = oracle_colimit(d);
    REQUIRE(o.size == c.object.cardinality);
    const FinSetMap u = factor_through(c, o.legs, FinSetObj{o.size});
    CHECK(FinSet::is_isomorphism(u));
    CHECK(colimit(constant_diagram<FinSet>(p, {1})).object.cardinality == oracle_component_count(p));
  }
}

TEST_CASE("cofinal maps induce isomorphisms on colimits") {
  Rng rng = make_rng(73, {});
  std::size_t cofinal = 0;
  for (int t = 0; t < 400; ++t) {
    const FinitePoset a = random_poset(1 + t % 5, rng), b = random_poset(1 + (t / 5) % 5, rng);
    const PosetMap e = random_poset_map(a, b, rng);
    const Diagram<Vect> f = random_vect_diagram(b, rng);
    const QMatrix cmp = colimit_comparison(colimit(restrict(f, e)), colimit(f), e.assignment());
    if (is_cofinal(e)) {
      ++cofinal;
      CHECK(is_invertible(cmp));
    }
  }
  CHECK(cofinal > 0);
}
