#include "doctest.h"
#include "support.hpp"

using namespace alex;
using namespace alex::testing;

namespace {
Precosheaf<Vect> hat_precosheaf(const Diagram<Vect>& f) {
  const DownSetLattice lat = down_set_lattice(f.base());
  return Precosheaf<Vect>::from_hat(hat(f, lat), lat);
}
}  // namespace

TEST_CASE("cosheaf_arrow examples") {
  const Precosheaf<Vect> pre = hat_precosheaf(lambda_pushout());
  const FinitePoset l = lambda_poset();
  const DownSet whole = DownSet::whole(l);
  const CosheafCheck<Vect> single = cosheaf_arrow(pre, Cover(whole, {whole}));
  CHECK(single.verdict);
  CHECK(single.arrow == QMatrix::Identity(2, 2));

  const Figure1 fig = figure1_fixture();
  const CosheafCheck<Vect> fine = cosheaf_arrow(fig.precosheaf, fig.fine);
  CHECK(fine.colimit_side.object.dim == 1);
  CHECK(fine.verdict);
  const CosheafCheck<Vect> coarse = cosheaf_arrow(fig.precosheaf, fig.coarse);
  CHECK(coarse.colimit_side.object.dim == 2);
  CHECK_FALSE(coarse.verdict);

  const DownSet e12 = principal_down_set(fig.space, 6);
  CHECK_THROWS_AS(cosheaf_arrow(fig.precosheaf, Cover(e12 | principal_down_set(fig.space, 7), {e12, principal_down_set(fig.space, 7)})),
                  MissingOpen);
}

TEST_CASE("non-basic covers can fail for hat") {
  const Precosheaf<Vect> pre = hat_precosheaf(lambda_pushout());
  const FinitePoset l = lambda_poset();
  const CosheafCheck<Vect> two =
      cosheaf_arrow(pre, Cover(DownSet::whole(l), {principal_down_set(l, X), principal_down_set(l, Y)}));
  CHECK(two.colimit_side.object.dim == 3);
  CHECK_FALSE(two.verdict);
}

TEST_CASE("verify_theorem examples") {
  Rng rng = make_rng(51, {});
  for (int t = 0; t < 5; ++t) CHECK(verify_theorem(random_vect_diagram(chain(3), rng), 4).ok());
  const TheoremReport lam = verify_theorem(lambda_pushout(), 4);
  CHECK(lam.ok());
  CHECK(lam.down_sets == 5);
  CHECK(lam.checks > 0);

  const Diagram<FinSet> two = constant_diagram<FinSet>(antichain(2), {2});
  CHECK(verify_theorem(two, 4).ok());
  const DownSetLattice lat = down_set_lattice(antichain(2));
  CHECK(hat(two, lat).result.objects().back().cardinality == 4);
}

TEST_CASE("auxiliary J") {
  const FinitePoset l = lambda_poset();
  const DownSet dx = principal_down_set(l, X), dy = principal_down_set(l, Y), dz = principal_down_set(l, Z);
  CHECK(build_auxiliary_J(Cover(dz, {dz})).carrier.size() == 1);

  const AuxiliaryJ j = build_auxiliary_J(Cover(DownSet::whole(l), {dx, dy, dz}));
  REQUIRE(j.carrier.size() == 5);
  CHECK(square_commutes(j));
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) {
      const auto [ia, pa] = j.pairs[a];
      const auto [ib, pb] = j.pairs[b];
      const bool expected =
          j.cover.members()[ia].subset_of(j.cover.members()[ib]) && l.leq(j.points.inclusion(pa), j.points.inclusion(pb));
      CHECK(j.carrier.leq(a, b) == expected);
    }
}

TEST_CASE("proof steps on the Λ-poset") {
  const FinitePoset l = lambda_poset();
  const DownSet dx = principal_down_set(l, X), dy = principal_down_set(l, Y), dz = principal_down_set(l, Z);
  const ProofStepReport r = check_proof_steps(lambda_pushout(), Cover(DownSet::whole(l), {dx, dy, dz}));
  CHECK(r.ok());
  CHECK(check_proof_steps(lambda_pushout(), Cover(dx, {dx})).ok());

  const Cover two(DownSet::whole(l), {dx, dy});
  CHECK_THROWS_AS(check_proof_steps(lambda_pushout(), two), NotBasic);
  const ProofStepReport forced = check_proof_steps(lambda_pushout(), two, false);
  CHECK_FALSE(forced.basic);
  CHECK_FALSE(forced.pi2_unit);
  CHECK_FALSE(forced.conclusion);
}

TEST_CASE("proof steps pass on random basic covers") {
  Rng rng = make_rng(52, {});
  for (int t = 0; t < 20; ++t) {
    const FinitePoset p = random_poset(1 + t % 4, rng);
    const DownSetLattice lat = down_set_lattice(p);
    const Diagram<Vect> f = random_vect_diagram(p, rng);
    for (const DownSet& target : lat.sets)
      for (const Cover& c : enumerate_basic_covers(lat, target, 3)) CHECK(check_proof_steps(f, c).ok());
  }
}

TEST_CASE("refinement falsifier") {
  const Figure1 fig = figure1_fixture();
  const auto witness = falsify_refinement(fig.precosheaf, 9);
  REQUIRE(witness.has_value());
  CHECK(refines(witness->fine, witness->coarse));
  CHECK(cosheaf_arrow(fig.precosheaf, witness->fine).verdict);
  CHECK_FALSE(cosheaf_arrow(fig.precosheaf, witness->coarse).verdict);

  Rng rng = make_rng(53, {});
  for (int t = 0; t < 10; ++t) {
    const Precosheaf<Vect> pre = hat_precosheaf(random_vect_diagram(random_poset(1 + t % 4, rng), rng));
    CHECK_FALSE(falsify_refinement(pre, 4, CoverFamily::basic).has_value());
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const Precosheaf<Vect> pre = hat_precosheaf(random_vect_diagram(chain(n), rng));
    CHECK_FALSE(falsify_refinement(pre, 4, CoverFamily::cech).has_value());
  }
}

TEST_CASE("interval counterexample") {
  const CounterexampleReport r = run_counterexample(figure1_fixture());
  CHECK(r.fine_dim == 1);
  CHECK(r.coarse_dim == 2);
  CHECK(r.target_dim == 1);
  CHECK(r.comparison_injective);
  CHECK(r.arrow_surjective);
  CHECK(r.composite_iso);
  CHECK(r.as_documented());
}

TEST_CASE("Precosheaf validates its opens") {
  const FinitePoset l = lambda_poset();
  const Diagram<Vect> f = constant_diagram<Vect>(chain(2), {1});
  CHECK_THROWS_AS(Precosheaf<Vect>({principal_down_set(l, X), principal_down_set(l, Z)}, f), InvalidDiagram);
  CHECK_NOTHROW(Precosheaf<Vect>({principal_down_set(l, Z), principal_down_set(l, X)}, f));
}
