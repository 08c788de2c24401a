#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "alex/poset.hpp"
#include "alex/valcat.hpp"

namespace alex {

/// Pointwise left Kan extension of `source` along `along`: result(q) is the
/// colimit of source over (E↓q), and result(q <= q') is the universal map
/// between the two comma colimits.
template <ValueCategory C>
struct KanExtension {
  PosetMap along;
  Diagram<C> source;
  Diagram<C> result;
  std::vector<CommaPoset> commas;
  std::vector<ColimitResult<C>> comma_colimits;
};

/// Position of source element `a` inside the comma carrier, if present.
inline std::optional<Element> carrier_index(const CommaPoset& comma, Element a) {
  const auto& elems = comma.projection.assignment();
  auto it = std::lower_bound(elems.begin(), elems.end(), a);
  if (it == elems.end() || *it != a) return std::nullopt;
  return static_cast<Element>(it - elems.begin());
}

namespace detail {

template <ValueCategory C>
KanExtension<C> extend_over_commas(PosetMap along, Diagram<C> source, std::vector<CommaPoset> commas) {
  const FinitePoset& target = along.target();
  std::vector<ColimitResult<C>> colims;
  std::vector<typename C::Object> objects;
  colims.reserve(commas.size());
  for (const CommaPoset& comma : commas) {
    colims.push_back(colimit(restrict(source, comma.projection)));
    objects.push_back(colims.back().object);
  }

  typename Diagram<C>::EdgeMaps edges;
  for (const auto& [q, q2] : target.hasse_edges()) {
    const CommaPoset& small = commas[q];
    std::vector<Element> index_map;
    for (Element a : small.projection.assignment()) index_map.push_back(*carrier_index(commas[q2], a));
    edges.emplace(Relation{q, q2}, colimit_comparison(colims[q], colims[q2], index_map));
  }
  Diagram<C> result(target, std::move(objects), std::move(edges));
  return {std::move(along), std::move(source), std::move(result), std::move(commas), std::move(colims)};
}

}  // namespace detail

/// Lan_E F through the comma posets (E↓q). Works for any poset map E.
template <ValueCategory C>
KanExtension<C> lan(const PosetMap& along, const Diagram<C>& source) {
  if (!(along.source() == source.base())) throw Error("diagram does not live on the source of the map");
  if (!source.is_functorial()) throw NotFunctorial("Kan extension of a non-functorial diagram");
  std::vector<CommaPoset> commas;
  for (Element q = 0; q < along.target().size(); ++q) commas.push_back(comma_under(along, q));
  return detail::extend_over_commas(along, source, std::move(commas));
}

/// F̂ = Lan_ι F over Down(P). Since (ι↓S) is the full sub-poset P_S, each
/// value is the colimit of F over the members of S, with no comma search.
template <ValueCategory C>
KanExtension<C> hat(const Diagram<C>& source, const DownSetLattice& lattice) {
  if (!(lattice.base == source.base())) throw Error("lattice and diagram live on different posets");
  if (!source.is_functorial()) throw NotFunctorial("Kan extension of a non-functorial diagram");
  std::vector<CommaPoset> commas;
  for (Element s = 0; s < lattice.sets.size(); ++s) {
    Subposet sub = full_subposet(source.base(), lattice.sets[s].members());
    commas.push_back(CommaPoset{std::move(sub.poset), std::move(sub.inclusion), s});
  }
  return detail::extend_over_commas(iota(lattice), source, std::move(commas));
}

/// The colimit leg F(p) -> Lan_E F(E(p)) at p.
template <ValueCategory C>
const typename C::Map& unit_leg(const KanExtension<C>& ext, Element p) {
  const Element q = ext.along(p);
  return ext.comma_colimits[q].leg(*carrier_index(ext.commas[q], p));
}

/// Outcome of checking that F -> (Lan_E F) ∘ E is a natural isomorphism.
struct RestrictionCheck {
  bool isomorphisms = true;
  bool natural = true;
  explicit operator bool() const { return isomorphisms && natural; }
};

/// For a full embedding E, each unit leg F(p) -> Lan_E F(E p) is an
/// isomorphism and the squares over Hasse edges of the source commute.
template <ValueCategory C>
RestrictionCheck check_restriction(const KanExtension<C>& ext) {
  RestrictionCheck out;
  const FinitePoset& base = ext.source.base();
  for (Element p = 0; p < base.size(); ++p) out.isomorphisms = out.isomorphisms && C::is_isomorphism(unit_leg(ext, p));
  for (const auto& [p, q] : base.hasse_edges()) {
    const auto lhs = C::compose(ext.result.induced_map(ext.along(p), ext.along(q)), unit_leg(ext, p));
    const auto rhs = C::compose(unit_leg(ext, q), ext.source.edge_map(p, q));
    out.natural = out.natural && C::equal(lhs, rhs);
  }
  return out;
}

/// A pair of comparison maps between two constructions of the same colimit.
template <ValueCategory C>
struct ComparisonPair {
  typename C::Map forward;
  typename C::Map backward;
};

/// Comparison between Lan_{E2∘E1} F (q) and Lan_{E2} Lan_{E1} F (q), where
/// `inner` = Lan_{E1} F, `outer` = Lan_{E2} inner.result and
/// `direct` = Lan_{E2∘E1} F. `forward` goes direct -> outer.
template <ValueCategory C>
ComparisonPair<C> composition_comparison(const KanExtension<C>& inner, const KanExtension<C>& outer,
                                         const KanExtension<C>& direct, Element q) {
  const CommaPoset& direct_comma = direct.commas[q];
  const CommaPoset& outer_comma = outer.commas[q];

  std::vector<typename C::Map> forward_cocone;
  for (Element a : direct_comma.projection.assignment()) {
    const Element q1 = inner.along(a);
    const auto& to_inner = unit_leg(inner, a);
    const auto& to_outer = outer.comma_colimits[q].leg(*carrier_index(outer_comma, q1));
    forward_cocone.push_back(C::compose(to_outer, to_inner));
  }
  auto forward = factor_through(direct.comma_colimits[q], forward_cocone, outer.comma_colimits[q].object);

  std::vector<typename C::Map> backward_cocone;
  for (Element q1 : outer_comma.projection.assignment()) {
    std::vector<Element> index_map;
    for (Element a : inner.commas[q1].projection.assignment()) index_map.push_back(*carrier_index(direct_comma, a));
    backward_cocone.push_back(colimit_comparison(inner.comma_colimits[q1], direct.comma_colimits[q], index_map));
  }
  auto backward = factor_through(outer.comma_colimits[q], backward_cocone, direct.comma_colimits[q].object);
  return {std::move(forward), std::move(backward)};
}

/// forward and backward compose to identities on both sides.
template <ValueCategory C>
bool mutually_inverse(const ComparisonPair<C>& pair) {
  const auto there_and_back = C::compose(pair.backward, pair.forward);
  const auto back_and_there = C::compose(pair.forward, pair.backward);
  return C::equal(there_and_back, C::identity(C::domain(pair.forward))) &&
         C::equal(back_and_there, C::identity(C::domain(pair.backward)));
}

}  // namespace alex
