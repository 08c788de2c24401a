#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alex/covers.hpp"
#include "alex/kan.hpp"
#include "alex/poset.hpp"
#include "alex/valcat.hpp"

namespace alex {

/// A functor on a family of opens (down-sets of one poset) ordered by
/// inclusion. Element i of the diagram's base is `opens()[i]`.
template <ValueCategory C>
class Precosheaf {
public:
  /// Throws InvalidDiagram unless the base order is exactly inclusion of the
  /// (distinct) opens.
  Precosheaf(std::vector<DownSet> opens, Diagram<C> diagram);

  /// The Kan extension F̂ as a precosheaf on every down-set.
  static Precosheaf from_hat(const KanExtension<C>& ext, const DownSetLattice& lattice) {
    return Precosheaf(lattice.sets, ext.result);
  }

  const Diagram<C>& diagram() const { return diagram_; }
  const std::vector<DownSet>& opens() const { return opens_; }
  const FinitePoset& space() const { return opens_.front().parent(); }

  std::optional<Element> find(const DownSet& open) const {
    auto it = index_.find(open.members());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

private:
  std::vector<DownSet> opens_;
  Diagram<C> diagram_;
  std::map<ElementSet, Element> index_;
};

template <ValueCategory C>
Precosheaf<C>::Precosheaf(std::vector<DownSet> opens, Diagram<C> diagram)
    : opens_(std::move(opens)), diagram_(std::move(diagram)) {
  if (opens_.empty()) throw InvalidDiagram("a precosheaf needs at least one open");
  if (opens_.size() != diagram_.base().size()) throw InvalidDiagram("one open per diagram element is required");
  for (Element i = 0; i < opens_.size(); ++i) {
    require_same_parent(opens_[i], opens_.front());
    if (!index_.emplace(opens_[i].members(), i).second) throw InvalidDiagram("open " + opens_[i].label() + " repeats");
  }
  for (Element a = 0; a < opens_.size(); ++a)
    for (Element b = 0; b < opens_.size(); ++b)
      if (diagram_.base().leq(a, b) != opens_[a].subset_of(opens_[b]))
        throw InvalidDiagram("diagram order is not inclusion of opens");
}

/// The universal arrow F[𝒰] = colim F∘ι_𝒰 -> F(U) for a cover 𝒰 of U.
template <ValueCategory C>
struct CosheafCheck {
  Cover cover;
  ColimitResult<C> colimit_side;
  typename C::Map arrow;
  typename C::Object target_value;
  bool verdict = false;
};

/// Throws MissingOpen when a member or the target is not an open of `pre`.
template <ValueCategory C>
CosheafCheck<C> cosheaf_arrow(const Precosheaf<C>& pre, const Cover& cover) {
  auto locate = [&](const DownSet& d) {
    if (auto i = pre.find(d)) return *i;
    throw MissingOpen("open " + d.label() + " is not in the precosheaf's domain");
  };
  const Element target = locate(cover.target());
  std::vector<Element> assignment;
  for (const DownSet& m : cover.members()) assignment.push_back(locate(m));

  const Diagram<C>& g = pre.diagram();
  const PosetMap inclusion(member_poset(cover), g.base(), assignment);
  ColimitResult<C> colim = colimit(restrict(g, inclusion));

  std::vector<typename C::Map> cocone;
  for (Element i : assignment) cocone.push_back(g.induced_map(i, target));
  auto arrow = factor_through(colim, cocone, g.object(target));
  const bool verdict = C::is_isomorphism(arrow);
  return {cover, std::move(colim), std::move(arrow), g.object(target), verdict};
}

struct TheoremReport {
  std::size_t down_sets = 0;
  std::size_t checks = 0;
  std::vector<Cover> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs the cosheaf check on each cover and collects the failures.
template <ValueCategory C>
TheoremReport check_covers(const Precosheaf<C>& pre, const std::vector<Cover>& covers) {
  TheoremReport report;
  for (const Cover& cover : covers) {
    ++report.checks;
    if (!cosheaf_arrow(pre, cover).verdict) report.failures.push_back(cover);
  }
  return report;
}

/// Every down-set S of the base and every basic cover of S with at most
/// `max_cover_members` members: F̂[𝒰] -> F̂(S) must be an isomorphism.
/// A failure here is a bug in the implementation, not in the theorem.
template <ValueCategory C>
TheoremReport verify_theorem(const Diagram<C>& diagram, std::size_t max_cover_members,
                             const LatticeBounds& bounds = LatticeBounds::from_environment()) {
  const DownSetLattice lattice = down_set_lattice(diagram.base(), bounds);
  const Precosheaf<C> pre = Precosheaf<C>::from_hat(hat(diagram, lattice), lattice);
  TheoremReport report;
  for (const DownSet& target : lattice.sets) {
    ++report.down_sets;
    TheoremReport part = check_covers(pre, enumerate_basic_covers(lattice, target, max_cover_members));
    report.checks += part.checks;
    for (Cover& c : part.failures) report.failures.push_back(std::move(c));
  }
  return report;
}

// --- the auxiliary poset of pairs (V_i, p) -----------------------------------

/// Elements are the pairs (V_i, p) with V_i a member of the cover and p in
/// V_i, ordered by (V_i, p) <= (V_j, q) iff V_i ⊆ V_j and p <= q.
struct AuxiliaryJ {
  Cover cover;
  FinitePoset carrier;
  std::vector<std::pair<std::size_t, Element>> pairs;
  FinitePoset members;
  Subposet points;
  PosetMap pi1;
  PosetMap pi2;

  /// Carrier index of the pair (member, p), if p lies in that member.
  std::optional<Element> find(std::size_t member, Element p) const;
};

AuxiliaryJ build_auxiliary_J(const Cover& cover);

/// The square pi1/pi2 against the maps to the one-point poset commutes.
bool square_commutes(const AuxiliaryJ& aux);

struct ProofStepReport {
  bool basic = false;
  bool square_commutes = false;
  /// j_{V_i}: P_{V_i} -> (π₁↓V_i) is cofinal for every member.
  bool cofinal_inclusions = false;
  /// F̂(V_i) -> Lan_{π₁}F(V_i) induced by j_{V_i} is an isomorphism.
  bool first_isomorphism = false;
  /// colim_𝒥 F ≅ Lan_𝗉 Lan_{π₁} F, by mutually inverse comparisons.
  bool iterated_via_pi1 = false;
  /// colim_𝒥 F ≅ Lan_𝗉 Lan_{π₂} F, by mutually inverse comparisons.
  bool iterated_via_pi2 = false;
  /// F(p) -> Lan_{π₂}F(p) is an isomorphism at every (V_i, p).
  bool pi2_unit = false;
  /// Those legs agree for every member V_i containing p.
  bool choice_independent = false;
  /// colim_{V_i} F̂(V_i) -> F̂(S) is an isomorphism.
  bool conclusion = false;

  bool ok() const {
    return basic && square_commutes && cofinal_inclusions && first_isomorphism && iterated_via_pi1 &&
           iterated_via_pi2 && pi2_unit && choice_independent && conclusion;
  }
};

/// Recomputes every intermediate object of the Kan-extension cosheaf proof
/// for one cover. Throws NotBasic for a non-basic cover unless
/// `require_basic` is false, in which case the steps run anyway.
template <ValueCategory C>
ProofStepReport check_proof_steps(const Diagram<C>& diagram, const Cover& cover, bool require_basic = true) {
  if (!(cover.parent() == diagram.base())) throw ParentMismatch("cover and diagram live on different posets");
  ProofStepReport report;
  report.basic = is_basic_cover(cover);
  if (require_basic && !report.basic) throw NotBasic("proof steps need a basic cover");

  const AuxiliaryJ aux = build_auxiliary_J(cover);
  report.square_commutes = square_commutes(aux);
  const FinitePoset& space = diagram.base();

  const Diagram<C> on_s = restrict(diagram, aux.points.inclusion);
  const Diagram<C> on_j = restrict(on_s, aux.pi2);
  const KanExtension<C> along_pi1 = lan(aux.pi1, on_j);
  const KanExtension<C> along_pi2 = lan(aux.pi2, on_j);

  // (a) cofinality of j_{V_i}, and the isomorphism it induces.
  report.cofinal_inclusions = true;
  report.first_isomorphism = true;
  std::vector<ColimitResult<C>> member_values;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const Subposet inside = full_subposet(space, cover.members()[i].members());
    const CommaPoset& comma = along_pi1.commas[i];
    std::vector<Element> j_map;
    for (Element p : inside.inclusion.assignment()) j_map.push_back(*carrier_index(comma, *aux.find(i, p)));
    const PosetMap j(inside.poset, comma.carrier, j_map);
    report.cofinal_inclusions = report.cofinal_inclusions && static_cast<bool>(is_cofinal(j));

    member_values.push_back(colimit(restrict(diagram, inside.inclusion)));
    const auto cmp = colimit_comparison(member_values.back(), along_pi1.comma_colimits[i], j_map);
    report.first_isomorphism = report.first_isomorphism && C::is_isomorphism(cmp);
  }

  // (b) the direct colimit over 𝒥 against both iterated routes.
  const FinitePoset star = point();
  const KanExtension<C> direct = lan(PosetMap::constant(aux.carrier, star, 0), on_j);
  const KanExtension<C> outer1 = lan(PosetMap::constant(aux.members, star, 0), along_pi1.result);
  const KanExtension<C> outer2 = lan(PosetMap::constant(aux.points.poset, star, 0), along_pi2.result);
  report.iterated_via_pi1 = mutually_inverse(composition_comparison(along_pi1, outer1, direct, 0));
  report.iterated_via_pi2 = mutually_inverse(composition_comparison(along_pi2, outer2, direct, 0));

  // (c) Lan_{π₂}F(p) ≅ F(p), through the leg at any (V_i, p).
  report.pi2_unit = true;
  report.choice_independent = true;
  for (Element k = 0; k < aux.points.poset.size(); ++k) {
    const Element p = aux.points.inclusion(k);
    const auto& colim = along_pi2.comma_colimits[k];
    std::optional<typename C::Map> first;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      auto at = aux.find(i, p);
      if (!at) continue;
      const auto& leg = colim.leg(*carrier_index(along_pi2.commas[k], *at));
      report.pi2_unit = report.pi2_unit && C::is_isomorphism(leg);
      if (!first) first = leg;
      else report.choice_independent = report.choice_independent && C::equal(*first, leg);
    }
  }

  // Conclusion: colim over the cover of F̂(V_i) against F̂(S). Values over
  // full sub-posets index their elements in increasing order.
  auto position = [](const ElementSet& set, Element p) {
    std::size_t pos = 0;
    for (Element x = set.find_first(); x != p; x = set.find_next(x)) ++pos;
    return pos;
  };
  auto positions = [&](const DownSet& from, const ElementSet& into) {
    std::vector<Element> index_map;
    for (Element p : from.elements()) index_map.push_back(position(into, p));
    return index_map;
  };
  typename Diagram<C>::EdgeMaps edges;
  for (const auto& [a, b] : aux.members.hasse_edges())
    edges.emplace(Relation{a, b}, colimit_comparison(member_values[a], member_values[b],
                                                     positions(cover.members()[a], cover.members()[b].members())));
  std::vector<typename C::Object> values;
  for (const auto& v : member_values) values.push_back(v.object);
  const ColimitResult<C> over_cover = colimit(Diagram<C>(aux.members, std::move(values), std::move(edges)));
  const ColimitResult<C> whole = colimit(on_s);
  std::vector<typename C::Map> cocone;
  for (std::size_t i = 0; i < cover.size(); ++i)
    cocone.push_back(colimit_comparison(member_values[i], whole, positions(cover.members()[i], cover.target().members())));
  report.conclusion = C::is_isomorphism(factor_through(over_cover, cocone, whole.object));
  return report;
}

// --- the refinement counterexample ---------------------------------------

/// The comparison F[fine] -> F[coarse] sending each fine member into a coarse
/// member containing it, checked against the two universal arrows.
template <ValueCategory C>
struct RefinementTriangle {
  CosheafCheck<C> fine;
  CosheafCheck<C> coarse;
  typename C::Map comparison;
  bool commutes = false;
};

/// Throws InvalidCover when some fine member lies in no coarse member.
template <ValueCategory C>
RefinementTriangle<C> refinement_triangle(const Precosheaf<C>& pre, const Cover& fine, const Cover& coarse) {
  CosheafCheck<C> f = cosheaf_arrow(pre, fine);
  CosheafCheck<C> c = cosheaf_arrow(pre, coarse);
  const Diagram<C>& g = pre.diagram();

  std::vector<typename C::Map> cocone;
  for (const DownSet& small : fine.members()) {
    std::optional<std::size_t> host;
    for (std::size_t j = 0; j < coarse.size() && !host; ++j)
      if (small.subset_of(coarse.members()[j])) host = j;
    if (!host) throw InvalidCover("fine member " + small.label() + " lies in no coarse member");
    cocone.push_back(C::compose(c.colimit_side.leg(*host),
                                g.induced_map(*pre.find(small), *pre.find(coarse.members()[*host]))));
  }
  auto comparison = factor_through(f.colimit_side, cocone, c.colimit_side.object);
  const bool commutes = C::equal(C::compose(c.arrow, comparison), f.arrow);
  return {std::move(f), std::move(c), std::move(comparison), commutes};
}

struct RefinementWitness {
  Cover fine;
  Cover coarse;
};

/// Looks for covers fine, coarse of one open with fine refining coarse, the
/// precosheaf a cosheaf for fine but not for coarse. Members are drawn from
/// the precosheaf's opens. Opens are scanned in index order; the first
/// witness found is returned.
template <ValueCategory C>
std::optional<RefinementWitness> falsify_refinement(const Precosheaf<C>& pre, std::size_t max_cover_members,
                                                    CoverFamily family = CoverFamily::all,
                                                    std::size_t max_candidates = 16) {
  for (const DownSet& target : pre.opens()) {
    const auto covers = enumerate_covers_from(pre.opens(), target, max_cover_members, family, max_candidates);
    std::vector<const Cover*> good, bad;
    for (const Cover& cover : covers) (cosheaf_arrow(pre, cover).verdict ? good : bad).push_back(&cover);
    for (const Cover* fine : good)
      for (const Cover* coarse : bad)
        if (refines(*fine, *coarse)) return RefinementWitness{*fine, *coarse};
  }
  return std::nullopt;
}

/// The interval counterexample: a precosheaf on opens of a subdivided
/// interval that is a cosheaf for a fine cover but not for a coarser one.
struct Figure1 {
  FinitePoset space;
  Precosheaf<Vect> precosheaf;
  Cover fine;
  Cover coarse;
  std::map<std::string, std::string> metadata;
};

Figure1 figure1_fixture();

struct CounterexampleReport {
  Index fine_dim = 0;
  Index coarse_dim = 0;
  Index target_dim = 0;
  bool refines = false;
  bool comparison_injective = false;
  bool arrow_surjective = false;
  bool composite_iso = false;
  bool triangle_commutes = false;
  bool fine_is_cosheaf = false;
  bool coarse_is_cosheaf = false;

  /// Exactly the documented behavior: dims 1, 2, 1, an injection followed by
  /// a surjection composing to an isomorphism.
  bool as_documented() const {
    return fine_dim == 1 && coarse_dim == 2 && target_dim == 1 && refines && comparison_injective &&
           arrow_surjective && composite_iso && triangle_commutes && fine_is_cosheaf && !coarse_is_cosheaf;
  }
};

CounterexampleReport run_counterexample(const Figure1& fixture);

}  // namespace alex
