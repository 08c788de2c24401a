#include "alex/cosheaf.hpp"

#include <algorithm>

namespace alex {

std::optional<Element> AuxiliaryJ::find(std::size_t member, Element p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair{member, p});
  if (it == pairs.end() || *it != std::pair{member, p}) return std::nullopt;
  return static_cast<Element>(it - pairs.begin());
}

AuxiliaryJ build_auxiliary_J(const Cover& cover) {
  const FinitePoset& space = cover.parent();
  std::vector<std::pair<std::size_t, Element>> pairs;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (Element p : cover.members()[i].elements()) {
      pairs.emplace_back(i, p);
      names.push_back("(" + cover.members()[i].label() + "," + space.name(p) + ")");
    }

  const auto& members = cover.members();
  FinitePoset carrier = FinitePoset::from_order(std::move(names), [&](Element a, Element b) {
    return members[pairs[a].first].subset_of(members[pairs[b].first]) && space.leq(pairs[a].second, pairs[b].second);
  });
  FinitePoset member_order = member_poset(cover);
  Subposet points = full_subposet(space, cover.target().members());

  std::vector<Element> to_member, to_point;
  for (const auto& [i, p] : pairs) {
    to_member.push_back(i);
    const auto& inside = points.inclusion.assignment();
    to_point.push_back(static_cast<Element>(std::lower_bound(inside.begin(), inside.end(), p) - inside.begin()));
  }
  PosetMap pi1(carrier, member_order, std::move(to_member));
  PosetMap pi2(carrier, points.poset, std::move(to_point));
  return {cover, std::move(carrier), std::move(pairs), std::move(member_order), std::move(points),
          std::move(pi1), std::move(pi2)};
}

bool square_commutes(const AuxiliaryJ& aux) {
  const FinitePoset star = point();
  const PosetMap top = compose(PosetMap::constant(aux.members, star, 0), aux.pi1);
  const PosetMap left = compose(PosetMap::constant(aux.points.poset, star, 0), aux.pi2);
  return top.assignment() == left.assignment();
}

Figure1 figure1_fixture() {
  // Face poset of an interval subdivided at v0..v4: each edge sits below its
  // two endpoints, so principal down-sets are open stars.
  const std::vector<std::string> names{"v0", "v1", "v2", "v3", "v4", "e01", "e12", "e23", "e34"};
  std::vector<Relation> faces;
  for (Element e = 0; e < 4; ++e) {
    faces.emplace_back(5 + e, e);
    faces.emplace_back(5 + e, e + 1);
  }
  FinitePoset space = FinitePoset::from_relations(names.size(), faces, names);
  auto star = [&](Element p) { return principal_down_set(space, p); };

  const DownSet whole = DownSet::whole(space);
  const DownSet v2 = star(1) | star(2) | star(3);
  std::vector<std::string> open_names{"X", "V2"};
  std::vector<DownSet> opens{whole, v2};
  for (Element v = 0; v < 5; ++v) {
    open_names.push_back("D" + names[v]);
    opens.push_back(star(v));
  }
  for (Element e = 5; e < 9; ++e) {
    open_names.push_back("D" + names[e]);
    opens.push_back(star(e));
  }

  FinitePoset order = FinitePoset::from_order(open_names, [&](Element a, Element b) {
    return opens[a].subset_of(opens[b]);
  });
  constexpr Element x_index = 0, v2_index = 1;
  std::vector<VectObj> dims(opens.size(), VectObj{1});
  dims[v2_index] = VectObj{2};

  Diagram<Vect>::EdgeMaps maps;
  for (const auto& [a, b] : order.hasse_edges()) {
    QMatrix m;
    if (b == v2_index) {
      m = QMatrix::Zero(2, 1);
      m(0, 0) = 1;
    } else if (a == v2_index && b == x_index) {
      m = QMatrix::Zero(1, 2);
      m(0, 0) = 1;
    } else {
      m = QMatrix::Identity(1, 1);
    }
    maps.emplace(Relation{a, b}, std::move(m));
  }
  Precosheaf<Vect> pre(opens, Diagram<Vect>(order, std::move(dims), std::move(maps)));

  Cover fine(whole, {star(0), star(5), star(1), star(6), star(2), star(7), star(3), star(8), star(4)});
  Cover coarse(whole, {star(0), star(5), v2, star(8), star(4)});

  std::map<std::string, std::string> metadata{
      {"name", "figure1"},
      {"status", "reconstruction: 5-vertex subdivision of the interval; values re-verified by the colimit engine"},
      {"claim", "cosheaf for the fine cover, not for the coarser cover it refines"},
  };
  return {std::move(space), std::move(pre), std::move(fine), std::move(coarse), std::move(metadata)};
}

CounterexampleReport run_counterexample(const Figure1& fixture) {
  const RefinementTriangle<Vect> tri = refinement_triangle(fixture.precosheaf, fixture.fine, fixture.coarse);
  CounterexampleReport r;
  r.fine_dim = tri.fine.colimit_side.object.dim;
  r.coarse_dim = tri.coarse.colimit_side.object.dim;
  r.target_dim = tri.coarse.target_value.dim;
  r.refines = refines(fixture.fine, fixture.coarse);
  r.comparison_injective = Vect::is_injective(tri.comparison);
  r.arrow_surjective = Vect::is_surjective(tri.coarse.arrow);
  r.composite_iso = Vect::is_isomorphism(Vect::compose(tri.coarse.arrow, tri.comparison));
  r.triangle_commutes = tri.commutes;
  r.fine_is_cosheaf = tri.fine.verdict;
  r.coarse_is_cosheaf = tri.coarse.verdict;
  return r;
}

}  // namespace alex
