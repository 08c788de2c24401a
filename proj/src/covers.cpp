#include "alex/covers.hpp"

#include <algorithm>
#include <set>

#include "alex/error.hpp"

namespace alex {

namespace {

ElementSet union_of(const std::vector<DownSet>& members, const FinitePoset& parent) {
  ElementSet acc = parent.empty_set();
  for (const DownSet& m : members) acc |= m.members();
  return acc;
}

// Union of the members that fit inside `bound`.
ElementSet union_inside(const std::vector<DownSet>& members, const ElementSet& bound) {
  ElementSet acc(bound.size());
  for (const DownSet& m : members)
    if (m.members().is_subset_of(bound)) acc |= m.members();
  return acc;
}

}  // namespace

bool is_cover(const std::vector<DownSet>& members, const DownSet& target) {
  for (const DownSet& m : members) require_same_parent(m, target);
  return union_of(members, target.parent()) == target.members();
}

Cover::Cover(DownSet target, std::vector<DownSet> members)
    : target_(std::move(target)), members_(std::move(members)) {
  for (const DownSet& m : members_) require_same_parent(m, target_);
  std::set<ElementSet> seen;
  for (const DownSet& m : members_)
    if (!seen.insert(m.members()).second) throw InvalidCover("duplicate cover member " + m.label());
  if (!is_cover(members_, target_))
    throw InvalidCover("members do not cover " + target_.label());
}

std::vector<DownSet> Cover::canonical_members() const {
  std::vector<DownSet> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool operator==(const Cover& a, const Cover& b) {
  return a.target_ == b.target_ && a.parent() == b.parent() && a.canonical_members() == b.canonical_members();
}

// Only pairwise intersections are checked. This suffices for every finite
// subfamily by induction on |σ|: if U_σ is non-empty, so is U_{σ∖k} ⊇ U_σ,
// which is a member by hypothesis, and U_σ = U_{σ∖k} ∩ U_k is then a pairwise
// intersection of members.
bool is_cech_cover(const Cover& cover) {
  const auto& m = cover.members();
  std::set<ElementSet> present;
  for (const DownSet& d : m) present.insert(d.members());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const ElementSet meet = m[i].members() & m[j].members();
      if (meet.any() && !present.contains(meet)) return false;
    }
  return true;
}

bool is_basic_cover(const Cover& cover) {
  const auto& m = cover.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const ElementSet meet = m[i].members() & m[j].members();
      if (union_inside(m, meet) != meet) return false;
    }
  return true;
}

bool is_complete_cover(const Cover& cover, std::size_t max_members) {
  if (cover.size() > max_members)
    throw SizeError("complete-cover check is bounded at " + std::to_string(max_members) + " members");

  // Close the family under pairwise intersection; the closure holds every
  // finite intersection of members.
  std::set<ElementSet> family;
  for (const DownSet& d : cover.members()) family.insert(d.members());
  std::vector<ElementSet> frontier(family.begin(), family.end());
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    const std::vector<ElementSet> snapshot(family.begin(), family.end());
    for (const ElementSet& a : frontier)
      for (const ElementSet& b : snapshot) {
        ElementSet meet = a & b;
        if (family.insert(meet).second) next.push_back(std::move(meet));
      }
    frontier = std::move(next);
  }
  for (const ElementSet& s : family)
    if (s.any() && union_inside(cover.members(), s) != s) return false;
  return true;
}

bool refines(const Cover& fine, const Cover& coarse) {
  if (!(fine.parent() == coarse.parent())) throw ParentMismatch("covers live in different posets");
  if (!(fine.target() == coarse.target())) throw TargetMismatch("covers have different targets");
  for (const DownSet& big : coarse.members()) {
    const bool contains_one = std::any_of(fine.members().begin(), fine.members().end(),
                                          [&](const DownSet& small) { return small.subset_of(big); });
    if (!contains_one) return false;
  }
  return true;
}

FinitePoset member_poset(const Cover& cover) {
  const auto& m = cover.members();
  std::vector<std::string> names;
  for (const DownSet& d : m) names.push_back(d.label());
  return FinitePoset::from_order(std::move(names),
                                 [&](Element a, Element b) { return m[a].subset_of(m[b]); });
}

PosetMap cover_inclusion(const Cover& cover, const DownSetLattice& lattice) {
  if (!(lattice.base == cover.parent())) throw ParentMismatch("cover and lattice belong to different posets");
  std::vector<Element> assignment;
  for (const DownSet& d : cover.members()) assignment.push_back(lattice.index_of(d.members()));
  return PosetMap(member_poset(cover), lattice.poset, std::move(assignment));
}

std::vector<Cover> enumerate_covers_from(const std::vector<DownSet>& candidates, const DownSet& target,
                                         std::size_t max_members, CoverFamily family,
                                         std::size_t max_candidates) {
  std::vector<const DownSet*> inside;
  for (const DownSet& d : candidates) {
    require_same_parent(d, target);
    if (d.subset_of(target)) inside.push_back(&d);
  }
  if (inside.size() > max_candidates)
    throw SizeError("cover enumeration over " + std::to_string(inside.size()) +
                    " candidate down-sets exceeds the bound of " + std::to_string(max_candidates));

  std::vector<Cover> out;
  std::vector<const DownSet*> pick;
  const ElementSet& goal = target.members();
  auto emit = [&] {
    ElementSet acc = target.parent().empty_set();
    for (const DownSet* d : pick) acc |= d->members();
    if (acc != goal) return;
    std::vector<DownSet> members;
    for (const DownSet* d : pick) members.push_back(*d);
    Cover cover(target, std::move(members));
    if (family == CoverFamily::basic && !is_basic_cover(cover)) return;
    if (family == CoverFamily::cech && !is_cech_cover(cover)) return;
    out.push_back(std::move(cover));
  };
  auto choose = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (std::size_t c = start; c + remaining <= inside.size(); ++c) {
      pick.push_back(inside[c]);
      self(self, c + 1, remaining - 1);
      pick.pop_back();
    }
  };
  for (std::size_t k = 0; k <= std::min(max_members, inside.size()); ++k) choose(choose, 0, k);
  return out;
}

std::vector<Cover> enumerate_covers(const DownSetLattice& lattice, const DownSet& target,
                                    std::size_t max_members, CoverFamily family,
                                    std::size_t max_candidates) {
  if (!(lattice.base == target.parent())) throw ParentMismatch("target and lattice belong to different posets");
  return enumerate_covers_from(lattice.sets, target, max_members, family, max_candidates);
}

}  // namespace alex
