#include "alex/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "alex/error.hpp"

namespace alex {

struct FinitePoset::Impl {
  std::vector<std::string> names;
  std::vector<ElementSet> up;
  std::vector<ElementSet> down;
  std::vector<Relation> hasse;
  std::vector<std::vector<Element>> lower_covers;
  std::vector<std::vector<Element>> upper_covers;
  std::vector<Element> linear_extension;
  std::map<std::string, Element, std::less<>> by_name;
};

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

FinitePoset::FinitePoset() : FinitePoset(from_closed({}, {})) {}

FinitePoset::FinitePoset(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

FinitePoset FinitePoset::from_closed(std::vector<std::string> names, std::vector<ElementSet> up) {
  const std::size_t n = names.size();
  auto impl = std::make_shared<Impl>();
  impl->down.assign(n, ElementSet(n));
  for (Element p = 0; p < n; ++p) {
    if (!up[p].test(p)) throw Error("order relation is not reflexive at " + names[p]);
    for (Element q = up[p].find_first(); q != ElementSet::npos; q = up[p].find_next(q)) {
      if (q != p && up[q].test(p)) throw CycleError("cycle between " + names[p] + " and " + names[q]);
      if (!up[q].is_subset_of(up[p])) throw Error("order relation is not transitive at " + names[p]);
      impl->down[q].set(p);
    }
  }

  impl->lower_covers.resize(n);
  impl->upper_covers.resize(n);
  for (Element q = 0; q < n; ++q) {
    ElementSet strict = impl->down[q];
    strict.reset(q);
    ElementSet covers = strict;
    for (Element r = strict.find_first(); r != ElementSet::npos; r = strict.find_next(r)) {
      ElementSet below_r = impl->down[r];
      below_r.reset(r);
      covers -= below_r;
    }
    for (Element p = covers.find_first(); p != ElementSet::npos; p = covers.find_next(p)) {
      impl->lower_covers[q].push_back(p);
      impl->hasse.emplace_back(p, q);
    }
  }
  std::sort(impl->hasse.begin(), impl->hasse.end());
  for (const auto& [p, q] : impl->hasse) impl->upper_covers[p].push_back(q);

  impl->linear_extension.resize(n);
  std::iota(impl->linear_extension.begin(), impl->linear_extension.end(), Element{0});
  std::stable_sort(impl->linear_extension.begin(), impl->linear_extension.end(),
                   [&](Element a, Element b) { return impl->down[a].count() < impl->down[b].count(); });

  for (Element p = 0; p < n; ++p) {
    if (!impl->by_name.emplace(names[p], p).second)
      throw Error("duplicate element name '" + names[p] + "'");
  }
  impl->names = std::move(names);
  impl->up = std::move(up);
  return FinitePoset(std::move(impl));
}

FinitePoset FinitePoset::from_relations(std::size_t n, std::span<const Relation> generating_pairs,
                                        std::vector<std::string> names) {
  if (names.empty()) names = default_names(n);
  if (names.size() != n) throw Error("expected " + std::to_string(n) + " element names");

  std::vector<ElementSet> up(n, ElementSet(n));
  for (Element p = 0; p < n; ++p) up[p].set(p);
  for (const auto& [p, q] : generating_pairs) {
    if (p >= n || q >= n) throw Error("relation index out of range");
    up[p].set(q);
  }
  // Warshall closure on rows: if p <= k then everything above k is above p.
  for (Element k = 0; k < n; ++k)
    for (Element p = 0; p < n; ++p)
      if (up[p].test(k)) up[p] |= up[k];
  return from_closed(std::move(names), std::move(up));
}

std::size_t FinitePoset::size() const { return impl_->names.size(); }
bool FinitePoset::leq(Element p, Element q) const { return impl_->up[p].test(q); }
const std::string& FinitePoset::name(Element p) const { return impl_->names[p]; }
const std::vector<std::string>& FinitePoset::names() const { return impl_->names; }

std::optional<Element> FinitePoset::find(std::string_view name) const {
  auto it = impl_->by_name.find(name);
  if (it == impl_->by_name.end()) return std::nullopt;
  return it->second;
}

const ElementSet& FinitePoset::up_set(Element p) const { return impl_->up[p]; }
const ElementSet& FinitePoset::down_set(Element p) const { return impl_->down[p]; }
const std::vector<Relation>& FinitePoset::hasse_edges() const { return impl_->hasse; }
const std::vector<Element>& FinitePoset::lower_covers(Element q) const { return impl_->lower_covers[q]; }
const std::vector<Element>& FinitePoset::upper_covers(Element p) const { return impl_->upper_covers[p]; }
const std::vector<Element>& FinitePoset::linear_extension() const { return impl_->linear_extension; }

std::vector<Relation> FinitePoset::relation_pairs() const {
  std::vector<Relation> pairs;
  for (Element p = 0; p < size(); ++p)
    for (Element q = impl_->up[p].find_first(); q != ElementSet::npos; q = impl_->up[p].find_next(q))
      pairs.emplace_back(p, q);
  return pairs;
}

bool operator==(const FinitePoset& a, const FinitePoset& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->names == b.impl_->names && a.impl_->up == b.impl_->up;
}

FinitePoset chain(std::size_t n) {
  std::vector<Relation> pairs;
  for (Element i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return FinitePoset::from_relations(n, pairs);
}

FinitePoset antichain(std::size_t n) { return FinitePoset::from_relations(n, {}); }

FinitePoset opposite(const FinitePoset& poset) {
  return FinitePoset::from_order(poset.names(), [&](Element p, Element q) { return poset.leq(q, p); });
}

std::vector<FinitePoset> enumerate_labeled_posets(std::size_t n) {
  std::vector<Relation> slots;
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      if (p != q) slots.emplace_back(p, q);
  if (slots.size() >= 63) throw SizeError("labeled poset enumeration is limited to small n");

  std::vector<FinitePoset> posets;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  std::vector<ElementSet> up(n, ElementSet(n));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (Element p = 0; p < n; ++p) {
      up[p].reset();
      up[p].set(p);
    }
    bool ok = true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (!(mask >> s & 1U)) continue;
      const auto [p, q] = slots[s];
      if (up[q].test(p)) {
        ok = false;
        break;
      }
      up[p].set(q);
    }
    if (!ok) continue;
    for (Element p = 0; p < n && ok; ++p)
      for (Element q = up[p].find_first(); q != ElementSet::npos; q = up[p].find_next(q))
        if (!up[q].is_subset_of(up[p])) {
          ok = false;
          break;
        }
    if (ok) posets.push_back(FinitePoset::from_order(default_names(n), [&](Element p, Element q) {
      return up[p].test(q);
    }));
  }
  return posets;
}

std::vector<std::vector<Element>> connected_components(const FinitePoset& poset) {
  const std::size_t n = poset.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), Element{0});
  auto root = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [p, q] : poset.hasse_edges()) {
    const Element a = root(p), b = root(q);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::vector<Element>> components;
  std::map<Element, std::size_t> slot;
  for (Element p = 0; p < n; ++p) {
    auto [it, inserted] = slot.emplace(root(p), components.size());
    if (inserted) components.emplace_back();
    components[it->second].push_back(p);
  }
  return components;
}

// --- DownSet ---------------------------------------------------------------

DownSet::DownSet(FinitePoset parent, ElementSet members, bool)
    : parent_(std::move(parent)), members_(std::move(members)) {}

DownSet::DownSet(FinitePoset parent, ElementSet members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (members_.size() != parent_.size()) throw NotADownSet("member set has the wrong size");
  for (Element q = members_.find_first(); q != ElementSet::npos; q = members_.find_next(q))
    if (!parent_.down_set(q).is_subset_of(members_))
      throw NotADownSet("set is not downward closed at " + parent_.name(q));
}

DownSet DownSet::empty(const FinitePoset& parent) { return DownSet(parent, parent.empty_set(), true); }

DownSet DownSet::whole(const FinitePoset& parent) {
  ElementSet all = parent.empty_set();
  all.set();
  return DownSet(parent, std::move(all), true);
}

std::vector<Element> DownSet::elements() const {
  std::vector<Element> out;
  for (Element p = members_.find_first(); p != ElementSet::npos; p = members_.find_next(p)) out.push_back(p);
  return out;
}

std::string DownSet::label() const {
  std::vector<std::string> names;
  for (Element p : elements()) names.push_back(parent_.name(p));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + "}";
}

void require_same_parent(const DownSet& a, const DownSet& b) {
  if (!(a.parent() == b.parent())) throw ParentMismatch("down-sets belong to different posets");
}

DownSet operator&(const DownSet& a, const DownSet& b) {
  require_same_parent(a, b);
  return DownSet(a.parent_, a.members_ & b.members_, true);
}

DownSet operator|(const DownSet& a, const DownSet& b) {
  require_same_parent(a, b);
  return DownSet(a.parent_, a.members_ | b.members_, true);
}

bool operator<(const DownSet& a, const DownSet& b) {
  const auto ca = a.members_.count(), cb = b.members_.count();
  if (ca != cb) return ca < cb;
  return a.elements() < b.elements();
}

DownSet principal_down_set(const FinitePoset& poset, Element p) {
  return DownSet(poset, poset.down_set(p));
}

// --- lattice ---------------------------------------------------------------

LatticeBounds LatticeBounds::from_environment() {
  LatticeBounds bounds;
  if (const char* env = std::getenv("POSET_COSHEAF_MAX_LATTICE")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') bounds.max_elements = value;
  }
  return bounds;
}

std::optional<Element> DownSetLattice::find(const ElementSet& members) const {
  auto it = lookup.find(members);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

Element DownSetLattice::index_of(const ElementSet& members) const {
  if (auto found = find(members)) return *found;
  throw NotADownSet("set is not an element of the down-set lattice");
}

DownSetLattice down_set_lattice(const FinitePoset& poset, const LatticeBounds& bounds) {
  if (poset.size() > bounds.max_elements)
    throw SizeError("down-set lattice of a " + std::to_string(poset.size()) +
                    "-element poset exceeds the bound of " + std::to_string(bounds.max_elements) +
                    " elements");

  // Walk a linear extension; an element may join once all its lower covers have.
  std::vector<ElementSet> found;
  const auto& order = poset.linear_extension();
  ElementSet current = poset.empty_set();
  auto visit = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      if (found.size() == bounds.max_down_sets)
        throw SizeError("down-set lattice exceeds " + std::to_string(bounds.max_down_sets) + " down-sets");
      found.push_back(current);
      return;
    }
    const Element e = order[depth];
    self(self, depth + 1);
    bool allowed = true;
    for (Element below : poset.lower_covers(e)) allowed = allowed && current.test(below);
    if (allowed) {
      current.set(e);
      self(self, depth + 1);
      current.reset(e);
    }
  };
  visit(visit, 0);

  DownSetLattice lattice{poset, FinitePoset(), {}, {}};
  for (auto& members : found) lattice.sets.push_back(DownSet(poset, std::move(members)));
  std::sort(lattice.sets.begin(), lattice.sets.end());

  std::vector<std::string> names;
  for (Element i = 0; i < lattice.sets.size(); ++i) {
    names.push_back(lattice.sets[i].label());
    lattice.lookup.emplace(lattice.sets[i].members(), i);
  }
  lattice.poset = FinitePoset::from_order(std::move(names), [&](Element a, Element b) {
    return lattice.sets[a].subset_of(lattice.sets[b]);
  });
  return lattice;
}

// --- maps ------------------------------------------------------------------

PosetMap::PosetMap(FinitePoset source, FinitePoset target, std::vector<Element> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size()) throw NotOrderPreserving("assignment has the wrong length");
  for (Element a : assignment_)
    if (a >= target_.size()) throw NotOrderPreserving("assignment leaves the target poset");
  for (const auto& [p, q] : source_.hasse_edges())
    if (!target_.leq(assignment_[p], assignment_[q]))
      throw NotOrderPreserving("map does not preserve " + source_.name(p) + " <= " + source_.name(q));
}

PosetMap PosetMap::identity(const FinitePoset& poset) {
  std::vector<Element> assignment(poset.size());
  std::iota(assignment.begin(), assignment.end(), Element{0});
  return PosetMap(poset, poset, std::move(assignment));
}

PosetMap PosetMap::constant(const FinitePoset& source, const FinitePoset& target, Element value) {
  return PosetMap(source, target, std::vector<Element>(source.size(), value));
}

bool PosetMap::is_full() const {
  for (Element p = 0; p < source_.size(); ++p)
    for (Element q = 0; q < source_.size(); ++q)
      if (source_.leq(p, q) != target_.leq(assignment_[p], assignment_[q])) return false;
  return true;
}

PosetMap compose(const PosetMap& after, const PosetMap& before) {
  if (!(before.target() == after.source())) throw Error("poset maps are not composable");
  std::vector<Element> assignment;
  assignment.reserve(before.source().size());
  for (Element a : before.assignment()) assignment.push_back(after(a));
  return PosetMap(before.source(), after.target(), std::move(assignment));
}

Subposet full_subposet(const FinitePoset& poset, const ElementSet& members) {
  std::vector<Element> elements;
  std::vector<std::string> names;
  for (Element p = members.find_first(); p != ElementSet::npos; p = members.find_next(p)) {
    elements.push_back(p);
    names.push_back(poset.name(p));
  }
  FinitePoset sub = FinitePoset::from_order(std::move(names), [&](Element a, Element b) {
    return poset.leq(elements[a], elements[b]);
  });
  PosetMap inclusion(sub, poset, elements);
  return {std::move(sub), std::move(inclusion)};
}

PosetMap iota(const DownSetLattice& lattice) {
  std::vector<Element> assignment;
  for (Element p = 0; p < lattice.base.size(); ++p)
    assignment.push_back(lattice.index_of(lattice.base.down_set(p)));
  return PosetMap(lattice.base, lattice.poset, std::move(assignment));
}

FinitePoset point() {
  static const FinitePoset single = FinitePoset::from_relations(1, {}, {"*"});
  return single;
}

namespace {

CommaPoset comma_from(const PosetMap& map, Element b, bool under) {
  if (b >= map.target().size()) throw Error("comma object is not an element of the target");
  ElementSet members = map.source().empty_set();
  for (Element a = 0; a < map.source().size(); ++a)
    if (under ? map.target().leq(map(a), b) : map.target().leq(b, map(a))) members.set(a);
  Subposet sub = full_subposet(map.source(), members);
  return {std::move(sub.poset), std::move(sub.inclusion), b};
}

}  // namespace

CommaPoset comma_under(const PosetMap& map, Element b) { return comma_from(map, b, true); }
CommaPoset comma_over(Element b, const PosetMap& map) { return comma_from(map, b, false); }

Cofinality is_cofinal(const PosetMap& map) {
  for (Element b = 0; b < map.target().size(); ++b) {
    const CommaPoset comma = comma_over(b, map);
    if (comma.carrier.empty()) return {false, b, Cofinality::Failure::empty};
    if (connected_components(comma.carrier).size() != 1) return {false, b, Cofinality::Failure::disconnected};
  }
  return {};
}

}  // namespace alex
