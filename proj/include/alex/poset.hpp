#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace alex {

/// Elements are identified by their index inside a poset; names are only for
/// presentation and file I/O.
using Element = std::size_t;
using ElementSet = boost::dynamic_bitset<>;
using Relation = std::pair<Element, Element>;

/// A finite partially ordered set stored with its full, closed order relation.
///
/// Instances are immutable and cheap to copy (the relation is shared).
class FinitePoset {
public:
  /// The empty poset.
  FinitePoset();

  /// Reflexive-transitive closure of `generating_pairs` (p, q) meaning p <= q.
  /// Throws CycleError when the closure is not antisymmetric.
  static FinitePoset from_relations(std::size_t n, std::span<const Relation> generating_pairs,
                                    std::vector<std::string> names = {});

  /// Builds a poset from an order predicate evaluated on all pairs. The
  /// predicate must already be a partial order; this is checked.
  template <typename Leq>
  static FinitePoset from_order(std::vector<std::string> names, Leq&& leq) {
    const std::size_t n = names.size();
    std::vector<ElementSet> up(n, ElementSet(n));
    for (Element p = 0; p < n; ++p)
      for (Element q = 0; q < n; ++q)
        if (leq(p, q)) up[p].set(q);
    return from_closed(std::move(names), std::move(up));
  }

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool leq(Element p, Element q) const;
  bool less(Element p, Element q) const { return p != q && leq(p, q); }
  bool comparable(Element p, Element q) const { return leq(p, q) || leq(q, p); }

  const std::string& name(Element p) const;
  const std::vector<std::string>& names() const;
  std::optional<Element> find(std::string_view name) const;

  /// {q : p <= q}
  const ElementSet& up_set(Element p) const;
  /// {q : q <= p}
  const ElementSet& down_set(Element p) const;

  /// Cover relations p < q with nothing strictly between, sorted.
  const std::vector<Relation>& hasse_edges() const;
  const std::vector<Element>& lower_covers(Element q) const;
  const std::vector<Element>& upper_covers(Element p) const;

  /// Elements sorted so that p < q implies p comes first.
  const std::vector<Element>& linear_extension() const;

  /// Every pair p <= q (including p == q), sorted.
  std::vector<Relation> relation_pairs() const;

  ElementSet empty_set() const { return ElementSet(size()); }

  /// Same elements, names and order.
  friend bool operator==(const FinitePoset& a, const FinitePoset& b);

private:
  struct Impl;
  explicit FinitePoset(std::shared_ptr<const Impl> impl);
  static FinitePoset from_closed(std::vector<std::string> names, std::vector<ElementSet> up);

  std::shared_ptr<const Impl> impl_;
};

FinitePoset chain(std::size_t n);
FinitePoset antichain(std::size_t n);

/// Same elements, reversed order.
FinitePoset opposite(const FinitePoset& poset);

/// All posets on the labeled set {0, ..., n-1}; element names are "0", "1", ...
std::vector<FinitePoset> enumerate_labeled_posets(std::size_t n);

/// Partition into zigzag-connected components; components and their elements
/// are sorted by index.
std::vector<std::vector<Element>> connected_components(const FinitePoset& poset);

/// A downward closed subset of a poset: an open set of the Alexandrov topology.
class DownSet {
public:
  /// Throws NotADownSet when `members` is not downward closed.
  DownSet(FinitePoset parent, ElementSet members);

  static DownSet empty(const FinitePoset& parent);
  static DownSet whole(const FinitePoset& parent);

  const FinitePoset& parent() const { return parent_; }
  const ElementSet& members() const { return members_; }
  std::vector<Element> elements() const;
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(Element p) const { return members_.test(p); }
  bool subset_of(const DownSet& other) const { return members_.is_subset_of(other.members_); }

  /// "{a,b}" with element names sorted lexicographically, "{}" when empty.
  std::string label() const;

  friend DownSet operator&(const DownSet& a, const DownSet& b);
  friend DownSet operator|(const DownSet& a, const DownSet& b);
  friend bool operator==(const DownSet& a, const DownSet& b) { return a.members_ == b.members_; }
  /// Canonical order: by size, then by member bitset.
  friend bool operator<(const DownSet& a, const DownSet& b);

private:
  DownSet(FinitePoset parent, ElementSet members, bool /*trusted*/);

  FinitePoset parent_;
  ElementSet members_;
};

/// D_p = {q : q <= p}.
DownSet principal_down_set(const FinitePoset& poset, Element p);

/// Throws ParentMismatch unless both sets live in the same poset.
void require_same_parent(const DownSet& a, const DownSet& b);

/// Enumeration limits for down-set lattices. `max_elements` bounds |P| and can
/// be overridden with POSET_COSHEAF_MAX_LATTICE; `max_down_sets` bounds the
/// lattice size, whose relation is stored densely.
struct LatticeBounds {
  std::size_t max_elements = 20;
  std::size_t max_down_sets = 4096;

  static LatticeBounds from_environment();
};

/// Down(P): every down-set of P ordered by inclusion, including the empty set
/// and P itself. Lattice element i decodes to `sets[i]`; sets are in canonical
/// order, so the empty set is element 0 and P is the last element.
struct DownSetLattice {
  FinitePoset base;
  FinitePoset poset;
  std::vector<DownSet> sets;

  std::optional<Element> find(const ElementSet& members) const;
  std::optional<Element> find(const DownSet& set) const { return find(set.members()); }
  /// Throws NotADownSet when `members` is not in the lattice.
  Element index_of(const ElementSet& members) const;

  std::map<ElementSet, Element> lookup;
};

/// Throws SizeError beyond `bounds`.
DownSetLattice down_set_lattice(const FinitePoset& poset,
                                const LatticeBounds& bounds = LatticeBounds::from_environment());

/// An order-preserving map between finite posets, i.e. a functor.
class PosetMap {
public:
  /// Throws NotOrderPreserving when p <= q does not imply f(p) <= f(q).
  PosetMap(FinitePoset source, FinitePoset target, std::vector<Element> assignment);

  static PosetMap identity(const FinitePoset& poset);
  static PosetMap constant(const FinitePoset& source, const FinitePoset& target, Element value);

  const FinitePoset& source() const { return source_; }
  const FinitePoset& target() const { return target_; }
  const std::vector<Element>& assignment() const { return assignment_; }
  Element operator()(Element p) const { return assignment_[p]; }

  /// p <= q iff f(p) <= f(q).
  bool is_full() const;

private:
  FinitePoset source_;
  FinitePoset target_;
  std::vector<Element> assignment_;
};

/// after ∘ before
PosetMap compose(const PosetMap& after, const PosetMap& before);

/// Full sub-poset on `members`, with the inclusion back into `poset`.
/// Element i of the sub-poset is the i-th member in index order.
struct Subposet {
  FinitePoset poset;
  PosetMap inclusion;
};

Subposet full_subposet(const FinitePoset& poset, const ElementSet& members);

/// p ↦ D_p, into the lattice poset.
PosetMap iota(const DownSetLattice& lattice);

/// The one-element poset.
FinitePoset point();

/// (E↓b) or (b↓E) for a poset map E. Carrier element i stands for the pair
/// (projection(i), b), i.e. the unique arrow E(a) <= b (or b <= E(a)).
struct CommaPoset {
  FinitePoset carrier;
  PosetMap projection;
  Element object;

  Relation label(Element i) const { return {projection(i), object}; }
};

/// Full sub-poset of E.source on {a : E(a) <= b}.
CommaPoset comma_under(const PosetMap& map, Element b);
/// Full sub-poset of E.source on {a : b <= E(a)}.
CommaPoset comma_over(Element b, const PosetMap& map);

struct Cofinality {
  enum class Failure { none, empty, disconnected };

  bool cofinal = true;
  Element witness = 0;
  Failure failure = Failure::none;

  explicit operator bool() const { return cofinal; }
};

/// Cofinal iff every (b↓E) is non-empty and connected; the first failing b
/// (in index order) is reported.
Cofinality is_cofinal(const PosetMap& map);

}  // namespace alex
