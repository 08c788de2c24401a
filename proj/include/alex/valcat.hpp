#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alex/elimination.hpp"
#include "alex/error.hpp"
#include "alex/poset.hpp"
#include "alex/rational.hpp"

namespace alex {

// --- the two value categories ---------------------------------------------

struct VectObj {
  Index dim = 0;
  friend auto operator<=>(const VectObj&, const VectObj&) = default;
};

/// Finite-dimensional vector spaces over Q; a map is a rows = dim(codomain),
/// cols = dim(domain) rational matrix.
struct Vect {
  using Object = VectObj;
  using Map = QMatrix;
  static constexpr std::string_view name = "vect";

  static Object domain(const Map& m) { return {m.cols()}; }
  static Object codomain(const Map& m) { return {m.rows()}; }
  static std::size_t size(const Object& o) { return static_cast<std::size_t>(o.dim); }
  static Object initial() { return {0}; }
  static Map identity(const Object& o) { return Map::Identity(o.dim, o.dim); }
  /// after ∘ before
  static Map compose(const Map& after, const Map& before) { return after * before; }
  static bool equal(const Map& a, const Map& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  }
  static bool is_isomorphism(const Map& m) { return is_invertible(m); }
  static bool is_injective(const Map& m) { return alex::is_injective(m); }
  static bool is_surjective(const Map& m) { return alex::is_surjective(m); }
};

struct FinSetObj {
  std::size_t cardinality = 0;
  friend auto operator<=>(const FinSetObj&, const FinSetObj&) = default;
};

/// A total function {0..n-1} -> {0..codomain-1} as a lookup table.
struct FinSetMap {
  std::vector<std::size_t> table;
  std::size_t codomain = 0;
  friend bool operator==(const FinSetMap&, const FinSetMap&) = default;
};

struct FinSet {
  using Object = FinSetObj;
  using Map = FinSetMap;
  static constexpr std::string_view name = "finset";

  static Object domain(const Map& m) { return {m.table.size()}; }
  static Object codomain(const Map& m) { return {m.codomain}; }
  static std::size_t size(const Object& o) { return o.cardinality; }
  static Object initial() { return {0}; }
  static Map identity(const Object& o) {
    Map m{std::vector<std::size_t>(o.cardinality), o.cardinality};
    std::iota(m.table.begin(), m.table.end(), std::size_t{0});
    return m;
  }
  static Map compose(const Map& after, const Map& before) {
    Map m{{}, after.codomain};
    m.table.reserve(before.table.size());
    for (std::size_t x : before.table) m.table.push_back(after.table[x]);
    return m;
  }
  static bool equal(const Map& a, const Map& b) { return a == b; }
  static bool is_injective(const Map& m) {
    std::vector<bool> hit(m.codomain, false);
    for (std::size_t y : m.table) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }
  static bool is_surjective(const Map& m) {
    std::vector<bool> hit(m.codomain, false);
    for (std::size_t y : m.table) hit[y] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  static bool is_isomorphism(const Map& m) { return m.table.size() == m.codomain && is_injective(m); }
};

template <typename C>
concept ValueCategory = requires(const typename C::Object& o, const typename C::Map& m) {
  { C::domain(m) } -> std::same_as<typename C::Object>;
  { C::codomain(m) } -> std::same_as<typename C::Object>;
  { C::size(o) } -> std::same_as<std::size_t>;
  { C::identity(o) } -> std::same_as<typename C::Map>;
  { C::compose(m, m) } -> std::same_as<typename C::Map>;
  { C::equal(m, m) } -> std::same_as<bool>;
  { C::is_isomorphism(m) } -> std::same_as<bool>;
  { C::initial() } -> std::same_as<typename C::Object>;
};

template <ValueCategory C>
bool is_isomorphism(const typename C::Map& m) {
  return C::is_isomorphism(m);
}

// --- diagrams --------------------------------------------------------------

/// Path-independence verdict of a diagram. When it fails, `path_a` and
/// `path_b` are two Hasse paths from `from` to `to` with different composites.
struct Functoriality {
  bool functorial = true;
  Element from = 0;
  Element to = 0;
  std::vector<Element> path_a;
  std::vector<Element> path_b;

  explicit operator bool() const { return functorial; }
};

/// A functor from a finite poset into C, given by objects and maps on the
/// Hasse edges. Shape errors throw InvalidDiagram at construction; path
/// independence is checked at construction and reported by functoriality().
/// Copies share the immutable payload.
template <ValueCategory C>
class Diagram {
public:
  using Object = typename C::Object;
  using Map = typename C::Map;
  using EdgeMaps = std::map<Relation, Map>;

  Diagram(FinitePoset base, std::vector<Object> objects, EdgeMaps edge_maps);

  const FinitePoset& base() const { return impl_->base; }
  const std::vector<Object>& objects() const { return impl_->objects; }
  const Object& object(Element p) const { return impl_->objects[p]; }
  const EdgeMaps& edge_maps() const { return impl_->edges; }
  const Map& edge_map(Element p, Element q) const;

  const Functoriality& functoriality() const { return impl_->functoriality; }
  bool is_functorial() const { return impl_->functoriality.functorial; }

  /// F(p <= q), the composite along any Hasse path; identity when p == q.
  /// Throws NotComparable or NotFunctorial.
  const Map& induced_map(Element p, Element q) const;

private:
  struct Impl {
    FinitePoset base;
    std::vector<Object> objects;
    EdgeMaps edges;
    std::vector<std::optional<Map>> induced;
    Functoriality functoriality;
  };
  std::shared_ptr<const Impl> impl_;
};

template <ValueCategory C>
const Functoriality& check_functorial(const Diagram<C>& diagram) {
  return diagram.functoriality();
}

template <ValueCategory C>
Diagram<C>::Diagram(FinitePoset base, std::vector<Object> objects, EdgeMaps edge_maps) {
  auto impl = std::make_shared<Impl>();
  const std::size_t n = base.size();
  if (objects.size() != n) throw InvalidDiagram("diagram needs one object per poset element");

  for (const auto& [edge, map] : edge_maps) {
    const auto [p, q] = edge;
    if (p >= n || q >= n) throw InvalidDiagram("edge map on an unknown element");
    const auto& covers = base.lower_covers(q);
    if (std::find(covers.begin(), covers.end(), p) == covers.end())
      throw InvalidDiagram("map given on " + base.name(p) + "<" + base.name(q) + ", which is not a Hasse edge");
    if (!(C::domain(map) == objects[p]) || !(C::codomain(map) == objects[q]))
      throw InvalidDiagram("map on " + base.name(p) + "<" + base.name(q) + " has the wrong shape");
  }
  for (const auto& edge : base.hasse_edges())
    if (!edge_maps.contains(edge))
      throw InvalidDiagram("missing map on Hasse edge " + base.name(edge.first) + "<" + base.name(edge.second));

  impl->induced.resize(n * n);
  std::vector<std::vector<Element>> paths(n * n);
  for (Element p = 0; p < n && impl->functoriality.functorial; ++p) {
    impl->induced[p * n + p] = C::identity(objects[p]);
    paths[p * n + p] = {p};
    for (Element q : base.linear_extension()) {
      if (q == p || !base.leq(p, q)) continue;
      for (Element r : base.lower_covers(q)) {
        if (!base.leq(p, r)) continue;
        Map candidate = C::compose(edge_maps.at({r, q}), *impl->induced[p * n + r]);
        auto& slot = impl->induced[p * n + q];
        if (!slot) {
          slot = std::move(candidate);
          paths[p * n + q] = paths[p * n + r];
          paths[p * n + q].push_back(q);
        } else if (!C::equal(*slot, candidate)) {
          auto& f = impl->functoriality;
          f.functorial = false;
          f.from = p;
          f.to = q;
          f.path_a = paths[p * n + q];
          f.path_b = paths[p * n + r];
          f.path_b.push_back(q);
          break;
        }
      }
      if (!impl->functoriality.functorial) break;
    }
  }
  if (!impl->functoriality.functorial) impl->induced.clear();

  impl->base = std::move(base);
  impl->objects = std::move(objects);
  impl->edges = std::move(edge_maps);
  impl_ = std::move(impl);
}

template <ValueCategory C>
const typename C::Map& Diagram<C>::edge_map(Element p, Element q) const {
  auto it = impl_->edges.find({p, q});
  if (it == impl_->edges.end()) throw NotComparable("no Hasse edge between the given elements");
  return it->second;
}

template <ValueCategory C>
const typename C::Map& Diagram<C>::induced_map(Element p, Element q) const {
  if (!base().leq(p, q)) throw NotComparable(base().name(p) + " is not below " + base().name(q));
  if (!is_functorial()) throw NotFunctorial("diagram is not functorial");
  return *impl_->induced[p * base().size() + q];
}

/// Diagram with the same object everywhere and identity maps.
template <ValueCategory C>
Diagram<C> constant_diagram(const FinitePoset& base, const typename C::Object& value) {
  typename Diagram<C>::EdgeMaps edges;
  for (const auto& edge : base.hasse_edges()) edges.emplace(edge, C::identity(value));
  return Diagram<C>(base, std::vector<typename C::Object>(base.size(), value), std::move(edges));
}

/// D ∘ E for E: J -> Q and D over Q.
template <ValueCategory C>
Diagram<C> restrict(const Diagram<C>& diagram, const PosetMap& map) {
  if (!(map.target() == diagram.base())) throw Error("restriction along a map into a different poset");
  if (!diagram.is_functorial()) throw NotFunctorial("cannot restrict a non-functorial diagram");
  std::vector<typename C::Object> objects;
  for (Element p = 0; p < map.source().size(); ++p) objects.push_back(diagram.object(map(p)));
  typename Diagram<C>::EdgeMaps edges;
  for (const auto& [p, q] : map.source().hasse_edges())
    edges.emplace(Relation{p, q}, diagram.induced_map(map(p), map(q)));
  return Diagram<C>(map.source(), std::move(objects), std::move(edges));
}

// --- colimits --------------------------------------------------------------

/// A colimit cocone. Generator k of `object` (basis vector or element) is the
/// image under leg(generators[k].first) of generator generators[k].second.
template <ValueCategory C>
struct ColimitResult {
  Diagram<C> diagram;
  typename C::Object object;
  std::vector<typename C::Map> legs;
  std::vector<std::pair<Element, std::size_t>> generators;

  const typename C::Map& leg(Element p) const { return legs[p]; }
};

namespace detail {

inline std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> offsets(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) offsets[i + 1] = offsets[i] + sizes[i];
  return offsets;
}

inline ColimitResult<Vect> colimit_impl(const Diagram<Vect>& diagram) {
  const FinitePoset& base = diagram.base();
  std::vector<std::size_t> sizes;
  for (const auto& o : diagram.objects()) sizes.push_back(Vect::size(o));
  const auto offsets = offsets_of(sizes);
  const auto total = static_cast<Index>(offsets.back());

  Index relation_count = 0;
  for (const auto& [p, q] : base.hasse_edges()) relation_count += diagram.object(p).dim;

  // Column (p⋖q, i): F(p⋖q) e_i in slot q minus e_i in slot p.
  QMatrix relations = QMatrix::Zero(total, relation_count);
  Index col = 0;
  for (const auto& [p, q] : base.hasse_edges()) {
    const QMatrix& m = diagram.edge_map(p, q);
    const auto op = static_cast<Index>(offsets[p]), oq = static_cast<Index>(offsets[q]);
    for (Index i = 0; i < m.cols(); ++i, ++col) {
      relations.col(col).segment(oq, m.rows()) = m.col(i);
      relations(op + i, col) -= Rational(1);
    }
  }

  const Cokernel<Rational> cok = cokernel(relations);
  ColimitResult<Vect> out{diagram, {static_cast<Index>(cok.basis.size())}, {}, {}};
  for (Element p = 0; p < base.size(); ++p)
    out.legs.push_back(cok.quotient.middleCols(static_cast<Index>(offsets[p]), static_cast<Index>(sizes[p])));
  for (Index coord : cok.basis) {
    const auto c = static_cast<std::size_t>(coord);
    const auto slot = static_cast<Element>(std::upper_bound(offsets.begin(), offsets.end(), c) - offsets.begin() - 1);
    out.generators.emplace_back(slot, c - offsets[slot]);
  }
  return out;
}

inline ColimitResult<FinSet> colimit_impl(const Diagram<FinSet>& diagram) {
  const FinitePoset& base = diagram.base();
  std::vector<std::size_t> sizes;
  for (const auto& o : diagram.objects()) sizes.push_back(o.cardinality);
  const auto offsets = offsets_of(sizes);
  const std::size_t total = offsets.back();

  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [p, q] : base.hasse_edges()) {
    const FinSetMap& m = diagram.edge_map(p, q);
    for (std::size_t x = 0; x < m.table.size(); ++x) {
      const std::size_t a = root(offsets[p] + x), b = root(offsets[q] + m.table[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Classes are numbered by their smallest member.
  std::vector<std::size_t> class_of(total);
  std::map<std::size_t, std::size_t> numbering;
  ColimitResult<FinSet> out{diagram, {}, {}, {}};
  for (std::size_t g = 0; g < total; ++g) {
    auto [it, inserted] = numbering.emplace(root(g), numbering.size());
    class_of[g] = it->second;
    if (inserted) {
      const auto slot = static_cast<Element>(std::upper_bound(offsets.begin(), offsets.end(), g) - offsets.begin() - 1);
      out.generators.emplace_back(slot, g - offsets[slot]);
    }
  }
  out.object = {numbering.size()};
  for (Element p = 0; p < base.size(); ++p) {
    FinSetMap leg{{}, numbering.size()};
    for (std::size_t x = 0; x < sizes[p]; ++x) leg.table.push_back(class_of[offsets[p] + x]);
    out.legs.push_back(std::move(leg));
  }
  return out;
}

}  // namespace detail

/// colim D over its base poset, generated by the Hasse edge relations. The
/// empty diagram yields the initial object. Throws NotFunctorial.
template <ValueCategory C>
ColimitResult<C> colimit(const Diagram<C>& diagram) {
  if (!diagram.is_functorial()) throw NotFunctorial("colimit of a non-functorial diagram");
  return detail::colimit_impl(diagram);
}

/// True iff `cocone` (one map per base element, all into `apex`) commutes
/// with every edge map of the diagram.
template <ValueCategory C>
bool is_cocone(const Diagram<C>& diagram, const std::vector<typename C::Map>& cocone,
               const typename C::Object& apex) {
  if (cocone.size() != diagram.base().size()) return false;
  for (Element p = 0; p < cocone.size(); ++p)
    if (!(C::domain(cocone[p]) == diagram.object(p)) || !(C::codomain(cocone[p]) == apex)) return false;
  for (const auto& [p, q] : diagram.base().hasse_edges())
    if (!C::equal(C::compose(cocone[q], diagram.edge_map(p, q)), cocone[p])) return false;
  return true;
}

/// The unique u with u ∘ leg(p) = cocone(p) for every p. `apex` is needed
/// only when the diagram is empty. Throws NotACocone.
template <ValueCategory C>
typename C::Map factor_through(const ColimitResult<C>& colim, const std::vector<typename C::Map>& cocone,
                               std::optional<typename C::Object> apex = std::nullopt) {
  if (!apex) {
    if (cocone.empty()) throw NotACocone("apex of an empty cocone must be given");
    apex = C::codomain(cocone.front());
  }
  if (!is_cocone(colim.diagram, cocone, *apex)) throw NotACocone("maps do not form a cocone under the diagram");

  typename C::Map u;
  if constexpr (std::is_same_v<C, Vect>) {
    u = QMatrix::Zero(apex->dim, colim.object.dim);
    for (std::size_t k = 0; k < colim.generators.size(); ++k) {
      const auto [p, i] = colim.generators[k];
      u.col(static_cast<Index>(k)) = cocone[p].col(static_cast<Index>(i));
    }
  } else {
    u = FinSetMap{{}, apex->cardinality};
    for (const auto& [p, x] : colim.generators) u.table.push_back(cocone[p].table[x]);
  }
  for (Element p = 0; p < cocone.size(); ++p)
    if (!C::equal(C::compose(u, colim.legs[p]), cocone[p]))
      throw std::logic_error("colimit legs are not jointly generating");
  return u;
}

}  // namespace alex

namespace alex {

/// The map colim(A) -> colim(B) induced by sending index j of A to index
/// `index_map[j]` of B, when A(j) is B(index_map[j]) (as for A = B ∘ f).
template <ValueCategory C>
typename C::Map colimit_comparison(const ColimitResult<C>& from, const ColimitResult<C>& to,
                                   const std::vector<Element>& index_map) {
  std::vector<typename C::Map> cocone;
  cocone.reserve(index_map.size());
  for (Element j : index_map) cocone.push_back(to.leg(j));
  return factor_through(from, cocone, to.object);
}

}  // namespace alex
