#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls the colimit engine or the cover predicates it is used to check.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "alex/cosheaf.hpp"
#include "alex/random.hpp"

namespace alex::testing {

// Λ-poset: z <= x, z <= y. Indices x=0, y=1, z=2.
inline FinitePoset lambda_poset() {
  const std::vector<Relation> pairs{{2, 0}, {2, 1}};
  return FinitePoset::from_relations(3, pairs, {"x", "y", "z"});
}
constexpr Element X = 0, Y = 1, Z = 2;

inline QMatrix mat(std::initializer_list<std::initializer_list<long>> rows, Index cols = -1) {
  const auto r = static_cast<Index>(rows.size());
  const Index c = cols >= 0 ? cols : (r ? static_cast<Index>(rows.begin()->size()) : 0);
  QMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

// F(z)=k, F(x)=k, F(y)=k², z->x identity, z->y include-first.
inline Diagram<Vect> lambda_pushout() {
  Diagram<Vect>::EdgeMaps maps;
  maps.emplace(Relation{Z, X}, mat({{1}}));
  maps.emplace(Relation{Z, Y}, mat({{1}, {0}}));
  return Diagram<Vect>(lambda_poset(), {{1}, {2}, {1}}, std::move(maps));
}

inline DownSet ds(const FinitePoset& p, std::initializer_list<Element> elems) {
  ElementSet s = p.empty_set();
  for (Element e : elems) s.set(e);
  return DownSet(p, s);
}

// --- exact linear algebra written independently of elimination.hpp ---------

// Row reduction by plain forward elimination followed by back substitution.
struct Reduced {
  QMatrix m;
  std::vector<Index> pivot_cols;
};

inline Reduced oracle_reduce(QMatrix m) {
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index best = -1;
    for (Index i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        best = i;
        break;
      }
    if (best < 0) continue;
    for (Index j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    for (Index i = r + 1; i < m.rows(); ++i) {
      const Rational f = m(i, c) / m(r, c);
      for (Index j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Index k = static_cast<Index>(pivots.size()) - 1; k >= 0; --k) {
    const Index c = pivots[static_cast<std::size_t>(k)];
    const Rational lead = m(k, c);
    for (Index j = 0; j < m.cols(); ++j) m(k, j) /= lead;
    for (Index i = 0; i < k; ++i) {
      const Rational f = m(i, c);
      for (Index j = 0; j < m.cols(); ++j) m(i, j) -= f * m(k, j);
    }
  }
  return {m, pivots};
}

inline Index oracle_rank(const QMatrix& m) { return static_cast<Index>(oracle_reduce(m).pivot_cols.size()); }

// Null space basis (columns).
inline QMatrix oracle_null_space(const QMatrix& m) {
  const Reduced red = oracle_reduce(m);
  std::vector<Index> free;
  for (Index c = 0; c < m.cols(); ++c)
    if (std::find(red.pivot_cols.begin(), red.pivot_cols.end(), c) == red.pivot_cols.end()) free.push_back(c);
  QMatrix basis = QMatrix::Zero(m.cols(), static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], static_cast<Index>(f)) = 1;
    for (std::size_t k = 0; k < red.pivot_cols.size(); ++k)
      basis(red.pivot_cols[k], static_cast<Index>(f)) = -red.m(static_cast<Index>(k), free[f]);
  }
  return basis;
}

inline QMatrix oracle_inverse(const QMatrix& m) {
  QMatrix aug(m.rows(), 2 * m.cols());
  aug << m, QMatrix::Identity(m.rows(), m.cols());
  return oracle_reduce(aug).m.rightCols(m.cols());
}

// Leibniz expansion.
inline Rational oracle_determinant(const QMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(static_cast<Index>(i), static_cast<Index>(perm[i]));
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// --- colimit oracles over ALL comparable pairs ---------------------------

// Vect: the colimit's dual is the space of compatible cocones into k, i.e.
// the kernel of the transposed all-pairs relation map. Legs are read off a
// kernel basis.
struct OracleColimit {
  Index dim = 0;
  std::vector<QMatrix> legs;
};

inline OracleColimit oracle_colimit(const Diagram<Vect>& d) {
  const FinitePoset& base = d.base();
  std::vector<Index> offset(base.size() + 1, 0);
  for (Element p = 0; p < base.size(); ++p) offset[p + 1] = offset[p] + d.object(p).dim;
  const Index total = offset.back();

  std::vector<Eigen::Matrix<Rational, 1, Eigen::Dynamic>> constraints;
  for (const auto& [p, q] : base.relation_pairs()) {
    if (p == q) continue;
    const QMatrix& f = d.induced_map(p, q);
    for (Index i = 0; i < f.cols(); ++i) {
      Eigen::Matrix<Rational, 1, Eigen::Dynamic> row = Eigen::Matrix<Rational, 1, Eigen::Dynamic>::Zero(total);
      row.segment(offset[q], f.rows()) = f.col(i).transpose();
      row(offset[p] + i) -= 1;
      constraints.push_back(row);
    }
  }
  QMatrix system(static_cast<Index>(constraints.size()), total);
  for (std::size_t r = 0; r < constraints.size(); ++r) system.row(static_cast<Index>(r)) = constraints[r];
  const QMatrix cocones = oracle_null_space(system);  // total x k

  OracleColimit out{cocones.cols(), {}};
  for (Element p = 0; p < base.size(); ++p)
    out.legs.push_back(cocones.middleRows(offset[p], d.object(p).dim).transpose());
  return out;
}

// The map v with v ∘ oracle.leg(p) = target_legs(p), solved from a maximal
// set of independent columns of the stacked oracle legs.
inline QMatrix oracle_factor(const OracleColimit& oracle, const std::vector<QMatrix>& target_legs, Index target_dim) {
  QMatrix stacked(oracle.dim, 0), goal(target_dim, 0);
  for (std::size_t p = 0; p < oracle.legs.size(); ++p) {
    QMatrix s(oracle.dim, stacked.cols() + oracle.legs[p].cols());
    s << stacked, oracle.legs[p];
    stacked = s;
    QMatrix g(target_dim, goal.cols() + target_legs[p].cols());
    g << goal, target_legs[p];
    goal = g;
  }
  const Reduced red = oracle_reduce(stacked);
  QMatrix square(oracle.dim, oracle.dim), rhs(target_dim, oracle.dim);
  for (Index k = 0; k < oracle.dim; ++k) {
    square.col(k) = stacked.col(red.pivot_cols[static_cast<std::size_t>(k)]);
    rhs.col(k) = goal.col(red.pivot_cols[static_cast<std::size_t>(k)]);
  }
  return rhs * oracle_inverse(square);
}

// FinSet: breadth-first components of the disjoint union glued along every
// comparable pair.
struct OracleSetColimit {
  std::size_t size = 0;
  std::vector<FinSetMap> legs;
};

inline OracleSetColimit oracle_colimit(const Diagram<FinSet>& d) {
  const FinitePoset& base = d.base();
  std::vector<std::size_t> offset(base.size() + 1, 0);
  for (Element p = 0; p < base.size(); ++p) offset[p + 1] = offset[p] + d.object(p).cardinality;
  std::vector<std::vector<std::size_t>> adj(offset.back());
  for (const auto& [p, q] : base.relation_pairs())
    for (std::size_t x = 0; x < d.object(p).cardinality; ++x) {
      const std::size_t a = offset[p] + x, b = offset[q] + d.induced_map(p, q).table[x];
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  std::vector<std::size_t> label(offset.back(), SIZE_MAX);
  std::size_t classes = 0;
  for (std::size_t s = 0; s < label.size(); ++s) {
    if (label[s] != SIZE_MAX) continue;
    std::deque<std::size_t> queue{s};
    label[s] = classes;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[v])
        if (label[w] == SIZE_MAX) {
          label[w] = classes;
          queue.push_back(w);
        }
    }
    ++classes;
  }
  OracleSetColimit out{classes, {}};
  for (Element p = 0; p < base.size(); ++p) {
    FinSetMap leg{{}, classes};
    for (std::size_t x = 0; x < d.object(p).cardinality; ++x) leg.table.push_back(label[offset[p] + x]);
    out.legs.push_back(leg);
  }
  return out;
}

// --- order-theoretic oracles ---------------------------------------------

// Every subset of P, filtered for downward closure.
inline std::vector<ElementSet> brute_force_down_sets(const FinitePoset& p) {
  std::vector<ElementSet> out;
  const std::size_t n = p.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet s(n, mask);
    bool closed = true;
    for (Element a = 0; a < n && closed; ++a)
      for (Element b = 0; b < n && closed; ++b)
        if (s.test(b) && p.leq(a, b) && !s.test(a)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

// Connectivity over the comparability graph (not just Hasse edges).
inline std::size_t oracle_component_count(const FinitePoset& p) {
  std::vector<int> seen(p.size(), 0);
  std::size_t count = 0;
  for (Element s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<Element> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Element v = stack.back();
      stack.pop_back();
      for (Element w = 0; w < p.size(); ++w)
        if (!seen[w] && p.comparable(v, w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return count;
}

inline bool oracle_cofinal(const PosetMap& e) {
  for (Element b = 0; b < e.target().size(); ++b) {
    std::vector<Element> over;
    for (Element a = 0; a < e.source().size(); ++a)
      if (e.target().leq(b, e(a))) over.push_back(a);
    if (over.empty()) return false;
    ElementSet members = e.source().empty_set();
    for (Element a : over) members.set(a);
    if (oracle_component_count(full_subposet(e.source(), members).poset) != 1) return false;
  }
  return true;
}

// Cover predicates straight from their definitions, quantifying over every
// subfamily rather than pairs.
inline bool oracle_cech(const Cover& c) {
  const auto& m = c.members();
  const std::size_t k = m.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    if (std::popcount(mask) < 2) continue;
    ElementSet meet = c.target().members();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) meet &= m[i].members();
    if (meet.none()) continue;
    if (std::none_of(m.begin(), m.end(), [&](const DownSet& d) { return d.members() == meet; })) return false;
  }
  return true;
}

inline bool oracle_covered_by_members(const Cover& c, const ElementSet& s) {
  ElementSet acc(s.size());
  for (const DownSet& d : c.members())
    if (d.members().is_subset_of(s)) acc |= d.members();
  return acc == s;
}

inline bool oracle_basic(const Cover& c) {
  for (const DownSet& a : c.members())
    for (const DownSet& b : c.members())
      if (!oracle_covered_by_members(c, a.members() & b.members())) return false;
  return true;
}

inline bool oracle_complete(const Cover& c) {
  const std::size_t k = c.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    ElementSet meet = c.target().members();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1U) meet &= c.members()[i].members();
    if (meet.any() && !oracle_covered_by_members(c, meet)) return false;
  }
  return true;
}

// Random poset: a random DAG on a shuffled order, closed.
inline FinitePoset random_poset(std::size_t n, Rng& rng, double density = 0.4) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(density);
  std::vector<Relation> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) pairs.emplace_back(order[i], order[j]);
  return FinitePoset::from_relations(n, pairs);
}

}  // namespace alex::testing
