#include "alex/random.hpp"

#include <optional>

namespace alex {

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (std::uint64_t s : stream) {
    words.push_back(static_cast<std::uint32_t>(s));
    words.push_back(static_cast<std::uint32_t>(s >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Composite of the already-built edge maps along some Hasse path p -> r.
template <ValueCategory C>
using Table = std::vector<std::optional<typename C::Map>>;

template <ValueCategory C, typename Sample, typename Fallback>
Diagram<C> build_random(const FinitePoset& base, std::vector<typename C::Object> objects, Sample&& sample,
                        Fallback&& fallback, std::size_t attempts) {
  const std::size_t n = base.size();
  Table<C> induced(n * n);
  typename Diagram<C>::EdgeMaps edges;

  for (Element q : base.linear_extension()) {
    induced[q * n + q] = C::identity(objects[q]);
    const auto& lower = base.lower_covers(q);
    std::vector<typename C::Map> chosen;
    bool ok = false;
    for (std::size_t attempt = 0; attempt <= attempts && !ok; ++attempt) {
      chosen.clear();
      for (Element r : lower)
        chosen.push_back(attempt < attempts ? sample(objects[r], objects[q]) : fallback(objects[r], objects[q]));
      ok = true;
      for (Element p = 0; p < n && ok; ++p) {
        std::optional<typename C::Map> seen;
        for (std::size_t k = 0; k < lower.size() && ok; ++k) {
          const auto& below = induced[p * n + lower[k]];
          if (!below) continue;
          auto composite = C::compose(chosen[k], *below);
          if (!seen) seen = std::move(composite);
          else ok = C::equal(*seen, composite);
        }
      }
    }
    for (std::size_t k = 0; k < lower.size(); ++k) edges.emplace(Relation{lower[k], q}, chosen[k]);
    for (Element p = 0; p < n; ++p)
      for (std::size_t k = 0; k < lower.size(); ++k)
        if (const auto& below = induced[p * n + lower[k]]; below && !induced[p * n + q])
          induced[p * n + q] = C::compose(chosen[k], *below);
  }
  return Diagram<C>(base, std::move(objects), std::move(edges));
}

}  // namespace

Diagram<Vect> random_vect_diagram(const FinitePoset& base, Rng& rng, const RandomDiagramOptions& options) {
  std::vector<VectObj> objects;
  for (Element p = 0; p < base.size(); ++p)
    objects.push_back({static_cast<Index>(uniform(rng, 0, options.max_value))});
  auto sample = [&](const VectObj& from, const VectObj& to) {
    QMatrix m(to.dim, from.dim);
    std::uniform_int_distribution<int> entry(options.min_entry, options.max_entry);
    for (Index r = 0; r < to.dim; ++r)
      for (Index c = 0; c < from.dim; ++c) m(r, c) = Rational(entry(rng));
    return m;
  };
  auto zero = [](const VectObj& from, const VectObj& to) { return QMatrix::Zero(to.dim, from.dim).eval(); };
  return build_random<Vect>(base, std::move(objects), sample, zero, options.attempts);
}

Diagram<FinSet> random_finset_diagram(const FinitePoset& base, Rng& rng, const RandomDiagramOptions& options) {
  // Cardinalities are drawn in a linear extension; anything above a non-empty
  // set must be non-empty for a map to exist.
  std::vector<FinSetObj> objects(base.size());
  for (Element q : base.linear_extension()) {
    bool needs_point = false;
    for (Element r : base.lower_covers(q)) needs_point = needs_point || objects[r].cardinality > 0;
    const std::size_t lo = needs_point ? std::min<std::size_t>(1, options.max_value) : 0;
    objects[q] = {uniform(rng, lo, std::max(lo, options.max_value))};
  }
  auto sample = [&](const FinSetObj& from, const FinSetObj& to) {
    FinSetMap m{{}, to.cardinality};
    for (std::size_t x = 0; x < from.cardinality; ++x) m.table.push_back(uniform(rng, 0, to.cardinality - 1));
    return m;
  };
  auto constant = [](const FinSetObj& from, const FinSetObj& to) {
    return FinSetMap{std::vector<std::size_t>(from.cardinality, 0), to.cardinality};
  };
  return build_random<FinSet>(base, std::move(objects), sample, constant, options.attempts);
}

PosetMap random_poset_map(const FinitePoset& source, const FinitePoset& target, Rng& rng, std::size_t attempts) {
  for (std::size_t attempt = 0; attempt < attempts && !target.empty(); ++attempt) {
    std::vector<Element> assignment(source.size());
    bool stuck = false;
    for (Element p : source.linear_extension()) {
      ElementSet allowed = target.empty_set();
      allowed.set();
      for (Element r : source.lower_covers(p)) allowed &= target.up_set(assignment[r]);
      if (allowed.none()) {
        stuck = true;
        break;
      }
      std::size_t pick = uniform(rng, 0, allowed.count() - 1);
      Element t = allowed.find_first();
      while (pick--) t = allowed.find_next(t);
      assignment[p] = t;
    }
    if (!stuck) return PosetMap(source, target, std::move(assignment));
  }
  return PosetMap::constant(source, target, 0);
}

}  // namespace alex
