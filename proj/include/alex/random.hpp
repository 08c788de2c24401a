#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "alex/poset.hpp"
#include "alex/valcat.hpp"

namespace alex {

using Rng = std::mt19937_64;

/// Deterministic generator for one work item of a seeded run.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

/// Vect dimensions / finset cardinalities are uniform in [0, max_value];
/// matrix entries uniform in [min_entry, max_entry]. The maps into each
/// element (in a linear extension) are resampled up to `attempts` times until
/// they commute with everything below; after that they fall back to zero maps
/// (vect) or a constant map (finset), which always commute.
struct RandomDiagramOptions {
  std::size_t max_value = 2;
  int min_entry = -2;
  int max_entry = 2;
  std::size_t attempts = 64;
};

Diagram<Vect> random_vect_diagram(const FinitePoset& base, Rng& rng, const RandomDiagramOptions& options = {});
Diagram<FinSet> random_finset_diagram(const FinitePoset& base, Rng& rng, const RandomDiagramOptions& options = {});

template <ValueCategory C>
Diagram<C> random_diagram(const FinitePoset& base, Rng& rng, const RandomDiagramOptions& options = {}) {
  if constexpr (std::is_same_v<C, Vect>) return random_vect_diagram(base, rng, options);
  else return random_finset_diagram(base, rng, options);
}

/// An order-preserving map, each element sent uniformly to a target above the
/// images of its lower covers. Falls back to a constant map when that gets
/// stuck `attempts` times.
PosetMap random_poset_map(const FinitePoset& source, const FinitePoset& target, Rng& rng,
                          std::size_t attempts = 64);

}  // namespace alex
