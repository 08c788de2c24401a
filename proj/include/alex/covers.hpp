#pragma once

#include <cstddef>
#include <vector>

#include "alex/poset.hpp"

namespace alex {

/// True iff the union of `members` is `target`. Throws ParentMismatch when the
/// sets live in different posets.
bool is_cover(const std::vector<DownSet>& members, const DownSet& target);

/// A family of distinct down-sets whose union is `target`.
///
/// Members keep the order they were given in, but equality compares them as
/// sets.
class Cover {
public:
  /// Throws ParentMismatch, or InvalidCover on duplicates or when the union
  /// is not the target.
  Cover(DownSet target, std::vector<DownSet> members);

  const FinitePoset& parent() const { return target_.parent(); }
  const DownSet& target() const { return target_; }
  const std::vector<DownSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// Members sorted canonically.
  std::vector<DownSet> canonical_members() const;

  friend bool operator==(const Cover& a, const Cover& b);

private:
  DownSet target_;
  std::vector<DownSet> members_;
};

bool is_cech_cover(const Cover& cover);
bool is_basic_cover(const Cover& cover);
/// Throws SizeError when the cover has more than `max_members` members.
bool is_complete_cover(const Cover& cover, std::size_t max_members = 12);

/// Every member of `coarse` contains some member of `fine`. Throws
/// ParentMismatch or TargetMismatch.
bool refines(const Cover& fine, const Cover& coarse);

/// The members as a poset under inclusion (element i is member i).
FinitePoset member_poset(const Cover& cover);

/// ι_𝒰: the member poset mapped into Down(P).
PosetMap cover_inclusion(const Cover& cover, const DownSetLattice& lattice);

enum class CoverFamily { all, basic, cech };

/// Every cover of `target` by at most `max_members` distinct down-sets of the
/// lattice, restricted to `family`. Members of each cover are in lattice order
/// and covers are listed by size, then lexicographically by member indices.
/// Throws SizeError when more than `max_candidates` down-sets lie inside the
/// target.
std::vector<Cover> enumerate_covers(const DownSetLattice& lattice, const DownSet& target,
                                    std::size_t max_members, CoverFamily family = CoverFamily::all,
                                    std::size_t max_candidates = 64);

/// Same, with members drawn from an explicit list of candidate down-sets
/// (those not inside the target are skipped). Member order follows the list.
std::vector<Cover> enumerate_covers_from(const std::vector<DownSet>& candidates, const DownSet& target,
                                         std::size_t max_members, CoverFamily family = CoverFamily::all,
                                         std::size_t max_candidates = 64);

inline std::vector<Cover> enumerate_basic_covers(const DownSetLattice& lattice, const DownSet& target,
                                                 std::size_t max_members) {
  return enumerate_covers(lattice, target, max_members, CoverFamily::basic);
}

}  // namespace alex
