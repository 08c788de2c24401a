#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "alex/cosheaf.hpp"
#include "alex/covers.hpp"
#include "alex/poset.hpp"
#include "alex/valcat.hpp"

namespace alex {

/// Malformed JSON or a field of the wrong type/shape; the message names the
/// line or the JSON pointer of the offending field.
class ParseError : public Error { using Error::Error; };
/// Well-formed input that breaks an invariant (not a down-set, not a cover,
/// not functorial, ...).
class ValidationError : public Error { using Error::Error; };

using AnyDiagram = std::variant<Diagram<Vect>, Diagram<FinSet>>;

/// Named opens; a diagram over them lives on their inclusion order.
struct OpenFamily {
  std::vector<std::string> names;
  std::vector<DownSet> sets;
};

/// The on-disk instance:
///
///   {"poset":   {"elements": [...], "relations": [["a","b"], ...]},
///    "opens":   [{"name": "U", "members": [...]}, ...],        (optional)
///    "diagram": {"category": "vect"|"finset",
///                "objects": {"p": n, ...}, "maps": {"p<q": ..., ...}},
///    "covers":  {"NAME": {"target": [...], "members": [[...], ...]}},
///    "metadata": {"key": "value", ...}}
///
/// Without "opens" the diagram is over the poset itself; with it, the diagram
/// is a precosheaf on those opens. Vect maps are row-major matrices of
/// rational strings ("a/b" or "n"); finset maps are index tables.
struct InstanceFile {
  FinitePoset poset;
  std::optional<OpenFamily> opens;
  std::optional<AnyDiagram> diagram;
  std::map<std::string, Cover> covers;
  std::map<std::string, std::string> metadata;

  /// The diagram as a precosheaf: on the opens when present, otherwise F̂ over
  /// Down(P). Throws ValidationError when there is no diagram.
  template <ValueCategory C>
  Precosheaf<C> precosheaf() const;

  std::string_view category() const;
  const Cover& cover(const std::string& name) const;
};

InstanceFile parse_instance(const nlohmann::json& doc);
nlohmann::json to_json(const InstanceFile& instance);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const InstanceFile& instance);
InstanceFile parse_instance_text(const std::string& text);

InstanceFile load(const std::filesystem::path& path);
void save(const InstanceFile& instance, const std::filesystem::path& path);

/// Structural equality of two diagrams: same base, objects and edge maps.
template <ValueCategory C>
bool same_diagram(const Diagram<C>& a, const Diagram<C>& b) {
  if (!(a.base() == b.base()) || a.objects() != b.objects()) return false;
  for (const auto& [edge, map] : a.edge_maps())
    if (!C::equal(map, b.edge_map(edge.first, edge.second))) return false;
  return true;
}

InstanceFile figure1_instance();

/// Instance holding F̂ as a precosheaf on every down-set, named by label.
template <ValueCategory C>
InstanceFile hat_instance(const InstanceFile& source, const KanExtension<C>& ext, const DownSetLattice& lattice) {
  InstanceFile out{source.poset, OpenFamily{}, AnyDiagram{ext.result}, source.covers, source.metadata};
  for (const DownSet& d : lattice.sets) {
    out.opens->names.push_back(d.label());
    out.opens->sets.push_back(d);
  }
  return out;
}

template <ValueCategory C>
Precosheaf<C> InstanceFile::precosheaf() const {
  if (!diagram) throw ValidationError("instance has no diagram");
  const auto* d = std::get_if<Diagram<C>>(&*diagram);
  if (!d) throw ValidationError("diagram category is not " + std::string(C::name));
  if (opens) return Precosheaf<C>(opens->sets, *d);
  const DownSetLattice lattice = down_set_lattice(poset);
  return Precosheaf<C>::from_hat(hat(*d, lattice), lattice);
}

}  // namespace alex
