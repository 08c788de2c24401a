#include "alex/instance.hpp"

#include <fstream>
#include <sstream>

namespace alex {

using nlohmann::json;

namespace {

std::string pointer_join(const std::string& base, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return base + "/" + escaped;
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(pointer_join(where, key) + ": missing field");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

Element element_named(const FinitePoset& poset, const json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  if (auto e = poset.find(name)) return *e;
  throw ValidationError(where + ": unknown element '" + name + "'");
}

DownSet down_set_from(const FinitePoset& poset, const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of element names");
  ElementSet members = poset.empty_set();
  for (std::size_t i = 0; i < j.size(); ++i) members.set(element_named(poset, j[i], where + "/" + std::to_string(i)));
  try {
    return DownSet(poset, std::move(members));
  } catch (const NotADownSet& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

json down_set_to(const DownSet& d) {
  json out = json::array();
  for (Element p : d.elements()) out.push_back(d.parent().name(p));
  return out;
}

FinitePoset parse_poset(const json& j) {
  const std::string where = "/poset";
  const json& elements = field(j, "elements", where);
  if (!elements.is_array()) throw ParseError(where + "/elements: expected an array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    names.push_back(as_string(elements[i], where + "/elements/" + std::to_string(i)));
    if (names.back().find('<') != std::string::npos)
      throw ValidationError(where + "/elements/" + std::to_string(i) + ": element names may not contain '<'");
  }
  std::map<std::string, Element> index;
  for (Element i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second) throw ValidationError(where + ": duplicate element '" + names[i] + "'");

  std::vector<Relation> pairs;
  if (j.contains("relations")) {
    const json& rel = j.at("relations");
    if (!rel.is_array()) throw ParseError(where + "/relations: expected an array");
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const std::string at = where + "/relations/" + std::to_string(i);
      if (!rel[i].is_array() || rel[i].size() != 2) throw ParseError(at + ": expected a pair of names");
      auto lookup = [&](const json& n) {
        const std::string s = as_string(n, at);
        auto it = index.find(s);
        if (it == index.end()) throw ValidationError(at + ": unknown element '" + s + "'");
        return it->second;
      };
      pairs.emplace_back(lookup(rel[i][0]), lookup(rel[i][1]));
    }
  }
  try {
    return FinitePoset::from_relations(names.size(), pairs, names);
  } catch (const CycleError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

json poset_to(const FinitePoset& poset) {
  json relations = json::array();
  for (const auto& [p, q] : poset.hasse_edges()) relations.push_back({poset.name(p), poset.name(q)});
  return {{"elements", poset.names()}, {"relations", relations}};
}

template <ValueCategory C>
typename C::Map parse_map(const json& j, const typename C::Object& from, const typename C::Object& to,
                          const std::string& where) {
  if constexpr (std::is_same_v<C, Vect>) {
    if (!j.is_array() || static_cast<Index>(j.size()) != to.dim)
      throw ValidationError(where + ": expected " + std::to_string(to.dim) + " rows");
    QMatrix m(to.dim, from.dim);
    for (Index r = 0; r < to.dim; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != from.dim)
        throw ValidationError(where + "/" + std::to_string(r) + ": expected " + std::to_string(from.dim) + " entries");
      for (Index c = 0; c < from.dim; ++c) {
        const json& entry = row[static_cast<std::size_t>(c)];
        const std::string at = where + "/" + std::to_string(r) + "/" + std::to_string(c);
        try {
          if (entry.is_number_integer()) m(r, c) = Rational(entry.get<long long>());
          else m(r, c) = parse_rational(as_string(entry, at));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(at + ": " + e.what());
        }
      }
    }
    return m;
  } else {
    if (!j.is_array() || j.size() != from.cardinality)
      throw ValidationError(where + ": expected a table of " + std::to_string(from.cardinality) + " entries");
    FinSetMap m{{}, to.cardinality};
    for (std::size_t x = 0; x < j.size(); ++x) {
      const std::size_t y = as_count(j[x], where + "/" + std::to_string(x));
      if (y >= to.cardinality) throw ValidationError(where + "/" + std::to_string(x) + ": value out of range");
      m.table.push_back(y);
    }
    return m;
  }
}

template <ValueCategory C>
json map_to(const typename C::Map& m) {
  if constexpr (std::is_same_v<C, Vect>) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
      rows.push_back(std::move(row));
    }
    return rows;
  } else {
    return m.table;
  }
}

std::string describe(const Functoriality& f, const FinitePoset& base) {
  auto path = [&](const std::vector<Element>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "<" : "") + base.name(p[i]);
    return s;
  };
  return "paths " + path(f.path_a) + " and " + path(f.path_b) + " compose to different maps";
}

template <ValueCategory C>
Diagram<C> parse_diagram(const json& j, const FinitePoset& base) {
  const std::string where = "/diagram";
  const json& objects = field(j, "objects", where);
  if (!objects.is_object()) throw ParseError(where + "/objects: expected an object");
  std::vector<typename C::Object> values(base.size());
  std::vector<bool> seen(base.size(), false);
  for (const auto& [name, value] : objects.items()) {
    const std::string at = pointer_join(where + "/objects", name);
    auto e = base.find(name);
    if (!e) throw ValidationError(at + ": unknown element");
    const std::size_t n = as_count(value, at);
    if constexpr (std::is_same_v<C, Vect>) values[*e] = VectObj{static_cast<Index>(n)};
    else values[*e] = FinSetObj{n};
    seen[*e] = true;
  }
  for (Element p = 0; p < base.size(); ++p)
    if (!seen[p]) throw ValidationError(where + "/objects: no object for '" + base.name(p) + "'");

  typename Diagram<C>::EdgeMaps edges;
  const json& maps = j.contains("maps") ? j.at("maps") : json::object();
  if (!maps.is_object()) throw ParseError(where + "/maps: expected an object");
  for (const auto& [key, value] : maps.items()) {
    const std::string at = pointer_join(where + "/maps", key);
    const auto lt = key.find('<');
    if (lt == std::string::npos) throw ParseError(at + ": map keys have the form \"p<q\"");
    auto p = base.find(key.substr(0, lt));
    auto q = base.find(key.substr(lt + 1));
    if (!p || !q) throw ValidationError(at + ": unknown element");
    const auto& covers = base.lower_covers(*q);
    if (std::find(covers.begin(), covers.end(), *p) == covers.end())
      throw ValidationError(at + ": maps may only be given on Hasse edges");
    edges.emplace(Relation{*p, *q}, parse_map<C>(value, values[*p], values[*q], at));
  }
  try {
    Diagram<C> d(base, std::move(values), std::move(edges));
    if (!d.is_functorial()) throw ValidationError(where + ": not functorial: " + describe(d.functoriality(), base));
    return d;
  } catch (const InvalidDiagram& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

template <ValueCategory C>
json diagram_to(const Diagram<C>& d) {
  const FinitePoset& base = d.base();
  json objects = json::object();
  for (Element p = 0; p < base.size(); ++p) objects[base.name(p)] = C::size(d.object(p));
  json maps = json::object();
  for (const auto& [edge, m] : d.edge_maps()) maps[base.name(edge.first) + "<" + base.name(edge.second)] = map_to<C>(m);
  return {{"category", std::string(C::name)}, {"objects", objects}, {"maps", maps}};
}

}  // namespace

std::string_view InstanceFile::category() const {
  if (!diagram) return "";
  return std::holds_alternative<Diagram<Vect>>(*diagram) ? Vect::name : FinSet::name;
}

const Cover& InstanceFile::cover(const std::string& name) const {
  auto it = covers.find(name);
  if (it == covers.end()) throw ValidationError("no cover named '" + name + "'");
  return it->second;
}

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) throw ParseError("/: expected an object");
  InstanceFile out;
  out.poset = parse_poset(field(doc, "poset", ""));

  if (doc.contains("opens")) {
    const json& opens = doc.at("opens");
    if (!opens.is_array()) throw ParseError("/opens: expected an array");
    OpenFamily family;
    for (std::size_t i = 0; i < opens.size(); ++i) {
      const std::string at = "/opens/" + std::to_string(i);
      family.names.push_back(as_string(field(opens[i], "name", at), at + "/name"));
      if (family.names.back().find('<') != std::string::npos)
        throw ValidationError(at + "/name: open names may not contain '<'");
      family.sets.push_back(down_set_from(out.poset, field(opens[i], "members", at), at + "/members"));
    }
    out.opens = std::move(family);
  }

  if (doc.contains("diagram")) {
    const json& d = doc.at("diagram");
    FinitePoset base = out.poset;
    if (out.opens) {
      const auto& sets = out.opens->sets;
      try {
        base = FinitePoset::from_order(out.opens->names, [&](Element a, Element b) { return sets[a].subset_of(sets[b]); });
      } catch (const Error& e) {
        throw ValidationError(std::string("/opens: ") + e.what());
      }
    }
    const std::string category = as_string(field(d, "category", "/diagram"), "/diagram/category");
    if (category == Vect::name) out.diagram = parse_diagram<Vect>(d, base);
    else if (category == FinSet::name) out.diagram = parse_diagram<FinSet>(d, base);
    else throw ValidationError("/diagram/category: expected \"vect\" or \"finset\"");
  }

  if (doc.contains("covers")) {
    const json& covers = doc.at("covers");
    if (!covers.is_object()) throw ParseError("/covers: expected an object");
    for (const auto& [name, c] : covers.items()) {
      const std::string at = pointer_join("/covers", name);
      DownSet target = down_set_from(out.poset, field(c, "target", at), at + "/target");
      const json& members = field(c, "members", at);
      if (!members.is_array()) throw ParseError(at + "/members: expected an array");
      std::vector<DownSet> sets;
      for (std::size_t i = 0; i < members.size(); ++i)
        sets.push_back(down_set_from(out.poset, members[i], at + "/members/" + std::to_string(i)));
      try {
        out.covers.emplace(name, Cover(std::move(target), std::move(sets)));
      } catch (const InvalidCover& e) {
        throw ValidationError(at + ": " + e.what());
      }
    }
  }

  if (doc.contains("metadata")) {
    const json& meta = doc.at("metadata");
    if (!meta.is_object()) throw ParseError("/metadata: expected an object");
    for (const auto& [key, value] : meta.items()) out.metadata[key] = as_string(value, pointer_join("/metadata", key));
  }
  return out;
}

json to_json(const InstanceFile& instance) {
  json doc = {{"poset", poset_to(instance.poset)}};
  if (instance.opens) {
    json opens = json::array();
    for (std::size_t i = 0; i < instance.opens->names.size(); ++i)
      opens.push_back({{"name", instance.opens->names[i]}, {"members", down_set_to(instance.opens->sets[i])}});
    doc["opens"] = std::move(opens);
  }
  if (instance.diagram)
    doc["diagram"] = std::visit([](const auto& d) { return diagram_to(d); }, *instance.diagram);
  if (!instance.covers.empty()) {
    json covers = json::object();
    for (const auto& [name, c] : instance.covers) {
      json members = json::array();
      for (const DownSet& m : c.members()) members.push_back(down_set_to(m));
      covers[name] = {{"target", down_set_to(c.target())}, {"members", members}};
    }
    doc["covers"] = std::move(covers);
  }
  if (!instance.metadata.empty()) doc["metadata"] = instance.metadata;
  return doc;
}

std::string dump(const InstanceFile& instance) { return to_json(instance).dump(2) + "\n"; }

InstanceFile parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  return parse_instance(doc);
}

InstanceFile load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

void save(const InstanceFile& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(instance);
}

InstanceFile figure1_instance() {
  const Figure1 fx = figure1_fixture();
  InstanceFile out;
  out.poset = fx.space;
  out.opens = OpenFamily{fx.precosheaf.diagram().base().names(), fx.precosheaf.opens()};
  out.diagram = fx.precosheaf.diagram();
  out.covers.emplace("U1", fx.fine);
  out.covers.emplace("U2", fx.coarse);
  out.metadata = fx.metadata;
  return out;
}

}  // namespace alex
