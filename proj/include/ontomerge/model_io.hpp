// Copyright 2026 The Ontomerge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON readers and writers for components, ontologies and reports, plus a
// Graphviz export. Writers are canonical: object keys come out sorted, set-like
// lists are sorted, and equal values serialize to identical bytes.

#ifndef ONTOMERGE_MODEL_IO_HPP_
#define ONTOMERGE_MODEL_IO_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/model.hpp"

namespace ontomerge {

inline constexpr int kFormatVersion = 1;

namespace internal {

using nlohmann::json;

inline json ParseJson(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw MalformedFile(source, e.what());
  }
}

inline const json& Member(const json& obj, const std::string& key,
                          const std::string& field) {
  if (!obj.is_object()) throw SchemaViolation(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaViolation(field.empty() ? key : field + "." + key,
                          "missing required field");
  }
  return *it;
}

inline std::string Join(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

inline std::string GetString(const json& obj, const std::string& key,
                             const std::string& field) {
  const json& v = Member(obj, key, field);
  if (!v.is_string()) throw SchemaViolation(Join(field, key), "expected a string");
  return v.get<std::string>();
}

inline const json* OptionalArray(const json& obj, const std::string& key,
                                 const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) return nullptr;
  if (!it->is_array()) throw SchemaViolation(Join(field, key), "expected an array");
  return &*it;
}

inline const json& RequiredArray(const json& obj, const std::string& key,
                                 const std::string& field) {
  const json& v = Member(obj, key, field);
  if (!v.is_array()) throw SchemaViolation(Join(field, key), "expected an array");
  return v;
}

inline std::vector<std::string> StringList(const json& obj, const std::string& key,
                                           const std::string& field) {
  std::vector<std::string> out;
  const json* arr = OptionalArray(obj, key, field);
  if (!arr) return out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const json& v = (*arr)[i];
    if (!v.is_string()) {
      throw SchemaViolation(Field(Join(field, key), i), "expected a string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline std::vector<std::string> RequiredStringList(const json& obj,
                                                   const std::string& key,
                                                   const std::string& field) {
  RequiredArray(obj, key, field);
  return StringList(obj, key, field);
}

inline void CheckVersion(const json& root) {
  const json& v = Member(root, "format_version", "");
  if (!v.is_number_integer() || v.get<long long>() != kFormatVersion) {
    throw SchemaViolation("format_version",
                          "unsupported format_version (expected 1)");
  }
}

inline RelationKind GetKind(const json& obj, const std::string& field) {
  std::string text = GetString(obj, "kind", field);
  auto kind = ParseRelationKind(text);
  if (!kind) throw SchemaViolation(field + ".kind", "unknown relation kind \"" + text + "\"");
  return *kind;
}

inline std::vector<Association> GetAssociations(const json& obj,
                                                const std::string& field) {
  std::vector<Association> out;
  const json* arr = OptionalArray(obj, "associations", field);
  if (!arr) return out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    auto f = Field(Join(field, "associations"), i);
    out.push_back({GetString((*arr)[i], "target", f), GetString((*arr)[i], "label", f)});
  }
  return out;
}

inline json AssociationsJson(const std::vector<Association>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back({{"target", a.target}, {"label", a.label}});
  return out;
}

inline Relation GetRelation(const json& obj, const std::string& field) {
  Relation r;
  r.a = GetString(obj, "a", field);
  r.b = GetString(obj, "b", field);
  r.kind = GetKind(obj, field);
  if (obj.contains("provenance")) {
    std::string text = GetString(obj, "provenance", field);
    auto p = ParseProvenance(text);
    if (!p) throw SchemaViolation(field + ".provenance", "unknown provenance \"" + text + "\"");
    r.provenance = *p;
  }
  return MakeRelation(std::move(r.a), std::move(r.b), r.kind, r.provenance);
}

inline json RelationJson(const Relation& r) {
  return {{"a", r.a},
          {"b", r.b},
          {"kind", ToString(r.kind)},
          {"provenance", ToString(r.provenance)}};
}

inline std::string Dump(const json& j) { return j.dump(2) + "\n"; }

template <typename F>
auto WithSource(const std::string& source, F&& parse) {
  try {
    return parse();
  } catch (const SchemaViolation& e) {
    throw SchemaViolation(source + ": " + e.field(),
                          std::string(e.what()).substr(e.field().size() + 2));
  }
}

}  // namespace internal

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Components.

inline BusinessComponent ParseComponentText(std::string_view text,
                                            const std::string& source = "<memory>") {
  using internal::json;
  json root = internal::ParseJson(text, source);
  return internal::WithSource(source, [&] {
    internal::CheckVersion(root);
    BusinessComponent bc;
    bc.id = internal::GetString(root, "id", "");
    bc.name = internal::GetString(root, "name", "");
    const json& entities = internal::RequiredArray(root, "entities", "");
    for (std::size_t i = 0; i < entities.size(); ++i) {
      auto field = internal::Field("entities", i);
      const json& e = entities[i];
      Entity entity;
      entity.name = internal::GetString(e, "name", field);
      entity.attributes = internal::StringList(e, "attributes", field);
      entity.associations = internal::GetAssociations(e, field);
      entity.components = internal::StringList(e, "components", field);
      bc.entities.push_back(std::move(entity));
    }
    if (const json* rels = internal::OptionalArray(root, "relations", "")) {
      for (std::size_t i = 0; i < rels->size(); ++i) {
        auto field = internal::Field("relations", i);
        ComponentRelation r;
        r.a = internal::GetString((*rels)[i], "a", field);
        r.b = internal::GetString((*rels)[i], "b", field);
        r.kind = internal::GetKind((*rels)[i], field);
        bc.relations.push_back(std::move(r));
      }
    }
    ValidateComponent(bc);
    return bc;
  });
}

inline BusinessComponent ParseComponent(const std::filesystem::path& path) {
  return ParseComponentText(ReadFile(path), path.string());
}

inline std::string SerializeComponent(const BusinessComponent& bc) {
  using internal::json;
  std::vector<const Entity*> entities;
  for (const auto& e : bc.entities) entities.push_back(&e);
  std::sort(entities.begin(), entities.end(),
            [](const Entity* a, const Entity* b) { return a->name < b->name; });
  json ej = json::array();
  for (const Entity* e : entities) {
    ej.push_back({{"name", e->name},
                  {"attributes", e->attributes},
                  {"associations", internal::AssociationsJson(e->associations)},
                  {"components", e->components}});
  }
  json root = {{"format_version", kFormatVersion},
               {"id", bc.id},
               {"name", bc.name},
               {"entities", ej}};
  if (!bc.relations.empty()) {
    std::vector<ComponentRelation> rels;
    for (auto r : bc.relations) {
      if (IsSymmetric(r.kind) && r.b < r.a) std::swap(r.a, r.b);
      rels.push_back(std::move(r));
    }
    std::sort(rels.begin(), rels.end());
    json rj = json::array();
    for (const auto& r : rels) {
      rj.push_back({{"a", r.a}, {"b", r.b}, {"kind", ToString(r.kind)}});
    }
    root["relations"] = rj;
  }
  return internal::Dump(root);
}

// ---------------------------------------------------------------------------
// Ontologies.

inline Ontology ParseOntologyText(std::string_view text,
                                  const std::string& source = "<memory>") {
  using internal::json;
  json root = internal::ParseJson(text, source);
  return internal::WithSource(source, [&] {
    internal::CheckVersion(root);
    Ontology o;
    o.id = internal::GetString(root, "id", "");
    const json& concepts = internal::RequiredArray(root, "concepts", "");
    for (std::size_t i = 0; i < concepts.size(); ++i) {
      auto field = internal::Field("concepts", i);
      const json& cj = concepts[i];
      Concept c;
      c.id = internal::GetString(cj, "id", field);
      c.term = internal::GetString(cj, "term", field);
      c.children = internal::StringList(cj, "children", field);
      c.attributes = internal::StringList(cj, "attributes", field);
      c.associations = internal::GetAssociations(cj, field);
      c.aliases = internal::StringList(cj, "aliases", field);
      ConceptId cid = c.id;
      if (!o.concepts.emplace(cid, std::move(c)).second) {
        throw SchemaViolation(field + ".id", "duplicate concept id \"" + cid + "\"");
      }
    }
    if (const json* rels = internal::OptionalArray(root, "relations", "")) {
      for (std::size_t i = 0; i < rels->size(); ++i) {
        auto field = internal::Field("relations", i);
        Relation r = internal::GetRelation((*rels)[i], field);
        if (r.a == r.b) throw SchemaViolation(field, "relation joins a concept to itself");
        if (!AddRelation(o, r)) throw SchemaViolation(field, "duplicate relation");
      }
    }
    ValidateOntology(o);
    return o;
  });
}

inline Ontology ParseOntology(const std::filesystem::path& path) {
  return ParseOntologyText(ReadFile(path), path.string());
}

inline std::string SerializeOntology(const Ontology& o) {
  using internal::json;
  json cj = json::array();
  for (const auto& [cid, c] : o.concepts) {
    json item = {{"id", c.id}, {"term", c.term}, {"children", c.children}};
    if (!c.attributes.empty()) item["attributes"] = c.attributes;
    if (!c.associations.empty()) item["associations"] = internal::AssociationsJson(c.associations);
    if (!c.aliases.empty()) item["aliases"] = c.aliases;
    cj.push_back(std::move(item));
  }
  std::vector<Relation> rels = o.relations;
  std::sort(rels.begin(), rels.end());
  json rj = json::array();
  for (const auto& r : rels) rj.push_back(internal::RelationJson(r));
  return internal::Dump({{"format_version", kFormatVersion},
                         {"id", o.id},
                         {"concepts", cj},
                         {"relations", rj}});
}

// ---------------------------------------------------------------------------
// Reports.

// Sorts every list of the report by its primary key and dedups warnings.
inline Report CanonicalReport(Report r) {
  std::sort(r.correspondences.begin(), r.correspondences.end(),
            [](const Correspondence& x, const Correspondence& y) {
              return std::tie(x.c1, x.c2) < std::tie(y.c1, y.c2);
            });
  for (auto& c : r.correspondences) {
    std::sort(c.evidence.relations_used.begin(), c.evidence.relations_used.end());
  }
  std::sort(r.enrichments.begin(), r.enrichments.end(),
            [](const EnrichmentRecord& x, const EnrichmentRecord& y) {
              return std::tie(x.pair, x.injected) < std::tie(y.pair, y.injected);
            });
  for (auto& c : r.clusters) std::sort(c.members.begin(), c.members.end());
  std::sort(r.clusters.begin(), r.clusters.end(),
            [](const ClusterSummary& x, const ClusterSummary& y) {
              return std::tie(x.canonical, x.members) < std::tie(y.canonical, y.members);
            });
  std::sort(r.warnings.begin(), r.warnings.end());
  r.warnings.erase(std::unique(r.warnings.begin(), r.warnings.end()), r.warnings.end());
  return r;
}

inline std::string SerializeReport(const Report& report) {
  using internal::json;
  Report r = CanonicalReport(report);
  json corr = json::array();
  for (const auto& c : r.correspondences) {
    json used = json::array();
    for (const auto& rel : c.evidence.relations_used) used.push_back(internal::RelationJson(rel));
    corr.push_back({{"c1", c.c1},
                    {"c2", c.c2},
                    {"score", c.score.ToString()},
                    {"verdict", ToString(c.verdict)},
                    {"evidence", {{"kind", ToString(c.evidence.kind)}, {"relations", used}}}});
  }
  json enr = json::array();
  for (const auto& e : r.enrichments) {
    json evidence = json::array();
    for (const auto& rel : e.evidence) evidence.push_back(internal::RelationJson(rel));
    enr.push_back({{"pair", {e.pair.first, e.pair.second}},
                   {"injected", internal::RelationJson(e.injected)},
                   {"evidence", evidence}});
  }
  json clusters = json::array();
  for (const auto& c : r.clusters) {
    clusters.push_back({{"canonical", c.canonical}, {"members", c.members}});
  }
  return internal::Dump({{"format_version", kFormatVersion},
                         {"correspondences", corr},
                         {"enrichments", enr},
                         {"clusters", clusters},
                         {"warnings", r.warnings}});
}

inline Report ParseReportText(std::string_view text,
                              const std::string& source = "<memory>") {
  using internal::json;
  json root = internal::ParseJson(text, source);
  return internal::WithSource(source, [&] {
    internal::CheckVersion(root);
    Report r;
    const json& corr = internal::RequiredArray(root, "correspondences", "");
    for (std::size_t i = 0; i < corr.size(); ++i) {
      auto field = internal::Field("correspondences", i);
      const json& cj = corr[i];
      Correspondence c;
      c.c1 = internal::GetString(cj, "c1", field);
      c.c2 = internal::GetString(cj, "c2", field);
      try {
        c.score = Rational::Parse(internal::GetString(cj, "score", field));
      } catch (const std::exception&) {
        throw SchemaViolation(field + ".score", "expected a fraction such as \"1/2\"");
      }
      if (c.score < Rational(0) || c.score > Rational(1)) {
        throw SchemaViolation(field + ".score", "score outside [0, 1]");
      }
      std::string verdict = internal::GetString(cj, "verdict", field);
      auto v = ParseVerdict(verdict);
      if (!v) throw SchemaViolation(field + ".verdict", "unknown verdict \"" + verdict + "\"");
      c.verdict = *v;
      const json& ev = internal::Member(cj, "evidence", field);
      std::string kind = internal::GetString(ev, "kind", field + ".evidence");
      auto k = ParseEvidenceKind(kind);
      if (!k) throw SchemaViolation(field + ".evidence.kind", "unknown evidence kind");
      c.evidence.kind = *k;
      if (const json* used = internal::OptionalArray(ev, "relations", field + ".evidence")) {
        for (std::size_t j = 0; j < used->size(); ++j) {
          c.evidence.relations_used.push_back(internal::GetRelation(
              (*used)[j], internal::Field(field + ".evidence.relations", j)));
        }
      }
      r.correspondences.push_back(std::move(c));
    }
    const json& enr = internal::RequiredArray(root, "enrichments", "");
    for (std::size_t i = 0; i < enr.size(); ++i) {
      auto field = internal::Field("enrichments", i);
      const json& ej = enr[i];
      EnrichmentRecord e;
      const json& pair = internal::Member(ej, "pair", field);
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string()) {
        throw SchemaViolation(field + ".pair", "expected two concept ids");
      }
      e.pair = {pair[0].get<std::string>(), pair[1].get<std::string>()};
      e.injected = internal::GetRelation(internal::Member(ej, "injected", field),
                                         field + ".injected");
      const json& evidence = internal::RequiredArray(ej, "evidence", field);
      for (std::size_t j = 0; j < evidence.size(); ++j) {
        e.evidence.push_back(
            internal::GetRelation(evidence[j], internal::Field(field + ".evidence", j)));
      }
      r.enrichments.push_back(std::move(e));
    }
    const json& clusters = internal::RequiredArray(root, "clusters", "");
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      auto field = internal::Field("clusters", i);
      ClusterSummary c;
      c.canonical = internal::GetString(clusters[i], "canonical", field);
      c.members = internal::RequiredStringList(clusters[i], "members", field);
      r.clusters.push_back(std::move(c));
    }
    r.warnings = internal::RequiredStringList(root, "warnings", "");
    std::set<ConceptId> seen;
    for (std::size_t i = 0; i < r.clusters.size(); ++i) {
      for (const auto& m : r.clusters[i].members) {
        if (!seen.insert(m).second) {
          throw SchemaViolation(internal::Field("clusters", i, "members"),
                                "concept \"" + m + "\" appears in two clusters");
        }
      }
    }
    return r;
  });
}

inline Report ParseReport(const std::filesystem::path& path) {
  return ParseReportText(ReadFile(path), path.string());
}

// ---------------------------------------------------------------------------
// Graphviz.

namespace internal {

inline std::string DotQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace internal

// Concepts become nodes labeled by term; relations become edges labeled by
// kind. Symmetric kinds are drawn undirected.
inline std::string ExportDot(const Ontology& o) {
  std::ostringstream out;
  out << "digraph " << internal::DotQuote(o.id) << " {\n";
  for (const auto& [cid, c] : o.concepts) {
    out << "  " << internal::DotQuote(cid) << " [label=" << internal::DotQuote(c.term)
        << "];\n";
  }
  std::vector<Relation> rels = o.relations;
  std::sort(rels.begin(), rels.end());
  for (const auto& r : rels) {
    out << "  " << internal::DotQuote(r.a) << " -> " << internal::DotQuote(r.b)
        << " [label=" << internal::DotQuote(ToString(r.kind));
    if (IsSymmetric(r.kind)) out << ", dir=none";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Output.

// Writes every file or none: all contents go to temporaries next to their
// targets first, and the temporaries are renamed only once all writes
// succeeded. Throws IoError.
inline void WriteFilesAtomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  static std::atomic<unsigned> counter{0};
  std::vector<std::filesystem::path> temps;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
  };
  for (const auto& [path, content] : files) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      cleanup();
      throw IoError("cannot write " + path.string());
    }
    temps.push_back(tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      cleanup();
      throw IoError("failed writing " + path.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    std::filesystem::rename(temps[i], files[i].first, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot rename into " + files[i].first.string() + ": " + ec.message());
    }
  }
}

}  // namespace ontomerge

#endif  // ONTOMERGE_MODEL_IO_HPP_
