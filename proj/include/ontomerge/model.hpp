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

// Value types shared by every stage of the pipeline: business components,
// ontologies, and the alignment report. All types are plain aggregates;
// the free functions at the bottom maintain and check their invariants.

#ifndef ONTOMERGE_MODEL_HPP_
#define ONTOMERGE_MODEL_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ontomerge/errors.hpp"
#include "ontomerge/rational.hpp"
#include "ontomerge/term.hpp"

namespace ontomerge {

using ConceptId = std::string;

// ---------------------------------------------------------------------------
// Enumerations and their wire names.

enum class RelationKind { kSynonymy, kHomonymy, kEquivalence, kPartOf };
enum class Provenance { kDeclared, kInferredCase1, kInferredCase2, kInferredCase3 };
enum class Verdict { kSynonym, kHomonym, kIdentical, kDistinct };
enum class EvidenceKind { kSyntactic, kOdSynonymy, kOdHomonymy, kEnriched };

namespace internal {

template <typename E, std::size_t N>
std::string_view EnumName(E value, const std::array<std::string_view, N>& names) {
  return names.at(static_cast<std::size_t>(value));
}

template <typename E, std::size_t N>
std::optional<E> EnumParse(std::string_view text,
                           const std::array<std::string_view, N>& names) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  return std::nullopt;
}

inline constexpr std::array<std::string_view, 4> kRelationKindNames = {
    "synonymy", "homonymy", "equivalence", "part_of"};
inline constexpr std::array<std::string_view, 4> kProvenanceNames = {
    "declared", "inferred_case1", "inferred_case2", "inferred_case3"};
inline constexpr std::array<std::string_view, 4> kVerdictNames = {
    "Synonym", "Homonym", "Identical", "Distinct"};
inline constexpr std::array<std::string_view, 4> kEvidenceKindNames = {
    "syntactic", "od_synonymy", "od_homonymy", "enriched"};

}  // namespace internal

inline std::string_view ToString(RelationKind k) {
  return internal::EnumName(k, internal::kRelationKindNames);
}
inline std::string_view ToString(Provenance p) {
  return internal::EnumName(p, internal::kProvenanceNames);
}
inline std::string_view ToString(Verdict v) {
  return internal::EnumName(v, internal::kVerdictNames);
}
inline std::string_view ToString(EvidenceKind k) {
  return internal::EnumName(k, internal::kEvidenceKindNames);
}

inline std::optional<RelationKind> ParseRelationKind(std::string_view s) {
  return internal::EnumParse<RelationKind>(s, internal::kRelationKindNames);
}
inline std::optional<Provenance> ParseProvenance(std::string_view s) {
  return internal::EnumParse<Provenance>(s, internal::kProvenanceNames);
}
inline std::optional<Verdict> ParseVerdict(std::string_view s) {
  return internal::EnumParse<Verdict>(s, internal::kVerdictNames);
}
inline std::optional<EvidenceKind> ParseEvidenceKind(std::string_view s) {
  return internal::EnumParse<EvidenceKind>(s, internal::kEvidenceKindNames);
}

// Synonymy, homonymy and equivalence are symmetric; part_of points from the
// composite (a) to its child (b).
inline bool IsSymmetric(RelationKind k) { return k != RelationKind::kPartOf; }

// ---------------------------------------------------------------------------
// Business components.

struct Association {
  std::string target;
  std::string label;
  friend auto operator<=>(const Association&, const Association&) = default;
};

struct Entity {
  std::string name;
  std::vector<std::string> attributes;
  std::vector<Association> associations;
  // Names of composition children.
  std::vector<std::string> components;
  friend bool operator==(const Entity&, const Entity&) = default;
};

// A semantic relation a component designer declared between two of its own
// entities (by name). Never part_of; compositions live on Entity.
struct ComponentRelation {
  std::string a;
  std::string b;
  RelationKind kind = RelationKind::kSynonymy;
  friend auto operator<=>(const ComponentRelation&,
                          const ComponentRelation&) = default;
};

struct BusinessComponent {
  std::string id;
  std::string name;
  std::vector<Entity> entities;
  std::vector<ComponentRelation> relations;

  const Entity* FindEntity(std::string_view entity_name) const {
    for (const auto& e : entities) {
      if (e.name == entity_name) return &e;
    }
    return nullptr;
  }

  // Structural equality: entities and relations are compared as sets keyed
  // by name; the lists inside an entity keep their order.
  friend bool operator==(const BusinessComponent& x, const BusinessComponent& y) {
    if (x.id != y.id || x.name != y.name) return false;
    auto by_name = [](const BusinessComponent& c) {
      std::vector<Entity> v = c.entities;
      std::sort(v.begin(), v.end(),
                [](const Entity& l, const Entity& r) { return l.name < r.name; });
      return v;
    };
    auto rels = [](const BusinessComponent& c) {
      std::vector<ComponentRelation> v;
      for (auto r : c.relations) {
        if (IsSymmetric(r.kind) && r.b < r.a) std::swap(r.a, r.b);
        v.push_back(std::move(r));
      }
      std::sort(v.begin(), v.end());
      return v;
    };
    return by_name(x) == by_name(y) && rels(x) == rels(y);
  }
};

// ---------------------------------------------------------------------------
// Ontologies.

struct Concept {
  ConceptId id;
  std::string term;
  // Ordered; empty for an atomic concept.
  std::vector<ConceptId> children;
  // Metadata carried through the component round trip. Association targets
  // are concept ids of the same ontology.
  std::vector<std::string> attributes;
  std::vector<Association> associations;
  std::vector<std::string> aliases;

  bool IsComposite() const { return !children.empty(); }
  friend bool operator==(const Concept&, const Concept&) = default;
};

struct Relation {
  ConceptId a;
  ConceptId b;
  RelationKind kind = RelationKind::kSynonymy;
  Provenance provenance = Provenance::kDeclared;

  auto Key() const { return std::tie(a, b, kind); }
  friend bool operator==(const Relation&, const Relation&) = default;
  friend auto operator<=>(const Relation& x, const Relation& y) {
    return std::tie(x.a, x.b, x.kind, x.provenance) <=>
           std::tie(y.a, y.b, y.kind, y.provenance);
  }
};

// Builds a relation with symmetric endpoints in canonical (a < b) order.
inline Relation MakeRelation(ConceptId a, ConceptId b, RelationKind kind,
                             Provenance provenance = Provenance::kDeclared) {
  if (IsSymmetric(kind) && b < a) std::swap(a, b);
  return Relation{std::move(a), std::move(b), kind, provenance};
}

struct Ontology {
  std::string id;
  std::map<ConceptId, Concept> concepts;
  // Sorted by (a, b, kind); at most one relation per unordered pair and kind.
  std::vector<Relation> relations;

  const Concept* Find(const ConceptId& cid) const {
    auto it = concepts.find(cid);
    return it == concepts.end() ? nullptr : &it->second;
  }
  friend bool operator==(const Ontology&, const Ontology&) = default;
};

// True when `relation` (or its mirror) of the same kind is already present.
inline bool HasRelation(const Ontology& o, const ConceptId& a, const ConceptId& b,
                        RelationKind kind) {
  for (const auto& r : o.relations) {
    if (r.kind != kind) continue;
    if ((r.a == a && r.b == b) || (r.a == b && r.b == a)) return true;
  }
  return false;
}

// Inserts in sorted position. Returns false (and leaves `o` unchanged) when a
// relation of the same kind already joins the same unordered pair.
inline bool AddRelation(Ontology& o, Relation r) {
  r = MakeRelation(std::move(r.a), std::move(r.b), r.kind, r.provenance);
  if (HasRelation(o, r.a, r.b, r.kind)) return false;
  auto pos = std::lower_bound(
      o.relations.begin(), o.relations.end(), r,
      [](const Relation& x, const Relation& y) { return x.Key() < y.Key(); });
  o.relations.insert(pos, std::move(r));
  return true;
}

// Inserts a concept and the part_of relations its children imply.
inline void AddConcept(Ontology& o, Concept c) {
  ConceptId cid = c.id;
  std::vector<ConceptId> children = c.children;
  if (!o.concepts.emplace(cid, std::move(c)).second) {
    throw std::invalid_argument("duplicate concept id " + cid);
  }
  for (const auto& child : children) {
    AddRelation(o, Relation{cid, child, RelationKind::kPartOf, Provenance::kDeclared});
  }
}

// ---------------------------------------------------------------------------
// Alignment results.

struct Evidence {
  EvidenceKind kind = EvidenceKind::kSyntactic;
  std::vector<Relation> relations_used;
  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Correspondence {
  ConceptId c1;
  ConceptId c2;
  SimilarityScore score;
  Verdict verdict = Verdict::kDistinct;
  Evidence evidence;
  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

struct EnrichmentRecord {
  // Lives in the support ontology; provenance is one of the inferred cases.
  Relation injected;
  // Relations from the component ontologies (or the support ontology) that
  // justified the injection.
  std::vector<Relation> evidence;
  std::pair<ConceptId, ConceptId> pair;
  friend bool operator==(const EnrichmentRecord&, const EnrichmentRecord&) = default;
};

struct ClusterSummary {
  std::string canonical;
  std::vector<ConceptId> members;
  friend bool operator==(const ClusterSummary&, const ClusterSummary&) = default;
};

struct Report {
  std::vector<Correspondence> correspondences;
  std::vector<EnrichmentRecord> enrichments;
  std::vector<ClusterSummary> clusters;
  std::vector<std::string> warnings;
  friend bool operator==(const Report&, const Report&) = default;
};

// ---------------------------------------------------------------------------
// Invariant checks. Each throws SchemaViolation naming the offending field.

namespace internal {

inline std::string Field(std::string_view base, std::size_t index,
                         std::string_view member = {}) {
  std::string out = std::string(base) + "[" + std::to_string(index) + "]";
  if (!member.empty()) out += "." + std::string(member);
  return out;
}

inline NormalizedTerm CheckedTerm(const std::string& raw, const std::string& field) {
  try {
    return NormalizeTerm(raw);
  } catch (const EmptyTerm&) {
    throw SchemaViolation(field, "term is empty");
  }
}

// Returns one cycle (as a closed walk of node names) when the directed graph
// given by `edges` is cyclic.
inline std::optional<std::vector<std::string>> FindCycle(
    const std::map<std::string, std::vector<std::string>>& edges) {
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark> mark;
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> found;

  auto visit = [&](auto&& self, const std::string& node) -> void {
    mark[node] = Mark::kActive;
    stack.push_back(node);
    auto it = edges.find(node);
    if (it != edges.end()) {
      for (const auto& next : it->second) {
        if (found) return;
        Mark m = mark.count(next) ? mark[next] : Mark::kNone;
        if (m == Mark::kActive) {
          auto start = std::find(stack.begin(), stack.end(), next);
          std::vector<std::string> cycle(start, stack.end());
          cycle.push_back(next);
          found = std::move(cycle);
          return;
        }
        if (m == Mark::kNone) self(self, next);
      }
    }
    stack.pop_back();
    mark[node] = Mark::kDone;
  };
  for (const auto& [node, _] : edges) {
    if (found) break;
    if (!mark.count(node) || mark[node] == Mark::kNone) visit(visit, node);
  }
  return found;
}

}  // namespace internal

inline void ValidateComponent(const BusinessComponent& bc) {
  if (bc.id.empty()) throw SchemaViolation("id", "must be nonempty");
  if (bc.id.find('#') != std::string::npos) {
    throw SchemaViolation("id", "must not contain '#'");
  }
  std::map<NormalizedTerm, std::size_t> seen;
  std::set<std::string> names;
  for (std::size_t i = 0; i < bc.entities.size(); ++i) {
    const Entity& e = bc.entities[i];
    auto field = internal::Field("entities", i, "name");
    auto term = internal::CheckedTerm(e.name, field);
    if (auto [it, fresh] = seen.emplace(term, i); !fresh) {
      throw SchemaViolation(field, "entity name \"" + e.name +
                                       "\" duplicates entities[" +
                                       std::to_string(it->second) + "]");
    }
    names.insert(e.name);
  }
  std::map<std::string, std::vector<std::string>> composition;
  for (std::size_t i = 0; i < bc.entities.size(); ++i) {
    const Entity& e = bc.entities[i];
    for (std::size_t j = 0; j < e.associations.size(); ++j) {
      const auto& target = e.associations[j].target;
      if (!names.count(target)) {
        throw SchemaViolation(
            internal::Field(internal::Field("entities", i, "associations"), j,
                            "target"),
            "association targets undeclared entity \"" + target + "\"");
      }
    }
    std::set<std::string> distinct;
    for (std::size_t j = 0; j < e.components.size(); ++j) {
      const auto& child = e.components[j];
      auto field = internal::Field("entities", i, "components") + "[" +
                   std::to_string(j) + "]";
      if (!names.count(child)) {
        throw SchemaViolation(field, "composition child names undeclared entity \"" +
                                         child + "\"");
      }
      if (child == e.name) {
        throw SchemaViolation(field, "entity \"" + e.name + "\" composes itself");
      }
      if (!distinct.insert(child).second) {
        throw SchemaViolation(field, "duplicate composition child \"" + child + "\"");
      }
    }
    composition[e.name] = e.components;
  }
  if (auto cycle = internal::FindCycle(composition)) {
    std::string walk;
    for (const auto& n : *cycle) walk += (walk.empty() ? "" : " -> ") + n;
    throw SchemaViolation("entities", "composition cycle: " + walk);
  }
  std::set<std::tuple<std::string, std::string, RelationKind>> rel_keys;
  std::set<std::pair<std::string, std::string>> synonym_pairs, homonym_pairs;
  for (std::size_t i = 0; i < bc.relations.size(); ++i) {
    auto r = bc.relations[i];
    auto field = internal::Field("relations", i);
    if (r.kind == RelationKind::kPartOf) {
      throw SchemaViolation(field + ".kind",
                            "part_of is expressed through entity components");
    }
    for (const auto* end : {&r.a, &r.b}) {
      if (!names.count(*end)) {
        throw SchemaViolation(field, "relation endpoint names undeclared entity \"" +
                                         *end + "\"");
      }
    }
    if (r.a == r.b) throw SchemaViolation(field, "relation joins an entity to itself");
    if (r.b < r.a) std::swap(r.a, r.b);
    if (!rel_keys.insert({r.a, r.b, r.kind}).second) {
      throw SchemaViolation(field, "duplicate relation");
    }
    if (r.kind == RelationKind::kSynonymy) synonym_pairs.insert({r.a, r.b});
    if (r.kind == RelationKind::kHomonymy) homonym_pairs.insert({r.a, r.b});
  }
  for (const auto& p : synonym_pairs) {
    if (homonym_pairs.count(p)) {
      throw SchemaViolation("relations", "pair (" + p.first + ", " + p.second +
                                             ") is both synonym and homonym");
    }
  }
}

inline void ValidateOntology(const Ontology& o) {
  if (o.id.empty()) throw SchemaViolation("id", "must be nonempty");
  const std::string prefix = o.id + "#";
  std::map<std::string, std::vector<std::string>> children_graph;
  std::set<std::pair<ConceptId, ConceptId>> implied_part_of;
  std::size_t index = 0;
  for (const auto& [cid, c] : o.concepts) {
    auto field = internal::Field("concepts", index++);
    if (cid != c.id) throw SchemaViolation(field + ".id", "key/id mismatch");
    if (cid.rfind(prefix, 0) != 0 || cid.size() == prefix.size()) {
      throw SchemaViolation(field + ".id", "concept id \"" + cid +
                                               "\" must start with \"" + prefix + "\"");
    }
    internal::CheckedTerm(c.term, field + ".term");
    std::set<ConceptId> distinct;
    for (const auto& child : c.children) {
      if (!o.concepts.count(child)) {
        throw SchemaViolation(field + ".children",
                              "unknown concept id \"" + child + "\"");
      }
      if (child == cid) throw SchemaViolation(field + ".children", "self child");
      if (!distinct.insert(child).second) {
        throw SchemaViolation(field + ".children", "duplicate child \"" + child + "\"");
      }
      implied_part_of.insert({cid, child});
    }
    for (const auto& a : c.associations) {
      if (!o.concepts.count(a.target)) {
        throw SchemaViolation(field + ".associations",
                              "unknown concept id \"" + a.target + "\"");
      }
    }
    children_graph[cid] = c.children;
  }
  if (auto cycle = internal::FindCycle(children_graph)) {
    std::string walk;
    for (const auto& n : *cycle) walk += (walk.empty() ? "" : " -> ") + n;
    throw SchemaViolation("concepts", "children cycle: " + walk);
  }

  std::set<std::tuple<ConceptId, ConceptId, RelationKind>> keys;
  std::set<std::pair<ConceptId, ConceptId>> synonym_pairs, homonym_pairs;
  std::set<std::pair<ConceptId, ConceptId>> declared_part_of;
  for (std::size_t i = 0; i < o.relations.size(); ++i) {
    const Relation& r = o.relations[i];
    auto field = internal::Field("relations", i);
    if (!o.concepts.count(r.a)) {
      throw SchemaViolation(field + ".a", "unknown concept id \"" + r.a + "\"");
    }
    if (!o.concepts.count(r.b)) {
      throw SchemaViolation(field + ".b", "unknown concept id \"" + r.b + "\"");
    }
    if (r.a == r.b) throw SchemaViolation(field, "relation joins a concept to itself");
    ConceptId lo = std::min(r.a, r.b), hi = std::max(r.a, r.b);
    if (!keys.insert({lo, hi, r.kind}).second) {
      throw SchemaViolation(field, "duplicate relation");
    }
    switch (r.kind) {
      case RelationKind::kPartOf:
        declared_part_of.insert({r.a, r.b});
        break;
      case RelationKind::kSynonymy:
        synonym_pairs.insert({lo, hi});
        break;
      case RelationKind::kHomonymy:
        homonym_pairs.insert({lo, hi});
        break;
      case RelationKind::kEquivalence:
        break;
    }
  }
  for (const auto& p : synonym_pairs) {
    if (homonym_pairs.count(p)) {
      throw SchemaViolation("relations", "pair (" + p.first + ", " + p.second +
                                             ") carries both synonymy and homonymy");
    }
  }
  if (declared_part_of != implied_part_of) {
    for (const auto& p : declared_part_of) {
      if (!implied_part_of.count(p)) {
        throw SchemaViolation("relations", "part_of(" + p.first + ", " + p.second +
                                               ") has no matching child link");
      }
    }
    for (const auto& p : implied_part_of) {
      if (!declared_part_of.count(p)) {
        throw SchemaViolation("relations", "child link " + p.first + " -> " +
                                               p.second + " lacks a part_of relation");
      }
    }
  }
}

// Id of the ontology a concept belongs to (the text before '#').
inline std::string SourceOf(const ConceptId& cid) {
  return cid.substr(0, cid.find('#'));
}

}  // namespace ontomerge

#endif  // ONTOMERGE_MODEL_HPP_
