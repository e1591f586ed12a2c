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

#ifndef ONTOMERGE_TRANSFORM_HPP_
#define ONTOMERGE_TRANSFORM_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ontomerge/errors.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/term.hpp"

namespace ontomerge {

// Attribute prefix under which concept aliases are written back to entities.
inline constexpr std::string_view kAliasAttributePrefix = "alias: ";

// "<component id>#<normalized entity name>".
inline ConceptId EntityConceptId(const std::string& component_id,
                                 const std::string& entity_name) {
  return component_id + "#" + NormalizeTerm(entity_name).value();
}

// One concept per entity. Compositions become children (and part_of
// relations); attributes and associations ride along as concept metadata;
// declared component relations become declared ontology relations.
inline Ontology ComponentToOntology(const BusinessComponent& bc) {
  Ontology o;
  o.id = bc.id;
  std::map<std::string, ConceptId> ids;
  for (const auto& e : bc.entities) ids[e.name] = EntityConceptId(bc.id, e.name);

  for (const auto& e : bc.entities) {
    Concept c;
    c.id = ids.at(e.name);
    c.term = e.name;
    c.attributes = e.attributes;
    for (const auto& a : e.associations) {
      c.associations.push_back({ids.at(a.target), a.label});
    }
    for (const auto& child : e.components) c.children.push_back(ids.at(child));
    AddConcept(o, std::move(c));
  }
  for (const auto& r : bc.relations) {
    AddRelation(o, MakeRelation(ids.at(r.a), ids.at(r.b), r.kind));
  }
  return o;
}

// Inverse of ComponentToOntology on its image. Entities come out sorted by
// term; aliases are appended to the attributes as "alias: <term>".
// Throws CyclicComposition when part_of edges form a cycle.
inline BusinessComponent OntologyToComponent(const Ontology& o, const std::string& name) {
  std::map<std::string, std::vector<std::string>> part_of;
  for (const auto& [cid, c] : o.concepts) part_of[cid];
  for (const auto& r : o.relations) {
    if (r.kind == RelationKind::kPartOf) part_of[r.a].push_back(r.b);
  }
  for (const auto& [cid, c] : o.concepts) {
    for (const auto& child : c.children) {
      auto& edges = part_of[cid];
      if (std::find(edges.begin(), edges.end(), child) == edges.end()) {
        edges.push_back(child);
      }
    }
  }
  if (auto cycle = internal::FindCycle(part_of)) throw CyclicComposition(*cycle);

  auto term_of = [&](const ConceptId& cid) -> const std::string& {
    const Concept* c = o.Find(cid);
    if (!c) throw SchemaViolation("concepts", "unknown concept id \"" + cid + "\"");
    return c->term;
  };

  BusinessComponent bc;
  bc.id = o.id;
  bc.name = name;
  for (const auto& [cid, c] : o.concepts) {
    Entity e;
    e.name = c.term;
    e.attributes = c.attributes;
    for (const auto& alias : c.aliases) {
      std::string annotation = std::string(kAliasAttributePrefix) + alias;
      if (std::find(e.attributes.begin(), e.attributes.end(), annotation) ==
          e.attributes.end()) {
        e.attributes.push_back(std::move(annotation));
      }
    }
    for (const auto& a : c.associations) e.associations.push_back({term_of(a.target), a.label});
    for (const auto& child : c.children) e.components.push_back(term_of(child));
    bc.entities.push_back(std::move(e));
  }
  std::sort(bc.entities.begin(), bc.entities.end(),
            [](const Entity& a, const Entity& b) { return a.name < b.name; });
  for (const auto& r : o.relations) {
    if (r.kind == RelationKind::kPartOf) continue;
    bc.relations.push_back({term_of(r.a), term_of(r.b), r.kind});
  }
  ValidateComponent(bc);
  return bc;
}

}  // namespace ontomerge

#endif  // ONTOMERGE_TRANSFORM_HPP_
