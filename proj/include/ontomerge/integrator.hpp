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

// The integration pipeline: components are turned into ontologies, every
// cross-source concept pair is scored against the support ontology
// (enriching it on the way), Synonym/Identical pairs are clustered, and each
// cluster becomes one concept of the merged ontology, which is turned back
// into a business component.
//
// All stages run sequentially in a fixed order: sources by id, then concept
// pairs by (source id, concept id). Enrichment commits therefore happen in a
// reproducible sequence and later pairs observe earlier commits.

#ifndef ONTOMERGE_INTEGRATOR_HPP_
#define ONTOMERGE_INTEGRATOR_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ontomerge/disjoint_sets.hpp"
#include "ontomerge/enrichment.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/model_io.hpp"
#include "ontomerge/rational.hpp"
#include "ontomerge/similarity.hpp"
#include "ontomerge/term.hpp"
#include "ontomerge/transform.hpp"

namespace ontomerge {

inline constexpr std::string_view kDefaultMergedId = "CMr";

struct IntegrateOptions {
  // Minimum syntactic score for an Identical verdict.
  Rational tau = 1;
  std::string merged_id = std::string(kDefaultMergedId);
  // Name of the merged component; the ids of the inputs joined by " + " when
  // empty.
  std::string name;
};

struct AlignResult {
  std::vector<Correspondence> correspondences;
  Ontology enriched_od;
  std::vector<EnrichmentRecord> enrichments;
  std::vector<std::string> warnings;
};

// Verdict for a scored pair. Appends a warning for Identical verdicts and for
// homonymy evidence between different terms, which is reported as Distinct.
inline Verdict ClassifyVerdict(const ConceptRef& c1, const ConceptRef& c2,
                               const SemanticResult& s, const Rational& tau,
                               std::vector<std::string>& warnings) {
  const EvidenceKind kind = s.evidence.kind;
  if (kind == EvidenceKind::kSyntactic) {
    if (s.score >= tau) {
      warnings.push_back("assumed identical: no O_d coverage for (" + c1.id() + ", " +
                         c2.id() + ")");
      return Verdict::kIdentical;
    }
    return Verdict::kDistinct;
  }
  if (s.score == Rational(1)) return Verdict::kSynonym;
  if (c1.term == c2.term) return Verdict::kHomonym;
  warnings.push_back("homonymy between different terms treated as distinct: (" + c1.id() +
                     ", " + c2.id() + ")");
  return Verdict::kDistinct;
}

// Scores every cross-source pair. Sources are processed in id order; each
// source's concepts in id order.
inline AlignResult Align(std::vector<Ontology> sources, Ontology od, const Rational& tau = 1) {
  if (sources.size() < 2) throw std::invalid_argument("alignment needs at least two sources");
  if (!(tau > Rational(0) && tau <= Rational(1))) {
    throw std::invalid_argument("tau must lie in (0, 1], got " + tau.ToString());
  }
  std::stable_sort(sources.begin(), sources.end(),
                   [](const Ontology& a, const Ontology& b) { return a.id < b.id; });
  std::vector<IndexedOntology> indexed;
  indexed.reserve(sources.size());
  for (auto& s : sources) indexed.emplace_back(std::move(s));
  IndexedOntology support(std::move(od));
  const std::span<const IndexedOntology> source_span(indexed);
  EnrichHook hook = [&](const ConceptRef& a, const ConceptRef& b) {
    return Enrich(a, b, support, source_span);
  };

  AlignResult out;
  for (std::size_t i = 0; i < indexed.size(); ++i) {
    for (std::size_t j = i + 1; j < indexed.size(); ++j) {
      const Ontology& left = indexed[i].ontology();
      const Ontology& right = indexed[j].ontology();
      for (const auto& [id1, concept1] : left.concepts) {
        ConceptRef r1 = MakeConceptRef(left, id1);
        for (const auto& [id2, concept2] : right.concepts) {
          ConceptRef r2 = MakeConceptRef(right, id2);
          SemanticResult s = SemanticSimilarity(r1, r2, support, hook);
          for (auto& w : s.warnings) out.warnings.push_back(std::move(w));
          if (s.enrichment) out.enrichments.push_back(std::move(*s.enrichment));
          Verdict v = ClassifyVerdict(r1, r2, s, tau, out.warnings);
          out.correspondences.push_back(
              Correspondence{id1, id2, s.score, v, std::move(s.evidence)});
        }
      }
    }
  }
  out.enriched_od = std::move(support).Release();
  return out;
}

// Clusters of the concept universe; each cluster sorted, clusters ordered by
// their smallest member.
using Partition = std::vector<std::vector<ConceptId>>;

namespace internal {

inline bool Joins(Verdict v) { return v == Verdict::kSynonym || v == Verdict::kIdentical; }

// Shortest path from `from` to `to` over joining edges, first-found order.
inline std::vector<ChainEdge> JoiningChain(const std::vector<Correspondence>& correspondences,
                                           const ConceptId& from, const ConceptId& to) {
  std::map<ConceptId, std::vector<std::pair<ConceptId, Verdict>>> adjacent;
  for (const auto& c : correspondences) {
    if (!Joins(c.verdict)) continue;
    adjacent[c.c1].emplace_back(c.c2, c.verdict);
    adjacent[c.c2].emplace_back(c.c1, c.verdict);
  }
  std::map<ConceptId, std::pair<ConceptId, Verdict>> parent;
  std::set<ConceptId> seen{from};
  std::deque<ConceptId> queue{from};
  while (!queue.empty()) {
    ConceptId cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    for (const auto& [next, verdict] : adjacent[cur]) {
      if (!seen.insert(next).second) continue;
      parent.emplace(next, std::pair{cur, verdict});
      queue.push_back(next);
    }
  }
  std::vector<ChainEdge> chain;
  for (ConceptId cur = to; cur != from && parent.count(cur);) {
    const auto& [prev, verdict] = parent.at(cur);
    chain.push_back(ChainEdge{prev, cur, std::string(ToString(verdict))});
    cur = prev;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace internal

// Union-find over Synonym and Identical edges. Throws HomonymClusterCollision
// when a Homonym pair ends up in one cluster.
inline Partition BuildClusters(const std::vector<Correspondence>& correspondences,
                               std::vector<ConceptId> concepts) {
  std::sort(concepts.begin(), concepts.end());
  concepts.erase(std::unique(concepts.begin(), concepts.end()), concepts.end());
  auto index = [&](const ConceptId& cid) {
    auto it = std::lower_bound(concepts.begin(), concepts.end(), cid);
    if (it == concepts.end() || *it != cid) {
      throw std::invalid_argument("correspondence names unknown concept " + cid);
    }
    return static_cast<std::size_t>(it - concepts.begin());
  };
  DisjointSets sets(concepts.size());
  for (const auto& c : correspondences) {
    if (internal::Joins(c.verdict)) sets.Union(index(c.c1), index(c.c2));
  }
  for (const auto& c : correspondences) {
    if (c.verdict != Verdict::kHomonym) continue;
    if (sets.Connected(index(c.c1), index(c.c2))) {
      throw HomonymClusterCollision(c.c1, c.c2,
                                    internal::JoiningChain(correspondences, c.c1, c.c2));
    }
  }
  std::map<std::size_t, std::vector<ConceptId>> groups;
  for (std::size_t i = 0; i < concepts.size(); ++i) groups[sets.Find(i)].push_back(concepts[i]);
  Partition out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

struct ClusterAssignment {
  // Id of the merged concept that represents the cluster.
  ConceptId cluster;
  std::string canonical;
  std::vector<std::string> aliases;
  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

struct MergeResult {
  Ontology merged;
  std::map<ConceptId, ClusterAssignment> mapping;
  Ontology enriched_od;
  Report report;
};

namespace internal {

struct Naming {
  std::string display;
  std::vector<std::string> aliases;
};

// Canonical term and aliases of one cluster. `suffixed` holds the members
// carrying a Homonym verdict; their terms get the source id appended.
inline Naming NameCluster(const std::vector<ConceptId>& members,
                          const std::map<ConceptId, const Concept*>& concepts,
                          const IndexedOntology& od, const std::set<ConceptId>& suffixed) {
  struct Candidate {
    NormalizedTerm norm;
    // Support-ontology spelling when the term occurs there.
    std::string text;
    std::string own;
    ConceptId member;
  };
  std::vector<Candidate> all;
  for (const auto& m : members) {
    const Concept* c = concepts.at(m);
    NormalizedTerm t = NormalizeTerm(c->term);
    std::string text = c->term;
    if (od.HasTerm(t)) text = od.ontology().concepts.at(od.ConceptsWithTerm(t).front()).term;
    all.push_back({std::move(t), std::move(text), c->term, m});
  }
  auto label = [&](const Candidate& c, const std::string& text) {
    return suffixed.count(c.member) ? text + " (" + SourceOf(c.member) + ")" : text;
  };
  auto by_term = [](const Candidate* x, const Candidate* y) {
    return std::tie(x->norm, x->text, x->member) < std::tie(y->norm, y->text, y->member);
  };
  const Candidate* canonical = nullptr;
  for (const auto& c : all) {
    if (od.HasTerm(c.norm) && (!canonical || by_term(&c, canonical))) canonical = &c;
  }
  if (!canonical) {
    for (const auto& c : all) {
      if (!canonical || by_term(&c, canonical)) canonical = &c;
    }
  }
  Naming out;
  out.display = label(*canonical, canonical->text);
  // One alias per distinct label whose term differs from the canonical one,
  // plus suffixed labels of members sharing the canonical term.
  std::set<std::string> aliases;
  for (const auto& c : all) {
    if (&c == canonical) continue;
    if (c.norm == canonical->norm && !suffixed.count(c.member)) continue;
    std::string l = label(c, c.own);
    if (NormalizeTerm(l) != NormalizeTerm(out.display)) aliases.insert(std::move(l));
  }
  out.aliases.assign(aliases.begin(), aliases.end());
  return out;
}

template <typename T>
void PushUnique(std::vector<T>& v, T item) {
  if (std::find(v.begin(), v.end(), item) == v.end()) v.push_back(std::move(item));
}

}  // namespace internal

// One merged concept per cluster. `correspondences` supplies the Homonym
// verdicts used for display-name disambiguation and the final separation
// check.
inline MergeResult Merge(const Partition& partition, std::span<const Ontology> sources,
                         Ontology od, const std::vector<Correspondence>& correspondences,
                         const std::string& merged_id = std::string(kDefaultMergedId)) {
  std::map<ConceptId, const Concept*> concepts;
  for (const auto& s : sources) {
    for (const auto& [cid, c] : s.concepts) {
      if (!concepts.emplace(cid, &c).second) {
        throw std::invalid_argument("concept id " + cid + " occurs in two sources");
      }
    }
  }
  std::set<ConceptId> homonyms;
  for (const auto& c : correspondences) {
    if (c.verdict != Verdict::kHomonym) continue;
    homonyms.insert(c.c1);
    homonyms.insert(c.c2);
  }
  IndexedOntology support(std::move(od));

  std::vector<internal::Naming> names;
  std::map<ConceptId, std::size_t> cluster_of;
  std::size_t covered = 0;
  for (std::size_t k = 0; k < partition.size(); ++k) {
    if (partition[k].empty()) throw std::invalid_argument("partition has an empty cluster");
    for (const auto& m : partition[k]) {
      if (!concepts.count(m)) throw std::invalid_argument("partition names unknown concept " + m);
      if (!cluster_of.emplace(m, k).second) {
        throw std::invalid_argument("concept " + m + " occurs in two clusters");
      }
    }
    covered += partition[k].size();
    names.push_back(internal::NameCluster(partition[k], concepts, support, homonyms));
  }
  if (covered != concepts.size()) {
    throw std::invalid_argument("partition does not cover every source concept");
  }

  // Display names must stay unique after normalization: colliding clusters
  // take the source of their smallest member, then a counter.
  auto disambiguate = [&](auto&& suffix) {
    std::map<NormalizedTerm, std::vector<std::size_t>> by_name;
    for (std::size_t k = 0; k < names.size(); ++k) {
      by_name[NormalizeTerm(names[k].display)].push_back(k);
    }
    for (auto& [term, ks] : by_name) {
      if (ks.size() < 2) continue;
      for (std::size_t i = 0; i < ks.size(); ++i) suffix(ks[i], i);
    }
  };
  disambiguate([&](std::size_t k, std::size_t) {
    const std::string tag = " (" + SourceOf(partition[k].front()) + ")";
    const std::string& d = names[k].display;
    if (d.size() < tag.size() || d.compare(d.size() - tag.size(), tag.size(), tag) != 0) {
      names[k].display += tag;
    }
  });
  disambiguate([&](std::size_t k, std::size_t i) {
    if (i > 0) names[k].display += " " + std::to_string(i + 1);
  });

  MergeResult out;
  out.merged.id = merged_id;
  std::vector<ConceptId> merged_ids;
  for (const auto& n : names) merged_ids.push_back(merged_id + "#" + NormalizeTerm(n.display).value());

  for (std::size_t k = 0; k < partition.size(); ++k) {
    Concept merged;
    merged.id = merged_ids[k];
    merged.term = names[k].display;
    merged.aliases = names[k].aliases;
    for (const auto& m : partition[k]) {
      const Concept* c = concepts.at(m);
      for (const auto& child : c->children) {
        std::size_t target = cluster_of.at(child);
        if (target != k) internal::PushUnique(merged.children, merged_ids[target]);
      }
      for (const auto& a : c->attributes) internal::PushUnique(merged.attributes, a);
      for (const auto& a : c->associations) {
        internal::PushUnique(merged.associations,
                             Association{merged_ids[cluster_of.at(a.target)], a.label});
      }
      out.mapping.emplace(m, ClusterAssignment{merged_ids[k], names[k].display, names[k].aliases});
    }
    AddConcept(out.merged, std::move(merged));
  }

  std::vector<std::string> warnings;
  for (const auto& s : sources) {
    for (const auto& r : s.relations) {
      if (r.kind == RelationKind::kPartOf) continue;
      const ConceptId& a = merged_ids[cluster_of.at(r.a)];
      const ConceptId& b = merged_ids[cluster_of.at(r.b)];
      if (a == b) continue;
      const RelationKind opposite = r.kind == RelationKind::kSynonymy   ? RelationKind::kHomonymy
                                    : r.kind == RelationKind::kHomonymy ? RelationKind::kSynonymy
                                                                        : r.kind;
      if (opposite != r.kind && HasRelation(out.merged, a, b, opposite)) {
        warnings.push_back("dropped " + std::string(ToString(r.kind)) + " between " + a +
                           " and " + b + ": conflicts with existing " +
                           std::string(ToString(opposite)));
        continue;
      }
      AddRelation(out.merged, MakeRelation(a, b, r.kind, r.provenance));
    }
  }

  // Post-conditions.
  if (out.merged.concepts.size() != partition.size() || out.mapping.size() != concepts.size()) {
    throw InvariantViolation("merged concept count differs from cluster count");
  }
  for (const auto& c : correspondences) {
    if (c.verdict == Verdict::kHomonym && out.mapping.count(c.c1) && out.mapping.count(c.c2) &&
        out.mapping.at(c.c1).cluster == out.mapping.at(c.c2).cluster) {
      throw InvariantViolation("homonyms " + c.c1 + " and " + c.c2 + " share a merged concept");
    }
  }
  ValidateOntology(out.merged);

  for (std::size_t k = 0; k < partition.size(); ++k) {
    out.report.clusters.push_back(ClusterSummary{names[k].display, partition[k]});
  }
  out.report.correspondences = correspondences;
  out.report.warnings = std::move(warnings);
  out.enriched_od = std::move(support).Release();
  return out;
}

struct IntegrationResult {
  BusinessComponent component;
  Ontology merged;
  Ontology enriched_od;
  std::map<ConceptId, ClusterAssignment> mapping;
  Report report;
};

// Components in id order; repeated ids get ".2", ".3", ... so every source
// keeps its own concept namespace.
inline std::vector<BusinessComponent> DistinctComponents(std::vector<BusinessComponent> components) {
  std::stable_sort(components.begin(), components.end(),
                   [](const BusinessComponent& a, const BusinessComponent& b) { return a.id < b.id; });
  std::set<std::string> taken;
  for (const auto& c : components) taken.insert(c.id);
  std::map<std::string, int> seen;
  for (auto& c : components) {
    if (++seen[c.id] == 1) continue;
    for (int k = seen[c.id];; ++k) {
      std::string candidate = c.id + "." + std::to_string(k);
      if (taken.insert(candidate).second) {
        c.id = std::move(candidate);
        break;
      }
    }
  }
  return components;
}

// The full pipeline. The merged component can be fed back as an input.
inline IntegrationResult Integrate(std::vector<BusinessComponent> components, Ontology od,
                                   const IntegrateOptions& options = {}) {
  if (components.size() < 2) throw std::invalid_argument("integration needs at least two components");
  components = DistinctComponents(std::move(components));
  std::vector<Ontology> sources;
  std::vector<ConceptId> universe;
  std::string joined_name;
  for (const auto& bc : components) {
    ValidateComponent(bc);
    sources.push_back(ComponentToOntology(bc));
    for (const auto& [cid, c] : sources.back().concepts) universe.push_back(cid);
    joined_name += (joined_name.empty() ? "" : " + ") + bc.id;
  }

  AlignResult aligned = Align(sources, std::move(od), options.tau);
  Partition partition = BuildClusters(aligned.correspondences, universe);
  MergeResult merged = Merge(partition, sources, std::move(aligned.enriched_od),
                             aligned.correspondences, options.merged_id);

  IntegrationResult out;
  out.component =
      OntologyToComponent(merged.merged, options.name.empty() ? joined_name : options.name);
  out.merged = std::move(merged.merged);
  out.enriched_od = std::move(merged.enriched_od);
  out.mapping = std::move(merged.mapping);
  out.report = std::move(merged.report);
  out.report.enrichments = std::move(aligned.enrichments);
  for (auto& w : aligned.warnings) out.report.warnings.push_back(std::move(w));
  out.report = CanonicalReport(std::move(out.report));
  return out;
}

}  // namespace ontomerge

#endif  // ONTOMERGE_INTEGRATOR_HPP_
