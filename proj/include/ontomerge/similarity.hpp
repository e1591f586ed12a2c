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

// Concept similarity.
//
// SyntacticSimilarity compares terms: two atoms score 1 when their
// normalized terms are equal and 0 otherwise; two composites with the same
// number of children n score the best average over one-to-one child
// pairings, (1/n) * max_assignment sum_i sim(child1_i, child2_assign(i)).
// Any other combination scores 0.
//
// SemanticSimilarity consults the support ontology first. When both terms
// occur there, a synonymy relation between them forces 1 and a homonymy
// relation forces 0. When both occur but nothing relates them, the
// enrichment hook gets one chance to derive a relation before the measure
// falls back to the syntactic score.

#ifndef ONTOMERGE_SIMILARITY_HPP_
#define ONTOMERGE_SIMILARITY_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ontomerge/assignment.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/rational.hpp"
#include "ontomerge/term.hpp"

namespace ontomerge {

// An ontology with term-keyed indexes over its concepts and semantic
// (non part_of) relations. Mutations keep the indexes in sync.
class IndexedOntology {
 public:
  explicit IndexedOntology(Ontology o) : ontology_(std::move(o)) {
    for (const auto& [cid, c] : ontology_.concepts) IndexConcept(c);
    for (const auto& r : ontology_.relations) IndexRelation(r);
  }

  const Ontology& ontology() const { return ontology_; }
  const std::string& id() const { return ontology_.id; }

  bool HasTerm(const NormalizedTerm& t) const { return by_term_.count(t) > 0; }

  // Sorted by id; empty when the term is absent.
  std::span<const ConceptId> ConceptsWithTerm(const NormalizedTerm& t) const {
    auto it = by_term_.find(t);
    if (it == by_term_.end()) return {};
    return it->second;
  }

  const NormalizedTerm& TermOf(const ConceptId& cid) const { return term_of_.at(cid); }

  // Semantic relations whose endpoints carry the terms {t1, t2}, in
  // relation order.
  std::span<const Relation> Lookup(const NormalizedTerm& t1,
                                   const NormalizedTerm& t2) const {
    auto it = by_pair_.find(PairKey(t1, t2));
    if (it == by_pair_.end()) return {};
    return it->second;
  }

  // Semantic relations with at least one endpoint termed `t`.
  std::span<const Relation> RelationsTouching(const NormalizedTerm& t) const {
    auto it = touching_.find(t);
    if (it == touching_.end()) return {};
    return it->second;
  }

  void AddConcept(Concept c) {
    const ConceptId cid = c.id;
    ::ontomerge::AddConcept(ontology_, std::move(c));
    IndexConcept(ontology_.concepts.at(cid));
  }

  // Returns false when an equal-kind relation already joins the pair.
  bool AddRelation(Relation r) {
    r = MakeRelation(std::move(r.a), std::move(r.b), r.kind, r.provenance);
    Relation copy = r;
    if (!::ontomerge::AddRelation(ontology_, std::move(r))) return false;
    IndexRelation(copy);
    return true;
  }

  Ontology Release() && { return std::move(ontology_); }

 private:
  static std::pair<NormalizedTerm, NormalizedTerm> PairKey(const NormalizedTerm& a,
                                                           const NormalizedTerm& b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }

  static void InsertSorted(std::vector<Relation>& v, const Relation& r) {
    auto pos = std::lower_bound(v.begin(), v.end(), r);
    v.insert(pos, r);
  }

  void IndexConcept(const Concept& c) {
    NormalizedTerm t = NormalizeTerm(c.term);
    term_of_.insert_or_assign(c.id, t);
    auto& ids = by_term_[t];
    ids.insert(std::lower_bound(ids.begin(), ids.end(), c.id), c.id);
  }

  void IndexRelation(const Relation& r) {
    if (r.kind == RelationKind::kPartOf) return;
    const NormalizedTerm& ta = term_of_.at(r.a);
    const NormalizedTerm& tb = term_of_.at(r.b);
    InsertSorted(by_pair_[PairKey(ta, tb)], r);
    InsertSorted(touching_[ta], r);
    if (tb != ta) InsertSorted(touching_[tb], r);
  }

  Ontology ontology_;
  std::map<ConceptId, NormalizedTerm> term_of_;
  std::map<NormalizedTerm, std::vector<ConceptId>> by_term_;
  std::map<std::pair<NormalizedTerm, NormalizedTerm>, std::vector<Relation>> by_pair_;
  std::map<NormalizedTerm, std::vector<Relation>> touching_;
};

// Non-owning handle on a concept together with the ontology it lives in.
struct ConceptRef {
  const Ontology* ontology = nullptr;
  const Concept* node = nullptr;
  NormalizedTerm term = NormalizedTerm::FromNormalized("");

  const ConceptId& id() const { return node->id; }
};

inline ConceptRef MakeConceptRef(const Ontology& o, const ConceptId& cid) {
  const Concept* c = o.Find(cid);
  if (!c) throw std::out_of_range("unknown concept " + cid + " in " + o.id);
  return ConceptRef{&o, c, NormalizeTerm(c->term)};
}

namespace internal {

inline std::vector<ConceptRef> ChildRefs(const ConceptRef& c) {
  std::vector<ConceptRef> out;
  for (const auto& child : c.node->children) {
    out.push_back(MakeConceptRef(*c.ontology, child));
  }
  // Deterministic, input-order independent pairing.
  std::sort(out.begin(), out.end(), [](const ConceptRef& x, const ConceptRef& y) {
    return std::tie(x.term, x.id()) < std::tie(y.term, y.id());
  });
  return out;
}

}  // namespace internal

inline SimilarityScore SyntacticSimilarity(const ConceptRef& c1, const ConceptRef& c2) {
  const bool composite1 = c1.node->IsComposite();
  const bool composite2 = c2.node->IsComposite();
  if (!composite1 && !composite2) return c1.term == c2.term ? 1 : 0;
  if (composite1 != composite2) return 0;
  const std::size_t n = c1.node->children.size();
  if (c2.node->children.size() != n) return 0;

  auto left = internal::ChildRefs(c1);
  auto right = internal::ChildRefs(c2);
  SquareMatrix<Rational> weight(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) weight[i][j] = SyntacticSimilarity(left[i], right[j]);
  }
  return MaxWeightAssignment(weight) / Rational(static_cast<std::int64_t>(n));
}

// Semantic relations in `od` whose endpoint terms are {t1, t2}. Scans the
// whole ontology; IndexedOntology::Lookup answers the same question from an
// index.
inline std::vector<Relation> LookupRelations(const Ontology& od, const NormalizedTerm& t1,
                                             const NormalizedTerm& t2) {
  std::map<ConceptId, NormalizedTerm> terms;
  for (const auto& [cid, c] : od.concepts) terms.emplace(cid, NormalizeTerm(c.term));
  std::vector<Relation> out;
  for (const auto& r : od.relations) {
    if (r.kind == RelationKind::kPartOf) continue;
    const auto& ta = terms.at(r.a);
    const auto& tb = terms.at(r.b);
    if ((ta == t1 && tb == t2) || (ta == t2 && tb == t1)) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct EnrichOutcome {
  std::optional<EnrichmentRecord> record;
  std::vector<std::string> warnings;
};

// Receives the pair in canonical order. Expected to commit any derived
// relation into the support ontology that SemanticSimilarity reads.
using EnrichHook = std::function<EnrichOutcome(const ConceptRef&, const ConceptRef&)>;

struct SemanticResult {
  SimilarityScore score;
  Evidence evidence;
  std::optional<EnrichmentRecord> enrichment;
  std::vector<std::string> warnings;
};

// `od` is re-read after the hook returns, so a hook that writes to the same
// IndexedOntology is observed by the single re-evaluation.
inline SemanticResult SemanticSimilarity(const ConceptRef& c1, const ConceptRef& c2,
                                         const IndexedOntology& od,
                                         const EnrichHook& enrich = {}) {
  const bool swap = std::tie(c2.term, c2.node->id, c2.ontology->id) <
                    std::tie(c1.term, c1.node->id, c1.ontology->id);
  const ConceptRef& first = swap ? c2 : c1;
  const ConceptRef& second = swap ? c1 : c2;

  SemanticResult result;
  auto syntactic = [&](std::vector<Relation> used = {}) {
    result.score = SyntacticSimilarity(first, second);
    result.evidence = Evidence{EvidenceKind::kSyntactic, std::move(used)};
    return result;
  };

  if (!od.HasTerm(first.term) || !od.HasTerm(second.term)) return syntactic();

  auto found = od.Lookup(first.term, second.term);
  std::vector<Relation> relations(found.begin(), found.end());
  bool enriched = false;
  if (relations.empty()) {
    if (enrich) {
      EnrichOutcome outcome = enrich(first, second);
      result.warnings = std::move(outcome.warnings);
      if (outcome.record) {
        result.enrichment = std::move(outcome.record);
        auto after = od.Lookup(first.term, second.term);
        relations.assign(after.begin(), after.end());
        enriched = !relations.empty();
      }
    }
    if (!enriched) return syntactic();
  }

  auto has = [&](RelationKind k) {
    return std::any_of(relations.begin(), relations.end(),
                       [k](const Relation& r) { return r.kind == k; });
  };
  if (has(RelationKind::kSynonymy)) {
    result.score = 1;
    result.evidence = Evidence{enriched ? EvidenceKind::kEnriched : EvidenceKind::kOdSynonymy,
                               std::move(relations)};
    return result;
  }
  if (has(RelationKind::kHomonymy)) {
    result.score = 0;
    result.evidence = Evidence{enriched ? EvidenceKind::kEnriched : EvidenceKind::kOdHomonymy,
                               std::move(relations)};
    return result;
  }
  return syntactic(std::move(relations));
}

}  // namespace ontomerge

#endif  // ONTOMERGE_SIMILARITY_HPP_
