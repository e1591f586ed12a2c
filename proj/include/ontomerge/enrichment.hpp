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

// Support-ontology enrichment. When the support ontology knows both terms of
// a pair but relates neither, three rules are tried in order:
//
//   case 1  a component ontology already relates the two terms directly;
//   case 2  each term has an equivalent in the component ontologies, and the
//           two equivalents are related by synonymy or homonymy (the
//           bridge's kind is propagated);
//   case 3  both concepts are composites of equal arity whose children pair
//           up one-to-one through known synonymy/equivalence or equal terms
//           (yields synonymy only).
//
// The first rule that fires injects exactly one relation.

#ifndef ONTOMERGE_ENRICHMENT_HPP_
#define ONTOMERGE_ENRICHMENT_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ontomerge/assignment.hpp"
#include "ontomerge/errors.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/similarity.hpp"

namespace ontomerge {

// Largest arity for which case 3 searches all child matchings.
inline constexpr std::size_t kMaxExhaustiveArity = 8;

inline constexpr std::array<RelationKind, 3> kInjectableKinds = {
    RelationKind::kSynonymy, RelationKind::kHomonymy, RelationKind::kEquivalence};
inline constexpr std::array<RelationKind, 2> kBridgeKinds = {RelationKind::kSynonymy,
                                                             RelationKind::kHomonymy};
inline constexpr std::array<RelationKind, 1> kHomonymyOnly = {RelationKind::kHomonymy};

struct SourcedRelation {
  Relation relation;
  // Index into the source list.
  std::size_t source = 0;
};

// A derived relation that has not been placed in the support ontology yet.
struct Inference {
  RelationKind kind = RelationKind::kSynonymy;
  Provenance provenance = Provenance::kInferredCase1;
  std::vector<Relation> evidence;
};

namespace internal {

inline bool KindIn(RelationKind k, std::span<const RelationKind> kinds) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

// First relation of an allowed kind between the two terms, looking in `od`
// (when given) and then in each source in order.
inline std::optional<Relation> FirstRelation(const NormalizedTerm& t1,
                                             const NormalizedTerm& t2,
                                             std::span<const IndexedOntology> sources,
                                             const IndexedOntology* od,
                                             std::span<const RelationKind> kinds) {
  if (od) {
    for (const auto& r : od->Lookup(t1, t2)) {
      if (KindIn(r.kind, kinds)) return r;
    }
  }
  for (const auto& s : sources) {
    for (const auto& r : s.Lookup(t1, t2)) {
      if (KindIn(r.kind, kinds)) return r;
    }
  }
  return std::nullopt;
}

// Terms declared equivalent to `t` anywhere in the sources, each with the
// first equivalence relation (source order, then relation order) that
// witnesses it.
inline std::map<NormalizedTerm, Relation> EquivalentTerms(
    const NormalizedTerm& t, std::span<const IndexedOntology> sources) {
  std::map<NormalizedTerm, Relation> out;
  for (const auto& s : sources) {
    for (const auto& r : s.RelationsTouching(t)) {
      if (r.kind != RelationKind::kEquivalence) continue;
      const NormalizedTerm& other = s.TermOf(r.a) == t ? s.TermOf(r.b) : s.TermOf(r.a);
      out.emplace(other, r);
    }
  }
  return out;
}

}  // namespace internal

// Case 1. First relation of an allowed kind joining the two terms inside a
// single source ontology.
inline std::optional<SourcedRelation> FindDirectRelation(
    const NormalizedTerm& t1, const NormalizedTerm& t2,
    std::span<const IndexedOntology> sources,
    std::span<const RelationKind> kinds = kInjectableKinds) {
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (const auto& r : sources[i].Lookup(t1, t2)) {
      if (internal::KindIn(r.kind, kinds)) return SourcedRelation{r, i};
    }
  }
  return std::nullopt;
}

// Case 2. Candidate equivalents are visited in lexicographic order of their
// terms (t1's equivalent first); the bridge may come from `od` or any source.
inline std::optional<Inference> InferViaEquivalents(
    const NormalizedTerm& t1, const NormalizedTerm& t2,
    std::span<const IndexedOntology> sources, const IndexedOntology& od,
    std::span<const RelationKind> bridge_kinds = kBridgeKinds) {
  auto left = internal::EquivalentTerms(t1, sources);
  if (left.empty()) return std::nullopt;
  auto right = internal::EquivalentTerms(t2, sources);
  for (const auto& [e1, eq1] : left) {
    for (const auto& [e2, eq2] : right) {
      auto bridge = internal::FirstRelation(e1, e2, sources, &od, bridge_kinds);
      if (!bridge) continue;
      return Inference{bridge->kind, Provenance::kInferredCase2, {eq1, eq2, *bridge}};
    }
  }
  return std::nullopt;
}

// Case 3. Requires two composites of equal arity; returns nullopt otherwise.
// Child pairs are justified by a synonymy/equivalence relation (support
// ontology first, then sources) or by equal normalized terms, in which case
// the two part_of edges stand as the witness. Throws ArityTooLarge past
// kMaxExhaustiveArity children.
inline std::optional<Inference> InferViaChildren(const ConceptRef& c1, const ConceptRef& c2,
                                                 std::span<const IndexedOntology> sources,
                                                 const IndexedOntology& od) {
  const std::size_t n = c1.node->children.size();
  if (n == 0 || c2.node->children.size() != n) return std::nullopt;
  if (n > kMaxExhaustiveArity) throw ArityTooLarge(n, kMaxExhaustiveArity);

  auto left = internal::ChildRefs(c1);
  auto right = internal::ChildRefs(c2);
  static constexpr std::array<RelationKind, 2> kChildKinds = {RelationKind::kSynonymy,
                                                              RelationKind::kEquivalence};
  std::vector<std::vector<std::optional<std::vector<Relation>>>> witness(
      n, std::vector<std::optional<std::vector<Relation>>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (left[i].term == right[j].term) {
        witness[i][j] = std::vector<Relation>{
            Relation{c1.id(), left[i].id(), RelationKind::kPartOf, Provenance::kDeclared},
            Relation{c2.id(), right[j].id(), RelationKind::kPartOf, Provenance::kDeclared}};
      } else if (auto r = internal::FirstRelation(left[i].term, right[j].term, sources, &od,
                                                  kChildKinds)) {
        witness[i][j] = std::vector<Relation>{*r};
      }
    }
  }
  auto matching = FindPerfectMatching(
      n, [&](std::size_t i, std::size_t j) { return witness[i][j].has_value(); });
  if (!matching) return std::nullopt;
  Inference out{RelationKind::kSynonymy, Provenance::kInferredCase3, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = *witness[i][(*matching)[i]];
    out.evidence.insert(out.evidence.end(), w.begin(), w.end());
  }
  return out;
}

namespace internal {

inline ConceptId FreshConceptId(const IndexedOntology& od, const NormalizedTerm& t,
                                const std::vector<Concept>& pending) {
  auto taken = [&](const ConceptId& cid) {
    if (od.ontology().Find(cid)) return true;
    return std::any_of(pending.begin(), pending.end(),
                       [&](const Concept& c) { return c.id == cid; });
  };
  ConceptId base = od.id() + "#" + t.value();
  if (!taken(base)) return base;
  for (int k = 2;; ++k) {
    ConceptId candidate = base + "~" + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

// Places `inference` between support-ontology concepts bearing the pair's
// terms, creating endpoint concepts only when needed. Leaves `od` untouched
// on refusal.
inline EnrichOutcome Commit(const ConceptRef& c1, const ConceptRef& c2,
                            Inference inference, IndexedOntology& od) {
  EnrichOutcome outcome;
  const NormalizedTerm& t1 = c1.term;
  const NormalizedTerm& t2 = c2.term;
  for (const auto& r : od.Lookup(t1, t2)) {
    if (r.kind == inference.kind) return outcome;
    const bool clash = (r.kind == RelationKind::kSynonymy &&
                        inference.kind == RelationKind::kHomonymy) ||
                       (r.kind == RelationKind::kHomonymy &&
                        inference.kind == RelationKind::kSynonymy);
    if (clash) {
      outcome.warnings.push_back("refused " + std::string(ToString(inference.kind)) + "(" +
                                 t1.value() + ", " + t2.value() + "): support ontology has " +
                                 std::string(ToString(r.kind)) + " between " + r.a + " and " +
                                 r.b);
      return outcome;
    }
  }

  std::vector<Concept> pending;
  auto display_term = [&](const NormalizedTerm& t, const ConceptRef& c) {
    auto ids = od.ConceptsWithTerm(t);
    return ids.empty() ? c.node->term : od.ontology().concepts.at(ids.front()).term;
  };
  auto create = [&](const NormalizedTerm& t, const ConceptRef& c) {
    Concept fresh;
    fresh.id = FreshConceptId(od, t, pending);
    fresh.term = display_term(t, c);
    pending.push_back(fresh);
    return fresh.id;
  };
  auto ambiguous = [&](const NormalizedTerm& t, std::span<const ConceptId> ids,
                       std::size_t used) {
    if (ids.size() > used) {
      outcome.warnings.push_back("ambiguous support term \"" + t.value() + "\": " +
                                 std::to_string(ids.size()) + " concepts, attached to " +
                                 ids.front());
    }
  };

  ConceptId a, b;
  if (t1 != t2) {
    auto ids1 = od.ConceptsWithTerm(t1);
    auto ids2 = od.ConceptsWithTerm(t2);
    a = ids1.empty() ? create(t1, c1) : ids1.front();
    b = ids2.empty() ? create(t2, c2) : ids2.front();
    ambiguous(t1, ids1, 1);
    ambiguous(t2, ids2, 1);
  } else {
    auto ids = od.ConceptsWithTerm(t1);
    a = ids.size() >= 1 ? ids[0] : create(t1, c1);
    b = ids.size() >= 2 ? ids[1] : create(t2, c2);
    ambiguous(t1, ids, 2);
  }

  for (auto& c : pending) od.AddConcept(std::move(c));
  Relation injected = MakeRelation(a, b, inference.kind, inference.provenance);
  od.AddRelation(injected);
  outcome.record =
      EnrichmentRecord{std::move(injected), std::move(inference.evidence), {c1.id(), c2.id()}};
  return outcome;
}

}  // namespace internal

// Tries the three cases in order and commits the first inference into `od`.
// Same-term pairs may only receive homonymy: a synonymy or equivalence between
// identical terms says nothing the syntactic measure does not already say.
inline EnrichOutcome Enrich(const ConceptRef& c1, const ConceptRef& c2, IndexedOntology& od,
                            std::span<const IndexedOntology> sources) {
  const bool same_term = c1.term == c2.term;
  std::span<const RelationKind> direct_kinds =
      same_term ? std::span<const RelationKind>(kHomonymyOnly) : kInjectableKinds;
  std::span<const RelationKind> bridge_kinds =
      same_term ? std::span<const RelationKind>(kHomonymyOnly) : kBridgeKinds;

  std::optional<Inference> inference;
  if (auto direct = FindDirectRelation(c1.term, c2.term, sources, direct_kinds)) {
    inference = Inference{direct->relation.kind, Provenance::kInferredCase1, {direct->relation}};
  } else if (auto via_eq = InferViaEquivalents(c1.term, c2.term, sources, od, bridge_kinds)) {
    inference = std::move(via_eq);
  } else if (!same_term) {
    try {
      inference = InferViaChildren(c1, c2, sources, od);
    } catch (const ArityTooLarge& e) {
      EnrichOutcome outcome;
      outcome.warnings.push_back(std::string(e.what()) + " for (" + c1.id() + ", " + c2.id() +
                                 "); resolve manually");
      return outcome;
    }
  }
  if (!inference) return {};
  return internal::Commit(c1, c2, std::move(*inference), od);
}

}  // namespace ontomerge

#endif  // ONTOMERGE_ENRICHMENT_HPP_
