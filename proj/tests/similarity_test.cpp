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

#include "ontomerge/similarity.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace ontomerge {
namespace {

using testing::OntologyBuilder;

struct Pair {
  Ontology left, right;
};

Pair Composites() {
  OntologyBuilder l("L"), r("R");
  auto la = l.Add("a");
  auto lb = l.Add("b");
  l.Add("x", {la, lb});
  auto ra = r.Add("A");
  auto rc = r.Add("c");
  auto rb = r.Add("b");
  r.Add("y", {rc, ra});
  r.Add("z", {ra, rb});
  r.Add("w", {ra});
  return {l.Build(), r.Build()};
}

TEST(SyntacticSimilarityTest, Atoms) {
  Pair p = Composites();
  EXPECT_EQ(SyntacticSimilarity(MakeConceptRef(p.left, "L#a"), MakeConceptRef(p.right, "R#a")),
            Rational(1));
  EXPECT_EQ(SyntacticSimilarity(MakeConceptRef(p.left, "L#a"), MakeConceptRef(p.right, "R#c")),
            Rational(0));
}

TEST(SyntacticSimilarityTest, CompositeAveragesBestPairing) {
  Pair p = Composites();
  auto x = MakeConceptRef(p.left, "L#x");
  EXPECT_EQ(SyntacticSimilarity(x, MakeConceptRef(p.right, "R#y")), Rational(1, 2));
  EXPECT_EQ(SyntacticSimilarity(x, MakeConceptRef(p.right, "R#z")), Rational(1));
}

TEST(SyntacticSimilarityTest, MixedOrUnequalArityScoresZero) {
  Pair p = Composites();
  auto x = MakeConceptRef(p.left, "L#x");
  EXPECT_EQ(SyntacticSimilarity(x, MakeConceptRef(p.right, "R#a")), Rational(0));
  EXPECT_EQ(SyntacticSimilarity(x, MakeConceptRef(p.right, "R#w")), Rational(0));
}

TEST(SyntacticSimilarityTest, PropertiesOnRandomOntologies) {
  std::mt19937_64 rng(99);
  int cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Ontology a = testing::RandomTermOntology(rng, "A", 10, 6);
    Ontology b = testing::RandomTermOntology(rng, "B", 10, 6);
    for (const auto& [ida, ca] : a.concepts) {
      auto ra = MakeConceptRef(a, ida);
      ASSERT_EQ(SyntacticSimilarity(ra, ra), Rational(1));
      for (const auto& [idb, cb] : b.concepts) {
        auto rb = MakeConceptRef(b, idb);
        Rational s = SyntacticSimilarity(ra, rb);
        ASSERT_EQ(s, SyntacticSimilarity(rb, ra));
        ASSERT_EQ(s, testing::BruteSyntactic(a, ca, b, cb)) << ida << " vs " << idb;
        ASSERT_GE(s, Rational(0));
        ASSERT_LE(s, Rational(1));
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, 1000);
}

struct Support {
  Ontology od;
  Ontology left, right;
};

// Left/right both hold atoms "a", "b", "c", "d", "e"; the support ontology
// knows a, b, c, d and relates a~b (synonymy), c/c (homonymy).
Support SupportFixture() {
  OntologyBuilder od("OD");
  auto a = od.Add("a");
  auto b = od.Add("b");
  auto c1 = od.Add("c");
  auto c2 = od.Add("c");
  od.Add("d");
  od.Relate(a, b, RelationKind::kSynonymy).Relate(c1, c2, RelationKind::kHomonymy);
  OntologyBuilder l("L"), r("R");
  for (auto t : {"a", "b", "c", "d", "e"}) {
    l.Add(t);
    r.Add(t);
  }
  return {od.Build(), l.Build(), r.Build()};
}

TEST(SemanticSimilarityTest, SynonymyForcesOne) {
  Support s = SupportFixture();
  IndexedOntology od(s.od);
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#a"), MakeConceptRef(s.right, "R#b"), od);
  EXPECT_EQ(res.score, Rational(1));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kOdSynonymy);
  ASSERT_EQ(res.evidence.relations_used.size(), 1u);
}

TEST(SemanticSimilarityTest, HomonymyForcesZeroDespiteEqualTerms) {
  Support s = SupportFixture();
  IndexedOntology od(s.od);
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#c"), MakeConceptRef(s.right, "R#c"), od);
  EXPECT_EQ(res.score, Rational(0));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kOdHomonymy);
}

TEST(SemanticSimilarityTest, AbsentTermFallsBackWithoutEnrichment) {
  Support s = SupportFixture();
  IndexedOntology od(s.od);
  int calls = 0;
  EnrichHook hook = [&](const ConceptRef&, const ConceptRef&) {
    ++calls;
    return EnrichOutcome{};
  };
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#e"), MakeConceptRef(s.right, "R#e"),
                                od, hook);
  EXPECT_EQ(res.score, Rational(1));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kSyntactic);
  EXPECT_EQ(calls, 0);
}

TEST(SemanticSimilarityTest, UnrelatedKnownTermsCallEnrichmentOnce) {
  Support s = SupportFixture();
  IndexedOntology od(s.od);
  int calls = 0;
  EnrichHook hook = [&](const ConceptRef&, const ConceptRef&) {
    ++calls;
    return EnrichOutcome{};
  };
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#a"), MakeConceptRef(s.right, "R#d"),
                                od, hook);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(res.score, Rational(0));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kSyntactic);
}

TEST(SemanticSimilarityTest, EnrichmentCommitIsObservedOnce) {
  Support s = SupportFixture();
  IndexedOntology od(s.od);
  EnrichHook hook = [&](const ConceptRef&, const ConceptRef&) {
    Relation r = MakeRelation("OD#a", "OD#d", RelationKind::kSynonymy, Provenance::kInferredCase1);
    od.AddRelation(r);
    return EnrichOutcome{EnrichmentRecord{r, {r}, {"L#a", "R#d"}}, {}};
  };
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#a"), MakeConceptRef(s.right, "R#d"),
                                od, hook);
  EXPECT_EQ(res.score, Rational(1));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kEnriched);
  ASSERT_TRUE(res.enrichment.has_value());
}

TEST(SemanticSimilarityTest, EquivalenceOnlyFallsBackAndReportsRelation) {
  Support s = SupportFixture();
  s.od.relations.push_back(MakeRelation("OD#a", "OD#d", RelationKind::kEquivalence));
  std::sort(s.od.relations.begin(), s.od.relations.end());
  IndexedOntology od(s.od);
  auto res = SemanticSimilarity(MakeConceptRef(s.left, "L#a"), MakeConceptRef(s.right, "R#d"), od);
  EXPECT_EQ(res.score, Rational(0));
  EXPECT_EQ(res.evidence.kind, EvidenceKind::kSyntactic);
  EXPECT_EQ(res.evidence.relations_used.size(), 1u);
}

// Random support ontology over the same vocabulary as RandomTermOntology;
// relations never put synonymy and homonymy on one term pair.
Ontology RandomSupport(std::mt19937_64& rng) {
  Ontology od = testing::RandomTermOntology(rng, "OD", 6, 1, 6);
  std::vector<ConceptId> ids;
  for (const auto& [cid, c] : od.concepts) ids.push_back(cid);
  IndexedOntology index(od);
  for (int k = 0; k < 4; ++k) {
    const auto& a = ids[testing::Uniform(rng, 0, ids.size() - 1)];
    const auto& b = ids[testing::Uniform(rng, 0, ids.size() - 1)];
    if (a == b) continue;
    RelationKind kind = rng() % 2 ? RelationKind::kSynonymy : RelationKind::kHomonymy;
    bool clash = false;
    for (const auto& r : index.Lookup(index.TermOf(a), index.TermOf(b))) {
      clash |= r.kind != kind;
    }
    if (clash || HasRelation(od, a, b, kind)) continue;
    index.AddRelation(MakeRelation(a, b, kind));
    od = index.ontology();
  }
  return od;
}

TEST(SemanticSimilarityTest, SymmetryAndPrecedenceOnRandomInputs) {
  std::mt19937_64 rng(7);
  int cases = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Ontology od = RandomSupport(rng);
    IndexedOntology index(od);
    Ontology a = testing::RandomTermOntology(rng, "A", 8, 4, 6);
    Ontology b = testing::RandomTermOntology(rng, "B", 8, 4, 6);
    for (const auto& [ida, ca] : a.concepts) {
      for (const auto& [idb, cb] : b.concepts) {
        auto ra = MakeConceptRef(a, ida);
        auto rb = MakeConceptRef(b, idb);
        auto ab = SemanticSimilarity(ra, rb, index);
        auto ba = SemanticSimilarity(rb, ra, index);
        ASSERT_EQ(ab.score, ba.score);
        ASSERT_EQ(ab.evidence, ba.evidence);
        auto rels = LookupRelations(od, ra.term, rb.term);
        const bool known = index.HasTerm(ra.term) && index.HasTerm(rb.term);
        auto has = [&](RelationKind k) {
          return std::any_of(rels.begin(), rels.end(),
                             [k](const Relation& r) { return r.kind == k; });
        };
        if (known && has(RelationKind::kSynonymy)) {
          ASSERT_EQ(ab.score, Rational(1));
        } else if (known && has(RelationKind::kHomonymy)) {
          ASSERT_EQ(ab.score, Rational(0));
        } else {
          ASSERT_EQ(ab.score, SyntacticSimilarity(ra, rb));
        }
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(LookupTest, IndexAgreesWithLinearScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Ontology od = RandomSupport(rng);
    IndexedOntology index(od);
    std::set<NormalizedTerm> terms;
    for (const auto& [cid, c] : od.concepts) terms.insert(NormalizeTerm(c.term));
    for (const auto& t1 : terms) {
      for (const auto& t2 : terms) {
        auto fast = index.Lookup(t1, t2);
        ASSERT_EQ(std::vector<Relation>(fast.begin(), fast.end()), LookupRelations(od, t1, t2));
      }
    }
  }
}

TEST(IndexedOntologyTest, MutationsUpdateIndexes) {
  OntologyBuilder b("OD");
  b.Add("a");
  IndexedOntology od(b.Build());
  auto t = NormalizeTerm("q");
  EXPECT_FALSE(od.HasTerm(t));
  od.AddConcept(Concept{"OD#q", "Q", {}, {}, {}, {}});
  EXPECT_TRUE(od.HasTerm(t));
  EXPECT_TRUE(od.AddRelation(MakeRelation("OD#q", "OD#a", RelationKind::kSynonymy)));
  EXPECT_FALSE(od.AddRelation(MakeRelation("OD#a", "OD#q", RelationKind::kSynonymy)));
  EXPECT_EQ(od.Lookup(NormalizeTerm("a"), t).size(), 1u);
  EXPECT_EQ(od.RelationsTouching(t).size(), 1u);
}

}  // namespace
}  // namespace ontomerge
