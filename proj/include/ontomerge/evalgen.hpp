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

// Synthetic two-component scenarios with known naming conflicts, and
// precision/recall scoring of a report against them.
//
// A scenario has `concept_count` truth-bearing concepts split over CM1 and
// CM2. Each synonym pair is one concept per side with distinct terms; each
// homonym pair is one concept per side with a shared term. The rest are
// fillers with unique terms. floor(T * od_coverage) of the T truth
// relations are declared in the support ontology; every withheld one is
// made derivable by planted evidence:
//
//   synonyms   rotate through direct declaration in CM1 (helper entity),
//              equivalent neighbours with a synonymy bridge, and composites
//              with identically named children;
//   homonyms   always use equivalent neighbours with a homonymy bridge.
//
// Helper entities never enter the support ontology.

#ifndef ONTOMERGE_EVALGEN_HPP_
#define ONTOMERGE_EVALGEN_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontomerge/errors.hpp"
#include "ontomerge/model.hpp"
#include "ontomerge/model_io.hpp"
#include "ontomerge/term.hpp"
#include "ontomerge/transform.hpp"

namespace ontomerge {

struct ScenarioSpec {
  std::int64_t concept_count = 0;
  std::int64_t synonym_pairs = 0;
  std::int64_t homonym_pairs = 0;
  double od_coverage = 1.0;
  std::uint64_t rng_seed = 0;
};

struct TruthPair {
  ConceptId c1;
  ConceptId c2;
  Verdict verdict = Verdict::kDistinct;
  friend auto operator<=>(const TruthPair&, const TruthPair&) = default;
};

// Expected verdicts. Pairs not listed are Distinct.
struct GroundTruth {
  std::vector<std::string> components;
  std::vector<ConceptId> concepts;
  std::vector<TruthPair> pairs;
  // Synonym/Homonym pairs whose relation is absent from the support ontology.
  std::vector<TruthPair> withheld;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct Scenario {
  std::vector<BusinessComponent> components;
  Ontology od;
  GroundTruth truth;
};

inline void ValidateSpec(const ScenarioSpec& spec) {
  if (spec.concept_count < 0 || spec.synonym_pairs < 0 || spec.homonym_pairs < 0) {
    throw InfeasibleSpec("scenario counts must be non-negative");
  }
  if (2 * (spec.synonym_pairs + spec.homonym_pairs) > spec.concept_count) {
    throw InfeasibleSpec("synonym_pairs + homonym_pairs = " +
                         std::to_string(spec.synonym_pairs + spec.homonym_pairs) +
                         " exceeds concept_count / 2 = " +
                         std::to_string(spec.concept_count / 2));
  }
  if (!(spec.od_coverage >= 0.0 && spec.od_coverage <= 1.0)) {
    throw InfeasibleSpec("od_coverage must lie in [0, 1]");
  }
}

// Number of truth relations declared in the support ontology.
inline std::int64_t DeclaredRelationCount(const ScenarioSpec& spec) {
  const std::int64_t total = spec.synonym_pairs + spec.homonym_pairs;
  // The epsilon keeps products such as 0.29 * 100 from rounding down to 28.
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(total) * spec.od_coverage + 1e-9));
}

namespace internal {

// Unique pronounceable tokens built from consonant-vowel syllables.
class TermPool {
 public:
  explicit TermPool(std::mt19937_64& rng) : rng_(rng) {}

  std::string Next() {
    static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    for (;;) {
      std::string token;
      const std::uint64_t syllables = 2 + rng_() % 2;
      for (std::uint64_t i = 0; i < syllables; ++i) {
        token += kConsonants[rng_() % kConsonants.size()];
        token += kVowels[rng_() % kVowels.size()];
      }
      if (used_.insert(token).second) return token;
    }
  }

 private:
  std::mt19937_64& rng_;
  std::set<std::string> used_;
};

inline std::string EntityName(const std::string& token) {
  std::string out = token;
  out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

class ScenarioBuilder {
 public:
  ScenarioBuilder() {
    cm_[0].id = "CM1";
    cm_[0].name = "Scenario component 1";
    cm_[1].id = "CM2";
    cm_[1].name = "Scenario component 2";
    od_.id = "OD";
  }

  ConceptId AddEntity(int side, const std::string& token,
                      std::vector<std::string> children = {}) {
    Entity e;
    e.name = EntityName(token);
    for (auto& c : children) e.components.push_back(EntityName(c));
    cm_[side].entities.push_back(std::move(e));
    return EntityConceptId(cm_[side].id, EntityName(token));
  }

  void Relate(int side, const std::string& t1, const std::string& t2, RelationKind kind) {
    cm_[side].relations.push_back({EntityName(t1), EntityName(t2), kind});
  }

  ConceptId AddSupportConcept(const std::string& token) {
    ConceptId base = od_.id + "#" + token;
    ConceptId cid = base;
    for (int k = 2; od_.Find(cid); ++k) cid = base + "~" + std::to_string(k);
    Concept c;
    c.id = cid;
    c.term = token;
    AddConcept(od_, std::move(c));
    return cid;
  }

  void DeclareSupport(const ConceptId& a, const ConceptId& b, RelationKind kind) {
    AddRelation(od_, MakeRelation(a, b, kind));
  }

  GroundTruth& truth() { return truth_; }

  Scenario Finish() && {
    for (const auto& bc : cm_) {
      ValidateComponent(bc);
      truth_.components.push_back(bc.id);
      for (const auto& e : bc.entities) truth_.concepts.push_back(EntityConceptId(bc.id, e.name));
    }
    ValidateOntology(od_);
    std::sort(truth_.concepts.begin(), truth_.concepts.end());
    std::sort(truth_.pairs.begin(), truth_.pairs.end());
    std::sort(truth_.withheld.begin(), truth_.withheld.end());
    return Scenario{{std::move(cm_[0]), std::move(cm_[1])}, std::move(od_), std::move(truth_)};
  }

 private:
  BusinessComponent cm_[2];
  Ontology od_;
  GroundTruth truth_;
};

}  // namespace internal

// Deterministic in `spec.rng_seed`. Throws InfeasibleSpec.
inline Scenario GenerateScenario(const ScenarioSpec& spec) {
  ValidateSpec(spec);
  std::mt19937_64 rng(spec.rng_seed);
  internal::TermPool pool(rng);
  internal::ScenarioBuilder b;

  const std::int64_t total = spec.synonym_pairs + spec.homonym_pairs;
  const std::int64_t declared = DeclaredRelationCount(spec);
  // Random choice of which truth relations are declared: Fisher-Yates over
  // the relation indices, first `declared` win.
  std::vector<std::int64_t> order(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  for (std::int64_t i = total - 1; i > 0; --i) {
    auto j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<bool> is_declared(static_cast<std::size_t>(total), false);
  for (std::int64_t i = 0; i < declared; ++i) {
    is_declared[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  }

  auto identical = [&](const ConceptId& a, const ConceptId& c) {
    b.truth().pairs.push_back({a, c, Verdict::kIdentical});
  };

  std::int64_t rotation = 0;
  for (std::int64_t k = 0; k < spec.synonym_pairs; ++k) {
    const std::string t1 = pool.Next();
    const std::string t2 = pool.Next();
    const ConceptId od1 = b.AddSupportConcept(t1);
    const ConceptId od2 = b.AddSupportConcept(t2);
    ConceptId c1, c2;
    if (is_declared[static_cast<std::size_t>(k)]) {
      c1 = b.AddEntity(0, t1);
      c2 = b.AddEntity(1, t2);
      b.DeclareSupport(od1, od2, RelationKind::kSynonymy);
    } else {
      switch (rotation++ % 3) {
        case 0: {
          c1 = b.AddEntity(0, t1);
          c2 = b.AddEntity(1, t2);
          identical(b.AddEntity(0, t2), c2);
          b.Relate(0, t1, t2, RelationKind::kSynonymy);
          break;
        }
        case 1: {
          const std::string u = pool.Next();
          const std::string v = pool.Next();
          c1 = b.AddEntity(0, t1);
          c2 = b.AddEntity(1, t2);
          b.AddEntity(0, u);
          identical(b.AddEntity(0, v), b.AddEntity(1, v));
          b.Relate(0, t1, u, RelationKind::kEquivalence);
          b.Relate(0, u, v, RelationKind::kSynonymy);
          b.Relate(1, t2, v, RelationKind::kEquivalence);
          break;
        }
        default: {
          const std::string p = pool.Next();
          const std::string q = pool.Next();
          identical(b.AddEntity(0, p), b.AddEntity(1, p));
          identical(b.AddEntity(0, q), b.AddEntity(1, q));
          c1 = b.AddEntity(0, t1, {p, q});
          c2 = b.AddEntity(1, t2, {p, q});
          break;
        }
      }
      b.truth().withheld.push_back({c1, c2, Verdict::kSynonym});
    }
    b.truth().pairs.push_back({c1, c2, Verdict::kSynonym});
  }

  for (std::int64_t k = 0; k < spec.homonym_pairs; ++k) {
    const std::string t = pool.Next();
    const ConceptId first = b.AddSupportConcept(t);
    const ConceptId c1 = b.AddEntity(0, t);
    const ConceptId c2 = b.AddEntity(1, t);
    if (is_declared[static_cast<std::size_t>(spec.synonym_pairs + k)]) {
      b.DeclareSupport(first, b.AddSupportConcept(t), RelationKind::kHomonymy);
    } else {
      const std::string u = pool.Next();
      const std::string v = pool.Next();
      b.AddEntity(0, u);
      identical(b.AddEntity(0, v), b.AddEntity(1, v));
      b.Relate(0, t, u, RelationKind::kEquivalence);
      b.Relate(0, u, v, RelationKind::kHomonymy);
      b.Relate(1, t, v, RelationKind::kEquivalence);
      b.truth().withheld.push_back({c1, c2, Verdict::kHomonym});
    }
    b.truth().pairs.push_back({c1, c2, Verdict::kHomonym});
  }

  const std::int64_t left = (spec.concept_count + 1) / 2;
  const std::int64_t fillers[2] = {left - total, spec.concept_count - left - total};
  std::int64_t filler_index = 0;
  for (int side = 0; side < 2; ++side) {
    for (std::int64_t k = 0; k < fillers[side]; ++k) {
      const std::string t = pool.Next();
      b.AddEntity(side, t);
      if (filler_index++ % 2 == 0) b.AddSupportConcept(t);
    }
  }
  return std::move(b).Finish();
}

// ---------------------------------------------------------------------------
// Ground truth and spec files.

inline std::string SerializeGroundTruth(const GroundTruth& truth) {
  using internal::json;
  auto pairs = [](const std::vector<TruthPair>& v) {
    std::vector<TruthPair> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    json out = json::array();
    for (const auto& p : sorted) {
      out.push_back({{"c1", p.c1}, {"c2", p.c2}, {"verdict", ToString(p.verdict)}});
    }
    return out;
  };
  std::vector<std::string> components = truth.components;
  std::vector<ConceptId> concepts = truth.concepts;
  std::sort(components.begin(), components.end());
  std::sort(concepts.begin(), concepts.end());
  return internal::Dump(json{{"format_version", kFormatVersion},
                             {"components", components},
                             {"concepts", concepts},
                             {"pairs", pairs(truth.pairs)},
                             {"withheld", pairs(truth.withheld)}});
}

inline GroundTruth ParseGroundTruthText(std::string_view text, const std::string& source) {
  using internal::json;
  const json root = internal::ParseJson(text, source);
  return internal::WithSource(source, [&] {
    internal::CheckVersion(root);
    GroundTruth truth;
    truth.components = internal::RequiredStringList(root, "components", "");
    truth.concepts = internal::RequiredStringList(root, "concepts", "");
    auto pairs = [&](const std::string& key, bool required) {
      std::vector<TruthPair> out;
      const json* arr = required ? &internal::RequiredArray(root, key, "")
                                 : internal::OptionalArray(root, key, "");
      if (!arr) return out;
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const json& p = (*arr)[i];
        const std::string field = internal::Field(key, i);
        if (!p.is_object()) throw SchemaViolation(field, "must be an object");
        TruthPair tp;
        tp.c1 = internal::GetString(p, "c1", field);
        tp.c2 = internal::GetString(p, "c2", field);
        std::string v = internal::GetString(p, "verdict", field);
        auto verdict = ParseVerdict(v);
        if (!verdict) throw SchemaViolation(field + ".verdict", "unknown verdict \"" + v + "\"");
        tp.verdict = *verdict;
        out.push_back(std::move(tp));
      }
      return out;
    };
    truth.pairs = pairs("pairs", true);
    truth.withheld = pairs("withheld", false);
    std::map<std::pair<ConceptId, ConceptId>, Verdict> seen;
    for (const auto& p : truth.pairs) {
      auto key = p.c1 < p.c2 ? std::pair{p.c1, p.c2} : std::pair{p.c2, p.c1};
      auto [it, fresh] = seen.emplace(key, p.verdict);
      if (!fresh && it->second != p.verdict) {
        throw SchemaViolation("pairs", "pair (" + p.c1 + ", " + p.c2 +
                                           ") carries two verdicts");
      }
    }
    return truth;
  });
}

inline GroundTruth ParseGroundTruth(const std::filesystem::path& path) {
  return ParseGroundTruthText(ReadFile(path), path.string());
}

inline ScenarioSpec ParseScenarioSpecText(std::string_view text, const std::string& source) {
  using internal::json;
  const json root = internal::ParseJson(text, source);
  return internal::WithSource(source, [&] {
    if (!root.is_object()) throw SchemaViolation("spec", "must be an object");
    ScenarioSpec spec;
    auto integer = [&](const char* key, std::int64_t& out) {
      if (!root.contains(key)) return;
      if (!root.at(key).is_number_integer()) {
        throw SchemaViolation(key, "must be an integer");
      }
      out = root.at(key).get<std::int64_t>();
    };
    integer("concept_count", spec.concept_count);
    integer("synonym_pairs", spec.synonym_pairs);
    integer("homonym_pairs", spec.homonym_pairs);
    std::int64_t seed = 0;
    integer("rng_seed", seed);
    spec.rng_seed = static_cast<std::uint64_t>(seed);
    if (root.contains("od_coverage")) {
      if (!root.at("od_coverage").is_number()) {
        throw SchemaViolation("od_coverage", "must be a number");
      }
      spec.od_coverage = root.at("od_coverage").get<double>();
    }
    return spec;
  });
}

// ---------------------------------------------------------------------------
// Scoring.

struct ClassMetrics {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t expected = 0;
};

struct Metrics {
  ClassMetrics synonym;
  ClassMetrics homonym;
  double macro_f1 = 1.0;
};

namespace internal {

using UnorderedPair = std::pair<ConceptId, ConceptId>;

inline UnorderedPair Unordered(const ConceptId& a, const ConceptId& b) {
  return a < b ? UnorderedPair{a, b} : UnorderedPair{b, a};
}

// Precision is 1 with no predictions; recall is 1 with nothing to find.
inline ClassMetrics Score(const std::set<UnorderedPair>& predicted,
                          const std::set<UnorderedPair>& expected) {
  ClassMetrics m;
  m.predicted = predicted.size();
  m.expected = expected.size();
  for (const auto& p : predicted) m.true_positives += expected.count(p);
  if (m.predicted) m.precision = static_cast<double>(m.true_positives) / m.predicted;
  if (m.expected) m.recall = static_cast<double>(m.true_positives) / m.expected;
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

}  // namespace internal

// Per-class precision/recall for Synonym and Homonym, plus their macro-F1.
// Throws ScenarioMismatch when the report names concepts outside the truth.
inline Metrics Evaluate(const Report& report, const GroundTruth& truth) {
  const std::set<ConceptId> known(truth.concepts.begin(), truth.concepts.end());
  std::set<internal::UnorderedPair> predicted[2], expected[2];
  auto slot = [](Verdict v) { return v == Verdict::kSynonym ? 0 : v == Verdict::kHomonym ? 1 : -1; };
  for (const auto& p : truth.pairs) {
    if (!known.count(p.c1) || !known.count(p.c2)) {
      throw ScenarioMismatch("ground truth pair (" + p.c1 + ", " + p.c2 +
                             ") names an undeclared concept");
    }
    if (int s = slot(p.verdict); s >= 0) expected[s].insert(internal::Unordered(p.c1, p.c2));
  }
  for (const auto& c : report.correspondences) {
    for (const auto* cid : {&c.c1, &c.c2}) {
      if (!known.count(*cid)) {
        throw ScenarioMismatch("report concept " + *cid + " is not part of the scenario");
      }
    }
    if (int s = slot(c.verdict); s >= 0) predicted[s].insert(internal::Unordered(c.c1, c.c2));
  }
  Metrics m;
  m.synonym = internal::Score(predicted[0], expected[0]);
  m.homonym = internal::Score(predicted[1], expected[1]);
  m.macro_f1 = (m.synonym.f1 + m.homonym.f1) / 2.0;
  return m;
}

inline std::string SerializeMetrics(const Metrics& m) {
  using internal::json;
  auto cls = [](const ClassMetrics& c) {
    return json{{"precision", c.precision},         {"recall", c.recall},
                {"f1", c.f1},                       {"true_positives", c.true_positives},
                {"predicted", c.predicted},         {"expected", c.expected}};
  };
  return internal::Dump(
      json{{"Synonym", cls(m.synonym)}, {"Homonym", cls(m.homonym)}, {"macro_f1", m.macro_f1}});
}

}  // namespace ontomerge

#endif  // ONTOMERGE_EVALGEN_HPP_
