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

// Shared fixtures, random instance generators and brute-force oracles.

#ifndef ONTOMERGE_TESTS_TEST_UTIL_HPP_
#define ONTOMERGE_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontomerge/ontomerge.hpp"

namespace ontomerge::testing {

inline std::filesystem::path DataPath(const std::string& relative) {
  return std::filesystem::path(ONTOMERGE_TEST_DATA_DIR) / relative;
}

struct Clinic {
  std::vector<BusinessComponent> components;
  Ontology od;
};

inline Clinic LoadClinic() {
  return Clinic{{ParseComponent(DataPath("clinic/cm1.json")),
                  ParseComponent(DataPath("clinic/cm2.json"))},
                 ParseOntology(DataPath("clinic/od.json"))};
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("ontomerge_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::size_t Uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Ontology builder for hand-written fixtures: concepts are added by term and
// get the id "<ontology id>#<term>" (plus "~k" on repeats).
class OntologyBuilder {
 public:
  explicit OntologyBuilder(std::string id) { o_.id = std::move(id); }

  ConceptId Add(const std::string& term, const std::vector<ConceptId>& children = {}) {
    ConceptId base = o_.id + "#" + NormalizeTerm(term).value();
    ConceptId cid = base;
    for (int k = 2; o_.Find(cid); ++k) cid = base + "~" + std::to_string(k);
    Concept c;
    c.id = cid;
    c.term = term;
    c.children = children;
    AddConcept(o_, std::move(c));
    return cid;
  }

  OntologyBuilder& Relate(const ConceptId& a, const ConceptId& b, RelationKind kind) {
    AddRelation(o_, MakeRelation(a, b, kind));
    return *this;
  }

  Ontology Build() const {
    ValidateOntology(o_);
    return o_;
  }

 private:
  Ontology o_;
};

// Random ontology over a small vocabulary so that term collisions are
// frequent. Composites have 1..max_arity children drawn from earlier
// concepts, so the composition graph is acyclic; nesting is allowed.
inline Ontology RandomTermOntology(std::mt19937_64& rng, const std::string& id,
                                   std::size_t concepts, std::size_t max_arity,
                                   std::size_t vocabulary = 4) {
  static const std::vector<std::string> kWords = {"alpha", "Beta", "gamma", "DELTA",
                                                  "eps",   "zeta", "eta",   "theta"};
  OntologyBuilder b(id);
  std::vector<ConceptId> made;
  for (std::size_t i = 0; i < concepts; ++i) {
    std::vector<ConceptId> children;
    if (!made.empty() && Uniform(rng, 0, 2) == 0) {
      std::vector<ConceptId> pool = made;
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(std::min(pool.size(), Uniform(rng, 1, max_arity)));
      children = pool;
    }
    made.push_back(b.Add(kWords[Uniform(rng, 0, std::min(vocabulary, kWords.size()) - 1)],
                         children));
  }
  return b.Build();
}

// Random valid component: unique names, acyclic compositions, associations
// and declared relations between distinct entities.
inline BusinessComponent RandomComponent(std::mt19937_64& rng, const std::string& id) {
  BusinessComponent bc;
  bc.id = id;
  bc.name = "Random " + id;
  const std::size_t n = Uniform(rng, 1, 12);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("Entity " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    Entity e;
    e.name = names[i];
    for (std::size_t a = Uniform(rng, 0, 3); a > 0; --a) {
      e.attributes.push_back("attr_" + std::to_string(Uniform(rng, 0, 50)));
    }
    std::sort(e.attributes.begin(), e.attributes.end());
    e.attributes.erase(std::unique(e.attributes.begin(), e.attributes.end()),
                       e.attributes.end());
    for (std::size_t a = Uniform(rng, 0, 2); a > 0; --a) {
      e.associations.push_back({names[Uniform(rng, 0, n - 1)], "rel" + std::to_string(a)});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (Uniform(rng, 0, 4) == 0) e.components.push_back(names[j]);
    }
    bc.entities.push_back(std::move(e));
  }
  std::set<std::pair<std::string, std::string>> related;
  for (std::size_t k = Uniform(rng, 0, n / 2); k > 0; --k) {
    std::size_t i = Uniform(rng, 0, n - 1), j = Uniform(rng, 0, n - 1);
    if (i == j) continue;
    auto key = std::minmax(names[i], names[j]);
    if (!related.insert(key).second) continue;
    static constexpr RelationKind kKinds[] = {RelationKind::kSynonymy, RelationKind::kHomonymy,
                                              RelationKind::kEquivalence};
    bc.relations.push_back({names[i], names[j], kKinds[Uniform(rng, 0, 2)]});
  }
  std::shuffle(bc.entities.begin(), bc.entities.end(), rng);
  ValidateComponent(bc);
  return bc;
}

// sigma' by enumerating every child permutation.
inline Rational BruteSyntactic(const Ontology& o1, const Concept& c1, const Ontology& o2,
                               const Concept& c2) {
  if (!c1.IsComposite() && !c2.IsComposite()) {
    return NormalizeTerm(c1.term) == NormalizeTerm(c2.term) ? 1 : 0;
  }
  if (c1.IsComposite() != c2.IsComposite()) return 0;
  const std::size_t n = c1.children.size();
  if (c2.children.size() != n) return 0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational best = 0;
  do {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum = sum + BruteSyntactic(o1, o1.concepts.at(c1.children[i]), o2,
                                 o2.concepts.at(c2.children[perm[i]]));
    }
    best = std::max(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / Rational(static_cast<std::int64_t>(n));
}

// Clusters as the reflexive-transitive closure of the joining edges,
// computed with a boolean Floyd-Warshall pass.
inline Partition BruteClusters(const std::vector<Correspondence>& correspondences,
                               const std::vector<ConceptId>& concepts) {
  std::vector<ConceptId> ids = concepts;
  std::sort(ids.begin(), ids.end());
  const std::size_t n = ids.size();
  auto at = [&](const ConceptId& c) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), c) - ids.begin());
  };
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& c : correspondences) {
    if (c.verdict != Verdict::kSynonym && c.verdict != Verdict::kIdentical) continue;
    reach[at(c.c1)][at(c.c2)] = reach[at(c.c2)][at(c.c1)] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::set<std::vector<ConceptId>> classes;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ConceptId> cls;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) cls.push_back(ids[j]);
    }
    classes.insert(cls);
  }
  return Partition(classes.begin(), classes.end());
}

// Concept-id-free view of an ontology: terms with child terms, attributes
// and associations, plus relations as term pairs. Aliases count as
// "alias: " attributes, the form they take in a merged component.
inline std::set<std::string> Shape(const Ontology& o) {
  std::set<std::string> out;
  auto term = [&](const ConceptId& cid) { return o.concepts.at(cid).term; };
  for (const auto& [cid, c] : o.concepts) {
    std::vector<std::string> children;
    std::set<std::string> attrs(c.attributes.begin(), c.attributes.end());
    for (const auto& a : c.aliases) attrs.insert(std::string(kAliasAttributePrefix) + a);
    for (const auto& ch : c.children) children.push_back(term(ch));
    std::sort(children.begin(), children.end());
    std::string line = "concept " + c.term + " |";
    for (const auto& s : children) line += " child:" + s;
    for (const auto& s : attrs) line += " attr:" + s;
    std::set<std::string> assocs;
    for (const auto& a : c.associations) assocs.insert(term(a.target) + "/" + a.label);
    for (const auto& s : assocs) line += " assoc:" + s;
    out.insert(line);
  }
  for (const auto& r : o.relations) {
    auto [x, y] = std::minmax(term(r.a), term(r.b));
    out.insert("relation " + std::string(ToString(r.kind)) + " " + x + " " + y);
  }
  return out;
}

}  // namespace ontomerge::testing

#endif  // ONTOMERGE_TESTS_TEST_UTIL_HPP_
