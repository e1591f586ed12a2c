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

#ifndef ONTOMERGE_ERRORS_HPP_
#define ONTOMERGE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ontomerge {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input is not syntactically valid JSON (or not valid UTF-8).
class MalformedFile : public Error {
 public:
  MalformedFile(std::string path, const std::string& detail)
      : Error(path + ": malformed file: " + detail), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// The input parsed but violates the schema or a type invariant. `field` is a
// JSON-pointer-like location such as "entities[2].associations[0].target".
class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string field, const std::string& detail)
      : Error(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class CyclicComposition : public Error {
 public:
  explicit CyclicComposition(std::vector<std::string> cycle)
      : Error(Describe(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string Describe(const std::vector<std::string>& cycle) {
    std::string out = "cyclic composition:";
    for (const auto& id : cycle) out += " " + id;
    return out;
  }
  std::vector<std::string> cycle_;
};

class EmptyTerm : public Error {
 public:
  EmptyTerm() : Error("term is empty after normalization") {}
};

// Raised by the child-matching rule when a composite has too many children
// for the exhaustive search; the pair must be resolved manually.
class ArityTooLarge : public Error {
 public:
  ArityTooLarge(std::size_t arity, std::size_t limit)
      : Error("composite arity " + std::to_string(arity) +
              " exceeds exhaustive matching limit " + std::to_string(limit)),
        arity_(arity) {}
  std::size_t arity() const { return arity_; }

 private:
  std::size_t arity_;
};

// One edge of the chain that joins two homonyms into the same cluster.
struct ChainEdge {
  std::string from;
  std::string to;
  std::string verdict;
};

class HomonymClusterCollision : public Error {
 public:
  HomonymClusterCollision(std::string a, std::string b,
                          std::vector<ChainEdge> chain)
      : Error(Describe(a, b, chain)),
        a_(std::move(a)),
        b_(std::move(b)),
        chain_(std::move(chain)) {}
  const std::string& first() const { return a_; }
  const std::string& second() const { return b_; }
  const std::vector<ChainEdge>& chain() const { return chain_; }

 private:
  static std::string Describe(const std::string& a, const std::string& b,
                              const std::vector<ChainEdge>& chain) {
    std::string out = "homonyms " + a + " and " + b +
                      " would share a cluster via:";
    for (const auto& e : chain) {
      out += " " + e.from + " -[" + e.verdict + "]- " + e.to + ";";
    }
    return out;
  }
  std::string a_;
  std::string b_;
  std::vector<ChainEdge> chain_;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

// A post-condition the pipeline guarantees did not hold. Indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ontomerge

#endif  // ONTOMERGE_ERRORS_HPP_
