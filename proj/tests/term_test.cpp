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

#include "ontomerge/term.hpp"

#include <gtest/gtest.h>

#include "ontomerge/errors.hpp"

namespace ontomerge {
namespace {

TEST(NormalizeTermTest, CaseFoldsAndTrims) {
  EXPECT_EQ(NormalizeTerm("  Service ").value(), "service");
  EXPECT_EQ(NormalizeTerm("PRESTATION"), NormalizeTerm("prestation"));
}

TEST(NormalizeTermTest, CollapsesInternalWhitespace) {
  EXPECT_EQ(NormalizeTerm("note \t  d'honoraires").value(), "note d'honoraires");
  EXPECT_EQ(NormalizeTerm("a\nb").value(), "a b");
}

TEST(NormalizeTermTest, ComposesCombiningMarks) {
  // "e" + U+0301 and the precomposed U+00E9.
  EXPECT_EQ(NormalizeTerm("Cafe\xCC\x81"), NormalizeTerm("caf\xC3\xA9"));
  EXPECT_EQ(NormalizeTerm("Caf\xC3\x89").value(), "caf\xC3\xA9");
}

TEST(NormalizeTermTest, FullCaseFolding) {
  EXPECT_EQ(NormalizeTerm("Stra\xC3\x9F" "e"), NormalizeTerm("STRASSE"));
}

TEST(NormalizeTermTest, IsIdempotent) {
  for (const char* raw : {"  Mixed Case  ", "caf\xC3\xA9", "Stra\xC3\x9F" "e", "x  y"}) {
    NormalizedTerm once = NormalizeTerm(raw);
    EXPECT_EQ(NormalizeTerm(once.value()), once) << raw;
  }
}

TEST(NormalizeTermTest, EmptyAfterNormalizationThrows) {
  EXPECT_THROW(NormalizeTerm(""), EmptyTerm);
  EXPECT_THROW(NormalizeTerm(" \t\n"), EmptyTerm);
}

}  // namespace
}  // namespace ontomerge
