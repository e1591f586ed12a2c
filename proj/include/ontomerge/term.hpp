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

#ifndef ONTOMERGE_TERM_HPP_
#define ONTOMERGE_TERM_HPP_

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "ontomerge/errors.hpp"

namespace ontomerge {

// A term in canonical comparison form: NFC, case-folded, trimmed, with inner
// whitespace runs collapsed to one U+0020. Accents are kept.
class NormalizedTerm {
 public:
  const std::string& value() const { return value_; }

  // Wraps a string that is already known to be normalized (e.g. read back
  // from an index). No check is made.
  static NormalizedTerm FromNormalized(std::string value) {
    return NormalizedTerm(std::move(value));
  }

  friend bool operator==(const NormalizedTerm&, const NormalizedTerm&) = default;
  friend std::strong_ordering operator<=>(const NormalizedTerm& a,
                                          const NormalizedTerm& b) {
    return a.value_.compare(b.value_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const NormalizedTerm& t) {
    return os << t.value_;
  }

 private:
  explicit NormalizedTerm(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

namespace internal {

inline icu::UnicodeString Nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString out = nfc->normalize(s, status);
  if (U_FAILURE(status)) throw Error("ICU normalization failed");
  return out;
}

}  // namespace internal

// Throws EmptyTerm when nothing but whitespace remains.
inline NormalizedTerm NormalizeTerm(std::string_view raw) {
  icu::UnicodeString s = internal::Nfc(icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size()))));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  s = internal::Nfc(s);

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  if (collapsed.isEmpty()) throw EmptyTerm();

  std::string out;
  internal::Nfc(collapsed).toUTF8String(out);
  return NormalizedTerm::FromNormalized(std::move(out));
}

}  // namespace ontomerge

#endif  // ONTOMERGE_TERM_HPP_
