#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/language.hpp"

namespace scimine {

struct SegmenterRules {
  Lang lang = Lang::other;
  /// Lowercase, without the final period: "fig", "e.g", "et al".
  std::set<std::string> abbreviations;
  std::u32string terminators = U".!?…";

  /// Shipped rules for en/es/fr/pt; `other` gets a small default list.
  static const SegmenterRules& builtin(Lang lang);
  /// Abbreviation list: one entry per line, '#' comments allowed.
  static SegmenterRules from_abbreviation_list(Lang lang, std::string_view contents);
};

/// Split running text into sentences. The input is whitespace-normalized
/// first; a boundary is a terminator run (plus closing quotes/brackets)
/// followed by a space and an uppercase letter, digit, or opening
/// quote/bracket, unless the run is a single '.' ending a known abbreviation
/// or a one-letter initial. Joining the output with single spaces gives back
/// the normalized input exactly.
std::vector<std::string> split_sentences(std::string_view text, const SegmenterRules& rules);

}  // namespace scimine
