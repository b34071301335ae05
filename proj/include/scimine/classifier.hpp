#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/language.hpp"
#include "scimine/record.hpp"

namespace scimine {

/// Keyword phrases per focused domain. Phrases are case-folded and NFC
/// normalized on construction; each list must be non-empty and
/// duplicate-free, each phrase 1-5 words.
class DomainLexicon {
 public:
  explicit DomainLexicon(std::map<Domain, std::vector<std::string>> entries);

  /// JSON object: {"cancer": [...], "energy": [...], "neuroscience": [...], "transportation": [...]}.
  static DomainLexicon parse(std::string_view json);
  /// Illustrative starter lexicon shipped with the library.
  static const DomainLexicon& starter();

  const std::map<Domain, std::vector<std::string>>& entries() const noexcept { return entries_; }
  /// Word tokens of each phrase, parallel to entries().
  const std::map<Domain, std::vector<std::vector<std::string>>>& phrase_tokens() const noexcept {
    return tokens_;
  }

 private:
  std::map<Domain, std::vector<std::string>> entries_;
  std::map<Domain, std::vector<std::vector<std::string>>> tokens_;
};

/// Case-folded word tokens: maximal runs of letters, digits, and combining marks.
std::vector<std::string> keyword_tokens(std::string_view text);

/// Non-overlapping whole-word occurrences of `phrase` in `tokens`.
std::int64_t count_phrase(const std::vector<std::string>& tokens,
                          const std::vector<std::string>& phrase);

/// Keyword hits per focused domain over every title, abstract, and keyword of
/// the record. Each text field is matched on its own, so phrases never span
/// two fields; each phrase counts its own occurrences.
DomainCounts count_keywords(const AcademicRecord& record, const DomainLexicon& lexicon);

/// The single domain with a positive count, if it has at least `min_hits`;
/// otherwise general.
Domain classify(const DomainCounts& counts, std::int64_t min_hits = 1);

}  // namespace scimine
