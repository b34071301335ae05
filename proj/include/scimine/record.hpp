#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/language.hpp"

namespace scimine {

/// Global record identity: (repository, html_id).
struct RecordKey {
  std::string repository;
  std::int64_t html_id = 0;

  friend bool operator==(const RecordKey&, const RecordKey&) = default;
  friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

using TextMap = std::map<LanguageCode, std::string>;
/// Keyword hits per focused domain; always holds all four focused keys.
using DomainCounts = std::map<Domain, std::int64_t>;

DomainCounts zero_counts();

struct AcademicRecord {
  TextMap abstracts;
  TextMap titles;
  std::string repository;
  std::int64_t html_id = 0;
  std::string link_html;
  std::string link_pdf;
  std::string uri;
  std::string license_link;
  std::string license;
  std::string date_available;
  std::string document_language;
  std::string document_type;
  std::vector<std::string> keywords;
  std::vector<std::string> authors;
  std::vector<std::string> publishers;
  std::string bibliographic_citation;
  std::string journal;
  DomainCounts domain_keyword_count = zero_counts();
  Domain domain = Domain::general;

  RecordKey key() const { return {repository, html_id}; }
  friend bool operator==(const AcademicRecord&, const AcademicRecord&) = default;
};

/// Parse a record document (one JSON object). Missing optional fields become
/// empty; unknown fields are ignored. Throws ParseError naming the bad field.
AcademicRecord parse_record(std::string_view serialized);

/// Canonical form: keys in record-file order, language keys in en/es/fr/pt
/// order then raw tags, domain counts in cancer/energy/transportation/
/// neuroscience order, 4-space indentation, raw UTF-8 (no \u escapes).
std::string serialize_record(const AcademicRecord& record);

enum class Origin { title, abstract };
std::string_view to_string(Origin o);

struct SentencePair {
  std::string source_text;
  std::string target_text;
  LanguageCode source_lang;
  LanguageCode target_lang;
  double score = 0.0;
  Domain domain = Domain::general;
  RecordKey record_key;
  Origin origin = Origin::abstract;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct MonolingualSentence {
  std::string text;
  LanguageCode lang;
  Domain domain = Domain::general;
  RecordKey record_key;
  Origin origin = Origin::abstract;

  friend bool operator==(const MonolingualSentence&, const MonolingualSentence&) = default;
};

/// One compact JSON object, no trailing newline.
std::string to_jsonl(const SentencePair& pair);
std::string to_jsonl(const MonolingualSentence& sentence);
SentencePair parse_pair_line(std::string_view line);
MonolingualSentence parse_mono_line(std::string_view line);

/// "source<TAB>target" with tabs and newlines inside either side replaced by spaces.
std::string to_tsv(const SentencePair& pair);

/// "en-pt" style label for a language pair.
std::string pair_label(const LanguageCode& source, const LanguageCode& target);

}  // namespace scimine
