#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/langid.hpp"
#include "scimine/language.hpp"
#include "scimine/record.hpp"

namespace scimine {

/// Metadata fields driven by a per-repository regex.
enum class Field {
  abstracts,
  titles,
  keywords,
  authors,
  publishers,
  date_available,
  journal,
  bibliographic_citation,
  document_language,
  link_html,
  link_pdf,
  document_type,
  license,
  uri,
};

inline constexpr std::size_t kFieldCount = 14;

/// Config key of a field, e.g. "titles_regex", "URI_regex".
std::string_view regex_key(Field f);

/// A compiled, shareable pattern.
class FieldPattern {
 public:
  FieldPattern() = default;
  FieldPattern(std::string_view field, std::string pattern);

  const std::string& source() const noexcept { return source_; }
  /// Unanchored search over `s`.
  bool search(std::string_view s) const;

 private:
  struct Compiled;
  std::string source_;
  std::shared_ptr<const Compiled> compiled_;
};

struct RepositoryConfig {
  std::array<FieldPattern, kFieldCount> patterns;
  std::size_t abstracts_min_len = 0;
  std::size_t titles_min_len = 0;
  std::vector<LanguageCode> targeted_langs;

  const FieldPattern& pattern(Field f) const { return patterns[static_cast<std::size_t>(f)]; }
  bool targets(const LanguageCode& lang) const;
};

/// Parse a repository configuration file (JSON). Every regex key, both
/// minimum lengths, and targeted_langs are required; extra keys are ignored.
/// Throws ConfigError naming the offending key.
RepositoryConfig load_config(std::string_view serialized);

struct RawPage {
  std::string repository;
  std::int64_t html_id = 0;
  std::string body;
};

struct Extraction {
  AcademicRecord record;
  std::vector<std::string> warnings;
};

/// Pull a record out of one repository page.
///
/// For every field, an element contributes a value when either
///  - one of its identifying attributes (anything except content, href, src,
///    alt, title, value, style, lang, xml:lang) matches the field's regex; the
///    value is its `content` attribute, else `href` for link fields, else its
///    text; an element without `content` whose children carry lang attributes
///    contributes one value per such child; or
///  - its own short text (a label, at most 100 characters) matches; the value
///    is read from the next element sibling (or the parent's next sibling).
/// Titles and abstracts take their language from lang/xml:lang on the value
/// or matched element, then a sibling table cell holding a language tag, and
/// finally `langid`. Texts shorter than the configured minimum (in code
/// points, after whitespace normalization) or in an untargeted language are
/// dropped; the longest text per language wins. Scalar fields keep the first
/// value, list fields every distinct value. license_link comes from the first
/// rel="license" link. Domain fields are left unclassified.
///
/// Throws ExtractError for an empty or undecodable body.
Extraction extract_record(const RawPage& page, const RepositoryConfig& cfg,
                          const LangIdModel& langid = LangIdModel::builtin());

/// UTF-8 body text: valid UTF-8 as is, Latin-1/Windows-1252 when declared,
/// otherwise lossy replacement. Throws ExtractError when the body is binary
/// (NUL bytes) or more than 10% replacement characters.
std::string decode_body(std::string_view body, std::string_view declared_charset);

}  // namespace scimine
