#include "scimine/extractor.hpp"

#include <unicode/regex.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>

#include "scimine/errors.hpp"
#include "scimine/html.hpp"
#include "scimine/text.hpp"

namespace scimine {

namespace {

constexpr std::array<std::string_view, kFieldCount> kRegexKeys = {
    "abstracts_regex",      "titles_regex",
    "keywords_regex",       "authors_regex",
    "publishers_regex",     "date_available_regex",
    "journal_regex",        "bibliographic_citation_regex",
    "document_language_regex", "link_html_regex",
    "link_pdf_regex",       "document_type_regex",
    "license_regex",        "URI_regex"};

constexpr std::array<std::string_view, 9> kValueAttributes = {
    "content", "href", "src", "alt", "title", "value", "style", "lang", "xml:lang"};

bool is_link_field(Field f) { return f == Field::link_html || f == Field::link_pdf || f == Field::uri; }
bool is_list_field(Field f) {
  return f == Field::keywords || f == Field::authors || f == Field::publishers;
}
bool is_text_field(Field f) { return f == Field::titles || f == Field::abstracts; }

constexpr std::size_t kMaxLabelChars = 100;

icu::UnicodeString to_unicode(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

}  // namespace

struct FieldPattern::Compiled {
  std::unique_ptr<icu::RegexPattern> pattern;
};

std::string_view regex_key(Field f) { return kRegexKeys[static_cast<std::size_t>(f)]; }

FieldPattern::FieldPattern(std::string_view field, std::string pattern) : source_(std::move(pattern)) {
  UErrorCode status = U_ZERO_ERROR;
  UParseError pe;
  auto compiled = std::make_shared<Compiled>();
  compiled->pattern.reset(icu::RegexPattern::compile(to_unicode(source_), 0, pe, status));
  if (U_FAILURE(status) || !compiled->pattern)
    throw ConfigError(std::string(field), "pattern '" + source_ + "' does not compile (" +
                                              u_errorName(status) + " at offset " +
                                              std::to_string(pe.offset) + ")");
  compiled_ = std::move(compiled);
}

bool FieldPattern::search(std::string_view s) const {
  if (!compiled_) return false;
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString input = to_unicode(s);
  std::unique_ptr<icu::RegexMatcher> m(compiled_->pattern->matcher(input, status));
  if (U_FAILURE(status)) return false;
  bool found = m->find(status);
  return U_SUCCESS(status) && found;
}

bool RepositoryConfig::targets(const LanguageCode& lang) const {
  return std::find(targeted_langs.begin(), targeted_langs.end(), lang) != targeted_langs.end();
}

RepositoryConfig load_config(std::string_view serialized) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(serialized.begin(), serialized.end());
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  RepositoryConfig cfg;
  for (std::size_t i = 0; i < kFieldCount; ++i) {
    std::string key(kRegexKeys[i]);
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(key, "missing required field");
    if (!it->is_string()) throw ConfigError(key, "expected a regex string");
    cfg.patterns[i] = FieldPattern(key, it->get<std::string>());
  }
  for (auto [key, dest] : {std::pair{"abstracts_min_len", &cfg.abstracts_min_len},
                           std::pair{"titles_min_len", &cfg.titles_min_len}}) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(key, "missing required field");
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
      throw ConfigError(key, "expected a non-negative integer");
    *dest = it->get<std::size_t>();
  }
  auto it = doc.find("targeted_langs");
  if (it == doc.end()) throw ConfigError("targeted_langs", "missing required field");
  if (!it->is_array() || it->empty())
    throw ConfigError("targeted_langs", "expected a non-empty array of language codes");
  for (const auto& v : *it) {
    if (!v.is_string()) throw ConfigError("targeted_langs", "expected language code strings");
    LanguageCode code = LanguageCode::parse(v.get<std::string>());
    if (!code.recognized())
      throw ConfigError("targeted_langs", "unsupported language '" + v.get<std::string>() + "'");
    if (cfg.targets(code)) throw ConfigError("targeted_langs", "duplicate language '" + code.str() + "'");
    cfg.targeted_langs.push_back(code);
  }
  return cfg;
}

std::string decode_body(std::string_view body, std::string_view declared_charset) {
  if (body.find('\0') != std::string_view::npos) throw ExtractError("body contains NUL bytes");
  if (text::is_valid_utf8(body)) return std::string(body);
  std::string cs(declared_charset);
  if (cs == "iso-8859-1" || cs == "latin1" || cs == "latin-1" || cs == "windows-1252" ||
      cs == "cp1252" || cs == "iso-8859-15") {
    icu::UnicodeString u(body.data(), static_cast<int32_t>(body.size()),
                         cs == "iso-8859-15" ? "iso-8859-15" : "windows-1252");
    std::string out;
    u.toUTF8String(out);
    return out;
  }
  std::u32string cps = text::decode(body);
  std::size_t bad = static_cast<std::size_t>(std::count(cps.begin(), cps.end(), U'\xFFFD'));
  if (cps.empty() || bad * 10 > cps.size())
    throw ExtractError("body is not decodable text (" + std::to_string(bad) + " of " +
                       std::to_string(cps.size()) + " characters invalid)");
  return text::encode(cps);
}

namespace {

struct Candidate {
  std::string value;
  std::optional<LanguageCode> lang;
};

class FieldCollector {
 public:
  explicit FieldCollector(const html::Document& doc) : doc_(doc) {}

  std::vector<Candidate> collect(Field field, const FieldPattern& pattern) const {
    std::vector<Candidate> out;
    const auto& els = doc_.elements();
    for (std::size_t i = 1; i < els.size(); ++i) {
      const html::Element& e = els[i];
      if (e.tag == "script" || e.tag == "style") continue;
      std::string ident = identifying_attributes(e);
      if (!ident.empty() && pattern.search(ident)) {
        from_attribute_match(field, i, out);
        continue;
      }
      std::string own = doc_.own_text(i);
      if (own.empty() || text::count_code_points(own) > kMaxLabelChars || !pattern.search(own)) continue;
      from_label_match(field, i, out);
    }
    return out;
  }

  std::optional<std::string> license_link() const {
    for (const auto& e : doc_.elements()) {
      auto rel = e.attr("rel");
      auto href = e.attr("href");
      if (!rel || !href) continue;
      if (text::case_fold(*rel).find("license") != std::string::npos) return text::trim(*href);
    }
    return std::nullopt;
  }

 private:
  static std::string identifying_attributes(const html::Element& e) {
    std::string s;
    for (const auto& a : e.attributes) {
      if (std::find(kValueAttributes.begin(), kValueAttributes.end(), a.name) != kValueAttributes.end())
        continue;
      if (a.value.empty()) continue;
      if (!s.empty()) s.push_back(' ');
      s += a.value;
    }
    return s;
  }

  static std::optional<LanguageCode> lang_attr(const html::Element& e) {
    for (const char* name : {"xml:lang", "lang"}) {
      if (auto v = e.attr(name); v && !text::trim(*v).empty())
        return LanguageCode::from_html_tag(text::trim(*v));
    }
    return std::nullopt;
  }

  std::optional<std::string> first_href(std::size_t i) const {
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t cur = stack.back();
      stack.pop_back();
      const auto& e = doc_.at(cur);
      if (e.tag == "a") {
        if (auto h = e.attr("href")) return text::trim(*h);
      }
      for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) stack.push_back(*it);
    }
    return std::nullopt;
  }

  void from_attribute_match(Field field, std::size_t i, std::vector<Candidate>& out) const {
    const html::Element& e = doc_.at(i);
    if (auto content = e.attr("content")) {
      out.push_back({std::string(*content), lang_attr(e)});
      return;
    }
    if (is_link_field(field)) {
      if (auto href = e.attr("href")) {
        out.push_back({std::string(*href), std::nullopt});
        return;
      }
    }
    bool split = false;
    for (std::size_t c : e.children) {
      if (auto l = lang_attr(doc_.at(c))) {
        out.push_back({doc_.text_content(c), l});
        split = true;
      }
    }
    if (!split) out.push_back({doc_.text_content(i), lang_attr(e)});
  }

  std::optional<LanguageCode> row_language(std::size_t label, std::size_t value) const {
    const auto& tag = doc_.at(label).tag;
    if (tag != "td" && tag != "th") return std::nullopt;
    for (auto s = doc_.next_element_sibling(value); s; s = doc_.next_element_sibling(*s)) {
      std::string t = doc_.text_content(*s);
      if (t.empty() || t.size() > 6) continue;
      LanguageCode code = LanguageCode::from_html_tag(t);
      if (code.recognized()) return code;
    }
    return std::nullopt;
  }

  void from_label_match(Field field, std::size_t i, std::vector<Candidate>& out) const {
    auto value = doc_.next_element_sibling(i);
    if (!value) {
      std::size_t parent = doc_.at(i).parent;
      if (parent != 0 && doc_.at(parent).children.size() == 1) value = doc_.next_element_sibling(parent);
    }
    if (!value) return;
    const html::Element& v = doc_.at(*value);
    std::optional<LanguageCode> lang = lang_attr(v);
    if (!lang) lang = lang_attr(doc_.at(i));
    if (!lang) lang = row_language(i, *value);

    if (is_link_field(field)) {
      if (auto href = first_href(*value)) {
        out.push_back({*href, lang});
        return;
      }
    }
    if (is_list_field(field)) {
      std::vector<std::size_t> items;
      for (std::size_t c : v.children) {
        const auto& t = doc_.at(c).tag;
        if (t == "a" || t == "li" || t == "span" || t == "div" || t == "p") items.push_back(c);
      }
      if (items.size() >= 2) {
        for (std::size_t c : items) out.push_back({doc_.text_content(c), lang});
        return;
      }
    }
    out.push_back({doc_.text_content(*value), lang});
  }

  const html::Document& doc_;
};

}  // namespace

Extraction extract_record(const RawPage& page, const RepositoryConfig& cfg, const LangIdModel& langid) {
  if (page.body.empty()) throw ExtractError("empty page body");
  std::string body;
  if (text::is_valid_utf8(page.body) && page.body.find('\0') == std::string::npos) {
    body = page.body;
  } else {
    html::Document raw = html::parse(page.body);
    body = decode_body(page.body, raw.declared_charset());
  }
  html::Document doc = html::parse(body);
  FieldCollector collector(doc);

  Extraction ex;
  AcademicRecord& r = ex.record;
  r.repository = page.repository;
  r.html_id = page.html_id;

  for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
    auto field = static_cast<Field>(fi);
    auto candidates = collector.collect(field, cfg.patterns[fi]);

    if (is_text_field(field)) {
      TextMap& target = field == Field::titles ? r.titles : r.abstracts;
      std::size_t min_len = field == Field::titles ? cfg.titles_min_len : cfg.abstracts_min_len;
      std::map<LanguageCode, std::size_t> lengths;
      for (auto& c : candidates) {
        std::string t = text::normalize_whitespace(c.value);
        if (t.empty()) continue;
        std::size_t len = text::count_code_points(t);
        if (len < min_len) continue;
        LanguageCode lang;
        if (c.lang && c.lang->recognized()) {
          lang = *c.lang;
        } else {
          LangGuess g = langid.identify(t);
          if (!g.lang.recognized()) {
            ex.warnings.push_back(std::string(regex_key(field)) + ": language of '" +
                                  t.substr(0, 40) + "' could not be identified" +
                                  (c.lang ? " (declared '" + c.lang->str() + "')" : ""));
            continue;
          }
          lang = g.lang;
        }
        if (!cfg.targets(lang)) {
          ex.warnings.push_back(std::string(regex_key(field)) + ": dropped untargeted language '" +
                                lang.str() + "'");
          continue;
        }
        auto it = lengths.find(lang);
        if (it == lengths.end() || len > it->second) {
          lengths[lang] = len;
          target[lang] = std::move(t);
        }
      }
      continue;
    }

    if (is_list_field(field)) {
      std::vector<std::string>& list = field == Field::keywords  ? r.keywords
                                       : field == Field::authors ? r.authors
                                                                 : r.publishers;
      std::set<std::string> seen;
      for (auto& c : candidates) {
        std::string t = text::normalize_whitespace(c.value);
        if (!t.empty() && seen.insert(t).second) list.push_back(std::move(t));
      }
      continue;
    }

    std::string* dest = nullptr;
    switch (field) {
      case Field::date_available: dest = &r.date_available; break;
      case Field::journal: dest = &r.journal; break;
      case Field::bibliographic_citation: dest = &r.bibliographic_citation; break;
      case Field::document_language: dest = &r.document_language; break;
      case Field::link_html: dest = &r.link_html; break;
      case Field::link_pdf: dest = &r.link_pdf; break;
      case Field::document_type: dest = &r.document_type; break;
      case Field::license: dest = &r.license; break;
      case Field::uri: dest = &r.uri; break;
      default: break;
    }
    for (auto& c : candidates) {
      std::string t = text::normalize_whitespace(c.value);
      if (!t.empty()) {
        *dest = std::move(t);
        break;
      }
    }
  }
  if (auto link = collector.license_link()) r.license_link = *link;
  if (r.titles.empty() && r.abstracts.empty())
    ex.warnings.push_back("no title or abstract matched in " + page.repository + "/" +
                          std::to_string(page.html_id));
  return ex;
}

}  // namespace scimine
