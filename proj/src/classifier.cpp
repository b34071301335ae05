#include "scimine/classifier.hpp"

#include <unicode/uchar.h>

#include <json.hpp>
#include <set>

#include "resources.hpp"
#include "scimine/errors.hpp"
#include "scimine/text.hpp"

namespace scimine {

std::vector<std::string> keyword_tokens(std::string_view s) {
  std::u32string cps = text::decode(text::case_fold(text::to_nfc(s)));
  std::vector<std::string> out;
  std::u32string word;
  for (char32_t c : cps) {
    auto u = static_cast<UChar32>(c);
    int8_t type = u_charType(u);
    bool mark = type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
    if (u_isalnum(u) || (mark && !word.empty())) {
      word.push_back(c);
    } else if (!word.empty()) {
      out.push_back(text::encode(word));
      word.clear();
    }
  }
  if (!word.empty()) out.push_back(text::encode(word));
  return out;
}

std::int64_t count_phrase(const std::vector<std::string>& tokens,
                          const std::vector<std::string>& phrase) {
  if (phrase.empty() || tokens.size() < phrase.size()) return 0;
  std::int64_t n = 0;
  std::size_t i = 0;
  while (i + phrase.size() <= tokens.size()) {
    bool match = true;
    for (std::size_t k = 0; k < phrase.size(); ++k) {
      if (tokens[i + k] != phrase[k]) {
        match = false;
        break;
      }
    }
    if (match) {
      ++n;
      i += phrase.size();
    } else {
      ++i;
    }
  }
  return n;
}

DomainLexicon::DomainLexicon(std::map<Domain, std::vector<std::string>> entries) {
  for (Domain d : kFocusedDomains) {
    std::string field(to_string(d));
    auto it = entries.find(d);
    if (it == entries.end() || it->second.empty()) throw ConfigError(field, "keyword list is empty");
    std::set<std::string> seen;
    for (const auto& raw : it->second) {
      auto tokens = keyword_tokens(raw);
      if (tokens.empty() || tokens.size() > 5)
        throw ConfigError(field, "phrase '" + raw + "' must have 1-5 words");
      std::string canonical;
      for (const auto& t : tokens) canonical += (canonical.empty() ? "" : " ") + t;
      if (!seen.insert(canonical).second)
        throw ConfigError(field, "duplicate phrase '" + raw + "'");
      entries_[d].push_back(canonical);
      tokens_[d].push_back(std::move(tokens));
    }
  }
  if (entries.count(Domain::general)) throw ConfigError("general", "general takes no keywords");
}

DomainLexicon DomainLexicon::parse(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid lexicon JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "lexicon must be a JSON object");
  std::map<Domain, std::vector<std::string>> entries;
  for (const auto& [key, value] : doc.items()) {
    if (!key.empty() && key.front() == '_') continue;  // "_comment" and friends
    auto d = parse_domain(key);
    if (!d || *d == Domain::general) throw ConfigError(key, "unknown domain");
    if (!value.is_array()) throw ConfigError(key, "expected an array of phrases");
    for (const auto& v : value) {
      if (!v.is_string()) throw ConfigError(key, "expected an array of phrases");
      entries[*d].push_back(v.get<std::string>());
    }
  }
  return DomainLexicon(std::move(entries));
}

const DomainLexicon& DomainLexicon::starter() {
  static const DomainLexicon lex = parse(resources::get("lexicon.json"));
  return lex;
}

DomainCounts count_keywords(const AcademicRecord& record, const DomainLexicon& lexicon) {
  DomainCounts counts = zero_counts();
  auto add = [&](std::string_view field_text) {
    auto tokens = keyword_tokens(field_text);
    if (tokens.empty()) return;
    for (const auto& [domain, phrases] : lexicon.phrase_tokens())
      for (const auto& phrase : phrases) counts[domain] += count_phrase(tokens, phrase);
  };
  for (const auto& [lang, t] : record.titles) add(t);
  for (const auto& [lang, t] : record.abstracts) add(t);
  for (const auto& k : record.keywords) add(k);
  return counts;
}

Domain classify(const DomainCounts& counts, std::int64_t min_hits) {
  Domain found = Domain::general;
  int positive = 0;
  for (Domain d : kFocusedDomains) {
    auto it = counts.find(d);
    if (it != counts.end() && it->second > 0) {
      ++positive;
      found = d;
    }
  }
  if (positive != 1 || counts.at(found) < min_hits) return Domain::general;
  return found;
}

}  // namespace scimine
