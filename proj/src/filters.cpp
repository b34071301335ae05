#include "scimine/filters.hpp"

#include <unicode/uchar.h>

#include <json.hpp>

namespace scimine {

std::string_view to_string(FilterRule r) {
  switch (r) {
    case FilterRule::identical: return "identical";
    case FilterRule::empty: return "empty";
    case FilterRule::too_long: return "too_long";
    case FilterRule::digits_only: return "digits_only";
    case FilterRule::wrong_language: return "wrong_language";
    case FilterRule::url_email: return "url_email";
    case FilterRule::duplicate: return "duplicate";
  }
  return "duplicate";
}

std::optional<FilterRule> parse_filter_rule(std::string_view s) {
  for (FilterRule r : kAllFilterRules)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

namespace {

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_email(std::string_view t) {
  auto at = t.find('@');
  if (at == 0 || at == std::string_view::npos || t.find('@', at + 1) != std::string_view::npos) return false;
  std::string_view host = t.substr(at + 1);
  auto dot = host.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  std::string_view tld = host.substr(dot + 1);
  if (tld.size() < 2) return false;
  for (char c : tld)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
  return true;
}

}  // namespace

bool is_url_or_email(std::string_view token) {
  constexpr std::string_view kOpen = "([<{\"'";
  constexpr std::string_view kClose = ")]>}\"'.,;:!?";
  while (!token.empty() && kOpen.find(token.front()) != std::string_view::npos) token.remove_prefix(1);
  while (!token.empty() && kClose.find(token.back()) != std::string_view::npos) token.remove_suffix(1);
  if (token.empty()) return false;
  if (starts_with_ci(token, "mailto:")) return true;
  if (starts_with_ci(token, "www.") && token.size() > 4) return true;
  auto scheme = token.find("://");
  if (scheme != std::string_view::npos && scheme > 0 && scheme + 3 < token.size()) {
    for (char c : token.substr(0, scheme))
      if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '+' ||
            c == '-' || c == '.'))
        return false;
    return true;
  }
  return is_email(token);
}

bool is_digits_only(std::string_view s, bool strict) {
  bool any = false;
  for (char32_t c : text::decode(s)) {
    auto u = static_cast<UChar32>(c);
    if (u_charType(u) == U_DECIMAL_DIGIT_NUMBER) {
      any = true;
    } else if (!text::is_space(c) && (strict || !u_ispunct(u))) {
      return false;
    }
  }
  return strict ? any : !text::trim(s).empty();
}

namespace {

bool too_many_urls(std::string_view s, double max_fraction) {
  auto tokens = text::split_words(s);
  if (tokens.empty()) return false;
  std::size_t hits = 0;
  for (auto t : tokens) hits += is_url_or_email(t) ? 1 : 0;
  return static_cast<double>(hits) > max_fraction * static_cast<double>(tokens.size());
}

// URLs and addresses carry no language signal; they are left to the url_email rule.
bool wrong_language(std::string_view s, const LanguageCode& declared, const LangIdModel& model,
                    double min_confidence) {
  std::string prose;
  for (auto t : text::split_words(s)) {
    if (is_url_or_email(t)) continue;
    if (!prose.empty()) prose += ' ';
    prose += t;
  }
  LangGuess g = identify_language(prose, model);
  return g.lang.recognized() && g.lang != declared && g.confidence >= min_confidence;
}

}  // namespace

FilterVerdict apply_filters(const SentencePair& p, const LangIdModel& model, const FilterConfig& cfg) {
  const std::string src = text::normalize_whitespace(p.source_text);
  const std::string tgt = text::normalize_whitespace(p.target_text);
  if (src == tgt) return FilterVerdict::reject(FilterRule::identical);
  if (src.empty() || tgt.empty()) return FilterVerdict::reject(FilterRule::empty);
  if (text::word_count(src) > cfg.max_words || text::word_count(tgt) > cfg.max_words)
    return FilterVerdict::reject(FilterRule::too_long);
  if (is_digits_only(src, cfg.strict_digits) || is_digits_only(tgt, cfg.strict_digits))
    return FilterVerdict::reject(FilterRule::digits_only);
  if (wrong_language(src, p.source_lang, model, cfg.min_language_confidence) ||
      wrong_language(tgt, p.target_lang, model, cfg.min_language_confidence))
    return FilterVerdict::reject(FilterRule::wrong_language);
  if (too_many_urls(src, cfg.max_url_email_fraction) || too_many_urls(tgt, cfg.max_url_email_fraction))
    return FilterVerdict::reject(FilterRule::url_email);
  return FilterVerdict::accept();
}

std::string normalize_for_dedup(std::string_view s) { return text::to_nfc(text::normalize_whitespace(s)); }

bool Deduplicator::insert(std::string_view source, std::string_view target) {
  std::string a = normalize_for_dedup(source);
  std::string b = normalize_for_dedup(target);
  std::string key = std::to_string(a.size());
  key.push_back(':');
  key += a;
  key += b;
  return seen_.insert(text::fnv1a128(key)).second;
}

bool Deduplicator::insert(const SentencePair& p) { return insert(p.source_text, p.target_text); }

std::vector<SentencePair> deduplicate(std::span<const SentencePair> pairs) {
  Deduplicator d;
  std::vector<SentencePair> out;
  for (const auto& p : pairs)
    if (d.insert(p)) out.push_back(p);
  return out;
}

std::size_t FilterReport::total_rejected() const {
  std::size_t n = 0;
  for (const auto& [rule, count] : rejected) n += count;
  return n;
}

std::string FilterReport::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["accepted"] = accepted;
  nlohmann::ordered_json r = nlohmann::ordered_json::object();
  for (FilterRule rule : kAllFilterRules) {
    auto it = rejected.find(rule);
    r[std::string(to_string(rule))] = it == rejected.end() ? 0 : it->second;
  }
  j["rejected"] = std::move(r);
  return j.dump(2);
}

FilterOutcome run_filter_chain(std::span<const SentencePair> pairs, const LangIdModel& model,
                               const FilterConfig& cfg) {
  FilterOutcome out;
  for (FilterRule r : kAllFilterRules) out.report.rejected[r] = 0;
  out.report.input = pairs.size();
  Deduplicator dedup;
  for (const auto& p : pairs) {
    FilterRule rule;
    if (!dedup.insert(p)) {
      rule = FilterRule::duplicate;
    } else if (auto v = apply_filters(p, model, cfg); v.accepted) {
      out.accepted.push_back(p);
      continue;
    } else {
      rule = *v.rejected_by;
    }
    ++out.report.rejected[rule];
    out.rejected.emplace_back(p, rule);
  }
  out.report.accepted = out.accepted.size();
  return out;
}

std::string rejection_line(const SentencePair& pair, FilterRule rule) {
  return "{\"pair\":" + to_jsonl(pair) + ",\"rejected_by\":\"" + std::string(to_string(rule)) + "\"}";
}

}  // namespace scimine
