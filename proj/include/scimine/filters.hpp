#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scimine/langid.hpp"
#include "scimine/record.hpp"
#include "scimine/text.hpp"

namespace scimine {

enum class FilterRule { identical, empty, too_long, digits_only, wrong_language, url_email, duplicate };

inline constexpr std::array<FilterRule, 7> kAllFilterRules = {
    FilterRule::identical,      FilterRule::empty,     FilterRule::too_long, FilterRule::digits_only,
    FilterRule::wrong_language, FilterRule::url_email, FilterRule::duplicate};

std::string_view to_string(FilterRule r);
std::optional<FilterRule> parse_filter_rule(std::string_view s);

struct FilterVerdict {
  bool accepted = true;
  std::optional<FilterRule> rejected_by;

  static FilterVerdict accept() { return {}; }
  static FilterVerdict reject(FilterRule r) { return {false, r}; }
  friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

struct FilterConfig {
  std::size_t max_words = 250;
  /// Rule d: digits only, instead of digits, punctuation and whitespace.
  bool strict_digits = false;
  double min_language_confidence = 0.2;
  /// Rule f fires when the URL/e-mail share of a side's tokens exceeds this.
  double max_url_email_fraction = 0.5;
};

/// Token looks like a URL (scheme://, www., mailto:) or an e-mail address,
/// ignoring surrounding brackets, quotes and trailing punctuation.
bool is_url_or_email(std::string_view token);

/// Non-blank and made only of digits, whitespace and (unless strict) punctuation.
bool is_digits_only(std::string_view s, bool strict);

/// Rules in order: identical, empty, too_long, digits_only, wrong_language,
/// url_email. The first violation wins.
FilterVerdict apply_filters(const SentencePair& pair, const LangIdModel& model = LangIdModel::builtin(),
                            const FilterConfig& cfg = {});

/// Trim, collapse whitespace, NFC.
std::string normalize_for_dedup(std::string_view s);

/// Seen-set of normalized (source, target) pairs, kept as 128-bit hashes.
class Deduplicator {
 public:
  /// True the first time a normalized pair is seen.
  bool insert(const SentencePair& pair);
  bool insert(std::string_view source, std::string_view target);
  std::size_t size() const noexcept { return seen_.size(); }

 private:
  std::unordered_set<text::Hash128, text::Hash128Hasher> seen_;
};

/// First occurrence of each normalized pair, input order preserved.
std::vector<SentencePair> deduplicate(std::span<const SentencePair> pairs);

struct FilterReport {
  std::size_t input = 0;
  std::size_t accepted = 0;
  std::map<FilterRule, std::size_t> rejected;

  std::size_t total_rejected() const;
  /// {"input":..,"accepted":..,"rejected":{rule:count,...}} with every rule listed.
  std::string to_json() const;
};

struct FilterOutcome {
  std::vector<SentencePair> accepted;
  std::vector<std::pair<SentencePair, FilterRule>> rejected;
  FilterReport report;
};

/// Deduplicate, then apply the rules, keeping input order.
FilterOutcome run_filter_chain(std::span<const SentencePair> pairs,
                               const LangIdModel& model = LangIdModel::builtin(),
                               const FilterConfig& cfg = {});

/// Rejection log line: {"pair":{...},"rejected_by":"rule"}.
std::string rejection_line(const SentencePair& pair, FilterRule rule);

}  // namespace scimine
