#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scimine/language.hpp"

namespace scimine {

/// Ranked character n-gram profile (n = 1..3, word-boundary padded with '_').
/// Rank 0 is the most frequent n-gram.
struct NgramProfile {
  std::unordered_map<std::string, int> ranks;
  std::size_t size() const noexcept { return ranks.size(); }
};

struct LangGuess {
  LanguageCode lang;
  double confidence = 0.0;
};

/// Rank-order ("out-of-place") n-gram language identifier.
///
/// A text is lowercased, split into letter runs, each run padded as `_word_`,
/// and its 1..3-grams counted and ranked. Distance to a language profile is
/// the sum over the text's n-grams of |rank_text - rank_profile|, or
/// `kProfileSize` for n-grams absent from the profile. The nearest profile
/// wins. Confidence grows with the runner-up's excess distance per text
/// n-gram: 1 - exp(-((d2 - d1) / N) / kConfidenceScale), in [0, 1).
class LangIdModel {
 public:
  static constexpr std::size_t kProfileSize = 300;
  static constexpr std::size_t kMinChars = 20;
  /// Rank positions per n-gram at which confidence reaches 1 - 1/e.
  static constexpr double kConfidenceScale = 10.0;

  /// Profiles for en/es/fr/pt compiled into the library.
  static const LangIdModel& builtin();

  void add_profile(Lang lang, NgramProfile profile);
  const std::map<Lang, NgramProfile>& profiles() const noexcept { return profiles_; }

  LangGuess identify(std::string_view text) const;

 private:
  std::map<Lang, NgramProfile> profiles_;
};

/// Profile file: one "ngram<TAB>rank" per line; '#' comments and blank lines skipped.
NgramProfile parse_profile(std::string_view contents);
std::string format_profile(const NgramProfile& profile);

/// Top-`size` ranked n-grams of a text (ties broken by byte order).
NgramProfile build_profile(std::string_view text, std::size_t size = LangIdModel::kProfileSize);

/// Ranked n-gram list of a text, most frequent first.
std::vector<std::string> ranked_ngrams(std::string_view text);

/// Texts shorter than LangIdModel::kMinChars code points yield (other, 0).
LangGuess identify_language(std::string_view text, const LangIdModel& model);

}  // namespace scimine
