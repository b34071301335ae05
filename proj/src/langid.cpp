#include "scimine/langid.hpp"

#include <unicode/uchar.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "resources.hpp"
#include "scimine/errors.hpp"
#include "scimine/text.hpp"

namespace scimine {

namespace {

std::unordered_map<std::string, std::size_t> count_ngrams(std::string_view s) {
  std::unordered_map<std::string, std::size_t> counts;
  std::u32string cps = text::decode(s);
  std::u32string word;
  auto emit_word = [&] {
    if (word.empty()) return;
    std::u32string padded = U"_" + word + U"_";
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t i = 0; i + n <= padded.size(); ++i) {
        if (n == 1 && padded[i] == U'_') continue;
        counts[text::encode(std::u32string_view(padded).substr(i, n))]++;
      }
    }
    word.clear();
  };
  for (char32_t c : cps) {
    if (u_isalpha(static_cast<UChar32>(c))) {
      word.push_back(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
    } else {
      emit_word();
    }
  }
  emit_word();
  return counts;
}

}  // namespace

std::vector<std::string> ranked_ngrams(std::string_view text) {
  auto counts = count_ngrams(text);
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (auto& [g, c] : items) out.push_back(std::move(g));
  return out;
}

NgramProfile build_profile(std::string_view text, std::size_t size) {
  NgramProfile p;
  auto ranked = ranked_ngrams(text);
  for (std::size_t i = 0; i < ranked.size() && i < size; ++i)
    p.ranks.emplace(std::move(ranked[i]), static_cast<int>(i));
  return p;
}

NgramProfile parse_profile(std::string_view contents) {
  NgramProfile p;
  std::size_t line_no = 0;
  while (!contents.empty()) {
    auto nl = contents.find('\n');
    std::string_view line = contents.substr(0, nl);
    contents = nl == std::string_view::npos ? std::string_view{} : contents.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw ParseError("line " + std::to_string(line_no), "expected 'ngram<TAB>rank'");
    int rank = 0;
    auto rank_text = line.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (ec != std::errc() || ptr != rank_text.data() + rank_text.size() || rank < 0)
      throw ParseError("line " + std::to_string(line_no), "bad rank");
    p.ranks.emplace(std::string(line.substr(0, tab)), rank);
  }
  return p;
}

std::string format_profile(const NgramProfile& profile) {
  std::vector<std::pair<int, std::string>> items;
  for (const auto& [g, r] : profile.ranks) items.emplace_back(r, g);
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto& [r, g] : items) out += g + '\t' + std::to_string(r) + '\n';
  return out;
}

void LangIdModel::add_profile(Lang lang, NgramProfile profile) {
  profiles_[lang] = std::move(profile);
}

const LangIdModel& LangIdModel::builtin() {
  static const LangIdModel model = [] {
    LangIdModel m;
    for (Lang l : kTargetedLangs) {
      std::string name = "langid/" + std::string(to_string(l)) + ".profile";
      m.add_profile(l, parse_profile(resources::get(name)));
    }
    return m;
  }();
  return model;
}

LangGuess LangIdModel::identify(std::string_view s) const {
  if (text::count_code_points(text::normalize_whitespace(s)) < kMinChars || profiles_.empty())
    return {LanguageCode::other(""), 0.0};
  auto ranked = ranked_ngrams(s);
  if (ranked.size() > kProfileSize) ranked.resize(kProfileSize);
  if (ranked.empty()) return {LanguageCode::other(""), 0.0};

  const auto penalty = static_cast<long>(kProfileSize);
  long best = std::numeric_limits<long>::max(), second = std::numeric_limits<long>::max();
  Lang best_lang = Lang::other;
  for (const auto& [lang, profile] : profiles_) {
    long d = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      auto it = profile.ranks.find(ranked[i]);
      d += it == profile.ranks.end() ? penalty : std::labs(static_cast<long>(i) - it->second);
    }
    if (d < best) {
      second = best;
      best = d;
      best_lang = lang;
    } else if (d < second) {
      second = d;
    }
  }
  double confidence = 1.0;
  if (second != std::numeric_limits<long>::max()) {
    double per_ngram = static_cast<double>(second - best) / static_cast<double>(ranked.size());
    confidence = 1.0 - std::exp(-per_ngram / kConfidenceScale);
  }
  return {LanguageCode(best_lang), confidence};
}

LangGuess identify_language(std::string_view text, const LangIdModel& model) {
  return model.identify(text);
}

}  // namespace scimine
