#include "scimine/segmenter.hpp"

#include <unicode/uchar.h>

#include <array>
#include <map>

#include "resources.hpp"
#include "scimine/text.hpp"

namespace scimine {

namespace {

constexpr std::u32string_view kClosers = U"\"')]}”’»";
constexpr std::u32string_view kOpeners = U"\"'([{“‘«„¿¡";

bool starts_sentence(char32_t c) {
  auto u = static_cast<UChar32>(c);
  return u_isupper(u) || u_istitle(u) || u_isdigit(u) || kOpeners.find(c) != std::u32string_view::npos;
}

std::string lower_token(std::u32string_view tok) {
  while (!tok.empty() && kOpeners.find(tok.front()) != std::u32string_view::npos) tok.remove_prefix(1);
  std::u32string out;
  for (char32_t c : tok) out.push_back(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  return text::encode(out);
}

/// The '.' at `dot` ends an abbreviation or initial.
bool is_abbreviation(const std::u32string& cps, std::size_t dot, const SegmenterRules& rules) {
  std::size_t start = dot;
  while (start > 0 && cps[start - 1] != U' ') --start;
  std::u32string_view tok(cps.data() + start, dot - start);
  std::string word = lower_token(tok);
  if (word.empty()) return false;
  if (text::count_code_points(word) == 1 && u_isalpha(static_cast<UChar32>(text::decode(word)[0])))
    return true;
  if (rules.abbreviations.count(word)) return true;
  if (start >= 2) {
    std::size_t prev = start - 1;
    std::size_t pstart = prev;
    while (pstart > 0 && cps[pstart - 1] != U' ') --pstart;
    std::string two = lower_token(std::u32string_view(cps.data() + pstart, prev - pstart)) + " " + word;
    if (rules.abbreviations.count(two)) return true;
  }
  return false;
}

}  // namespace

SegmenterRules SegmenterRules::from_abbreviation_list(Lang lang, std::string_view contents) {
  SegmenterRules r;
  r.lang = lang;
  while (!contents.empty()) {
    auto nl = contents.find('\n');
    std::string line = text::normalize_whitespace(contents.substr(0, nl));
    contents = nl == std::string_view::npos ? std::string_view{} : contents.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    if (line.back() == '.') line.pop_back();
    r.abbreviations.insert(text::case_fold(line));
  }
  return r;
}

const SegmenterRules& SegmenterRules::builtin(Lang lang) {
  static const std::map<Lang, SegmenterRules> rules = [] {
    std::map<Lang, SegmenterRules> m;
    for (Lang l : {Lang::en, Lang::es, Lang::fr, Lang::pt, Lang::other}) {
      std::string name = "abbreviations/" +
                         std::string(l == Lang::other ? "default" : to_string(l)) + ".txt";
      m[l] = from_abbreviation_list(l, resources::get(name));
    }
    return m;
  }();
  return rules.at(lang);
}

std::vector<std::string> split_sentences(std::string_view input, const SegmenterRules& rules) {
  std::u32string cps = text::decode(text::normalize_whitespace(input));
  std::vector<std::string> out;
  const std::size_t n = cps.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (rules.terminators.find(cps[i]) == std::u32string::npos) {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    std::size_t end = i;
    while (end + 1 < n && rules.terminators.find(cps[end + 1]) != std::u32string::npos) ++end;
    std::size_t run_end = end;
    while (end + 1 < n && kClosers.find(cps[end + 1]) != std::u32string_view::npos) ++end;
    i = end + 1;
    if (end + 2 >= n || cps[end + 1] != U' ' || !starts_sentence(cps[end + 2])) continue;
    if (run_begin == run_end && cps[run_begin] == U'.' && is_abbreviation(cps, run_begin, rules))
      continue;
    out.push_back(text::encode(std::u32string_view(cps).substr(start, end + 1 - start)));
    start = end + 2;
    i = start;
  }
  if (start < n) out.push_back(text::encode(std::u32string_view(cps).substr(start)));
  return out;
}

}  // namespace scimine
