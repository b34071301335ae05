#include "scimine/language.hpp"

#include <algorithm>
#include <cctype>

namespace scimine {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Lang> exact(std::string_view lowered) {
  if (lowered == "en") return Lang::en;
  if (lowered == "es") return Lang::es;
  if (lowered == "fr") return Lang::fr;
  if (lowered == "pt") return Lang::pt;
  return std::nullopt;
}

}  // namespace

LanguageCode LanguageCode::parse(std::string_view tag) {
  if (auto l = exact(lower_ascii(tag))) return LanguageCode(*l);
  return other(std::string(tag));
}

LanguageCode LanguageCode::from_html_tag(std::string_view tag) {
  std::string lowered = lower_ascii(tag);
  auto cut = lowered.find_first_of("-_");
  std::string primary = lowered.substr(0, cut);
  if (auto l = exact(primary)) return LanguageCode(*l);
  if (primary == "eng") return LanguageCode(Lang::en);
  if (primary == "spa") return LanguageCode(Lang::es);
  if (primary == "fra" || primary == "fre") return LanguageCode(Lang::fr);
  if (primary == "por") return LanguageCode(Lang::pt);
  return other(std::string(tag));
}

std::string LanguageCode::str() const {
  if (lang_ == Lang::other) return raw_;
  return std::string(to_string(lang_));
}

std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::en: return "en";
    case Lang::es: return "es";
    case Lang::fr: return "fr";
    case Lang::pt: return "pt";
    case Lang::other: return "other";
  }
  return "other";
}

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::cancer: return "cancer";
    case Domain::energy: return "energy";
    case Domain::neuroscience: return "neuroscience";
    case Domain::transportation: return "transportation";
    case Domain::general: return "general";
  }
  return "general";
}

std::optional<Domain> parse_domain(std::string_view tag) {
  for (Domain d : kAllDomains)
    if (to_string(d) == tag) return d;
  return std::nullopt;
}

}  // namespace scimine
