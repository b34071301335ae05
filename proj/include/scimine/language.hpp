#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace scimine {

enum class Lang { en, es, fr, pt, other };

/// Two-letter language tag. The four targeted languages are recognized;
/// any other tag is kept verbatim in the `other` variant.
class LanguageCode {
 public:
  LanguageCode() = default;
  explicit LanguageCode(Lang lang) : lang_(lang) {}

  /// Exact (case-insensitive) match against en/es/fr/pt; anything else is `other`.
  static LanguageCode parse(std::string_view tag);
  /// Lenient parse for tags found in the wild: "pt_BR", "en-US", "por", "fre".
  static LanguageCode from_html_tag(std::string_view tag);
  static LanguageCode other(std::string raw) {
    LanguageCode c(Lang::other);
    c.raw_ = std::move(raw);
    return c;
  }

  Lang lang() const noexcept { return lang_; }
  bool recognized() const noexcept { return lang_ != Lang::other; }
  /// "en", "es", "fr", "pt", or the raw tag for `other`.
  std::string str() const;

  friend bool operator==(const LanguageCode&, const LanguageCode&) = default;
  friend std::strong_ordering operator<=>(const LanguageCode& a, const LanguageCode& b) {
    if (auto c = a.lang_ <=> b.lang_; c != 0) return c;
    return a.raw_ <=> b.raw_;
  }

 private:
  Lang lang_ = Lang::other;
  std::string raw_;
};

inline constexpr std::array<Lang, 4> kTargetedLangs = {Lang::en, Lang::es, Lang::fr, Lang::pt};

std::string_view to_string(Lang lang);

enum class Domain { cancer, energy, neuroscience, transportation, general };

/// The four focused domains, in record-file order.
inline constexpr std::array<Domain, 4> kFocusedDomains = {Domain::cancer, Domain::energy,
                                                          Domain::transportation,
                                                          Domain::neuroscience};
inline constexpr std::array<Domain, 5> kAllDomains = {Domain::cancer, Domain::energy,
                                                      Domain::neuroscience, Domain::transportation,
                                                      Domain::general};

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view tag);

}  // namespace scimine
