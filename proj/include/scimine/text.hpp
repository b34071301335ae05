#pragma once

// UTF-8 helpers shared by every stage. Strings are UTF-8 std::string throughout.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scimine::text {

/// Decode to code points; invalid sequences become U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

bool is_valid_utf8(std::string_view s);
/// Replace invalid sequences with U+FFFD.
std::string sanitize_utf8(std::string_view s);

std::size_t count_code_points(std::string_view s);

bool is_space(char32_t cp);

/// Trim and collapse every run of Unicode whitespace to one ASCII space.
std::string normalize_whitespace(std::string_view s);
std::string trim(std::string_view s);

/// Unicode NFC.
std::string to_nfc(std::string_view s);
/// Full Unicode case folding.
std::string case_fold(std::string_view s);

/// Whitespace-delimited tokens.
std::vector<std::string_view> split_words(std::string_view s);
std::size_t word_count(std::string_view s);

/// 64-bit FNV-1a (offset 0xcbf29ce484222325, prime 0x100000001b3).
std::uint64_t fnv1a64(std::string_view bytes);

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const Hash128&, const Hash128&) = default;
};

/// 128-bit FNV-1a (offset 0x6c62272e07bb014262b821756295c58d,
/// prime 2^88 + 0x13b).
Hash128 fnv1a128(std::string_view bytes);

struct Hash128Hasher {
  std::size_t operator()(const Hash128& h) const noexcept {
    return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ULL));
  }
};

}  // namespace scimine::text
