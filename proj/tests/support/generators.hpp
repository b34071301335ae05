#pragma once

// Hand-rolled generators for property tests. All take an explicit engine so
// a failing case can be replayed from its seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scimine/record.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

/// Lowercase word over a mixed Latin alphabet (accents included).
std::string random_word(Rng& rng, std::size_t min_len = 1, std::size_t max_len = 10);

/// Running text meant to stress the sentence splitter: abbreviations,
/// decimals, initials, quotes, ellipses, odd spacing, non-Latin scripts.
std::string random_abstract(Rng& rng);

/// Arbitrary (possibly invalid) bytes.
std::string random_bytes(Rng& rng, std::size_t max_len);

/// Sentence of `words` random words, capitalized, with a final period.
std::string random_sentence(Rng& rng, std::size_t words);

scimine::AcademicRecord random_record(Rng& rng);

scimine::SentencePair random_pair(Rng& rng);

}  // namespace testing

namespace testing {

/// Pair pool for benchmark tests. `eligible` records of the given domain and
/// language pair each get at least one pair passing the default gates, mixed
/// with failing ones; `ineligible` records get only failing pairs; some noise
/// pairs from other domains and language pairs are added. Texts are unique.
std::vector<scimine::SentencePair> benchmark_pool(Rng& rng, std::size_t eligible, std::size_t ineligible,
                                                  scimine::Domain domain, scimine::Lang source,
                                                  scimine::Lang target);

}  // namespace testing
