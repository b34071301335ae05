#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scimine/record.hpp"

namespace scimine {

struct BenchmarkSpec {
  Domain domain = Domain::general;
  LanguageCode source_lang{Lang::en};
  LanguageCode target_lang{Lang::pt};
  /// Even; half go to dev, half to test.
  std::size_t records_to_sample = 2000;
  double score_min = 1.08;
  double token_ratio_max = 1.66;
  std::size_t min_words = 3;
  std::uint64_t seed = 0;

  /// 2000 for focused domains, 6000 for general.
  static std::size_t default_size(Domain d) { return d == Domain::general ? 6000 : 2000; }
};

struct BenchmarkSplit {
  std::vector<SentencePair> dev;
  std::vector<SentencePair> test;
};

/// max/min of whitespace word counts; +inf when a side has no words.
double token_ratio(const SentencePair& p);

/// Passes the three gates: score > score_min, ratio <= token_ratio_max,
/// both sides >= min_words words.
bool benchmark_eligible(const SentencePair& p, const BenchmarkSpec& spec);

/// Eligible pairs matching `spec.domain` and the language pair, grouped by record,
/// with repeated normalized texts dropped (first occurrence kept).
std::map<RecordKey, std::vector<SentencePair>> eligible_by_record(std::span<const SentencePair> pairs,
                                                                  const BenchmarkSpec& spec);

/// Draw records_to_sample records (partial Fisher-Yates over the sorted
/// record keys with SplitMix64(seed)), one pair per record, shuffle, then
/// deal alternately to dev (even positions) and test (odd).
/// Throws BenchmarkShortfall when too few records qualify and
/// std::invalid_argument for an odd or zero size.
BenchmarkSplit build_benchmark(std::span<const SentencePair> pairs, const BenchmarkSpec& spec);

/// Post-hoc check of sizes, gates, disjointness and one pair per record.
/// Returns human-readable violations; empty means valid.
std::vector<std::string> verify_benchmark(const BenchmarkSplit& split, const BenchmarkSpec& spec);

/// File name -> contents: dev.src, dev.tgt, test.src, test.tgt (one
/// sentence per line) and pairs.jsonl (dev then test, tagged with "split").
std::map<std::string, std::string> benchmark_files(const BenchmarkSplit& split);

}  // namespace scimine
