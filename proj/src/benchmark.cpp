#include "scimine/benchmark.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "scimine/errors.hpp"
#include "scimine/filters.hpp"
#include "scimine/rng.hpp"
#include "scimine/text.hpp"

namespace scimine {

double token_ratio(const SentencePair& p) {
  auto a = text::word_count(p.source_text);
  auto b = text::word_count(p.target_text);
  if (a == 0 || b == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(std::max(a, b)) / static_cast<double>(std::min(a, b));
}

bool benchmark_eligible(const SentencePair& p, const BenchmarkSpec& spec) {
  return p.score > spec.score_min && token_ratio(p) <= spec.token_ratio_max &&
         text::word_count(p.source_text) >= spec.min_words &&
         text::word_count(p.target_text) >= spec.min_words;
}

std::map<RecordKey, std::vector<SentencePair>> eligible_by_record(std::span<const SentencePair> pairs,
                                                                  const BenchmarkSpec& spec) {
  std::map<RecordKey, std::vector<SentencePair>> groups;
  Deduplicator seen;
  for (const auto& p : pairs) {
    if (p.domain != spec.domain || p.source_lang != spec.source_lang || p.target_lang != spec.target_lang)
      continue;
    if (!benchmark_eligible(p, spec)) continue;
    if (!seen.insert(p)) continue;
    groups[p.record_key].push_back(p);
  }
  return groups;
}

BenchmarkSplit build_benchmark(std::span<const SentencePair> pairs, const BenchmarkSpec& spec) {
  if (spec.records_to_sample == 0 || spec.records_to_sample % 2 != 0)
    throw std::invalid_argument("records_to_sample must be even and positive");
  auto groups = eligible_by_record(pairs, spec);
  if (groups.size() < spec.records_to_sample)
    throw BenchmarkShortfall(groups.size(), spec.records_to_sample);

  std::vector<const std::vector<SentencePair>*> records;
  records.reserve(groups.size());
  for (const auto& [key, g] : groups) records.push_back(&g);

  SplitMix64 rng(spec.seed);
  const std::size_t n = records.size();
  for (std::size_t i = 0; i < spec.records_to_sample; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(records[i], records[j]);
  }
  std::vector<SentencePair> chosen;
  chosen.reserve(spec.records_to_sample);
  for (std::size_t i = 0; i < spec.records_to_sample; ++i) {
    const auto& g = *records[i];
    chosen.push_back(g[static_cast<std::size_t>(rng.below(g.size()))]);
  }
  seeded_shuffle(chosen, rng);

  BenchmarkSplit split;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    (i % 2 == 0 ? split.dev : split.test).push_back(std::move(chosen[i]));
  return split;
}

std::vector<std::string> verify_benchmark(const BenchmarkSplit& split, const BenchmarkSpec& spec) {
  std::vector<std::string> problems;
  const std::size_t half = spec.records_to_sample / 2;
  if (split.dev.size() != half) problems.push_back("dev has " + std::to_string(split.dev.size()) + " pairs");
  if (split.test.size() != half) problems.push_back("test has " + std::to_string(split.test.size()) + " pairs");
  std::set<RecordKey> records;
  std::set<std::pair<std::string, std::string>> texts;
  auto check = [&](const std::vector<SentencePair>& side, const char* name) {
    for (std::size_t i = 0; i < side.size(); ++i) {
      const auto& p = side[i];
      std::string where = std::string(name) + "[" + std::to_string(i) + "]";
      if (!(p.score > spec.score_min)) problems.push_back(where + ": score not above minimum");
      if (!(token_ratio(p) <= spec.token_ratio_max)) problems.push_back(where + ": token ratio too high");
      if (text::word_count(p.source_text) < spec.min_words || text::word_count(p.target_text) < spec.min_words)
        problems.push_back(where + ": too few words");
      if (!records.insert(p.record_key).second) problems.push_back(where + ": record used twice");
      if (!texts.insert({normalize_for_dedup(p.source_text), normalize_for_dedup(p.target_text)}).second)
        problems.push_back(where + ": pair text repeated");
    }
  };
  check(split.dev, "dev");
  check(split.test, "test");
  return problems;
}

namespace {

std::string one_line(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  return out;
}

}  // namespace

std::map<std::string, std::string> benchmark_files(const BenchmarkSplit& split) {
  std::map<std::string, std::string> files;
  std::string jsonl;
  auto emit = [&](const std::vector<SentencePair>& side, const std::string& name) {
    std::string src, tgt;
    for (const auto& p : side) {
      src += one_line(p.source_text) + "\n";
      tgt += one_line(p.target_text) + "\n";
      std::string line = to_jsonl(p);
      line.pop_back();
      jsonl += line + ",\"split\":\"" + name + "\"}\n";
    }
    files[name + ".src"] = std::move(src);
    files[name + ".tgt"] = std::move(tgt);
  };
  emit(split.dev, "dev");
  emit(split.test, "test");
  files["pairs.jsonl"] = std::move(jsonl);
  return files;
}

}  // namespace scimine
