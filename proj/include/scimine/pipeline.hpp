#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/benchmark.hpp"
#include "scimine/errors.hpp"
#include "scimine/filters.hpp"
#include "scimine/miner.hpp"
#include "scimine/record.hpp"

namespace scimine {

namespace fs = std::filesystem;

/// A stage failed for a reason other than bad input data.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what) : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Pipeline settings, read from a JSON file. Relative paths resolve against
/// the file's directory.
///
///   repos_dir     pages as <repository>/<html_id>.html
///   configs_dir   repository configs as <repository>.json
///   lexicon_path  optional; the built-in starter lexicon otherwise
///   output_dir    created on demand
///   workers, seed, mining{k,threshold,margin,retrieval,backend},
///   filter{max_words,strict_digits,min_language_confidence,max_url_email_fraction},
///   classify{min_hits}, benchmarks[{domain,pair,records,score_min,token_ratio_max,min_words}],
///   benchmark_on_shortfall ("fail" or "skip")
struct PipelineConfig {
  fs::path repos_dir;
  fs::path configs_dir;
  std::optional<fs::path> lexicon_path;
  fs::path output_dir;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  MiningOptions mining;
  std::string backend = "hash";
  FilterConfig filter;
  std::int64_t min_hits = 1;
  std::vector<BenchmarkSpec> benchmarks;
  bool skip_shortfall = false;

  /// Throws ConfigError for malformed values or missing input directories.
  static PipelineConfig parse(std::string_view json, const fs::path& base_dir);
  static PipelineConfig load(const fs::path& file);
};

/// Default benchmark set: every domain for en-es, en-pt and
/// en-fr, 2000 records (6000 for general).
std::vector<BenchmarkSpec> default_benchmarks(std::uint64_t seed);

/// Per-stage counters, also stored under "stages" in <output_dir>/manifest.json.
struct StageReport {
  std::string stage;
  std::map<std::string, std::int64_t> counters;
  std::vector<std::string> notes;
};

// Each stage reads the previous stage's directory under output_dir and
// replaces its own directory atomically (written to a temporary sibling,
// then renamed). Failures leave earlier outputs untouched.
StageReport cmd_extract(const PipelineConfig& cfg);   // -> records/
StageReport cmd_classify(const PipelineConfig& cfg);  // -> classified/
StageReport cmd_mine(const PipelineConfig& cfg);      // -> mined/pairs.jsonl, mined/mono.jsonl
StageReport cmd_filter(const PipelineConfig& cfg);    // -> corpus/
StageReport cmd_benchmark(const PipelineConfig& cfg); // -> benchmark/<domain>.<pair>/

struct CorpusStats {
  /// domain -> pair label ("en-es") -> count
  std::map<Domain, std::map<std::string, std::int64_t>> parallel;
  /// domain -> language ("en") -> count
  std::map<Domain, std::map<std::string, std::int64_t>> monolingual;
};

CorpusStats compute_stats(const std::vector<SentencePair>& pairs,
                          const std::vector<MonolingualSentence>& mono);
/// Two plain-text tables (parallel by pair, monolingual by language) with a
/// Total row and thousands separators.
std::string format_stats(const CorpusStats& stats);
std::string stats_json(const CorpusStats& stats);
/// Statistics of <output_dir>/corpus.
CorpusStats cmd_stats(const PipelineConfig& cfg);

/// Download "<html_id> <url>" lines into <repos_dir>/<repository>/<html_id>.html.
/// Any URL scheme libcurl supports (including file://). Throws StageError
/// when built without libcurl.
StageReport cmd_fetch(const PipelineConfig& cfg, const std::string& repository, const fs::path& url_list);

std::string read_file(const fs::path& path);
/// Thousands separators: 1234567 -> "1,234,567".
std::string group_thousands(std::int64_t n);
std::string domain_label(Domain d);

}  // namespace scimine
