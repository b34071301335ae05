// scimine: command-line driver for the corpus pipeline.
#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "scimine/metrics.hpp"
#include "scimine/pipeline.hpp"

namespace fs = std::filesystem;
using namespace scimine;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kStage = 3 };

struct Globals {
  std::string config = "pipeline.json";
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<double> threshold;
  std::optional<std::string> margin, retrieval, backend;
  bool quiet = false;
};

PipelineConfig load_config(const Globals& g) {
  PipelineConfig cfg = PipelineConfig::load(g.config);
  if (g.workers) {
    if (*g.workers < 1) throw ConfigError("--workers", "must be at least 1");
    cfg.workers = *g.workers;
  }
  if (g.seed) {
    cfg.seed = *g.seed;
    for (auto& b : cfg.benchmarks) b.seed = *g.seed;
  }
  if (g.k) cfg.mining.k = *g.k;
  if (g.threshold) cfg.mining.threshold = *g.threshold;
  if (g.margin) cfg.mining.margin = parse_margin(*g.margin);
  if (g.retrieval) cfg.mining.retrieval = parse_retrieval(*g.retrieval);
  if (g.backend) cfg.backend = *g.backend;
  if (cfg.mining.k == 0) throw ConfigError("--k", "must be positive");
  if (!(cfg.mining.threshold > 0)) throw ConfigError("--threshold", "must be positive");
  return cfg;
}

void print_report(const StageReport& r, bool quiet) {
  if (quiet) return;
  std::cout << r.stage << ":";
  for (const auto& [k, v] : r.counters) std::cout << " " << k << "=" << v;
  std::cout << "\n";
  for (const auto& n : r.notes) std::cerr << "  " << r.stage << ": " << n << "\n";
}

std::vector<std::string> read_lines_keep_empty(const fs::path& path) {
  std::string body = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < body.size()) {
    auto nl = body.find('\n', start);
    if (nl == std::string::npos) nl = body.size();
    std::string line = body.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine parallel corpora from academic repository pages and score translations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Pipeline config (JSON)")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Benchmark sampling seed");
  app.add_flag("-q,--quiet", g.quiet, "Suppress stage counters");

  auto* extract = app.add_subcommand("extract", "Parse pages into records");
  auto* classify = app.add_subcommand("classify", "Assign domains to records");
  auto* mine = app.add_subcommand("mine", "Segment and mine sentence pairs");
  mine->add_option("--k", g.k, "Neighbourhood size");
  mine->add_option("--threshold", g.threshold, "Margin score threshold");
  mine->add_option("--margin", g.margin, "ratio | distance");
  mine->add_option("--retrieval", g.retrieval, "mutual | forward | backward");
  mine->add_option("--backend", g.backend, "hash | hash:DIM | external:PATH");
  auto* filter = app.add_subcommand("filter", "Deduplicate and filter mined pairs");
  auto* benchmark = app.add_subcommand("benchmark", "Build dev/test splits");
  auto* run = app.add_subcommand("run", "Run extract, classify, mine, filter and benchmark");

  auto* stats = app.add_subcommand("stats", "Corpus size tables");
  bool stats_as_json = false;
  stats->add_flag("--json", stats_as_json, "Emit JSON instead of tables");

  auto* score = app.add_subcommand("score", "BLEU or chrF2++ of a hypothesis file");
  std::string metric, hyp_path, ref_path;
  bool with_bootstrap = false;
  std::size_t bs_resamples = 1000;
  std::uint64_t bs_seed = 12345;
  score->add_option("--metric", metric, "bleu | chrf2pp")->required()->check(CLI::IsMember({"bleu", "chrf2pp"}));
  score->add_option("--hyp", hyp_path, "Hypotheses, one per line")->required()->check(CLI::ExistingFile);
  score->add_option("--ref", ref_path, "References, one per line")->required()->check(CLI::ExistingFile);
  score->add_flag("--bootstrap", with_bootstrap, "Add a paired bootstrap confidence interval");
  score->add_option("--resamples", bs_resamples, "Bootstrap resamples")->check(CLI::PositiveNumber);
  score->add_option("--bootstrap-seed", bs_seed, "Bootstrap seed");

  auto* fetch = app.add_subcommand("fetch", "Download pages listed as '<html_id> <url>'");
  std::string repo, urls;
  fetch->add_option("--repository", repo, "Repository name")->required();
  fetch->add_option("--urls", urls, "URL list")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (*score) {
      auto hyps = read_lines_keep_empty(hyp_path);
      auto refs = read_lines_keep_empty(ref_path);
      if (hyps.size() != refs.size())
        throw DataError("hypothesis and reference files differ in line count (" + std::to_string(hyps.size()) +
                        " vs " + std::to_string(refs.size()) + ")");
      if (hyps.empty()) throw DataError("no segments to score");
      std::optional<BootstrapConfig> bs;
      if (with_bootstrap) bs = BootstrapConfig{bs_resamples, bs_seed};
      MetricResult r = metric == "bleu" ? score_bleu(hyps, refs, bs) : score_chrf2pp(hyps, refs, bs);
      std::cout << r.format() << "\n";
      return kOk;
    }

    PipelineConfig cfg = load_config(g);
    if (*extract) print_report(cmd_extract(cfg), g.quiet);
    if (*classify) print_report(cmd_classify(cfg), g.quiet);
    if (*mine) print_report(cmd_mine(cfg), g.quiet);
    if (*filter) print_report(cmd_filter(cfg), g.quiet);
    if (*benchmark) print_report(cmd_benchmark(cfg), g.quiet);
    if (*run) {
      using Stage = StageReport (*)(const PipelineConfig&);
      const std::pair<const char*, Stage> stages[] = {{"extract", cmd_extract},
                                                      {"classify", cmd_classify},
                                                      {"mine", cmd_mine},
                                                      {"filter", cmd_filter},
                                                      {"benchmark", cmd_benchmark}};
      for (const auto& [name, fn] : stages) {
        stage = name;
        print_report(fn(cfg), g.quiet);
      }
    }
    if (*stats) {
      CorpusStats s = cmd_stats(cfg);
      std::cout << (stats_as_json ? stats_json(s) + "\n" : format_stats(s));
    }
    if (*fetch) print_report(cmd_fetch(cfg, repo, urls), g.quiet);
    return kOk;
  } catch (const DataError& e) {
    std::cerr << "scimine " << stage << ": " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "scimine " << stage << ": " << e.what() << "\n";
    return kStage;
  }
}
