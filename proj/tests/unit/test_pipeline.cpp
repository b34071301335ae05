#include <doctest.h>

#include <cstdlib>
#include <json.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scimine/errors.hpp"
#include "scimine/pipeline.hpp"

using namespace scimine;

namespace {

SentencePair en_pt(Domain d, int i) {
  SentencePair p;
  p.source_text = "Sentence number " + std::to_string(i) + ".";
  p.target_text = "Frase número " + std::to_string(i) + ".";
  p.source_lang = LanguageCode(Lang::en);
  p.target_lang = LanguageCode(Lang::pt);
  p.score = 1.2;
  p.domain = d;
  p.record_key = {"r", i};
  return p;
}

std::string with(const std::string& key, const nlohmann::json& value) {
  auto j = nlohmann::json::parse(testing::slurp(testing::fixtures() / "pipeline/pipeline.json"));
  if (value.is_null()) j.erase(key);
  else j[key] = value;
  return j.dump();
}

std::string config_error_field(const std::string& json) {
  try {
    PipelineConfig::parse(json, testing::fixtures() / "pipeline");
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

StageReport run_all(const PipelineConfig& cfg) {
  cmd_extract(cfg);
  cmd_classify(cfg);
  cmd_mine(cfg);
  cmd_filter(cfg);
  return cmd_benchmark(cfg);
}

std::vector<SentencePair> read_pairs(const fs::path& file) {
  std::vector<SentencePair> out;
  for (const auto& line : testing::lines_of(file))
    if (!line.empty()) out.push_back(parse_pair_line(line));
  return out;
}

}  // namespace

TEST_CASE("stats table for a constructed corpus") {
  std::vector<SentencePair> pairs;
  for (int i = 0; i < 7; ++i) pairs.push_back(en_pt(Domain::energy, i));
  for (int i = 0; i < 3; ++i) pairs.push_back(en_pt(Domain::cancer, 10 + i));
  std::vector<MonolingualSentence> mono = {{"Uma frase.", LanguageCode(Lang::pt), Domain::general, {"r", 1}, Origin::abstract}};
  CorpusStats s = compute_stats(pairs, mono);
  CHECK(s.parallel.at(Domain::energy).at("en-pt") == 7);
  CHECK(s.parallel.at(Domain::cancer).at("en-pt") == 3);
  CHECK(s.parallel.at(Domain::general).at("en-pt") == 0);
  CHECK(s.monolingual.at(Domain::general).at("pt") == 1);

  std::string table = format_stats(s);
  CHECK(table ==
        "Parallel sentence pairs\n"
        "Domain          EN-ES  EN-PT  EN-FR\n"
        "-----------------------------------\n"
        "Cancer              0      3      0\n"
        "Energy              0      7      0\n"
        "Neuroscience        0      0      0\n"
        "Transportation      0      0      0\n"
        "General             0      0      0\n"
        "-----------------------------------\n"
        "Total               0     10      0\n"
        "\n"
        "Monolingual sentences\n"
        "Domain          EN  ES  FR  PT\n"
        "------------------------------\n"
        "Cancer           0   0   0   0\n"
        "Energy           0   0   0   0\n"
        "Neuroscience     0   0   0   0\n"
        "Transportation   0   0   0   0\n"
        "General          0   0   0   1\n"
        "------------------------------\n"
        "Total            0   0   0   1\n");

  auto j = nlohmann::json::parse(stats_json(s));
  CHECK(j["parallel"]["energy"]["en-pt"] == 7);
  CHECK(j["parallel"]["total"]["en-pt"] == 10);
  CHECK(j["monolingual"]["total"]["pt"] == 1);
}

TEST_CASE("empty corpus gives an all-zero table") {
  CorpusStats s = compute_stats({}, {});
  for (const auto& [d, row] : s.parallel)
    for (const auto& [col, n] : row) CHECK(n == 0);
  std::string table = format_stats(s);
  CHECK(table.find("Total               0      0      0\n") != std::string::npos);
  CHECK(group_thousands(0) == "0");
  CHECK(group_thousands(999) == "999");
  CHECK(group_thousands(1000) == "1,000");
  CHECK(group_thousands(11700912) == "11,700,912");
  CHECK(group_thousands(-1234) == "-1,234");
}

TEST_CASE("pipeline configuration") {
  PipelineConfig cfg = PipelineConfig::load(testing::fixtures() / "pipeline/pipeline.json");
  CHECK(cfg.workers == 2);
  CHECK(cfg.seed == 7);
  CHECK(cfg.mining.k == 4);
  CHECK(cfg.mining.threshold == 0.98);
  CHECK(cfg.benchmarks.size() == 6);
  CHECK(cfg.benchmarks[2].target_lang == LanguageCode(Lang::es));
  CHECK(cfg.benchmarks[2].domain == Domain::transportation);
  CHECK(cfg.benchmarks[4].records_to_sample == 4);
  CHECK(cfg.benchmarks[0].score_min == 1.08);
  CHECK(cfg.repos_dir == testing::fixtures() / "pipeline/repos");
  CHECK_FALSE(cfg.skip_shortfall);

  CHECK(config_error_field(with("repos_dir", nullptr)) == "repos_dir");
  CHECK(config_error_field(with("repos_dir", "missing-dir")) == "repos_dir");
  CHECK(config_error_field(with("workers", 0)) == "workers");
  CHECK(config_error_field(with("mining", {{"margin", "cosine"}})) == "margin");
  CHECK(config_error_field(with("mining", {{"threshold", 0}})) == "mining.threshold");
  CHECK(config_error_field(with("benchmarks", {{{"domain", "energy"}, {"pair", "en-en"}, {"records", 2}}})) ==
        "benchmarks[0].pair");
  CHECK(config_error_field(with("benchmarks", {{{"domain", "energy"}, {"pair", "en-pt"}, {"records", 3}}})) ==
        "benchmarks[0].records");
  CHECK(config_error_field(with("benchmarks", {{{"domain", "physics"}, {"pair", "en-pt"}, {"records", 2}}})) ==
        "benchmarks[0].domain");
  CHECK(config_error_field(with("benchmark_on_shortfall", "ignore")) == "benchmark_on_shortfall");
  CHECK(config_error_field("[]") != "<accepted>");

  PipelineConfig defaults = PipelineConfig::parse(with("benchmarks", nullptr), testing::fixtures() / "pipeline");
  CHECK(defaults.benchmarks.size() == 15);
  CHECK(defaults.benchmarks.back().records_to_sample == 6000);
  CHECK_THROWS_AS(PipelineConfig::load(testing::fixtures() / "nope.json"), ConfigError);
}

TEST_CASE("end-to-end run on the fixture") {
  testing::TempDir dir("e2e");
  PipelineConfig cfg = PipelineConfig::load(testing::copy_pipeline_fixture(dir.path()));

  StageReport ex = cmd_extract(cfg);
  CHECK(ex.counters.at("records") == 33);
  CHECK(ex.counters.at("skipped") == 1);
  CHECK_FALSE(ex.notes.empty());  // the listing page and the empty page

  StageReport cl = cmd_classify(cfg);
  CHECK(cl.counters.at("records") == 33);
  AcademicRecord ref = parse_record(
      testing::slurp(cfg.output_dir / "classified/bibliotecadigital-ipb-pt/14638.json"));
  CHECK(ref.domain == Domain::energy);
  CHECK(ref.domain_keyword_count.at(Domain::energy) == 6);

  StageReport mi = cmd_mine(cfg);
  CHECK(mi.counters.at("pairs") > 100);
  CHECK(mi.counters.at("mono_sentences") > 0);

  StageReport fi = cmd_filter(cfg);
  CHECK(fi.counters.at("input") == mi.counters.at("pairs"));
  std::int64_t rejected = 0;
  for (const auto& [k, v] : fi.counters)
    if (k.rfind("rejected.", 0) == 0) rejected += v;
  CHECK(fi.counters.at("accepted") + rejected == fi.counters.at("input"));

  StageReport be = cmd_benchmark(cfg);
  CHECK(be.counters.at("built") == 6);

  // Every benchmark passes the independent checker against its corpus file.
  for (const auto& spec : cfg.benchmarks) {
    std::string name = std::string(to_string(spec.domain)) + "." + pair_label(spec.source_lang, spec.target_lang);
    CAPTURE(name);
    auto pool = read_pairs(cfg.output_dir / "corpus/parallel" / (name + ".jsonl"));
    BenchmarkSplit split;
    for (const auto& line : testing::lines_of(cfg.output_dir / "benchmark" / name / "pairs.jsonl")) {
      auto j = nlohmann::json::parse(line);
      std::string which = j["split"];
      j.erase("split");
      (which == "dev" ? split.dev : split.test).push_back(parse_pair_line(j.dump()));
    }
    for (const auto& p : testing::check_benchmark(pool, split, spec)) FAIL_CHECK(p);
  }

  CorpusStats stats = cmd_stats(cfg);
  std::int64_t total = 0;
  for (const auto& [d, row] : stats.parallel)
    for (const auto& [c, n] : row) total += n;
  CHECK(total == fi.counters.at("accepted"));

  auto manifest = nlohmann::json::parse(testing::slurp(cfg.output_dir / "manifest.json"));
  for (const char* stage : {"extract", "classify", "mine", "filter", "benchmark"})
    CHECK(manifest["stages"].contains(stage));
}

TEST_CASE("two runs produce byte-identical trees") {
  testing::TempDir a("det-a"), b("det-b");
  PipelineConfig ca = PipelineConfig::load(testing::copy_pipeline_fixture(a.path()));
  PipelineConfig cb = PipelineConfig::load(testing::copy_pipeline_fixture(b.path()));
  cb.workers = 5;  // worker count must not change outputs
  run_all(ca);
  run_all(cb);
  auto ta = testing::tree_contents(ca.output_dir), tb = testing::tree_contents(cb.output_dir);
  CHECK(ta.size() > 50);
  CHECK(ta == tb);
}

TEST_CASE("a failing stage leaves earlier outputs intact") {
  testing::TempDir dir("fail");
  PipelineConfig cfg = PipelineConfig::load(testing::copy_pipeline_fixture(dir.path()));
  run_all(cfg);
  auto before = testing::tree_contents(cfg.output_dir / "corpus");

  // Corrupt the filter stage's input and rerun it.
  {
    std::ofstream out(cfg.output_dir / "mined/pairs.jsonl", std::ios::app);
    out << "{not json\n";
  }
  CHECK_THROWS_AS(cmd_filter(cfg), DataError);
  CHECK(testing::tree_contents(cfg.output_dir / "corpus") == before);
  for (const auto& e : fs::directory_iterator(cfg.output_dir))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);

  // A benchmark that cannot be filled fails unless shortfalls are skipped.
  auto bench_before = testing::tree_contents(cfg.output_dir / "benchmark");
  cfg.benchmarks[0].records_to_sample = 2000;
  CHECK_THROWS_WITH_AS(cmd_benchmark(cfg), doctest::Contains("cancer.en-pt: benchmark needs 2000"), DataError);
  CHECK(testing::tree_contents(cfg.output_dir / "benchmark") == bench_before);
  cfg.skip_shortfall = true;
  StageReport r = cmd_benchmark(cfg);
  CHECK(r.counters.at("skipped") == 1);
  CHECK(r.counters.at("built") == 5);

  // Stages refuse to run before their input exists.
  testing::TempDir fresh("fresh");
  PipelineConfig f = PipelineConfig::load(testing::copy_pipeline_fixture(fresh.path()));
  CHECK_THROWS_AS(cmd_mine(f), DataError);
}

TEST_CASE("command-line run") {
  testing::TempDir dir("cli");
  fs::path config = testing::copy_pipeline_fixture(dir.path());
  std::string cli = SCIMINE_CLI;
  std::string log = (dir.path() / "log.txt").string();
  int rc = std::system((cli + " -q --config " + config.string() + " run > " + log + " 2>&1").c_str());
  CHECK(rc == 0);
  rc = std::system((cli + " --config " + config.string() + " stats > " + log + " 2>&1").c_str());
  CHECK(rc == 0);
  std::string out = testing::slurp(log);
  CHECK(out.find("Parallel sentence pairs") != std::string::npos);
  CHECK(out.find("Total") != std::string::npos);
  CHECK(fs::exists(dir.path() / "out/benchmark/energy.en-pt/test.tgt"));
}
