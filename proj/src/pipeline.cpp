#include "scimine/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <variant>

#ifdef SCIMINE_WITH_CURL
#include <curl/curl.h>
#endif

#include "parallel.hpp"
#include "scimine/classifier.hpp"
#include "scimine/embedding.hpp"
#include "scimine/extractor.hpp"
#include "scimine/langid.hpp"
#include "scimine/segmenter.hpp"
#include "scimine/text.hpp"

namespace scimine {

using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StageError("io", "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw StageError("io", "short write to '" + path.string() + "'");
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, content);
  fs::rename(tmp, path);
}

// Output directory built next to its final location and swapped in on commit.
class StagedDir {
 public:
  StagedDir(const fs::path& output_dir, const std::string& name)
      : target_(output_dir / name), tmp_(output_dir / ("." + name + ".tmp")), old_(output_dir / ("." + name + ".old")) {
    fs::remove_all(tmp_);
    fs::create_directories(tmp_);
  }
  StagedDir(const StagedDir&) = delete;
  StagedDir& operator=(const StagedDir&) = delete;
  ~StagedDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(tmp_, ec);
    }
  }

  void write(const fs::path& relative, std::string_view content) { write_file(tmp_ / relative, content); }

  void commit() {
    fs::remove_all(old_);
    if (fs::exists(target_)) fs::rename(target_, old_);
    fs::rename(tmp_, target_);
    fs::remove_all(old_);
    committed_ = true;
  }

 private:
  fs::path target_, tmp_, old_;
  bool committed_ = false;
};

void update_manifest(const PipelineConfig& cfg, const StageReport& report) {
  fs::path path = cfg.output_dir / "manifest.json";
  json manifest = json::object();
  if (fs::exists(path)) {
    try {
      manifest = json::parse(read_file(path));
    } catch (const json::exception&) {
      manifest = json::object();
    }
  }
  json stage = json::object();
  stage["counters"] = report.counters;
  stage["notes"] = report.notes;
  manifest["stages"][report.stage] = std::move(stage);
  write_file_atomic(path, manifest.dump(2) + "\n");
}

std::optional<std::int64_t> parse_id(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (directories ? e.is_directory() : e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct RecordFile {
  RecordKey key;
  fs::path path;
};

// <dir>/<repository>/<html_id><ext>, ordered by (repository, html_id).
std::vector<RecordFile> list_keyed_files(const fs::path& dir, std::string_view ext,
                                         std::vector<std::string>* skipped = nullptr) {
  std::vector<RecordFile> out;
  for (const auto& repo : sorted_entries(dir, true)) {
    std::string name = repo.filename().string();
    if (!name.empty() && name.front() == '.') continue;
    for (const auto& f : sorted_entries(repo, false)) {
      if (f.extension() != ext) continue;
      auto id = parse_id(f.stem().string());
      if (!id) {
        if (skipped) skipped->push_back(name + "/" + f.filename().string() + ": file name is not an integer id");
        continue;
      }
      out.push_back({{name, *id}, f});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

fs::path record_path(const RecordKey& key) {
  return fs::path(key.repository) / (std::to_string(key.html_id) + ".json");
}

void require_stage_dir(const fs::path& dir, const std::string& stage, const std::string& previous) {
  if (!fs::is_directory(dir))
    throw DataError(stage + ": missing input '" + dir.string() + "' (run '" + previous + "' first)");
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::vector<std::string> lines;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<SentencePair> read_pairs(const fs::path& path) {
  std::vector<SentencePair> out;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    try {
      out.push_back(parse_pair_line(line));
    } catch (const ParseError& e) {
      throw DataError(path.string() + " line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::vector<MonolingualSentence> read_mono(const fs::path& path) {
  std::vector<MonolingualSentence> out;
  std::size_t n = 0;
  for (const auto& line : read_lines(path)) {
    ++n;
    try {
      out.push_back(parse_mono_line(line));
    } catch (const ParseError& e) {
      throw DataError(path.string() + " line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

// --- config parsing -------------------------------------------------------

const json* member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

fs::path get_path(const json& obj, const char* key, const fs::path& base, bool required) {
  const json* v = member(obj, key);
  if (!v) {
    if (required) throw ConfigError(key, "missing");
    return {};
  }
  if (!v->is_string()) throw ConfigError(key, "expected a path string");
  fs::path p = v->get<std::string>();
  return p.is_absolute() ? p : base / p;
}

template <typename T>
T get_number(const json& obj, const char* key, T fallback, const std::string& scope) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  std::string field = scope.empty() ? key : scope + "." + key;
  if constexpr (std::is_floating_point_v<T>) {
    if (!v->is_number()) throw ConfigError(field, "expected a number");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!v->is_number_unsigned()) throw ConfigError(field, "expected a non-negative integer");
  } else {
    if (!v->is_number_integer()) throw ConfigError(field, "expected an integer");
  }
  return v->get<T>();
}

std::pair<LanguageCode, LanguageCode> parse_pair(const std::string& s, const std::string& field) {
  auto dash = s.find('-');
  if (dash == std::string::npos) throw ConfigError(field, "expected a pair like en-pt, got '" + s + "'");
  auto a = LanguageCode::parse(s.substr(0, dash));
  auto b = LanguageCode::parse(s.substr(dash + 1));
  if (!a.recognized() || !b.recognized() || a == b)
    throw ConfigError(field, "unsupported language pair '" + s + "'");
  return {a, b};
}

BenchmarkSpec parse_benchmark(const json& j, std::size_t index, std::uint64_t seed) {
  std::string scope = "benchmarks[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(scope, "expected an object");
  BenchmarkSpec spec;
  const json* d = member(j, "domain");
  if (!d || !d->is_string()) throw ConfigError(scope + ".domain", "missing");
  auto domain = parse_domain(d->get<std::string>());
  if (!domain) throw ConfigError(scope + ".domain", "unknown domain '" + d->get<std::string>() + "'");
  spec.domain = *domain;
  const json* p = member(j, "pair");
  if (!p || !p->is_string()) throw ConfigError(scope + ".pair", "missing");
  std::tie(spec.source_lang, spec.target_lang) = parse_pair(p->get<std::string>(), scope + ".pair");
  spec.records_to_sample = get_number<std::size_t>(j, "records", BenchmarkSpec::default_size(spec.domain), scope);
  if (spec.records_to_sample == 0 || spec.records_to_sample % 2)
    throw ConfigError(scope + ".records", "must be even and positive");
  spec.score_min = get_number<double>(j, "score_min", spec.score_min, scope);
  spec.token_ratio_max = get_number<double>(j, "token_ratio_max", spec.token_ratio_max, scope);
  spec.min_words = get_number<std::size_t>(j, "min_words", spec.min_words, scope);
  spec.seed = get_number<std::uint64_t>(j, "seed", seed, scope);
  return spec;
}

}  // namespace

std::vector<BenchmarkSpec> default_benchmarks(std::uint64_t seed) {
  std::vector<BenchmarkSpec> out;
  for (Domain d : kAllDomains)
    for (Lang t : {Lang::es, Lang::pt, Lang::fr}) {
      BenchmarkSpec s;
      s.domain = d;
      s.source_lang = LanguageCode(Lang::en);
      s.target_lang = LanguageCode(t);
      s.records_to_sample = BenchmarkSpec::default_size(d);
      s.seed = seed;
      out.push_back(s);
    }
  return out;
}

PipelineConfig PipelineConfig::parse(std::string_view text, const fs::path& base) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid pipeline config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "pipeline config must be a JSON object");
  PipelineConfig c;
  c.repos_dir = get_path(j, "repos_dir", base, true);
  c.configs_dir = get_path(j, "configs_dir", base, true);
  c.output_dir = get_path(j, "output_dir", base, true);
  if (member(j, "lexicon_path")) c.lexicon_path = get_path(j, "lexicon_path", base, true);
  c.workers = get_number<std::size_t>(j, "workers", 1, "");
  if (c.workers < 1) throw ConfigError("workers", "must be at least 1");
  c.seed = get_number<std::uint64_t>(j, "seed", 0, "");

  if (const json* m = member(j, "mining")) {
    if (!m->is_object()) throw ConfigError("mining", "expected an object");
    c.mining.k = get_number<std::size_t>(*m, "k", c.mining.k, "mining");
    if (c.mining.k == 0) throw ConfigError("mining.k", "must be positive");
    c.mining.threshold = get_number<double>(*m, "threshold", c.mining.threshold, "mining");
    if (!(c.mining.threshold > 0)) throw ConfigError("mining.threshold", "must be positive");
    if (const json* v = member(*m, "margin")) c.mining.margin = parse_margin(v->get<std::string>());
    if (const json* v = member(*m, "retrieval")) c.mining.retrieval = parse_retrieval(v->get<std::string>());
    if (const json* v = member(*m, "backend")) c.backend = v->get<std::string>();
  }
  if (const json* f = member(j, "filter")) {
    if (!f->is_object()) throw ConfigError("filter", "expected an object");
    c.filter.max_words = get_number<std::size_t>(*f, "max_words", c.filter.max_words, "filter");
    if (const json* v = member(*f, "strict_digits")) {
      if (!v->is_boolean()) throw ConfigError("filter.strict_digits", "expected true or false");
      c.filter.strict_digits = v->get<bool>();
    }
    c.filter.min_language_confidence =
        get_number<double>(*f, "min_language_confidence", c.filter.min_language_confidence, "filter");
    c.filter.max_url_email_fraction =
        get_number<double>(*f, "max_url_email_fraction", c.filter.max_url_email_fraction, "filter");
  }
  if (const json* cl = member(j, "classify")) c.min_hits = get_number<std::int64_t>(*cl, "min_hits", 1, "classify");
  if (const json* b = member(j, "benchmarks")) {
    if (!b->is_array()) throw ConfigError("benchmarks", "expected an array");
    for (std::size_t i = 0; i < b->size(); ++i) c.benchmarks.push_back(parse_benchmark((*b)[i], i, c.seed));
  } else {
    c.benchmarks = default_benchmarks(c.seed);
  }
  if (const json* s = member(j, "benchmark_on_shortfall")) {
    std::string v = s->is_string() ? s->get<std::string>() : "";
    if (v != "fail" && v != "skip") throw ConfigError("benchmark_on_shortfall", "expected fail or skip");
    c.skip_shortfall = v == "skip";
  }
  if (!fs::is_directory(c.repos_dir)) throw ConfigError("repos_dir", "no such directory '" + c.repos_dir.string() + "'");
  if (!fs::is_directory(c.configs_dir))
    throw ConfigError("configs_dir", "no such directory '" + c.configs_dir.string() + "'");
  if (c.lexicon_path && !fs::is_regular_file(*c.lexicon_path))
    throw ConfigError("lexicon_path", "no such file '" + c.lexicon_path->string() + "'");
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& file) {
  std::string text;
  try {
    text = read_file(file);
  } catch (const DataError&) {
    throw ConfigError("--config", "cannot read '" + file.string() + "'");
  }
  return parse(text, fs::absolute(file).parent_path());
}

// --- extract ---------------------------------------------------------------

StageReport cmd_extract(const PipelineConfig& cfg) {
  StageReport report{"extract", {}, {}};
  std::map<std::string, RepositoryConfig> configs;
  auto pages = list_keyed_files(cfg.repos_dir, ".html", &report.notes);
  for (const auto& p : pages) {
    if (configs.count(p.key.repository)) continue;
    fs::path cpath = cfg.configs_dir / (p.key.repository + ".json");
    if (!fs::is_regular_file(cpath))
      throw ConfigError(p.key.repository, "no repository config at '" + cpath.string() + "'");
    try {
      configs.emplace(p.key.repository, load_config(read_file(cpath)));
    } catch (const ConfigError& e) {
      throw ConfigError(cpath.filename().string(), e.what());
    }
  }

  using Outcome = std::variant<Extraction, std::string>;
  auto results = parallel_map(pages.size(), cfg.workers, [&](std::size_t i) -> Outcome {
    const auto& p = pages[i];
    try {
      RawPage page{p.key.repository, p.key.html_id, read_file(p.path)};
      return extract_record(page, configs.at(p.key.repository));
    } catch (const ExtractError& e) {
      return std::string(e.what());
    }
  });

  StagedDir out(cfg.output_dir, "records");
  std::int64_t records = 0, skipped = 0, warnings = 0;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    std::string where = pages[i].key.repository + "/" + std::to_string(pages[i].key.html_id);
    if (auto* err = std::get_if<std::string>(&results[i])) {
      ++skipped;
      report.notes.push_back(where + ": skipped: " + *err);
      continue;
    }
    auto& ex = std::get<Extraction>(results[i]);
    for (const auto& w : ex.warnings) report.notes.push_back(where + ": " + w);
    warnings += static_cast<std::int64_t>(ex.warnings.size());
    out.write(record_path(ex.record.key()), serialize_record(ex.record) + "\n");
    ++records;
  }
  out.commit();
  report.counters = {{"pages", static_cast<std::int64_t>(pages.size())},
                     {"records", records},
                     {"skipped", skipped},
                     {"warnings", warnings}};
  update_manifest(cfg, report);
  return report;
}

// --- classify --------------------------------------------------------------

StageReport cmd_classify(const PipelineConfig& cfg) {
  StageReport report{"classify", {}, {}};
  fs::path in = cfg.output_dir / "records";
  require_stage_dir(in, "classify", "extract");
  std::optional<DomainLexicon> custom;
  if (cfg.lexicon_path) custom = DomainLexicon::parse(read_file(*cfg.lexicon_path));
  const DomainLexicon& lexicon = custom ? *custom : DomainLexicon::starter();

  auto files = list_keyed_files(in, ".json");
  auto records = parallel_map(files.size(), cfg.workers, [&](std::size_t i) {
    AcademicRecord r;
    try {
      r = parse_record(read_file(files[i].path));
    } catch (const ParseError& e) {
      throw DataError(files[i].path.string() + ": " + e.what());
    }
    r.domain_keyword_count = count_keywords(r, lexicon);
    r.domain = classify(r.domain_keyword_count, cfg.min_hits);
    return r;
  });

  StagedDir out(cfg.output_dir, "classified");
  report.counters["records"] = static_cast<std::int64_t>(records.size());
  for (Domain d : kAllDomains) report.counters["domain." + std::string(to_string(d))] = 0;
  for (const auto& r : records) {
    out.write(record_path(r.key()), serialize_record(r) + "\n");
    ++report.counters["domain." + std::string(to_string(r.domain))];
  }
  out.commit();
  update_manifest(cfg, report);
  return report;
}

// --- mine --------------------------------------------------------------------

namespace {

struct MinedRecord {
  std::vector<SentencePair> pairs;
  std::vector<MonolingualSentence> mono;
  std::int64_t documents = 0;
};

MinedRecord mine_record(const AcademicRecord& r, const EmbeddingBackend& backend, const MiningOptions& opts) {
  MinedRecord out;
  auto docs = build_candidate_documents(r);
  out.documents = static_cast<std::int64_t>(docs.size());
  std::set<LanguageCode> paired;
  for (const auto& doc : docs) {
    auto pairs = mine_pairs(doc, backend, opts);
    if (!pairs.empty()) {
      paired.insert(doc.source_lang);
      paired.insert(doc.target_lang);
    }
    for (auto& p : pairs) out.pairs.push_back(std::move(p));
  }
  std::set<LanguageCode> langs;
  for (const auto& [l, t] : r.titles) langs.insert(l);
  for (const auto& [l, t] : r.abstracts) langs.insert(l);
  for (const auto& lang : langs) {
    if (paired.count(lang)) continue;
    std::vector<std::string> sentences;
    std::vector<Origin> origins;
    document_segments(r, lang, sentences, origins);
    for (std::size_t i = 0; i < sentences.size(); ++i)
      out.mono.push_back({sentences[i], lang, r.domain, r.key(), origins[i]});
  }
  return out;
}

}  // namespace

StageReport cmd_mine(const PipelineConfig& cfg) {
  StageReport report{"mine", {}, {}};
  fs::path in = cfg.output_dir / "classified";
  require_stage_dir(in, "mine", "classify");
  auto backend = make_backend(cfg.backend);
  auto files = list_keyed_files(in, ".json");
  auto mined = parallel_map(files.size(), cfg.workers, [&](std::size_t i) {
    AcademicRecord r;
    try {
      r = parse_record(read_file(files[i].path));
    } catch (const ParseError& e) {
      throw DataError(files[i].path.string() + ": " + e.what());
    }
    return mine_record(r, *backend, cfg.mining);
  });

  std::string pairs, mono;
  std::int64_t n_pairs = 0, n_mono = 0, n_docs = 0;
  for (const auto& m : mined) {
    n_docs += m.documents;
    for (const auto& p : m.pairs) {
      pairs += to_jsonl(p) + "\n";
      ++n_pairs;
    }
    for (const auto& s : m.mono) {
      mono += to_jsonl(s) + "\n";
      ++n_mono;
    }
  }
  StagedDir out(cfg.output_dir, "mined");
  out.write("pairs.jsonl", pairs);
  out.write("mono.jsonl", mono);
  out.commit();
  report.counters = {{"records", static_cast<std::int64_t>(files.size())},
                     {"documents", n_docs},
                     {"pairs", n_pairs},
                     {"mono_sentences", n_mono}};
  report.notes.push_back("backend=" + cfg.backend + " k=" + std::to_string(cfg.mining.k) + " margin=" +
                         std::string(to_string(cfg.mining.margin)) + " retrieval=" +
                         std::string(to_string(cfg.mining.retrieval)));
  update_manifest(cfg, report);
  return report;
}

// --- filter ------------------------------------------------------------------

StageReport cmd_filter(const PipelineConfig& cfg) {
  StageReport report{"filter", {}, {}};
  fs::path in = cfg.output_dir / "mined";
  require_stage_dir(in, "filter", "mine");
  auto pairs = read_pairs(in / "pairs.jsonl");
  auto mono = read_mono(in / "mono.jsonl");

  // Dedup is inherently sequential; the rules are pure and run in parallel.
  Deduplicator dedup;
  std::vector<bool> first(pairs.size());
  std::vector<std::size_t> unique;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if ((first[i] = dedup.insert(pairs[i]))) unique.push_back(i);
  const LangIdModel& model = LangIdModel::builtin();
  auto verdicts = parallel_map(unique.size(), cfg.workers,
                               [&](std::size_t k) { return apply_filters(pairs[unique[k]], model, cfg.filter); });

  FilterReport fr;
  for (FilterRule r : kAllFilterRules) fr.rejected[r] = 0;
  fr.input = pairs.size();
  std::map<std::string, std::pair<std::string, std::string>> corpus;  // file stem -> (jsonl, tsv)
  std::string rejected;
  std::size_t k = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::optional<FilterRule> rule;
    if (!first[i]) {
      rule = FilterRule::duplicate;
    } else {
      const auto& v = verdicts[k++];
      if (!v.accepted) rule = v.rejected_by;
    }
    const auto& p = pairs[i];
    if (rule) {
      ++fr.rejected[*rule];
      rejected += rejection_line(p, *rule) + "\n";
      continue;
    }
    ++fr.accepted;
    auto& [jl, tsv] = corpus[std::string(to_string(p.domain)) + "." + pair_label(p.source_lang, p.target_lang)];
    jl += to_jsonl(p) + "\n";
    tsv += to_tsv(p) + "\n";
  }

  std::set<std::pair<LanguageCode, std::string>> seen_mono;
  std::string mono_out;
  std::int64_t n_mono = 0;
  for (const auto& s : mono) {
    if (text::trim(s.text).empty()) continue;
    if (!seen_mono.insert({s.lang, normalize_for_dedup(s.text)}).second) continue;
    mono_out += to_jsonl(s) + "\n";
    ++n_mono;
  }

  StagedDir out(cfg.output_dir, "corpus");
  for (const auto& [stem, files] : corpus) {
    out.write(fs::path("parallel") / (stem + ".jsonl"), files.first);
    out.write(fs::path("parallel") / (stem + ".tsv"), files.second);
  }
  out.write("rejected.jsonl", rejected);
  out.write("report.json", fr.to_json() + "\n");
  out.write("mono.jsonl", mono_out);
  out.commit();

  report.counters["input"] = static_cast<std::int64_t>(fr.input);
  report.counters["accepted"] = static_cast<std::int64_t>(fr.accepted);
  for (const auto& [rule, n] : fr.rejected)
    report.counters["rejected." + std::string(to_string(rule))] = static_cast<std::int64_t>(n);
  report.counters["mono_sentences"] = n_mono;
  update_manifest(cfg, report);
  return report;
}

// --- benchmark -----------------------------------------------------------------

namespace {

std::vector<SentencePair> read_corpus_pairs(const fs::path& corpus) {
  std::vector<SentencePair> all;
  fs::path dir = corpus / "parallel";
  if (!fs::is_directory(dir)) return all;
  for (const auto& f : sorted_entries(dir, false)) {
    if (f.extension() != ".jsonl") continue;
    auto pairs = read_pairs(f);
    all.insert(all.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
  }
  return all;
}

}  // namespace

StageReport cmd_benchmark(const PipelineConfig& cfg) {
  StageReport report{"benchmark", {}, {}};
  fs::path in = cfg.output_dir / "corpus";
  require_stage_dir(in, "benchmark", "filter");
  auto pairs = read_corpus_pairs(in);
  StagedDir out(cfg.output_dir, "benchmark");
  std::int64_t built = 0, skipped = 0;
  for (const auto& spec : cfg.benchmarks) {
    std::string name = std::string(to_string(spec.domain)) + "." + pair_label(spec.source_lang, spec.target_lang);
    BenchmarkSplit split;
    try {
      split = build_benchmark(pairs, spec);
    } catch (const BenchmarkShortfall& e) {
      if (!cfg.skip_shortfall) throw DataError("benchmark " + name + ": " + e.what());
      report.notes.push_back(name + ": skipped: " + e.what());
      ++skipped;
      continue;
    }
    auto problems = verify_benchmark(split, spec);
    if (!problems.empty()) throw StageError("benchmark", name + " failed verification: " + problems.front());
    for (const auto& [file, content] : benchmark_files(split)) out.write(fs::path(name) / file, content);
    report.counters[name + ".dev"] = static_cast<std::int64_t>(split.dev.size());
    report.counters[name + ".test"] = static_cast<std::int64_t>(split.test.size());
    ++built;
  }
  out.commit();
  report.counters["built"] = built;
  report.counters["skipped"] = skipped;
  update_manifest(cfg, report);
  return report;
}

// --- stats ---------------------------------------------------------------------

std::string group_thousands(std::int64_t n) {
  std::string digits = std::to_string(n < 0 ? -n : n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return n < 0 ? "-" + out : out;
}

std::string domain_label(Domain d) {
  switch (d) {
    case Domain::cancer: return "Cancer";
    case Domain::energy: return "Energy";
    case Domain::neuroscience: return "Neuroscience";
    case Domain::transportation: return "Transportation";
    case Domain::general: return "General";
  }
  return "General";
}

CorpusStats compute_stats(const std::vector<SentencePair>& pairs, const std::vector<MonolingualSentence>& mono) {
  CorpusStats s;
  for (Domain d : kAllDomains) {
    for (const char* label : {"en-es", "en-pt", "en-fr"}) s.parallel[d][label] = 0;
    for (const char* lang : {"en", "es", "fr", "pt"}) s.monolingual[d][lang] = 0;
  }
  for (const auto& p : pairs) ++s.parallel[p.domain][pair_label(p.source_lang, p.target_lang)];
  for (const auto& m : mono) ++s.monolingual[m.domain][m.lang.str()];
  for (Domain d : kAllDomains) {
    for (const auto& [label, n] : s.parallel[d])
      for (Domain e : kAllDomains) s.parallel[e].try_emplace(label, 0);
    for (const auto& [lang, n] : s.monolingual[d])
      for (Domain e : kAllDomains) s.monolingual[e].try_emplace(lang, 0);
  }
  return s;
}

namespace {

std::vector<std::string> ordered_columns(const std::map<std::string, std::int64_t>& row,
                                         std::vector<std::string> preferred) {
  std::vector<std::string> cols;
  for (const auto& p : preferred)
    if (row.count(p)) cols.push_back(p);
  for (const auto& [k, v] : row)
    if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

std::string upper(std::string s) {
  for (char& c : s)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return s;
}

std::string render_table(const std::string& title,
                         const std::map<Domain, std::map<std::string, std::int64_t>>& rows,
                         const std::vector<std::string>& cols) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Domain"};
  for (const auto& c : cols) header.push_back(upper(c));
  cells.push_back(header);
  std::vector<std::int64_t> totals(cols.size(), 0);
  for (Domain d : kAllDomains) {
    std::vector<std::string> line{domain_label(d)};
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::int64_t n = rows.at(d).at(cols[i]);
      totals[i] += n;
      line.push_back(group_thousands(n));
    }
    cells.push_back(line);
  }
  std::vector<std::string> total{"Total"};
  for (auto t : totals) total.push_back(group_thousands(t));
  cells.push_back(total);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto render_row = [&](const std::vector<std::string>& row) {
    std::string line = row[0] + std::string(width[0] - row[0].size(), ' ');
    for (std::size_t i = 1; i < row.size(); ++i) line += "  " + std::string(width[i] - row[i].size(), ' ') + row[i];
    return line + "\n";
  };
  std::size_t total_width = width[0];
  for (std::size_t i = 1; i < width.size(); ++i) total_width += 2 + width[i];
  std::string rule(total_width, '-');
  std::string out = title + "\n" + render_row(cells.front()) + rule + "\n";
  for (std::size_t r = 1; r + 1 < cells.size(); ++r) out += render_row(cells[r]);
  out += rule + "\n" + render_row(cells.back());
  return out;
}

}  // namespace

std::string format_stats(const CorpusStats& s) {
  auto pcols = ordered_columns(s.parallel.at(Domain::general), {"en-es", "en-pt", "en-fr"});
  auto mcols = ordered_columns(s.monolingual.at(Domain::general), {"en", "es", "fr", "pt"});
  return render_table("Parallel sentence pairs", s.parallel, pcols) + "\n" +
         render_table("Monolingual sentences", s.monolingual, mcols);
}

std::string stats_json(const CorpusStats& s) {
  nlohmann::ordered_json j;
  for (const auto& [name, table] : {std::pair{"parallel", &s.parallel}, std::pair{"monolingual", &s.monolingual}}) {
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    std::map<std::string, std::int64_t> totals;
    for (Domain d : kAllDomains) {
      nlohmann::ordered_json row = nlohmann::ordered_json::object();
      for (const auto& [col, n] : table->at(d)) {
        row[col] = n;
        totals[col] += n;
      }
      t[std::string(to_string(d))] = row;
    }
    t["total"] = totals;
    j[name] = t;
  }
  return j.dump(2);
}

CorpusStats cmd_stats(const PipelineConfig& cfg) {
  fs::path in = cfg.output_dir / "corpus";
  require_stage_dir(in, "stats", "filter");
  auto pairs = read_corpus_pairs(in);
  std::vector<MonolingualSentence> mono;
  if (fs::exists(in / "mono.jsonl")) mono = read_mono(in / "mono.jsonl");
  return compute_stats(pairs, mono);
}

// --- fetch -----------------------------------------------------------------------

#ifdef SCIMINE_WITH_CURL
namespace {

std::size_t append_body(char* data, std::size_t size, std::size_t nmemb, void* user) {
  static_cast<std::string*>(user)->append(data, size * nmemb);
  return size * nmemb;
}

std::string download(const std::string& url) {
  static const bool initialized = curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK;
  if (!initialized) throw StageError("fetch", "libcurl initialization failed");
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> h(curl_easy_init(), curl_easy_cleanup);
  if (!h) throw StageError("fetch", "libcurl handle allocation failed");
  std::string body;
  char err[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(h.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(h.get(), CURLOPT_WRITEFUNCTION, append_body);
  curl_easy_setopt(h.get(), CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(h.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(h.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(h.get(), CURLOPT_CONNECTTIMEOUT, 20L);
  curl_easy_setopt(h.get(), CURLOPT_TIMEOUT, 120L);
  curl_easy_setopt(h.get(), CURLOPT_USERAGENT, "scimine-fetch/0.1");
  curl_easy_setopt(h.get(), CURLOPT_ERRORBUFFER, err);
  CURLcode rc = curl_easy_perform(h.get());
  if (rc != CURLE_OK) throw DataError(err[0] ? err : curl_easy_strerror(rc));
  return body;
}

}  // namespace
#endif

StageReport cmd_fetch(const PipelineConfig& cfg, const std::string& repository, const fs::path& url_list) {
  StageReport report{"fetch", {}, {}};
#ifndef SCIMINE_WITH_CURL
  (void)cfg;
  (void)repository;
  (void)url_list;
  throw StageError("fetch", "built without libcurl");
#else
  if (repository.empty() || repository.find('/') != std::string::npos || repository.front() == '.')
    throw ConfigError("repository", "invalid repository name '" + repository + "'");
  std::int64_t ok = 0, failed = 0, n = 0;
  for (const auto& line : read_lines(url_list)) {
    ++n;
    std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto sep = trimmed.find_first_of(" \t");
    auto id = sep == std::string::npos ? std::nullopt : parse_id(trimmed.substr(0, sep));
    if (!id) throw DataError(url_list.string() + " line " + std::to_string(n) + ": expected '<html_id> <url>'");
    std::string url = text::trim(trimmed.substr(sep + 1));
    try {
      std::string body = download(url);
      write_file_atomic(cfg.repos_dir / repository / (std::to_string(*id) + ".html"), body);
      ++ok;
    } catch (const DataError& e) {
      ++failed;
      report.notes.push_back(std::to_string(*id) + ": " + url + ": " + e.what());
    }
  }
  report.counters = {{"fetched", ok}, {"failed", failed}};
  return report;
#endif
}

}  // namespace scimine
