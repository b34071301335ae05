#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scimine/benchmark.hpp"
#include "scimine/classifier.hpp"
#include "scimine/embedding.hpp"
#include "scimine/extractor.hpp"
#include "scimine/filters.hpp"
#include "scimine/langid.hpp"
#include "scimine/metrics.hpp"
#include "scimine/miner.hpp"
#include "scimine/pipeline.hpp"
#include "scimine/segmenter.hpp"

namespace py = pybind11;
using namespace scimine;

namespace {

// Pairs cross the boundary as dicts with the JSONL field names.
py::object to_py(const std::string& json_text) { return py::module_::import("json").attr("loads")(json_text); }

SentencePair pair_from(const py::handle& d) {
  std::string s = py::module_::import("json").attr("dumps")(d).cast<std::string>();
  return parse_pair_line(s);
}

std::vector<SentencePair> pairs_from(const py::iterable& items) {
  std::vector<SentencePair> out;
  for (auto item : items) out.push_back(pair_from(item));
  return out;
}

py::list pairs_to(const std::vector<SentencePair>& pairs) {
  py::list out;
  for (const auto& p : pairs) out.append(to_py(to_jsonl(p)));
  return out;
}

LanguageCode lang_arg(const std::string& s) {
  LanguageCode l = LanguageCode::parse(s);
  if (!l.recognized()) throw py::value_error("unsupported language '" + s + "'");
  return l;
}

Domain domain_arg(const std::string& s) {
  auto d = parse_domain(s);
  if (!d) throw py::value_error("unknown domain '" + s + "'");
  return *d;
}

py::dict counts_to(const DomainCounts& c) {
  py::dict out;
  for (const auto& [d, n] : c) out[py::str(std::string(to_string(d)))] = n;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parallel corpus mining from academic repository pages";

  // Later registrations are tried first, so the most derived types go last.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", data_error.ptr());
  py::register_exception<BenchmarkShortfall>(m, "BenchmarkShortfall", data_error.ptr());

  m.def("split_sentences", [](const std::string& text, const std::string& lang) {
    return split_sentences(text, SegmenterRules::builtin(lang_arg(lang).lang()));
  }, py::arg("text"), py::arg("lang"));

  m.def("identify_language", [](const std::string& text) {
    LangGuess g = LangIdModel::builtin().identify(text);
    return py::make_tuple(g.lang.recognized() ? g.lang.str() : std::string("other"), g.confidence);
  }, py::arg("text"), "(language code or 'other', confidence)");

  m.def("extract_record", [](const std::string& html, const std::string& repository, std::int64_t html_id,
                             const std::string& config_json) {
    Extraction ex = extract_record(RawPage{repository, html_id, html}, load_config(config_json));
    return py::make_tuple(to_py(serialize_record(ex.record)), ex.warnings);
  }, py::arg("html"), py::arg("repository"), py::arg("html_id"), py::arg("config_json"));

  m.def("classify_record", [](const py::dict& record, std::optional<std::string> lexicon_json, std::int64_t min_hits) {
    std::string s = py::module_::import("json").attr("dumps")(record).cast<std::string>();
    AcademicRecord r = parse_record(s);
    std::optional<DomainLexicon> custom;
    if (lexicon_json) custom = DomainLexicon::parse(*lexicon_json);
    DomainCounts counts = count_keywords(r, custom ? *custom : DomainLexicon::starter());
    return py::make_tuple(std::string(to_string(classify(counts, min_hits))), counts_to(counts));
  }, py::arg("record"), py::arg("lexicon_json") = py::none(), py::arg("min_hits") = 1);

  m.def("embed", [](const std::string& text, std::size_t dim) {
    EmbeddingVector v = HashEmbeddingBackend(dim).embed(text);
    return std::vector<double>(v.values().begin(), v.values().end());
  }, py::arg("text"), py::arg("dim") = 256);

  m.def("mine_pairs", [](std::vector<std::string> source, std::vector<std::string> target,
                         const std::string& source_lang, const std::string& target_lang, std::size_t k,
                         double threshold, const std::string& margin, const std::string& retrieval,
                         const std::string& backend) {
    CandidateDocumentPair doc;
    doc.source_origins.assign(source.size(), Origin::abstract);
    doc.target_origins.assign(target.size(), Origin::abstract);
    doc.source_sentences = std::move(source);
    doc.target_sentences = std::move(target);
    doc.source_lang = lang_arg(source_lang);
    doc.target_lang = lang_arg(target_lang);
    MiningOptions opts{k, threshold, parse_margin(margin), parse_retrieval(retrieval)};
    auto b = make_backend(backend);
    return pairs_to(mine_pairs(doc, *b, opts));
  }, py::arg("source"), py::arg("target"), py::arg("source_lang") = "en", py::arg("target_lang"),
     py::arg("k") = 4, py::arg("threshold") = 0.98, py::arg("margin") = "ratio",
     py::arg("retrieval") = "mutual", py::arg("backend") = "hash");

  m.def("apply_filters", [](const py::dict& pair, std::size_t max_words, bool strict_digits) -> std::optional<std::string> {
    FilterConfig cfg;
    cfg.max_words = max_words;
    cfg.strict_digits = strict_digits;
    FilterVerdict v = apply_filters(pair_from(pair), LangIdModel::builtin(), cfg);
    if (v.accepted) return std::nullopt;
    return std::string(to_string(*v.rejected_by));
  }, py::arg("pair"), py::arg("max_words") = 250, py::arg("strict_digits") = false,
     "None when the pair passes, otherwise the rejecting rule");

  m.def("deduplicate", [](const py::iterable& pairs) {
    auto in = pairs_from(pairs);
    return pairs_to(deduplicate(in));
  }, py::arg("pairs"));

  m.def("build_benchmark", [](const py::iterable& pairs, const std::string& domain, const std::string& source_lang,
                              const std::string& target_lang, std::size_t records, std::uint64_t seed) {
    BenchmarkSpec spec;
    spec.domain = domain_arg(domain);
    spec.source_lang = lang_arg(source_lang);
    spec.target_lang = lang_arg(target_lang);
    spec.records_to_sample = records;
    spec.seed = seed;
    auto in = pairs_from(pairs);
    BenchmarkSplit split = build_benchmark(in, spec);
    return py::make_tuple(pairs_to(split.dev), pairs_to(split.test));
  }, py::arg("pairs"), py::arg("domain"), py::arg("source_lang") = "en", py::arg("target_lang"),
     py::arg("records"), py::arg("seed") = 0);

  m.def("bleu", [](const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
    return bleu(hyps, refs);
  }, py::arg("hyps"), py::arg("refs"));
  m.def("chrf2pp", [](const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
    return chrf2pp(hyps, refs);
  }, py::arg("hyps"), py::arg("refs"));
  m.def("score", [](const std::string& metric, const std::vector<std::string>& hyps,
                    const std::vector<std::string>& refs, bool bootstrap) {
    std::optional<BootstrapConfig> bs;
    if (bootstrap) bs = BootstrapConfig{};
    MetricResult r;
    if (metric == "bleu") r = score_bleu(hyps, refs, bs);
    else if (metric == "chrf2pp") r = score_chrf2pp(hyps, refs, bs);
    else throw py::value_error("metric must be 'bleu' or 'chrf2pp'");
    py::dict out;
    out["name"] = r.name;
    out["score"] = r.score;
    out["signature"] = r.signature;
    out["text"] = r.format();
    if (r.bootstrap) out["bootstrap"] = py::make_tuple(r.bootstrap->mean, r.bootstrap->ci);
    return out;
  }, py::arg("metric"), py::arg("hyps"), py::arg("refs"), py::arg("bootstrap") = false);

  m.def("run_stage", [](const std::string& stage, const std::filesystem::path& config) {
    PipelineConfig cfg = PipelineConfig::load(config);
    StageReport r;
    {
      py::gil_scoped_release release;
      if (stage == "extract") r = cmd_extract(cfg);
      else if (stage == "classify") r = cmd_classify(cfg);
      else if (stage == "mine") r = cmd_mine(cfg);
      else if (stage == "filter") r = cmd_filter(cfg);
      else if (stage == "benchmark") r = cmd_benchmark(cfg);
      else throw ConfigError("stage", "unknown stage '" + stage + "'");
    }
    return py::make_tuple(r.counters, r.notes);
  }, py::arg("stage"), py::arg("config"));

  m.def("corpus_stats", [](const std::filesystem::path& config) {
    return to_py(stats_json(cmd_stats(PipelineConfig::load(config))));
  }, py::arg("config"));
}
