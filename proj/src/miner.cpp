#include "scimine/miner.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "scimine/errors.hpp"
#include "scimine/segmenter.hpp"

namespace scimine {

std::string_view to_string(MarginKind m) { return m == MarginKind::ratio ? "ratio" : "distance"; }

std::string_view to_string(Retrieval r) {
  switch (r) {
    case Retrieval::mutual: return "mutual";
    case Retrieval::forward: return "forward";
    case Retrieval::backward: return "backward";
  }
  return "mutual";
}

MarginKind parse_margin(std::string_view s) {
  if (s == "ratio") return MarginKind::ratio;
  if (s == "distance") return MarginKind::distance;
  throw ConfigError("margin", "expected ratio or distance, got '" + std::string(s) + "'");
}

Retrieval parse_retrieval(std::string_view s) {
  if (s == "mutual") return Retrieval::mutual;
  if (s == "forward") return Retrieval::forward;
  if (s == "backward") return Retrieval::backward;
  throw ConfigError("retrieval", "expected mutual, forward or backward, got '" + std::string(s) + "'");
}

namespace {

constexpr double kMinDenominator = 1e-6;

// Sum of the k largest values divided by 2k, with k clamped to the count.
double half_mean_top_k(std::vector<double> sims, std::size_t k) {
  k = std::min(k, sims.size());
  std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(k), sims.end(),
                    std::greater<>());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += sims[i];
  return sum / (2.0 * static_cast<double>(k));
}

double combine(double cos, double denom, MarginKind kind) {
  if (kind == MarginKind::distance) return cos - denom;
  return cos / std::max(denom, kMinDenominator);
}

}  // namespace

double margin_score(const EmbeddingVector& x, const EmbeddingVector& y,
                    std::span<const EmbeddingVector> nnx, std::span<const EmbeddingVector> nny,
                    std::size_t k, MarginKind kind) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (nnx.empty() || nny.empty()) throw std::invalid_argument("empty neighbourhood");
  std::vector<double> sx, sy;
  sx.reserve(nnx.size());
  sy.reserve(nny.size());
  for (const auto& z : nnx) sx.push_back(cosine(x, z));
  for (const auto& z : nny) sy.push_back(cosine(y, z));
  return combine(cosine(x, y), half_mean_top_k(std::move(sx), k) + half_mean_top_k(std::move(sy), k), kind);
}

void document_segments(const AcademicRecord& record, const LanguageCode& lang,
                       std::vector<std::string>& sentences, std::vector<Origin>& origins) {
  if (auto t = record.titles.find(lang); t != record.titles.end() && !t->second.empty()) {
    sentences.push_back(t->second);
    origins.push_back(Origin::title);
  }
  if (auto a = record.abstracts.find(lang); a != record.abstracts.end()) {
    for (auto& s : split_sentences(a->second, SegmenterRules::builtin(lang.lang()))) {
      sentences.push_back(std::move(s));
      origins.push_back(Origin::abstract);
    }
  }
}

std::vector<CandidateDocumentPair> build_candidate_documents(const AcademicRecord& record) {
  std::vector<CandidateDocumentPair> out;
  const LanguageCode en(Lang::en);
  CandidateDocumentPair base;
  document_segments(record, en, base.source_sentences, base.source_origins);
  if (base.source_sentences.empty()) return out;
  base.source_lang = en;
  base.record_key = record.key();
  base.domain = record.domain;
  for (Lang l : kTargetedLangs) {
    if (l == Lang::en) continue;
    CandidateDocumentPair doc = base;
    doc.target_lang = LanguageCode(l);
    document_segments(record, doc.target_lang, doc.target_sentences, doc.target_origins);
    if (!doc.target_sentences.empty()) out.push_back(std::move(doc));
  }
  return out;
}

std::vector<ScoredAlignment> align(std::span<const EmbeddingVector> src,
                                   std::span<const EmbeddingVector> tgt, const MiningOptions& opts) {
  if (opts.k == 0) throw std::invalid_argument("k must be positive");
  if (!(opts.threshold > 0)) throw std::invalid_argument("threshold must be positive");
  const std::size_t ns = src.size(), nt = tgt.size();
  if (ns == 0 || nt == 0) return {};

  std::vector<double> cos(ns * nt);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) cos[i * nt + j] = cosine(src[i], tgt[j]);

  std::vector<double> rx(ns), ry(nt);
  std::vector<double> buf;
  for (std::size_t i = 0; i < ns; ++i) {
    buf.assign(cos.begin() + static_cast<std::ptrdiff_t>(i * nt),
               cos.begin() + static_cast<std::ptrdiff_t>((i + 1) * nt));
    rx[i] = half_mean_top_k(buf, opts.k);
  }
  for (std::size_t j = 0; j < nt; ++j) {
    buf.clear();
    for (std::size_t i = 0; i < ns; ++i) buf.push_back(cos[i * nt + j]);
    ry[j] = half_mean_top_k(buf, opts.k);
  }

  std::vector<double> m(ns * nt);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j) m[i * nt + j] = combine(cos[i * nt + j], rx[i] + ry[j], opts.margin);

  std::vector<std::size_t> best_t(ns, 0), best_s(nt, 0);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 1; j < nt; ++j)
      if (m[i * nt + j] > m[i * nt + best_t[i]]) best_t[i] = j;
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 1; i < ns; ++i)
      if (m[i * nt + j] > m[best_s[j] * nt + j]) best_s[j] = i;

  std::vector<ScoredAlignment> out;
  auto consider = [&](std::size_t i, std::size_t j) {
    double c = cos[i * nt + j], s = m[i * nt + j];
    if (c >= 0.0 && s >= opts.threshold) out.push_back({i, j, c, s});
  };
  switch (opts.retrieval) {
    case Retrieval::mutual:
      for (std::size_t i = 0; i < ns; ++i)
        if (best_s[best_t[i]] == i) consider(i, best_t[i]);
      break;
    case Retrieval::forward:
      for (std::size_t i = 0; i < ns; ++i) consider(i, best_t[i]);
      break;
    case Retrieval::backward:
      for (std::size_t j = 0; j < nt; ++j) consider(best_s[j], j);
      break;
  }
  return out;
}

std::vector<SentencePair> mine_pairs(const CandidateDocumentPair& doc, const EmbeddingBackend& backend,
                                     const MiningOptions& opts) {
  if (opts.k == 0) throw std::invalid_argument("k must be positive");
  if (!(opts.threshold > 0)) throw std::invalid_argument("threshold must be positive");
  auto src = embed_batch(doc.source_sentences, backend);
  auto tgt = embed_batch(doc.target_sentences, backend);
  std::vector<SentencePair> out;
  for (const auto& a : align(src, tgt, opts)) {
    SentencePair p;
    p.source_text = doc.source_sentences[a.source_index];
    p.target_text = doc.target_sentences[a.target_index];
    p.source_lang = doc.source_lang;
    p.target_lang = doc.target_lang;
    p.score = a.score;
    p.domain = doc.domain;
    p.record_key = doc.record_key;
    bool both_titles = a.source_index < doc.source_origins.size() &&
                       a.target_index < doc.target_origins.size() &&
                       doc.source_origins[a.source_index] == Origin::title &&
                       doc.target_origins[a.target_index] == Origin::title;
    p.origin = both_titles ? Origin::title : Origin::abstract;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace scimine
