#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimine/embedding.hpp"
#include "scimine/record.hpp"

namespace scimine {

enum class MarginKind { ratio, distance };
enum class Retrieval { mutual, forward, backward };

std::string_view to_string(MarginKind m);
std::string_view to_string(Retrieval r);
/// Throws ConfigError for unknown names.
MarginKind parse_margin(std::string_view s);
Retrieval parse_retrieval(std::string_view s);

struct MiningOptions {
  std::size_t k = 4;
  double threshold = 0.98;
  MarginKind margin = MarginKind::ratio;
  Retrieval retrieval = Retrieval::mutual;
};

/// Margin of the pair (x, y).
///
/// `nnx` holds candidate neighbours of x on the target side and `nny` those of
/// y on the source side; the k most similar of each are used, with k clamped
/// to the list size. Ratio: cos(x,y) / (mean_x/2 + mean_y/2), denominator
/// clamped at 1e-6. Distance: cos(x,y) - (mean_x/2 + mean_y/2).
/// Throws std::invalid_argument for k = 0, an empty neighbourhood, or a
/// dimension mismatch.
double margin_score(const EmbeddingVector& x, const EmbeddingVector& y,
                    std::span<const EmbeddingVector> nnx, std::span<const EmbeddingVector> nny,
                    std::size_t k, MarginKind kind = MarginKind::ratio);

struct CandidateDocumentPair {
  std::vector<std::string> source_sentences;
  std::vector<std::string> target_sentences;
  std::vector<Origin> source_origins;
  std::vector<Origin> target_origins;
  LanguageCode source_lang;
  LanguageCode target_lang;
  RecordKey record_key;
  Domain domain = Domain::general;
};

/// Title first, then abstract sentences, for one language of a record.
void document_segments(const AcademicRecord& record, const LanguageCode& lang,
                       std::vector<std::string>& sentences, std::vector<Origin>& origins);

/// English paired with each other targeted language present in the record.
std::vector<CandidateDocumentPair> build_candidate_documents(const AcademicRecord& record);

struct ScoredAlignment {
  std::size_t source_index = 0;
  std::size_t target_index = 0;
  double cosine = 0.0;
  double score = 0.0;
};

/// Local mining over precomputed vectors: full margin matrix, retrieval per
/// `opts.retrieval` (ties go to the lower index), then score >= threshold and
/// cosine >= 0. Ordered by source index, or target index for backward.
std::vector<ScoredAlignment> align(std::span<const EmbeddingVector> src,
                                   std::span<const EmbeddingVector> tgt, const MiningOptions& opts);

/// Embed both sides and mine. A pair is tagged `title` only when both sides
/// are titles. Throws std::invalid_argument for threshold <= 0 or k = 0,
/// EmbeddingError for backend failures.
std::vector<SentencePair> mine_pairs(const CandidateDocumentPair& doc, const EmbeddingBackend& backend,
                                     const MiningOptions& opts = {});

}  // namespace scimine
