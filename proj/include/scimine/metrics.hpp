#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scimine {

// Corpus BLEU and chrF++ matching sacreBLEU 2.0.0 with one reference per
// segment. Inputs are UTF-8; invalid bytes are replaced with U+FFFD.

/// mteval-v13a tokenization as done by sacreBLEU.
std::string tokenize_13a(std::string_view line);

struct BleuConfig {
  int max_ngram = 4;
};

struct ChrfConfig {
  int char_order = 6;
  int word_order = 2;
  int beta = 2;
};

struct BootstrapConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 12345;
};

struct BootstrapEstimate {
  double mean = 0.0;
  /// Half-width of the 95% percentile interval.
  double ci = 0.0;
};

struct MetricResult {
  std::string name;  // "BLEU" or "chrF2++"
  double score = 0.0;
  std::string signature;
  std::optional<BootstrapEstimate> bootstrap;

  /// "BLEU = 34.2 nrefs:1|...", with " (mean 34.1 +- 1.2)" when bootstrapped.
  std::string format() const;
};

/// Per-segment sufficient statistics:
/// [hyp_len, ref_len, correct_1..N, total_1..N].
std::vector<std::int64_t> bleu_segment_stats(std::string_view hyp, std::string_view ref,
                                             const BleuConfig& cfg = {});
double bleu_from_stats(std::span<const std::int64_t> stats, const BleuConfig& cfg = {});

/// [hyp, ref, match] per order: char orders 1..nc then word orders 1..nw.
std::vector<std::int64_t> chrf_segment_stats(std::string_view hyp, std::string_view ref,
                                             const ChrfConfig& cfg = {});
double chrf_from_stats(std::span<const std::int64_t> stats, const ChrfConfig& cfg = {});

/// Throws std::invalid_argument when the lists differ in length or are empty.
double bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
            const BleuConfig& cfg = {});
double chrf2pp(std::span<const std::string> hyps, std::span<const std::string> refs,
               const ChrfConfig& cfg = {});

std::string bleu_signature(std::optional<BootstrapConfig> bs = std::nullopt);
std::string chrf_signature(const ChrfConfig& cfg = {}, std::optional<BootstrapConfig> bs = std::nullopt);

/// Score plus signature; with `bs`, paired bootstrap resampling of segments.
MetricResult score_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                        std::optional<BootstrapConfig> bs = std::nullopt);
MetricResult score_chrf2pp(std::span<const std::string> hyps, std::span<const std::string> refs,
                           std::optional<BootstrapConfig> bs = std::nullopt);

}  // namespace scimine
