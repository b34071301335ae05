#include "scimine/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include "scimine/rng.hpp"
#include "scimine/text.hpp"

namespace scimine {

namespace {

constexpr const char* kVersion = "2.0.0";

// str.isspace() of Python 3.
bool py_space(char32_t c) {
  if (c <= 0x7f) return c == ' ' || (c >= 0x09 && c <= 0x0d) || (c >= 0x1c && c <= 0x1f);
  return c == 0x85 || c == 0xa0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200a) || c == 0x2028 ||
         c == 0x2029 || c == 0x202f || c == 0x205f || c == 0x3000;
}

std::vector<std::u32string> py_split(std::u32string_view s) {
  std::vector<std::u32string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && py_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !py_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::u32string py_rstrip(std::u32string s) {
  while (!s.empty() && py_space(s.back())) s.pop_back();
  return s;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    auto hit = s.find(from, pos);
    if (hit == std::string::npos) break;
    out.append(s, pos, hit - pos);
    out.append(to);
    pos = hit + from.size();
  }
  if (pos == 0) return;
  out.append(s, pos, std::string::npos);
  s = std::move(out);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool in_symbol_class(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 0x7b && u <= 0x7e) || (u >= 0x5b && u <= 0x60) || (u >= 0x20 && u <= 0x26) ||
         (u >= 0x28 && u <= 0x2b) || (u >= 0x3a && u <= 0x40) || u == 0x2f;
}

// Left-to-right, non-overlapping two-character substitution, like re.sub
// with a pattern of two single-character classes.
template <typename Match, typename Emit>
std::string sub_pairs(const std::string& s, Match match, Emit emit) {
  std::string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && match(s[i], s[i + 1])) {
      emit(out, s[i], s[i + 1]);
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string join_tokens(const std::vector<std::u32string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += text::encode(t);
  }
  return out;
}

}  // namespace

std::string tokenize_13a(std::string_view input) {
  std::string line = text::sanitize_utf8(input);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  std::string s = " " + line + " ";

  std::string padded;
  padded.reserve(s.size() * 2);
  for (char c : s) {
    if (in_symbol_class(c)) {
      padded.push_back(' ');
      padded.push_back(c);
      padded.push_back(' ');
    } else {
      padded.push_back(c);
    }
  }
  // UTF-8 continuation and lead bytes are never digits, '.', ',' or '-', so
  // byte-wise matching agrees with code-point matching here.
  auto period_comma = [](char c) { return c == '.' || c == ','; };
  s = sub_pairs(
      padded, [&](char a, char b) { return !is_digit(a) && period_comma(b); },
      [](std::string& o, char a, char b) { o += a; o += ' '; o += b; o += ' '; });
  s = sub_pairs(
      s, [&](char a, char b) { return period_comma(a) && !is_digit(b); },
      [](std::string& o, char a, char b) { o += ' '; o += a; o += ' '; o += b; });
  s = sub_pairs(
      s, [](char a, char b) { return is_digit(a) && b == '-'; },
      [](std::string& o, char a, char b) { o += a; o += ' '; o += b; o += ' '; });
  return join_tokens(py_split(text::decode(s)));
}

namespace {

using U32Counts = std::unordered_map<std::u32string, std::int64_t>;
using StrCounts = std::unordered_map<std::string, std::int64_t>;

std::string bleu_preprocess(std::string_view s) {
  return tokenize_13a(text::encode(py_rstrip(text::decode(text::sanitize_utf8(s)))));
}

std::vector<StrCounts> word_ngrams(const std::vector<std::u32string>& tokens, int max_n) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(text::encode(t));
  std::vector<StrCounts> out(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) {
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i) {
      std::string key = words[i];
      for (int k = 1; k < n; ++k) key += ' ' + words[i + static_cast<std::size_t>(k)];
      ++out[static_cast<std::size_t>(n - 1)][key];
    }
  }
  return out;
}

double my_log(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

void check_corpus(std::size_t hyps, std::size_t refs) {
  if (hyps != refs)
    throw std::invalid_argument("hypotheses (" + std::to_string(hyps) + ") and references (" +
                                std::to_string(refs) + ") differ in length");
  if (hyps == 0) throw std::invalid_argument("no hypotheses");
}

}  // namespace

std::vector<std::int64_t> bleu_segment_stats(std::string_view hyp, std::string_view ref, const BleuConfig& cfg) {
  auto h = py_split(text::decode(bleu_preprocess(hyp)));
  auto r = py_split(text::decode(bleu_preprocess(ref)));
  auto hc = word_ngrams(h, cfg.max_ngram);
  auto rc = word_ngrams(r, cfg.max_ngram);
  const auto n = static_cast<std::size_t>(cfg.max_ngram);
  std::vector<std::int64_t> stats(2 + 2 * n, 0);
  stats[0] = static_cast<std::int64_t>(h.size());
  stats[1] = static_cast<std::int64_t>(r.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [gram, count] : hc[k]) {
      stats[2 + n + k] += count;
      if (auto it = rc[k].find(gram); it != rc[k].end()) stats[2 + k] += std::min(count, it->second);
    }
  }
  return stats;
}

double bleu_from_stats(std::span<const std::int64_t> stats, const BleuConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.max_ngram);
  if (stats.size() != 2 + 2 * n) throw std::invalid_argument("bad BLEU statistics length");
  const double sys_len = static_cast<double>(stats[0]);
  const double ref_len = static_cast<double>(stats[1]);
  auto correct = stats.subspan(2, n);
  auto total = stats.subspan(2 + n, n);

  double bp = 1.0;
  if (sys_len < ref_len) bp = sys_len > 0 ? std::exp(1.0 - ref_len / sys_len) : 0.0;
  if (std::all_of(correct.begin(), correct.end(), [](std::int64_t c) { return c == 0; })) return 0.0;

  bool perfect = bp == 1.0;
  std::vector<double> precisions(n, 0.0);
  double smooth = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (total[k] == 0) {
      perfect = false;
      break;
    }
    if (correct[k] == 0) {
      smooth *= 2;
      precisions[k] = 100.0 / (smooth * static_cast<double>(total[k]));
    } else {
      precisions[k] = 100.0 * static_cast<double>(correct[k]) / static_cast<double>(total[k]);
    }
    perfect = perfect && correct[k] == total[k];
  }
  // exp(log(100)) is not exactly 100 in binary floating point.
  if (perfect) return 100.0;
  double sum = 0.0;
  for (double p : precisions) sum += my_log(p);
  return bp * std::exp(sum / static_cast<double>(n));
}

namespace {

constexpr std::u32string_view kPuncts = U"!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

std::vector<std::u32string> chrf_words(std::u32string_view sent) {
  std::vector<std::u32string> out;
  for (auto& w : py_split(sent)) {
    if (w.size() == 1) {
      out.push_back(std::move(w));
    } else if (kPuncts.find(w.back()) != std::u32string_view::npos) {
      out.push_back(w.substr(0, w.size() - 1));
      out.push_back(w.substr(w.size() - 1));
    } else if (kPuncts.find(w.front()) != std::u32string_view::npos) {
      out.push_back(w.substr(0, 1));
      out.push_back(w.substr(1));
    } else {
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<U32Counts> chrf_ngrams(std::u32string_view sent, const ChrfConfig& cfg) {
  std::u32string chars;
  for (auto& w : py_split(sent)) chars += w;
  std::vector<U32Counts> out;
  for (int n = 1; n <= cfg.char_order; ++n) {
    U32Counts c;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= chars.size(); ++i)
      ++c[chars.substr(i, static_cast<std::size_t>(n))];
    out.push_back(std::move(c));
  }
  auto words = chrf_words(sent);
  for (int n = 1; n <= cfg.word_order; ++n) {
    U32Counts c;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i) {
      std::u32string key = words[i];
      for (int k = 1; k < n; ++k) key += U' ' + words[i + static_cast<std::size_t>(k)];
      ++c[key];
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> chrf_segment_stats(std::string_view hyp, std::string_view ref, const ChrfConfig& cfg) {
  auto h = chrf_ngrams(text::decode(text::sanitize_utf8(hyp)), cfg);
  auto r = chrf_ngrams(text::decode(text::sanitize_utf8(ref)), cfg);
  std::vector<std::int64_t> stats;
  stats.reserve(3 * h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::int64_t hyp_count = 0, ref_count = 0, match = 0;
    for (const auto& [gram, count] : h[k]) {
      hyp_count += count;
      if (auto it = r[k].find(gram); it != r[k].end()) match += std::min(count, it->second);
    }
    for (const auto& [gram, count] : r[k]) ref_count += count;
    stats.push_back(r[k].empty() ? 0 : hyp_count);
    stats.push_back(ref_count);
    stats.push_back(match);
  }
  return stats;
}

double chrf_from_stats(std::span<const std::int64_t> stats, const ChrfConfig& cfg) {
  const auto orders = static_cast<std::size_t>(cfg.char_order + cfg.word_order);
  if (stats.size() != 3 * orders) throw std::invalid_argument("bad chrF statistics length");
  const double factor = static_cast<double>(cfg.beta) * cfg.beta;
  double avg_prec = 0.0, avg_rec = 0.0;
  int effective = 0;
  for (std::size_t i = 0; i < orders; ++i) {
    auto n_hyp = stats[3 * i], n_ref = stats[3 * i + 1], n_match = stats[3 * i + 2];
    if (n_hyp > 0 && n_ref > 0) {
      avg_prec += static_cast<double>(n_match) / static_cast<double>(n_hyp);
      avg_rec += static_cast<double>(n_match) / static_cast<double>(n_ref);
      ++effective;
    }
  }
  if (effective == 0) return 0.0;
  avg_prec /= effective;
  avg_rec /= effective;
  if (avg_prec + avg_rec == 0.0) return 0.0;
  return 100.0 * (1 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec);
}

namespace {

template <typename SegFn>
std::vector<std::vector<std::int64_t>> all_stats(std::span<const std::string> hyps,
                                                 std::span<const std::string> refs, SegFn seg) {
  check_corpus(hyps.size(), refs.size());
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) out.push_back(seg(hyps[i], refs[i]));
  return out;
}

std::vector<std::int64_t> summed(const std::vector<std::vector<std::int64_t>>& segs) {
  std::vector<std::int64_t> total(segs.front().size(), 0);
  for (const auto& s : segs)
    for (std::size_t k = 0; k < s.size(); ++k) total[k] += s[k];
  return total;
}

template <typename ScoreFn>
BootstrapEstimate bootstrap(const std::vector<std::vector<std::int64_t>>& segs, const BootstrapConfig& bs,
                            ScoreFn score) {
  SplitMix64 rng(bs.seed);
  const std::size_t n = segs.size();
  std::vector<double> scores;
  scores.reserve(bs.samples);
  std::vector<std::int64_t> total(segs.front().size());
  for (std::size_t s = 0; s < bs.samples; ++s) {
    std::fill(total.begin(), total.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& seg = segs[static_cast<std::size_t>(rng.below(n))];
      for (std::size_t k = 0; k < seg.size(); ++k) total[k] += seg[k];
    }
    scores.push_back(score(total));
  }
  BootstrapEstimate est;
  if (scores.empty()) return est;
  double sum = 0.0;
  for (double x : scores) sum += x;
  est.mean = sum / static_cast<double>(scores.size());
  std::sort(scores.begin(), scores.end());
  std::size_t lower = scores.size() / 40;
  std::size_t upper = scores.size() - lower - 1;
  est.ci = 0.5 * (scores[upper] - scores[lower]);
  return est;
}

std::string signature_prefix(std::optional<BootstrapConfig> bs) {
  std::string s = "nrefs:1|";
  if (bs) s += "bs:" + std::to_string(bs->samples) + "|seed:" + std::to_string(bs->seed) + "|";
  return s + "case:mixed|";
}

std::string one_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

}  // namespace

double bleu(std::span<const std::string> hyps, std::span<const std::string> refs, const BleuConfig& cfg) {
  auto segs = all_stats(hyps, refs, [&](const std::string& h, const std::string& r) {
    return bleu_segment_stats(h, r, cfg);
  });
  return bleu_from_stats(summed(segs), cfg);
}

double chrf2pp(std::span<const std::string> hyps, std::span<const std::string> refs, const ChrfConfig& cfg) {
  auto segs = all_stats(hyps, refs, [&](const std::string& h, const std::string& r) {
    return chrf_segment_stats(h, r, cfg);
  });
  return chrf_from_stats(summed(segs), cfg);
}

std::string bleu_signature(std::optional<BootstrapConfig> bs) {
  return signature_prefix(bs) + "eff:no|tok:13a|smooth:exp|version:" + kVersion;
}

std::string chrf_signature(const ChrfConfig& cfg, std::optional<BootstrapConfig> bs) {
  return signature_prefix(bs) + "eff:yes|nc:" + std::to_string(cfg.char_order) +
         "|nw:" + std::to_string(cfg.word_order) + "|space:no|version:" + kVersion;
}

MetricResult score_bleu(std::span<const std::string> hyps, std::span<const std::string> refs,
                        std::optional<BootstrapConfig> bs) {
  auto segs = all_stats(hyps, refs, [](const std::string& h, const std::string& r) {
    return bleu_segment_stats(h, r);
  });
  MetricResult m{"BLEU", bleu_from_stats(summed(segs)), bleu_signature(bs), std::nullopt};
  if (bs) m.bootstrap = bootstrap(segs, *bs, [](const auto& t) { return bleu_from_stats(t); });
  return m;
}

MetricResult score_chrf2pp(std::span<const std::string> hyps, std::span<const std::string> refs,
                           std::optional<BootstrapConfig> bs) {
  auto segs = all_stats(hyps, refs, [](const std::string& h, const std::string& r) {
    return chrf_segment_stats(h, r);
  });
  MetricResult m{"chrF2++", chrf_from_stats(summed(segs)), chrf_signature({}, bs), std::nullopt};
  if (bs) m.bootstrap = bootstrap(segs, *bs, [](const auto& t) { return chrf_from_stats(t); });
  return m;
}

std::string MetricResult::format() const {
  std::string s = name + " = " + one_decimal(score);
  if (bootstrap) s += " (mean " + one_decimal(bootstrap->mean) + " +- " + one_decimal(bootstrap->ci) + ")";
  return s + " " + signature;
}

}  // namespace scimine
