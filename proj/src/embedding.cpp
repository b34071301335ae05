#include "scimine/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scimine/errors.hpp"
#include "scimine/text.hpp"

namespace scimine {

static_assert(std::endian::native == std::endian::little, "vector files assume a little-endian host");

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("embedding has dimension 0");
  double sq = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("embedding has a non-finite component");
    sq += v * v;
  }
  if (sq == 0.0) throw std::invalid_argument("embedding is the zero vector");
  double inv = 1.0 / std::sqrt(sq);
  for (double& v : values_) v *= inv;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()));
  double dot = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) dot += av[i] * bv[i];
  return dot;
}

HashEmbeddingBackend::HashEmbeddingBackend(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("hash backend dimension must be positive");
}

EmbeddingVector HashEmbeddingBackend::embed(std::string_view s) const {
  std::u32string cps =
      text::decode(" " + text::case_fold(text::to_nfc(text::normalize_whitespace(s))) + " ");
  std::vector<double> v(dimension_, 0.0);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      std::uint64_t h = text::fnv1a64(text::encode(std::u32string_view(cps).substr(i, n)));
      v[h % dimension_] += (h >> 63) ? -1.0 : 1.0;
    }
  }
  bool zero = true;
  for (double x : v) zero = zero && x == 0.0;
  if (zero) v[0] = 1.0;
  return EmbeddingVector(std::move(v));
}

std::uint64_t sentence_hash(std::string_view s) { return text::fnv1a64(text::normalize_whitespace(s)); }

namespace {

constexpr std::string_view kMagic = "SMVEC1";

template <typename T>
T read_le(std::string_view bytes, std::size_t& pos) {
  if (bytes.size() - pos < sizeof(T)) throw DataError("vector file truncated");
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

template <typename T>
void write_le(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

ExternalEmbeddingBackend ExternalEmbeddingBackend::from_bytes(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) != kMagic) throw DataError("vector file: bad magic");
  std::size_t pos = kMagic.size();
  auto dim = read_le<std::uint32_t>(bytes, pos);
  auto count = read_le<std::uint64_t>(bytes, pos);
  if (dim == 0) throw DataError("vector file: dimension is 0");
  const std::size_t record = 8 + 4 * static_cast<std::size_t>(dim);
  if (count > (bytes.size() - pos) / record) throw DataError("vector file truncated");
  ExternalEmbeddingBackend b;
  b.dimension_ = dim;
  b.vectors_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto hash = read_le<std::uint64_t>(bytes, pos);
    std::vector<double> v(dim);
    for (auto& x : v) x = static_cast<double>(read_le<float>(bytes, pos));
    try {
      b.vectors_.insert_or_assign(hash, EmbeddingVector(std::move(v)));
    } catch (const std::invalid_argument& e) {
      throw DataError("vector file entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return b;
}

ExternalEmbeddingBackend ExternalEmbeddingBackend::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vector file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_bytes(ss.str());
}

EmbeddingVector ExternalEmbeddingBackend::embed(std::string_view s) const {
  auto it = vectors_.find(sentence_hash(s));
  if (it == vectors_.end())
    throw DataError("no precomputed vector for sentence '" + text::normalize_whitespace(s).substr(0, 60) + "'");
  return it->second;
}

std::string encode_vector_file(std::uint32_t dimension, std::span<const VectorFileEntry> entries) {
  std::string out(kMagic);
  write_le(out, dimension);
  write_le(out, static_cast<std::uint64_t>(entries.size()));
  for (const auto& e : entries) {
    if (e.values.size() != dimension) throw std::invalid_argument("entry dimension mismatch");
    write_le(out, e.hash);
    for (float f : e.values) write_le(out, f);
  }
  return out;
}

std::unique_ptr<EmbeddingBackend> make_backend(std::string_view spec) {
  if (spec == "hash") return std::make_unique<HashEmbeddingBackend>();
  if (spec.rfind("hash:", 0) == 0) {
    std::string d(spec.substr(5));
    std::size_t used = 0;
    unsigned long dim = 0;
    try {
      dim = std::stoul(d, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != d.size() || dim == 0) throw ConfigError("backend", "bad hash dimension '" + d + "'");
    return std::make_unique<HashEmbeddingBackend>(dim);
  }
  if (spec.rfind("external:", 0) == 0)
    return std::make_unique<ExternalEmbeddingBackend>(ExternalEmbeddingBackend::load(std::string(spec.substr(9))));
  throw ConfigError("backend", "unknown backend '" + std::string(spec) + "' (expected hash or external:<path>)");
}

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts, const EmbeddingBackend& backend) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      out.push_back(backend.embed(texts[i]));
    } catch (const std::exception& e) {
      throw EmbeddingError(i, e.what());
    }
    if (out.back().dimension() != backend.dimension())
      throw EmbeddingError(i, "backend returned dimension " + std::to_string(out.back().dimension()));
  }
  return out;
}

}  // namespace scimine
