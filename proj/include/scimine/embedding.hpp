#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scimine {

/// Unit-L2-norm vector; normalized on construction.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  /// Throws std::invalid_argument for an empty, zero, or non-finite vector.
  explicit EmbeddingVector(std::vector<double> values);

  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;  // would dangle
  std::size_t dimension() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Dot product of unit vectors. Throws std::invalid_argument on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Sentence encoder interface. Implementations must be deterministic and
/// safe to call from several threads at once.
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Throws on failure (e.g. a sentence missing from an external vector file).
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Character n-gram feature hashing.
///
/// The text is whitespace-normalized, NFC-normalized, case-folded, and padded
/// with one space on each side. Every code-point n-gram, n = 1..4, is hashed
/// with 64-bit FNV-1a over its UTF-8 bytes; the hash adds +1 (top bit clear)
/// or -1 (top bit set) to bucket `hash % dimension`. The result is
/// L2-normalized; the rare all-cancelled vector becomes e_0.
class HashEmbeddingBackend final : public EmbeddingBackend {
 public:
  explicit HashEmbeddingBackend(std::size_t dimension = 256);
  std::string name() const override { return "hash"; }
  std::size_t dimension() const override { return dimension_; }
  EmbeddingVector embed(std::string_view text) const override;

 private:
  std::size_t dimension_;
};

/// Key of a sentence in an external vector file: FNV-1a 64 over the UTF-8
/// bytes of the whitespace-normalized text.
std::uint64_t sentence_hash(std::string_view text);

/// Precomputed vectors, e.g. produced offline by a neural encoder.
///
/// File layout (little-endian): magic "SMVEC1", u32 dimension, u64 count,
/// then `count` records of (u64 sentence_hash, dimension x float32).
class ExternalEmbeddingBackend final : public EmbeddingBackend {
 public:
  static ExternalEmbeddingBackend load(const std::string& path);
  static ExternalEmbeddingBackend from_bytes(std::string_view bytes);

  std::string name() const override { return "external"; }
  std::size_t dimension() const override { return dimension_; }
  EmbeddingVector embed(std::string_view text) const override;
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::uint64_t, EmbeddingVector> vectors_;
};

struct VectorFileEntry {
  std::uint64_t hash = 0;
  std::vector<float> values;
};

/// Serialize entries in the external vector file layout.
std::string encode_vector_file(std::uint32_t dimension, std::span<const VectorFileEntry> entries);

/// "hash", "hash:<dimension>", or "external:<path>".
std::unique_ptr<EmbeddingBackend> make_backend(std::string_view spec);

/// Embed every text; a failure is rethrown as EmbeddingError carrying the index.
std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const EmbeddingBackend& backend);

}  // namespace scimine
