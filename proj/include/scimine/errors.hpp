#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scimine {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (record files, configs, corpora).
/// The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A structured document failed to parse; `field()` names the offending key
/// ("" when the document itself is not valid JSON).
class ParseError : public DataError {
 public:
  ParseError(std::string field, const std::string& what)
      : DataError(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Invalid configuration (repository config, lexicon, pipeline config).
class ConfigError : public DataError {
 public:
  ConfigError(std::string field, const std::string& what)
      : DataError(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ExtractError : public DataError {
 public:
  using DataError::DataError;
};

/// Embedding backend failure for the text at `index()` of a batch.
class EmbeddingError : public Error {
 public:
  EmbeddingError(std::size_t index, const std::string& what)
      : Error("text " + std::to_string(index) + ": " + what), index_(index), reason_(what) {}
  const std::string& reason() const noexcept { return reason_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
  std::string reason_;
};

/// Fewer eligible records than a benchmark asks for.
class BenchmarkShortfall : public DataError {
 public:
  BenchmarkShortfall(std::size_t available, std::size_t required)
      : DataError("benchmark needs " + std::to_string(required) + " eligible records, found " +
                  std::to_string(available) + " (shortfall " +
                  std::to_string(required - available) + ")"),
        available_(available),
        required_(required) {}
  std::size_t available() const noexcept { return available_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t shortfall() const noexcept { return required_ - available_; }

 private:
  std::size_t available_;
  std::size_t required_;
};

}  // namespace scimine
