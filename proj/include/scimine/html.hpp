#pragma once

// A forgiving HTML tree builder for repository record pages. It never fails:
// unknown constructs are skipped, stray end tags ignored, unclosed elements
// closed at end of input, and the common implied-end-tag rules (p, li, dt/dd,
// td/th, tr, option) applied.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scimine::html {

struct Attribute {
  std::string name;  // lowercased
  std::string value; // entity-decoded
};

class Document;

/// Elements are addressed by index into Document::elements(); 0 is the root.
struct Element {
  std::string tag;  // lowercased; "#root" for the root
  std::vector<Attribute> attributes;
  std::size_t parent = 0;
  std::vector<std::size_t> children;  // element children, document order
  /// Child text runs interleaved with element children: (position, text) where
  /// position is the number of element children preceding the run.
  std::vector<std::pair<std::size_t, std::string>> text_runs;

  std::optional<std::string_view> attr(std::string_view name) const;
};

class Document {
 public:
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& at(std::size_t i) const { return elements_.at(i); }
  std::size_t root() const noexcept { return 0; }

  /// Concatenated descendant text, whitespace-normalized.
  std::string text_content(std::size_t i) const;
  /// Direct text children only, whitespace-normalized.
  std::string own_text(std::size_t i) const;
  std::optional<std::size_t> next_element_sibling(std::size_t i) const;
  /// Declared charset from <meta charset> or http-equiv content-type, lowercased.
  const std::string& declared_charset() const noexcept { return charset_; }

 private:
  friend Document parse(std::string_view);
  void collect_text(std::size_t i, std::string& out) const;

  std::vector<Element> elements_;
  std::string charset_;
};

Document parse(std::string_view html);

/// Decode character references (&amp; &#233; &#xE9; and the Latin-1 named set).
std::string decode_entities(std::string_view s);

}  // namespace scimine::html
