#include "scimine/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "scimine/text.hpp"

namespace scimine::html {

namespace {

// Latin-1 named references, code points 160..255 in order.
constexpr std::array<std::string_view, 96> kLatin1Names = {
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",
    "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",    "reg",    "macr",
    "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",  "para",   "middot",
    "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest",
    "Agrave", "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil",
    "Egrave", "Eacute", "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",
    "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",
    "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil",
    "egrave", "eacute", "ecirc",  "euml",   "igrave", "iacute", "icirc",  "iuml",
    "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
    "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml"};

struct NamedRef {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedRef, 30> kOtherNames = {{
    {"amp", '&'},        {"lt", '<'},          {"gt", '>'},         {"quot", '"'},
    {"apos", '\''},      {"OElig", 0x152},     {"oelig", 0x153},    {"Scaron", 0x160},
    {"scaron", 0x161},   {"Yuml", 0x178},      {"ndash", 0x2013},   {"mdash", 0x2014},
    {"lsquo", 0x2018},   {"rsquo", 0x2019},    {"sbquo", 0x201A},   {"ldquo", 0x201C},
    {"rdquo", 0x201D},   {"bdquo", 0x201E},    {"hellip", 0x2026},  {"euro", 0x20AC},
    {"bull", 0x2022},    {"trade", 0x2122},    {"thinsp", 0x2009},  {"ensp", 0x2002},
    {"emsp", 0x2003},    {"zwnj", 0x200C},     {"zwj", 0x200D},     {"lrm", 0x200E},
    {"rlm", 0x200F},     {"minus", 0x2212},
}};

std::optional<char32_t> lookup_named(std::string_view name) {
  for (std::size_t i = 0; i < kLatin1Names.size(); ++i)
    if (kLatin1Names[i] == name) return static_cast<char32_t>(160 + i);
  for (const auto& n : kOtherNames)
    if (n.name == name) return n.cp;
  return std::nullopt;
}

bool is_void(std::string_view tag) {
  static constexpr std::array<std::string_view, 15> kVoid = {
      "area", "base", "br", "col", "embed", "hr", "img", "input",
      "link", "meta", "param", "source", "track", "wbr", "keygen"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

bool is_inline(std::string_view tag) {
  static constexpr std::array<std::string_view, 25> kInline = {
      "a",    "abbr", "b",      "bdi",  "bdo",   "cite", "code", "data", "dfn",
      "em",   "i",    "kbd",    "mark", "q",     "s",    "samp", "small", "span",
      "strong", "sub", "sup",   "time", "u",     "var",  "font"};
  return std::find(kInline.begin(), kInline.end(), tag) != kInline.end();
}

bool closes_p(std::string_view tag) {
  static constexpr std::array<std::string_view, 22> kBlocks = {
      "address", "article", "aside", "blockquote", "div", "dl", "fieldset", "footer",
      "form",    "h1",      "h2",    "h3",         "h4",  "h5", "h6",       "header",
      "hr",      "nav",     "ol",    "p",          "pre", "table"};
  return std::find(kBlocks.begin(), kBlocks.end(), tag) != kBlocks.end() || tag == "ul" ||
         tag == "section";
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool istarts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  return true;
}

std::size_t ifind(std::string_view s, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i)
    if (istarts_with(s, i, needle)) return i;
  return std::string_view::npos;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::vector<Element>& els) : els_(els) {
    els_.push_back(Element{"#root", {}, 0, {}, {}});
    stack_.push_back(0);
  }

  void text(std::string_view raw) {
    if (raw.empty()) return;
    Element& cur = els_[stack_.back()];
    cur.text_runs.emplace_back(cur.children.size(), decode_entities(raw));
  }

  void start(std::string tag, std::vector<Attribute> attrs, bool self_closing) {
    apply_implied_end(tag);
    std::size_t idx = els_.size();
    std::size_t parent = stack_.back();
    els_.push_back(Element{tag, std::move(attrs), parent, {}, {}});
    els_[parent].children.push_back(idx);
    if (!self_closing && !is_void(tag)) stack_.push_back(idx);
  }

  void end(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (els_[stack_[i]].tag == tag) {
        stack_.resize(i);
        return;
      }
    }
  }

 private:
  void close_open(std::initializer_list<std::string_view> closable,
                  std::initializer_list<std::string_view> boundary) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const std::string& t = els_[stack_[i]].tag;
      if (std::find(boundary.begin(), boundary.end(), t) != boundary.end()) return;
      if (std::find(closable.begin(), closable.end(), t) != closable.end()) {
        stack_.resize(i);
        return;
      }
    }
  }

  void apply_implied_end(std::string_view tag) {
    if (closes_p(tag) && els_[stack_.back()].tag == "p") stack_.pop_back();
    if (tag == "li") close_open({"li"}, {"ul", "ol"});
    else if (tag == "dt" || tag == "dd") close_open({"dt", "dd"}, {"dl"});
    else if (tag == "td" || tag == "th") close_open({"td", "th"}, {"tr", "table"});
    else if (tag == "tr") close_open({"tr"}, {"table", "tbody", "thead", "tfoot"});
    else if (tag == "tbody" || tag == "thead" || tag == "tfoot")
      close_open({"tbody", "thead", "tfoot"}, {"table"});
    else if (tag == "option") close_open({"option"}, {"select"});
  }

  std::vector<Element>& els_;
  std::vector<std::size_t> stack_;
};

std::string charset_from(const Element& meta) {
  if (auto cs = meta.attr("charset")) return lower(text::trim(*cs));
  auto equiv = meta.attr("http-equiv");
  auto content = meta.attr("content");
  if (equiv && content && lower(*equiv) == "content-type") {
    std::string c = lower(*content);
    auto pos = c.find("charset=");
    if (pos != std::string::npos) {
      std::string cs = c.substr(pos + 8);
      auto end = cs.find_first_of("; \"'");
      return text::trim(cs.substr(0, end));
    }
  }
  return {};
}

}  // namespace

std::optional<std::string_view> Element::attr(std::string_view name) const {
  for (const auto& a : attributes)
    if (a.name == name) return std::string_view(a.value);
  return std::nullopt;
}

std::string decode_entities(std::string_view s) {
  if (s.find('&') == std::string_view::npos) return std::string(s);
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view body = s.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (!body.empty() && body[0] == '#') {
      unsigned long value = 0;
      bool ok = body.size() > 1;
      bool hex = ok && (body[1] == 'x' || body[1] == 'X');
      std::size_t start = hex ? 2 : 1;
      if (start >= body.size()) ok = false;
      for (std::size_t k = start; ok && k < body.size(); ++k) {
        int digit;
        char c = body[k];
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (hex && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else { ok = false; break; }
        value = value * (hex ? 16 : 10) + static_cast<unsigned long>(digit);
        if (value > 0x10FFFF) value = 0x110000;
      }
      if (ok) {
        bool invalid = value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF);
        cp = invalid ? char32_t{0xFFFD} : static_cast<char32_t>(value);
      }
    } else {
      cp = lookup_named(body);
    }
    if (!cp) {
      out.push_back(s[i++]);
      continue;
    }
    text::append_utf8(out, *cp);
    i = semi + 1;
  }
  return out;
}

Document parse(std::string_view html) {
  Document doc;
  TreeBuilder tb(doc.elements_);
  std::size_t i = 0;
  const std::size_t n = html.size();
  std::size_t text_start = 0;

  auto flush = [&](std::size_t upto) {
    if (upto > text_start) tb.text(html.substr(text_start, upto - text_start));
  };

  while (i < n) {
    if (html[i] != '<') {
      ++i;
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      flush(i);
      auto end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? n : end + 3;
      text_start = i;
      continue;
    }
    if (i + 1 < n && (html[i + 1] == '!' || html[i + 1] == '?')) {
      flush(i);
      auto end = html.find('>', i + 2);
      i = end == std::string_view::npos ? n : end + 1;
      text_start = i;
      continue;
    }
    if (i + 1 < n && html[i + 1] == '/') {
      std::size_t j = i + 2;
      while (j < n && is_name_char(html[j])) ++j;
      if (j == i + 2) {
        ++i;
        continue;
      }
      flush(i);
      std::string tag = lower(html.substr(i + 2, j - i - 2));
      auto end = html.find('>', j);
      i = end == std::string_view::npos ? n : end + 1;
      text_start = i;
      tb.end(tag);
      continue;
    }
    if (i + 1 >= n || !std::isalpha(static_cast<unsigned char>(html[i + 1]))) {
      ++i;
      continue;
    }

    flush(i);
    std::size_t j = i + 1;
    while (j < n && is_name_char(html[j])) ++j;
    std::string tag = lower(html.substr(i + 1, j - i - 1));
    std::vector<Attribute> attrs;
    bool self_closing = false;
    while (j < n) {
      while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
      if (j >= n) break;
      if (html[j] == '>') {
        ++j;
        break;
      }
      if (html[j] == '/') {
        if (j + 1 < n && html[j + 1] == '>') {
          self_closing = true;
          j += 2;
          break;
        }
        ++j;
        continue;
      }
      std::size_t name_start = j;
      while (j < n && !std::isspace(static_cast<unsigned char>(html[j])) && html[j] != '=' &&
             html[j] != '>' && html[j] != '/')
        ++j;
      if (j == name_start) {
        ++j;
        continue;
      }
      std::string name = lower(html.substr(name_start, j - name_start));
      while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
      std::string value;
      if (j < n && html[j] == '=') {
        ++j;
        while (j < n && std::isspace(static_cast<unsigned char>(html[j]))) ++j;
        if (j < n && (html[j] == '"' || html[j] == '\'')) {
          char q = html[j++];
          auto close = html.find(q, j);
          if (close == std::string_view::npos) close = n;
          value = decode_entities(html.substr(j, close - j));
          j = close == n ? n : close + 1;
        } else {
          std::size_t vs = j;
          while (j < n && !std::isspace(static_cast<unsigned char>(html[j])) && html[j] != '>') ++j;
          value = decode_entities(html.substr(vs, j - vs));
        }
      }
      attrs.push_back({std::move(name), std::move(value)});
    }
    i = j;
    text_start = i;

    if (tag == "script" || tag == "style") {
      tb.start(tag, std::move(attrs), true);
      auto close = ifind(html, "</" + tag, i);
      if (close == std::string_view::npos) {
        i = n;
      } else {
        auto gt = html.find('>', close);
        i = gt == std::string_view::npos ? n : gt + 1;
      }
      text_start = i;
      continue;
    }
    bool is_meta = tag == "meta";
    tb.start(std::move(tag), std::move(attrs), self_closing);
    if (is_meta && doc.charset_.empty()) doc.charset_ = charset_from(doc.elements_.back());
  }
  flush(n);
  return doc;
}

void Document::collect_text(std::size_t i, std::string& out) const {
  // Iterative walk; malformed pages can nest thousands of unclosed elements.
  struct Frame {
    std::size_t element;
    std::size_t pos;
    std::size_t run;
  };
  std::vector<Frame> stack{{i, 0, 0}};
  if (!is_inline(elements_[i].tag)) out.push_back(' ');
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Element& e = elements_[f.element];
    while (f.run < e.text_runs.size() && e.text_runs[f.run].first == f.pos)
      out += e.text_runs[f.run++].second;
    if (f.pos < e.children.size()) {
      std::size_t child = e.children[f.pos++];
      if (!is_inline(elements_[child].tag)) out.push_back(' ');
      stack.push_back({child, 0, 0});
      continue;
    }
    if (!is_inline(e.tag)) out.push_back(' ');
    stack.pop_back();
  }
}

std::string Document::text_content(std::size_t i) const {
  std::string out;
  collect_text(i, out);
  return text::normalize_whitespace(out);
}

std::string Document::own_text(std::size_t i) const {
  std::string out;
  for (const auto& [pos, t] : elements_.at(i).text_runs) {
    out += t;
    out.push_back(' ');
  }
  return text::normalize_whitespace(out);
}

std::optional<std::size_t> Document::next_element_sibling(std::size_t i) const {
  if (i == 0) return std::nullopt;
  const auto& siblings = elements_[elements_[i].parent].children;
  auto it = std::find(siblings.begin(), siblings.end(), i);
  if (it == siblings.end() || ++it == siblings.end()) return std::nullopt;
  return *it;
}

}  // namespace scimine::html
