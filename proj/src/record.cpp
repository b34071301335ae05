#include "scimine/record.hpp"

#include <json.hpp>

#include "scimine/errors.hpp"

namespace scimine {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

DomainCounts zero_counts() {
  DomainCounts c;
  for (Domain d : kFocusedDomains) c[d] = 0;
  return c;
}

std::string_view to_string(Origin o) { return o == Origin::title ? "title" : "abstract"; }

namespace {

json parse_object(std::string_view serialized) {
  json doc;
  try {
    doc = json::parse(serialized.begin(), serialized.end());
  } catch (const json::exception& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "expected a JSON object");
  return doc;
}

std::string get_string(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(field, "expected a string");
  return it->get<std::string>();
}

std::string require_string(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(field, "missing required field");
  return get_string(doc, field);
}

std::int64_t require_int(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(field, "missing required field");
  if (!it->is_number_integer()) throw ParseError(field, "expected an integer");
  return it->get<std::int64_t>();
}

std::vector<std::string> get_string_list(const json& doc, const char* field) {
  std::vector<std::string> out;
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(field, "expected an array of strings");
  for (const auto& v : *it) {
    if (!v.is_string()) throw ParseError(field, "expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

TextMap get_text_map(const json& doc, const char* field) {
  TextMap out;
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return out;
  if (!it->is_object()) throw ParseError(field, "expected an object of language -> text");
  for (const auto& [tag, v] : it->items()) {
    if (!v.is_string()) throw ParseError(field, "value for '" + tag + "' is not a string");
    out[LanguageCode::parse(tag)] = v.get<std::string>();
  }
  return out;
}

Domain parse_domain_field(const json& doc, const char* field) {
  std::string tag = get_string(doc, field);
  if (tag.empty()) return Domain::general;
  auto d = parse_domain(tag);
  if (!d) throw ParseError(field, "unknown domain '" + tag + "'");
  return *d;
}

ordered text_map_json(const TextMap& m) {
  ordered out = ordered::object();
  for (const auto& [lang, text] : m) out[lang.str()] = text;
  return out;
}

std::string dump(const ordered& j, int indent) {
  return j.dump(indent, ' ', false, ordered::error_handler_t::replace);
}

}  // namespace

AcademicRecord parse_record(std::string_view serialized) {
  json doc = parse_object(serialized);
  AcademicRecord r;
  r.abstracts = get_text_map(doc, "abstracts");
  r.titles = get_text_map(doc, "titles");
  r.repository = require_string(doc, "repository");
  r.html_id = require_int(doc, "html_id");
  r.link_html = get_string(doc, "link_html");
  r.link_pdf = get_string(doc, "link_pdf");
  r.uri = get_string(doc, "uri");
  r.license_link = get_string(doc, "license_link");
  r.license = get_string(doc, "license");
  r.date_available = get_string(doc, "date_available");
  r.document_language = get_string(doc, "document_language");
  r.document_type = get_string(doc, "document_type");
  r.keywords = get_string_list(doc, "keywords");
  r.authors = get_string_list(doc, "authors");
  r.publishers = get_string_list(doc, "publishers");
  r.bibliographic_citation = get_string(doc, "bibliographic_citation");
  r.journal = get_string(doc, "journal");

  if (auto it = doc.find("domain_keyword_count"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("domain_keyword_count", "expected an object");
    for (const auto& [tag, v] : it->items()) {
      auto d = parse_domain(tag);
      if (!d || *d == Domain::general)
        throw ParseError("domain_keyword_count", "unknown domain '" + tag + "'");
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ParseError("domain_keyword_count", "count for '" + tag + "' must be a non-negative integer");
      r.domain_keyword_count[*d] = v.get<std::int64_t>();
    }
  }
  r.domain = parse_domain_field(doc, "domain");
  return r;
}

std::string serialize_record(const AcademicRecord& r) {
  ordered j = ordered::object();
  j["abstracts"] = text_map_json(r.abstracts);
  j["titles"] = text_map_json(r.titles);
  j["repository"] = r.repository;
  j["html_id"] = r.html_id;
  j["link_html"] = r.link_html;
  j["link_pdf"] = r.link_pdf;
  j["uri"] = r.uri;
  j["license_link"] = r.license_link;
  j["license"] = r.license;
  j["date_available"] = r.date_available;
  j["document_language"] = r.document_language;
  j["document_type"] = r.document_type;
  j["keywords"] = r.keywords;
  j["authors"] = r.authors;
  j["publishers"] = r.publishers;
  j["bibliographic_citation"] = r.bibliographic_citation;
  j["journal"] = r.journal;
  ordered counts = ordered::object();
  for (Domain d : kFocusedDomains) {
    auto it = r.domain_keyword_count.find(d);
    counts[std::string(to_string(d))] = it == r.domain_keyword_count.end() ? 0 : it->second;
  }
  j["domain_keyword_count"] = counts;
  j["domain"] = std::string(to_string(r.domain));
  return dump(j, 4);
}

namespace {

void key_fields(ordered& j, const RecordKey& key, Domain domain, Origin origin) {
  j["domain"] = std::string(to_string(domain));
  j["repository"] = key.repository;
  j["html_id"] = key.html_id;
  j["origin"] = std::string(to_string(origin));
}

Origin parse_origin(const json& doc) {
  std::string o = get_string(doc, "origin");
  if (o == "title") return Origin::title;
  if (o == "abstract" || o.empty()) return Origin::abstract;
  throw ParseError("origin", "expected 'title' or 'abstract'");
}

Domain parse_line_domain(const json& doc) { return parse_domain_field(doc, "domain"); }

}  // namespace

std::string to_jsonl(const SentencePair& p) {
  ordered j = ordered::object();
  j["source_text"] = p.source_text;
  j["target_text"] = p.target_text;
  j["source_lang"] = p.source_lang.str();
  j["target_lang"] = p.target_lang.str();
  j["score"] = p.score;
  key_fields(j, p.record_key, p.domain, p.origin);
  return dump(j, -1);
}

std::string to_jsonl(const MonolingualSentence& s) {
  ordered j = ordered::object();
  j["text"] = s.text;
  j["lang"] = s.lang.str();
  key_fields(j, s.record_key, s.domain, s.origin);
  return dump(j, -1);
}

SentencePair parse_pair_line(std::string_view line) {
  json doc = parse_object(line);
  SentencePair p;
  p.source_text = require_string(doc, "source_text");
  p.target_text = require_string(doc, "target_text");
  p.source_lang = LanguageCode::parse(require_string(doc, "source_lang"));
  p.target_lang = LanguageCode::parse(require_string(doc, "target_lang"));
  if (p.source_lang == p.target_lang) throw ParseError("target_lang", "same language as source_lang");
  auto it = doc.find("score");
  if (it == doc.end() || !it->is_number()) throw ParseError("score", "expected a number");
  p.score = it->get<double>();
  p.domain = parse_line_domain(doc);
  p.record_key = {require_string(doc, "repository"), require_int(doc, "html_id")};
  p.origin = parse_origin(doc);
  return p;
}

MonolingualSentence parse_mono_line(std::string_view line) {
  json doc = parse_object(line);
  MonolingualSentence s;
  s.text = require_string(doc, "text");
  s.lang = LanguageCode::parse(require_string(doc, "lang"));
  s.domain = parse_line_domain(doc);
  s.record_key = {require_string(doc, "repository"), require_int(doc, "html_id")};
  s.origin = parse_origin(doc);
  return s;
}

std::string to_tsv(const SentencePair& p) {
  auto flat = [](std::string s) {
    for (char& c : s)
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return s;
  };
  return flat(p.source_text) + '\t' + flat(p.target_text);
}

std::string pair_label(const LanguageCode& source, const LanguageCode& target) {
  return source.str() + "-" + target.str();
}

}  // namespace scimine
