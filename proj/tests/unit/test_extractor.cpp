#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "generators.hpp"
#include "scimine/errors.hpp"
#include "scimine/extractor.hpp"
#include "scimine/text.hpp"

using namespace scimine;

namespace {

const LanguageCode EN(Lang::en), ES(Lang::es), FR(Lang::fr), PT(Lang::pt);

std::string config_text(const std::string& repo) {
  return testing::slurp(testing::fixtures() / "pipeline" / "configs" / (repo + ".json"));
}

// The labelled-table repository uses the published example configuration verbatim.
RepositoryConfig example_config() { return load_config(config_text("dial-uclouvain-be")); }

std::string with_key(const std::string& key, const nlohmann::json& value) {
  auto j = nlohmann::json::parse(config_text("dial-uclouvain-be"));
  if (value.is_null()) j.erase(key);
  else j[key] = value;
  return j.dump();
}

std::string config_error_field(const std::string& cfg) {
  try {
    load_config(cfg);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

Extraction run(const std::string& html, const RepositoryConfig& cfg, std::int64_t id = 1) {
  return extract_record(RawPage{"dial-uclouvain-be", id, html}, cfg);
}

const std::string kAbstractEn =
    "Wind farms located offshore produce more stable output than onshore installations.";
const std::string kAbstractPt =
    "Os parques eólicos localizados no mar produzem uma produção mais estável do que as instalações em terra.";

}  // namespace

TEST_CASE("load the example configuration") {
  RepositoryConfig cfg = example_config();
  CHECK(cfg.abstracts_min_len == 20);
  CHECK(cfg.titles_min_len == 20);
  CHECK(cfg.targeted_langs == std::vector<LanguageCode>{EN, ES, PT, FR});
  CHECK(cfg.pattern(Field::titles).source() == ".*citation_title.*");
  CHECK(cfg.pattern(Field::uri).source() == ".*Permanent URL.*");
  CHECK(cfg.targets(FR));
  CHECK_FALSE(cfg.targets(LanguageCode::parse("de")));
}

TEST_CASE("configuration errors name the field") {
  CHECK(config_error_field(with_key("titles_regex", "(")) == "titles_regex");
  CHECK(config_error_field(with_key("URI_regex", nullptr)) == "URI_regex");
  CHECK(config_error_field(with_key("abstracts_min_len", -1)) == "abstracts_min_len");
  CHECK(config_error_field(with_key("titles_min_len", "20")) == "titles_min_len");
  CHECK(config_error_field(with_key("targeted_langs", nlohmann::json::array())) == "targeted_langs");
  CHECK(config_error_field(with_key("targeted_langs", {"en", "en"})) == "targeted_langs");
  CHECK(config_error_field(with_key("targeted_langs", {"en", "de"})) == "targeted_langs");
  CHECK(config_error_field("not json") != "<accepted>");
  CHECK(config_error_field(with_key("abstracts_min_len", 0)) == "<accepted>");
  CHECK(config_error_field(with_key("comment", "extra keys are fine")) == "<accepted>");
}

TEST_CASE("meta title and two language-tagged abstract blocks") {
  std::string html = R"(<html><head>
<meta name="citation_title" content="Offshore wind power in the North" lang="en">
</head><body>
<div class="publication-metadata"><p lang="en">)" + kAbstractEn + R"(</p><p lang="pt">)" + kAbstractPt +
                     R"(</p></div></body></html>)";
  Extraction ex = run(html, example_config());
  const AcademicRecord& r = ex.record;
  REQUIRE(r.titles.size() == 1);
  CHECK(r.titles.at(EN) == "Offshore wind power in the North");
  CHECK(text::count_code_points(r.titles.at(EN)) == 32);
  REQUIRE(r.abstracts.size() == 2);
  CHECK(r.abstracts.at(EN) == kAbstractEn);
  CHECK(r.abstracts.at(PT) == kAbstractPt);
  CHECK(r.domain == Domain::general);
  CHECK(r.domain_keyword_count == zero_counts());
  CHECK(ex.warnings.empty());
}

TEST_CASE("titles below the minimum length are dropped") {
  std::string html = R"(<meta name="citation_title" content="Short one" lang="en">)"
                     R"(<div class="publication-metadata"><p lang="en">)" + kAbstractEn + "</p></div>";
  Extraction ex = run(html, example_config());
  CHECK(ex.record.titles.empty());
  CHECK(ex.record.abstracts.size() == 1);
}

TEST_CASE("minimum length counts code points after whitespace normalization") {
  RepositoryConfig cfg = example_config();
  cfg.titles_min_len = 12;
  // "investigação" is 12 code points but 14 bytes.
  std::string html = R"(<meta name="citation_title" content="  investigação " lang="pt">)"
                     R"(<meta name="citation_title" content="abcdefghijk" lang="en">)";
  Extraction ex = run(html, cfg);
  CHECK(ex.record.titles.size() == 1);
  CHECK(ex.record.titles.at(PT) == "investigação");
}

TEST_CASE("untargeted languages are dropped") {
  std::string html = R"(<div class="publication-metadata"><p lang="de">Die Windenergie auf See liefert stabilere Erträge als an Land.</p>)"
                     R"(<p lang="en">)" + kAbstractEn + "</p></div>";
  Extraction ex = run(html, example_config());
  CHECK(ex.record.abstracts.size() == 1);
  CHECK(ex.record.abstracts.count(EN) == 1);
}

TEST_CASE("a zero minimum keeps every abstract") {
  RepositoryConfig cfg = example_config();
  cfg.abstracts_min_len = 0;
  std::string html = R"(<div class="publication-metadata"><p lang="en">Tiny.</p></div>)";
  CHECK(run(html, cfg).record.abstracts.at(EN) == "Tiny.");
}

TEST_CASE("a page without titles or abstracts yields an empty record and a warning") {
  Extraction ex = run("<html><body><p>Nothing to see here.</p></body></html>", example_config());
  CHECK(ex.record.titles.empty());
  CHECK(ex.record.abstracts.empty());
  CHECK_FALSE(ex.warnings.empty());
}

TEST_CASE("empty or binary bodies are errors") {
  CHECK_THROWS_AS(run("", example_config()), ExtractError);
  CHECK_THROWS_AS(run(std::string("<html>\0\0\0\x01\x02</html>", 19), example_config()), ExtractError);
}

TEST_CASE("declared Latin-1 pages are decoded") {
  std::string html = "<html><head><meta charset=\"iso-8859-1\">"
                     "<meta name=\"citation_title\" content=\"Investiga\xe7\xe3o em energia e\xf3lica offshore\" lang=\"pt\">"
                     "</head></html>";
  Extraction ex = run(html, example_config());
  CHECK(ex.record.titles.at(PT) == "Investigação em energia eólica offshore");
  CHECK(decode_body("caf\xe9", "windows-1252") == "café");
  CHECK(decode_body("\x93quoted\x94", "windows-1252") == "“quoted”");
}

TEST_CASE("the longest candidate per language wins") {
  std::string html = R"(<meta name="citation_title" content="A reasonably long title here" lang="en">)"
                     R"(<meta name="citation_title" content="A considerably longer title that should win" lang="en">)"
                     R"(<meta name="citation_title" content="Another reasonably long title" lang="en">)";
  CHECK(run(html, example_config()).record.titles.at(EN) == "A considerably longer title that should win");
}

TEST_CASE("labelled metadata rows and list fields") {
  std::string html = testing::slurp(testing::fixtures() / "pipeline/repos/dial-uclouvain-be/1017.html");
  Extraction ex = run(html, example_config(), 1017);
  const AcademicRecord& r = ex.record;
  CHECK(r.titles.count(EN) == 1);
  CHECK(r.titles.count(FR) == 1);
  CHECK(r.abstracts.count(EN) == 1);
  CHECK(r.abstracts.count(FR) == 1);
  CHECK(r.keywords == std::vector<std::string>{"Oncology", "Breast cancer", "Clinical outcomes"});
  CHECK(r.authors == std::vector<std::string>{"Author 01, Test"});
  CHECK(r.publishers == std::vector<std::string>{"UCL - Faculté des sciences"});
  CHECK(r.journal == "UCLouvain");
  CHECK(r.uri == "http://hdl.handle.net/2078.1/1017");
  CHECK(r.link_html == "http://hdl.handle.net/2078.1/1017");
  CHECK(r.link_pdf == "https://dial.uclouvain.be/downloader/1017.pdf");
  CHECK(r.document_type == "Mémoire (Master thesis)");
  CHECK(r.license == "Accès libre");
  CHECK(r.document_language == "English");
  CHECK(r.date_available == "2011-02-11");
}

TEST_CASE("Dublin Core meta tags reproduce the reference record") {
  RepositoryConfig cfg = load_config(config_text("bibliotecadigital-ipb-pt"));
  std::string html = testing::slurp(testing::fixtures() / "pipeline/repos/bibliotecadigital-ipb-pt/14638.html");
  Extraction ex = extract_record(RawPage{"bibliotecadigital-ipb-pt", 14638, html}, cfg);
  const AcademicRecord& r = ex.record;
  CHECK(r.repository == "bibliotecadigital-ipb-pt");
  CHECK(r.html_id == 14638);
  CHECK(r.titles.size() == 1);
  CHECK(r.abstracts.size() == 2);
  CHECK(r.abstracts.at(PT).rfind("Esta investigação pretende analisar", 0) == 0);
  CHECK(r.uri == "http://hdl.handle.net/10198/14638");
  CHECK(r.link_html == "https://bibliotecadigital.ipb.pt/handle/10198/14638");
  CHECK(r.license_link == "http://creativecommons.org/licenses/by-nc/4.0/");
  CHECK(r.license == "openAccess");
  CHECK(r.date_available == "2017-11-20T15:08:42Z");
  CHECK(r.document_language == "en");
  CHECK(r.document_type == "masterThesis");
  CHECK(r.keywords.size() == 6);
  CHECK(r.keywords.front() == "Renewable energy (RE)");
  CHECK(r.authors == std::vector<std::string>{"Tarakhchyan, Siranush"});
  CHECK(r.bibliographic_citation.empty());
  CHECK(r.journal.empty());
}

TEST_CASE("language cells and language identification attribute untagged texts") {
  RepositoryConfig cfg = load_config(config_text("repositorio-unal-co"));
  // 1034 tags its rows with language cells; 1085 leaves the abstract rows untagged.
  for (std::int64_t id : {1034, 1085}) {
    CAPTURE(id);
    std::string html =
        testing::slurp(testing::fixtures() / "pipeline/repos/repositorio-unal-co" / (std::to_string(id) + ".html"));
    Extraction ex = extract_record(RawPage{"repositorio-unal-co", id, html}, cfg);
    CHECK(ex.record.abstracts.count(EN) == 1);
    CHECK(ex.record.abstracts.count(ES) == 1);
    CHECK(ex.record.titles.count(EN) == 1);
    CHECK(ex.record.titles.count(ES) == 1);
    CHECK(ex.record.abstracts.at(EN) != ex.record.abstracts.at(ES));
  }
}

TEST_CASE("extraction is deterministic") {
  RepositoryConfig cfg = load_config(config_text("repositorio-unal-co"));
  std::string html = testing::slurp(testing::fixtures() / "pipeline/repos/repositorio-unal-co/1034.html");
  RawPage page{"repositorio-unal-co", 1034, html};
  CHECK(serialize_record(extract_record(page, cfg).record) == serialize_record(extract_record(page, cfg).record));
}

TEST_CASE("property: stored texts respect minimum lengths and targeted languages") {
  testing::Rng rng(77);
  const std::vector<std::string> tags = {"en", "es", "fr", "pt", "de", "it", ""};
  for (int round = 0; round < 200; ++round) {
    RepositoryConfig cfg = example_config();
    cfg.titles_min_len = testing::uniform(rng, 0, 40);
    cfg.abstracts_min_len = testing::uniform(rng, 0, 120);
    cfg.targeted_langs = {EN, testing::coin(rng) ? PT : FR};
    std::string html = "<html><head>";
    for (std::size_t i = testing::uniform(rng, 0, 4); i > 0; --i)
      html += "<meta name=\"citation_title\" content=\"" + testing::random_sentence(rng, testing::uniform(rng, 1, 8)) +
              "\" lang=\"" + testing::pick(rng, tags) + "\">";
    html += "</head><body><div class=\"publication-metadata\">";
    for (std::size_t i = testing::uniform(rng, 0, 4); i > 0; --i)
      html += "<p lang=\"" + testing::pick(rng, tags) + "\">" +
              testing::random_sentence(rng, testing::uniform(rng, 1, 25)) + "</p>";
    html += "</div></body></html>";
    AcademicRecord r = run(html, cfg).record;
    for (const auto& [lang, t] : r.titles) {
      CHECK(cfg.targets(lang));
      CHECK(text::count_code_points(t) >= cfg.titles_min_len);
    }
    for (const auto& [lang, t] : r.abstracts) {
      CHECK(cfg.targets(lang));
      CHECK(text::count_code_points(t) >= cfg.abstracts_min_len);
    }
  }
}
