#include <doctest.h>

#include "generators.hpp"
#include "scimine/segmenter.hpp"
#include "scimine/text.hpp"

using namespace scimine;

namespace {

using Sentences = std::vector<std::string>;

Sentences split(std::string_view text, Lang lang = Lang::en) {
  return split_sentences(text, SegmenterRules::builtin(lang));
}

std::string join(const Sentences& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return text::normalize_whitespace(out);
}

}  // namespace

TEST_CASE("basic splitting") {
  CHECK(split("This is one. This is two.") == Sentences{"This is one.", "This is two."});
  CHECK(split("Results of Fig. 3 are shown.") == Sentences{"Results of Fig. 3 are shown."});
  CHECK(split("").empty());
  CHECK(split("   \n ").empty());
}

TEST_CASE("boundary rules") {
  CHECK(split("Is it? Yes! Done.") == Sentences{"Is it?", "Yes!", "Done."});
  CHECK(split("It rose by 3.5 percent. Then it fell.") == Sentences{"It rose by 3.5 percent.", "Then it fell."});
  CHECK(split("Lowercase after a period. and it continues.") ==
        Sentences{"Lowercase after a period. and it continues."});
  CHECK(split("He said \"stop.\" Then left.") == Sentences{"He said \"stop.\"", "Then left."});
  CHECK(split("One (see below.) Two.") == Sentences{"One (see below.)", "Two."});
  CHECK(split("Wait... \"Really\" it was.") == Sentences{"Wait...", "\"Really\" it was."});
  CHECK(split("Ends here… Another starts.") == Sentences{"Ends here…", "Another starts."});
  CHECK(split("In 2017. 42 sites joined.") == Sentences{"In 2017.", "42 sites joined."});
  CHECK(split("Work by J. Smith was cited.") == Sentences{"Work by J. Smith was cited."});
  CHECK(split("As noted by Smith et al. The study grew.") == Sentences{"As noted by Smith et al. The study grew."});
  CHECK(split("Use e.g. Python here.") == Sentences{"Use e.g. Python here."});
}

TEST_CASE("language-specific abbreviations") {
  CHECK(split("O Sr. Silva chegou. Depois saiu.", Lang::pt) == Sentences{"O Sr. Silva chegou.", "Depois saiu."});
  CHECK(split("La Dra. García habló. Luego salió.", Lang::es) == Sentences{"La Dra. García habló.", "Luego salió."});
  CHECK(split("Voir p. 12 du rapport. Fin.", Lang::fr) == Sentences{"Voir p. 12 du rapport.", "Fin."});
  CHECK(split("Voir M. Dupont. Fin.", Lang::fr).size() == 2);
  for (Lang l : {Lang::en, Lang::es, Lang::fr, Lang::pt}) CHECK_FALSE(SegmenterRules::builtin(l).abbreviations.empty());
}

TEST_CASE("custom abbreviation lists") {
  SegmenterRules r = SegmenterRules::from_abbreviation_list(Lang::en, "# units\napprox\n\nvol\n");
  CHECK(r.abbreviations == std::set<std::string>{"approx", "vol"});
  CHECK(split_sentences("It is approx. Ten.", r) == Sentences{"It is approx. Ten."});
  CHECK(split_sentences("It is about. Ten.", r).size() == 2);
}

TEST_CASE("output sentences are trimmed and non-empty") {
  for (const auto& s : split("  First  sentence.\n\nSecond\tone!   Third?  ")) {
    CHECK_FALSE(s.empty());
    CHECK(s == text::trim(s));
  }
  CHECK(split("  First  sentence.\n\nSecond\tone!") == Sentences{"First sentence.", "Second one!"});
}

TEST_CASE("property: splitting is lossless") {
  testing::Rng rng(31337);
  const std::vector<Lang> langs = {Lang::en, Lang::es, Lang::fr, Lang::pt, Lang::other};
  for (int i = 0; i < 1000; ++i) {
    std::string text = testing::random_abstract(rng);
    Lang lang = testing::pick(rng, langs);
    Sentences parts = split(text, lang);
    CAPTURE(text);
    REQUIRE(join(parts) == text::normalize_whitespace(text));
    for (const auto& p : parts) REQUIRE_FALSE(text::trim(p).empty());
  }
}

TEST_CASE("property: a single sentence splits into itself") {
  testing::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    std::string s = testing::random_sentence(rng, testing::uniform(rng, 1, 20));
    REQUIRE(split(s) == Sentences{s});
  }
}

TEST_CASE("property: resplitting a sentence is stable") {
  testing::Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    for (const auto& s : split(testing::random_abstract(rng))) REQUIRE(split(s) == Sentences{s});
  }
}
