#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "scimine/errors.hpp"
#include "scimine/miner.hpp"

using namespace scimine;

namespace {

std::vector<double> raw(const EmbeddingVector& v) { return {v.values().begin(), v.values().end()}; }

std::vector<std::vector<double>> raw_all(const std::vector<EmbeddingVector>& vs) {
  std::vector<std::vector<double>> out;
  for (const auto& v : vs) out.push_back(raw(v));
  return out;
}

// Unit vector at angle theta from e0 in the (e0, e_axis) plane.
EmbeddingVector at_angle(double cos_theta, std::size_t axis, std::size_t dim = 8) {
  std::vector<double> v(dim, 0.0);
  v[0] = cos_theta;
  v[axis] = std::sqrt(1.0 - cos_theta * cos_theta);
  return EmbeddingVector(v);
}

EmbeddingVector e(std::size_t i, std::size_t dim = 8) {
  std::vector<double> v(dim, 0.0);
  v[i] = 1.0;
  return EmbeddingVector(v);
}

std::vector<EmbeddingVector> random_vectors(testing::Rng& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<EmbeddingVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (double& x : v) x = g(rng);
    out.emplace_back(v);
  }
  return out;
}

CandidateDocumentPair document(std::vector<std::string> src, std::vector<std::string> tgt) {
  CandidateDocumentPair d;
  d.source_origins.assign(src.size(), Origin::abstract);
  d.target_origins.assign(tgt.size(), Origin::abstract);
  d.source_sentences = std::move(src);
  d.target_sentences = std::move(tgt);
  d.source_lang = LanguageCode(Lang::en);
  d.target_lang = LanguageCode(Lang::pt);
  d.record_key = {"repo", 42};
  d.domain = Domain::energy;
  return d;
}

}  // namespace

TEST_CASE("ratio margin reference value") {
  // x == y and every neighbour sits at cosine 0.5: 1 / (0.5/2 + 0.5/2) = 2.
  EmbeddingVector x = e(0);
  std::vector<EmbeddingVector> nn = {at_angle(0.5, 1), at_angle(0.5, 2), at_angle(0.5, 3), at_angle(0.5, 4)};
  CHECK(margin_score(x, x, nn, nn, 4) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(margin_score(x, x, nn, nn, 4, MarginKind::distance) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero cosine gives zero ratio margin") {
  std::vector<EmbeddingVector> nn = {at_angle(0.9, 1), at_angle(0.2, 2)};
  CHECK(margin_score(e(0), e(5), nn, nn, 2) == 0.0);
}

TEST_CASE("neighbourhood clamp and errors") {
  std::vector<EmbeddingVector> nn = {at_angle(0.5, 1)};
  // k clamps to one neighbour per side.
  CHECK(margin_score(e(0), e(0), nn, nn, 10) == doctest::Approx(2.0));
  // All-zero neighbourhoods hit the denominator floor.
  std::vector<EmbeddingVector> orth = {e(6)};
  CHECK(margin_score(e(0), at_angle(0.5, 1), orth, orth, 1) == doctest::Approx(0.5 / 1e-6));
  CHECK_THROWS_AS(margin_score(e(0), e(0), nn, nn, 0), std::invalid_argument);
  CHECK_THROWS_AS(margin_score(e(0), e(0), {}, nn, 1), std::invalid_argument);
  CHECK_THROWS_AS(margin_score(e(0), e(0, 4), nn, nn, 1), std::invalid_argument);
}

TEST_CASE("property: margin is symmetric and matches the brute-force definition") {
  testing::Rng rng(10);
  for (int round = 0; round < 200; ++round) {
    std::size_t k = testing::uniform(rng, 1, 6);
    auto pts = random_vectors(rng, 2 + testing::uniform(rng, 1, 8) + testing::uniform(rng, 1, 8), 16);
    EmbeddingVector x = pts[0], y = pts[1];
    std::size_t split = 2 + testing::uniform(rng, 1, pts.size() - 3);
    std::vector<EmbeddingVector> nnx(pts.begin() + 2, pts.begin() + split), nny(pts.begin() + split, pts.end());
    double s = margin_score(x, y, nnx, nny, k);
    CHECK(s == doctest::Approx(margin_score(y, x, nny, nnx, k)).epsilon(1e-12));
    CHECK(std::abs(s - testing::brute_force_margin(raw(x), raw(y), raw_all(nnx), raw_all(nny), k)) <= 1e-9);
  }
}

TEST_CASE("property: local alignment equals the brute-force miner") {
  testing::Rng rng(2718);
  HashEmbeddingBackend h;
  for (int round = 0; round < 100; ++round) {
    std::vector<std::string> src, tgt;
    for (std::size_t i = testing::uniform(rng, 1, 20); i > 0; --i)
      src.push_back(testing::random_sentence(rng, testing::uniform(rng, 1, 12)));
    for (std::size_t i = testing::uniform(rng, 1, 20); i > 0; --i)
      tgt.push_back(testing::coin(rng, 0.4) ? testing::pick(rng, src)
                                             : testing::random_sentence(rng, testing::uniform(rng, 1, 12)));
    auto sv = embed_batch(src, h), tv = embed_batch(tgt, h);
    MiningOptions opts;
    opts.k = testing::uniform(rng, 1, 6);
    opts.threshold = testing::coin(rng) ? 0.98 : 1.05;
    auto got = align(sv, tv, opts);
    auto want = testing::brute_force_mine(raw_all(sv), raw_all(tv), opts.k, opts.threshold);
    REQUIRE(got.size() == want.size());
    std::set<std::size_t> used_src, used_tgt;
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].source_index == want[i].source);
      CHECK(got[i].target_index == want[i].target);
      CHECK(std::abs(got[i].score - want[i].score) <= 1e-9);
      CHECK(got[i].score >= opts.threshold);
      CHECK(used_src.insert(got[i].source_index).second);
      CHECK(used_tgt.insert(got[i].target_index).second);
    }
  }
}

TEST_CASE("five-sentence permutation fixture") {
  auto en = testing::corpus("en"), pt = testing::corpus("pt");
  const std::vector<std::size_t> perm = {3, 0, 4, 1, 2};
  std::vector<std::string> src(en.begin() + 20, en.begin() + 25), tgt;
  for (std::size_t j : perm) tgt.push_back(pt[20 + j]);
  HashEmbeddingBackend h;
  auto sv = embed_batch(src, h), tv = embed_batch(tgt, h);
  MiningOptions opts;
  auto got = align(sv, tv, opts);
  auto want = testing::brute_force_mine(raw_all(sv), raw_all(tv), opts.k, opts.threshold);
  REQUIRE(got.size() == want.size());
  REQUIRE_FALSE(got.empty());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].source_index == want[i].source);
    CHECK(got[i].target_index == want[i].target);
    CHECK(std::abs(got[i].score - want[i].score) <= 1e-9);
    // Every emitted pair is a true translation pair of the permutation.
    CHECK(perm[got[i].target_index] == got[i].source_index);
  }
}

TEST_CASE("a lone title pair") {
  HashEmbeddingBackend h;
  auto doc = document({"Renewable energy in Armenia"}, {"Energia renovável na Arménia"});
  doc.source_origins = {Origin::title};
  doc.target_origins = {Origin::title};
  MiningOptions opts;
  opts.threshold = 0.5;
  auto pairs = mine_pairs(doc, h, opts);
  // With k = 1 both neighbourhoods are the pair itself, so the score is exactly 1.
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].score == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pairs[0].origin == Origin::title);
  CHECK(pairs[0].record_key == RecordKey{"repo", 42});
  CHECK(pairs[0].domain == Domain::energy);
  CHECK(pairs[0].source_lang == LanguageCode(Lang::en));
  opts.threshold = 1.0 + 1e-9;
  CHECK(mine_pairs(doc, h, opts).empty());
}

TEST_CASE("unreachable threshold and invalid options") {
  HashEmbeddingBackend h;
  auto doc = document({"One sentence here.", "Another one."}, {"One sentence here.", "Another one."});
  MiningOptions opts;
  opts.threshold = std::numeric_limits<double>::infinity();
  CHECK(mine_pairs(doc, h, opts).empty());
  opts.threshold = 0;
  CHECK_THROWS_AS(mine_pairs(doc, h, opts), std::invalid_argument);
  opts.threshold = 1;
  opts.k = 0;
  CHECK_THROWS_AS(mine_pairs(doc, h, opts), std::invalid_argument);
}

TEST_CASE("retrieval strategies") {
  // Two sources both closest to target 0; target 0 prefers source 0.
  std::vector<EmbeddingVector> src = {at_angle(0.95, 1), at_angle(0.9, 2)};
  std::vector<EmbeddingVector> tgt = {e(0), at_angle(0.3, 3)};
  MiningOptions opts;
  opts.k = 2;
  opts.threshold = 1e-9;
  opts.retrieval = Retrieval::mutual;
  auto m = align(src, tgt, opts);
  REQUIRE(m.size() == 1);
  CHECK(m[0].source_index == 0);
  CHECK(m[0].target_index == 0);
  opts.retrieval = Retrieval::forward;
  auto f = align(src, tgt, opts);
  REQUIRE(f.size() == 2);
  CHECK(f[1].source_index == 1);
  CHECK(f[1].target_index == 0);
  opts.retrieval = Retrieval::backward;
  auto b = align(src, tgt, opts);
  REQUIRE(b.size() == 2);
  CHECK(b[0].target_index == 0);
  CHECK(b[1].target_index == 1);

  CHECK(parse_margin("ratio") == MarginKind::ratio);
  CHECK(parse_retrieval("backward") == Retrieval::backward);
  CHECK_THROWS_AS(parse_margin("cosine"), ConfigError);
  CHECK_THROWS_AS(parse_retrieval("both"), ConfigError);
}

TEST_CASE("candidate documents pair English with each other language") {
  AcademicRecord r;
  r.repository = "repo";
  r.html_id = 3;
  r.domain = Domain::cancer;
  r.titles[LanguageCode(Lang::en)] = "Breast cancer screening outcomes";
  r.abstracts[LanguageCode(Lang::en)] = "First sentence. Second sentence.";
  r.abstracts[LanguageCode(Lang::pt)] = "Primeira frase. Segunda frase.";
  r.titles[LanguageCode(Lang::fr)] = "Résultats du dépistage du cancer du sein";
  auto docs = build_candidate_documents(r);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].target_lang == LanguageCode(Lang::fr));
  CHECK(docs[1].target_lang == LanguageCode(Lang::pt));
  CHECK(docs[0].source_sentences ==
        std::vector<std::string>{"Breast cancer screening outcomes", "First sentence.", "Second sentence."});
  CHECK(docs[0].source_origins == std::vector<Origin>{Origin::title, Origin::abstract, Origin::abstract});
  CHECK(docs[0].target_sentences == std::vector<std::string>{"Résultats du dépistage du cancer du sein"});
  CHECK(docs[1].domain == Domain::cancer);

  AcademicRecord only_en;
  only_en.titles[LanguageCode(Lang::en)] = "Alone";
  CHECK(build_candidate_documents(only_en).empty());
}

TEST_CASE("mining is deterministic and respects the threshold") {
  HashEmbeddingBackend h;
  auto en = testing::corpus("en"), pt = testing::corpus("pt");
  auto doc = document({en.begin(), en.begin() + 12}, {pt.begin(), pt.begin() + 12});
  auto a = mine_pairs(doc, h), b = mine_pairs(doc, h);
  CHECK(a == b);
  for (const auto& p : a) CHECK(p.score >= 0.98);
}
