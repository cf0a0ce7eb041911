// Copyright 2026 The kblink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenizer, language model and surface dictionary.

#include <cmath>
#include <random>

#include "doctest.h"
#include "kblink/error.h"
#include "kblink/language_model.h"
#include "kblink/surface_dictionary.h"
#include "kblink/tokenizer.h"
#include "support/fixtures.h"
#include "support/synthetic.h"

using namespace kblink;
using namespace kblink::testing;

namespace {

std::vector<std::string> Texts(std::string_view s) {
  std::vector<std::string> out;
  for (auto t : text::TokenTexts(s)) out.emplace_back(t);
  return out;
}

surface::SurfaceDictionary Dict(std::initializer_list<std::pair<const char *, uint64_t>> entries) {
  surface::SurfaceDictionary::Builder b;
  for (const auto &[phrase, id] : entries) b.Add(phrase, ItemId(id));
  return std::move(b).Build();
}

std::vector<std::string> Phrases(const std::vector<surface::Spot> &spots) {
  std::vector<std::string> out;
  for (const auto &s : spots) out.push_back(s.phrase);
  return out;
}

}  // namespace

TEST_SUITE("language_model") {

TEST_CASE("tokenizer splits on whitespace and punctuation and keeps case") {
  CHECK(Texts("Hello, World!") == std::vector<std::string>{"Hello", "World"});
  CHECK(Texts("  a--b  ") == std::vector<std::string>{"a", "b"});
  CHECK(Texts("") .empty());
  CHECK(Texts("...") .empty());
  CHECK(Texts("Zürich São Paulo") == std::vector<std::string>{"Zürich", "São", "Paulo"});
  CHECK(Texts("«Paris»") == std::vector<std::string>{"Paris"});
}

TEST_CASE("boundary flags") {
  auto f = text::BoundaryFlags("ab c");
  CHECK(f == std::vector<uint8_t>{1, 0, 1, 1, 1});
  auto u = text::BoundaryFlags("é");  // two bytes, one code point
  CHECK(u == std::vector<uint8_t>{1, 0, 1});
}

TEST_CASE("counts") {
  auto lm = lm::TrainLm({"a b", "b"});
  CHECK(lm.Count("a") == 1);
  CHECK(lm.Count("b") == 2);
  CHECK(lm.total_tokens() == 3);
  CHECK(lm.vocab_size() == 2);

  auto doubled = lm::TrainLm({"a b", "b", "a b", "b"});
  CHECK(doubled.Count("b") == 4);
  auto reordered = lm::TrainLm({"b", "a b"});
  CHECK(reordered.Count("a") == 1);
  CHECK(reordered.Count("b") == 2);
}

TEST_CASE("phrase probabilities") {
  auto lm = lm::TrainLm({"a b", "b"});
  CHECK(lm.PhraseLogProb("") == 0.0);
  CHECK(lm.PhraseLogProb("  , ") == 0.0);
  // (count + 1) / (3 tokens + 1 * (2 types + unseen class))
  CHECK(lm.PhraseLogProb("b") == doctest::Approx(std::log(3.0 / 6.0)).epsilon(1e-14));
  CHECK(lm.PhraseLogProb("zzz") == doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-14));
  CHECK(lm.PhraseLogProb("B") == doctest::Approx(std::log(1.0 / 6.0)).epsilon(1e-14));
  auto smooth = lm::TrainLm({"a b", "b"}, 0.5);
  CHECK(smooth.PhraseLogProb("a") == doctest::Approx(std::log(1.5 / 4.5)).epsilon(1e-14));
  CHECK(lm.PhraseLogProb("a b") ==
        doctest::Approx(lm.PhraseLogProb("a") + lm.PhraseLogProb("b")).epsilon(1e-14));
  CHECK(lm.TokenLogProb("b") > lm.TokenLogProb("a"));
}

TEST_CASE("distribution over seen tokens and the unseen class sums to one") {
  std::mt19937_64 rng(2);
  std::vector<std::string> corpus;
  std::vector<std::string> words;
  for (int i = 0; i < 40; ++i) words.push_back("w" + std::to_string(i));
  for (int i = 0; i < 300; ++i) corpus.push_back(words[rng() % words.size()] + " " + words[rng() % 7]);
  for (double alpha : {0.5, 1.0, 3.0}) {
    auto lm = lm::TrainLm(corpus, alpha);
    double total = std::exp(lm.TokenLogProb("never-seen"));
    for (const auto &w : words) {
      if (lm.Count(w) > 0) total += std::exp(lm.TokenLogProb(w));
    }
    CHECK(std::fabs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("sharded counting merges") {
  lm::UnigramLMBuilder a, b;
  a.Add("x y");
  b.Add("y z");
  a.Merge(b);
  auto lm = a.Build();
  CHECK(lm.Count("y") == 2);
  CHECK(lm.total_tokens() == 4);
}

TEST_CASE("empty corpus") {
  CHECK_THROWS_WITH_AS(lm::TrainLm({}), doctest::Contains("empty corpus"), InvalidArgument);
  CHECK_THROWS_AS(lm::TrainLm({"", " . "}), InvalidArgument);
}

TEST_CASE("save and load") {
  TempDir dir;
  auto lm = lm::TrainLm({"a b", "b"}, 0.5);
  lm.set_source_generation(9);
  lm.Save(dir.file("lm.bin"));
  auto loaded = lm::UnigramLM::Load(dir.file("lm.bin"));
  CHECK(loaded.Count("b") == 2);
  CHECK(loaded.alpha() == 0.5);
  CHECK(loaded.source_generation() == 9);
  CHECK(loaded.PhraseLogProb("a b") == lm.PhraseLogProb("a b"));
}

}  // TEST_SUITE

TEST_SUITE("surface_index") {

TEST_CASE("shared labels map to the union") {
  ItemRecord a = MakeItem(1, "Curry");
  ItemRecord b = MakeItem(2, "Curry");
  ItemRecord c = MakeItem(3, "Stephen Curry");
  c.aliases["en"] = {"Curry"};
  auto dict = surface::BuildDictionary(std::vector<ItemRecord>{a, b, c}, {"en"});
  const ItemIdSet *hit = dict.Lookup("Curry");
  REQUIRE(hit);
  CHECK(*hit == ItemIdSet{ItemId(1), ItemId(2), ItemId(3)});
}

TEST_CASE("lookups are case-sensitive") {
  auto dict = surface::BuildDictionary(FigureKb(), {});
  CHECK(dict.Lookup("Associated Press"));
  CHECK_FALSE(dict.Lookup("associated press"));
  CHECK(dict.FindSpots("the associated press said").empty());
}

TEST_CASE("languages select labels") {
  ItemRecord a = MakeItem(1, "Germany");
  a.labels["de"] = "Deutschland";
  auto en = surface::BuildDictionary(std::vector<ItemRecord>{a}, {"en"});
  auto all = surface::BuildDictionary(std::vector<ItemRecord>{a}, {});
  CHECK(en.size() == 1);
  CHECK(all.size() == 2);
  CHECK(all.Lookup("Deutschland"));
}

TEST_CASE("empty inputs") {
  auto dict = surface::BuildDictionary(std::vector<ItemRecord>{}, {});
  CHECK(dict.empty());
  CHECK(dict.FindSpots("anything at all").empty());
  auto figure = surface::BuildDictionary(FigureKb(), {});
  CHECK(figure.FindSpots("").empty());
}

TEST_CASE("the news sentence yields three spots") {
  auto dict = surface::BuildDictionary(FigureKb(), {});
  auto spots = dict.FindSpots(kFigureSentence);
  CHECK(Phrases(spots) ==
        std::vector<std::string>{"Associated Press", "Julie Pace", "Washington"});
  for (const auto &s : spots) {
    CHECK(std::string_view(kFigureSentence).substr(s.start, s.end - s.start) == s.phrase);
    CHECK(s.candidates.size() == 1);
  }
  CHECK(spots[0].candidates[0] == ItemId(40469));
}

TEST_CASE("leftmost-longest") {
  auto dict = Dict({{"New York", 1}, {"New York City", 2}, {"York City Hall", 3}});
  auto spots = dict.FindSpots("New York City");
  REQUIRE(spots.size() == 1);
  CHECK(spots[0].phrase == "New York City");
  CHECK(spots[0].candidates == ItemIdSet{ItemId(2)});

  // The longer match would end mid-token, so the shorter one is used.
  spots = dict.FindSpots("New York Citywide");
  CHECK(Phrases(spots) == std::vector<std::string>{"New York"});

  spots = dict.FindSpots("in New York City Hall");
  CHECK(Phrases(spots) == std::vector<std::string>{"New York City"});
}

TEST_CASE("matches respect token boundaries") {
  auto dict = Dict({{"Paris", 1}, {"is", 2}});
  CHECK(dict.FindSpots("Parisian food").empty());
  CHECK(dict.FindSpots("unParis").empty());
  CHECK(Phrases(dict.FindSpots("Paris, Paris.")) == std::vector<std::string>{"Paris", "Paris"});
  CHECK(Phrases(dict.FindSpots("This is Paris")) == std::vector<std::string>{"is", "Paris"});
}

TEST_CASE("multibyte text") {
  auto dict = Dict({{"Zürich", 1}, {"São Paulo", 2}});
  std::string doc = "From Zürich to São Paulo.";
  auto spots = dict.FindSpots(doc);
  REQUIRE(spots.size() == 2);
  CHECK(doc.substr(spots[1].start, spots[1].end - spots[1].start) == "São Paulo");
}

TEST_CASE("phrases are trimmed and token-less phrases ignored") {
  auto dict = Dict({{"  Rome ", 1}, {"", 2}, {"--", 3}});
  CHECK(dict.size() == 1);
  CHECK(dict.Lookup("Rome"));
}

TEST_CASE("spots are sorted, disjoint, keyed, deterministic") {
  SyntheticKb kb = GenerateKb({.items = 200, .clusters = 10});
  auto dict = surface::BuildDictionary(kb.items, {});
  auto docs = GenerateDocuments(kb, {.documents = 20});
  for (const auto &doc : docs) {
    auto spots = dict.FindSpots(doc.text);
    CHECK(spots == dict.FindSpots(doc.text));
    CHECK(spots.size() == doc.gold.size());
    for (size_t i = 0; i < spots.size(); ++i) {
      const ItemIdSet *entry = dict.Lookup(spots[i].phrase);
      REQUIRE(entry);
      CHECK(*entry == spots[i].candidates);
      CHECK(spots[i].start < spots[i].end);
      if (i > 0) CHECK(spots[i - 1].end <= spots[i].start);
    }
  }
}

TEST_CASE("save and load") {
  TempDir dir;
  auto dict = Dict({{"New York", 1}, {"New York City", 2}, {"Curry", 3}, {"Curry", 4}});
  dict.set_source_generation(3);
  dict.Save(dir.file("dict.bin"));
  auto loaded = surface::SurfaceDictionary::Load(dir.file("dict.bin"));
  CHECK(loaded.keys() == dict.keys());
  CHECK(loaded.source_generation() == 3);
  CHECK(*loaded.Lookup("Curry") == ItemIdSet{ItemId(3), ItemId(4)});
  CHECK(loaded.FindSpots("New York City") == dict.FindSpots("New York City"));
}

}  // TEST_SUITE
