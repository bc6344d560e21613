#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "mlcorr/rng.hpp"
#include "mlcorr/text_pipeline.hpp"

using namespace mlcorr;

TEST_CASE("tokenize: lowercase, stopwords, stemming") {
  CHECK(tokenize("The books, the BOOKS!") ==
        std::vector<std::string>{"book", "book"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("a I of").empty());
  CHECK(tokenize("  \t\n  ").empty());
}

TEST_CASE("tokenize: splits on any non-alphanumeric, keeps order") {
  CHECK(tokenize("well-known;fantasy/novels") ==
        std::vector<std::string>{"well", "known", "fantasi", "novel"});
  CHECK(tokenize("don't") == std::vector<std::string>{});  // don + t both stopwords
  CHECK(tokenize("reading, then rereading") ==
        std::vector<std::string>{"read", "reread"});
}

TEST_CASE("stopword file matches the built-in list") {
  std::ifstream in(std::string(MLCORR_DATA_DIR) + "/stopwords.txt");
  REQUIRE(in.good());
  std::vector<std::string> from_file;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) from_file.push_back(line);
  CHECK(from_file == default_stopwords());
}

TEST_CASE("build_vocabulary: document frequency and determinism") {
  std::vector<std::vector<std::string>> docs{{"a1", "b1"}, {"b1"}};
  Vocabulary v = build_vocabulary(docs);
  REQUIRE(v.size() == 2);
  CHECK(v.num_docs == 2);
  CHECK(v.doc_freq[v.term_to_index.at("a1")] == 1);
  CHECK(v.doc_freq[v.term_to_index.at("b1")] == 2);

  SECTION("occurrences within one document count once") {
    Vocabulary single = build_vocabulary({{"x", "x", "x"}});
    REQUIRE(single.size() == 1);
    CHECK(single.doc_freq[0] == 1);
    CHECK(single.num_docs == 1);
  }
  SECTION("document order cannot matter") {
    std::vector<std::vector<std::string>> permuted{{"b1"}, {"a1", "b1"}};
    Vocabulary v2 = build_vocabulary(permuted);
    CHECK(v2.terms == v.terms);
    CHECK(v2.doc_freq == v.doc_freq);
  }
  SECTION("zero documents is an error") {
    CHECK_THROWS_AS(build_vocabulary({}), std::invalid_argument);
  }
  SECTION("index assignment is lexicographic") {
    Vocabulary v3 = build_vocabulary({{"zeta", "alpha", "mid"}});
    CHECK(v3.terms == std::vector<std::string>{"alpha", "mid", "zeta"});
  }
}

TEST_CASE("vectorize: tf-idf weights") {
  SECTION("term in every document has idf 1") {
    Vocabulary v = build_vocabulary({{"x"}, {"x"}, {"x"}});
    CHECK(smoothed_idf(v.num_docs, v.doc_freq[0]) == Catch::Approx(1.0));
  }
  SECTION("all tokens out of vocabulary gives the zero vector") {
    Vocabulary v = build_vocabulary({{"x"}});
    FeatureVector fv = vectorize({"unseen", "tokens"}, v);
    CHECK(fv.entries.empty());
    CHECK(fv.norm == 0.0);
  }
  SECTION("hand-computed weight: df 1 of 4 docs, tf 2") {
    Vocabulary v = build_vocabulary({{"x"}, {"y"}, {"z"}, {"w"}});
    REQUIRE(v.num_docs == 4);
    FeatureVector fv = vectorize({"x", "x", "oov"}, v, /*normalize=*/false);
    REQUIRE(fv.entries.size() == 1);
    double expected = 2.0 * (std::log(5.0 / 2.0) + 1.0);
    CHECK(fv.entries[0].second == Catch::Approx(expected).epsilon(1e-12));

    FeatureVector unit = vectorize({"x", "x", "oov"}, v);
    REQUIRE(unit.entries.size() == 1);
    CHECK(unit.entries[0].second == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(unit.norm == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("vectorize: properties on random documents") {
  // vocabulary from a pool of synthetic terms, documents drawn at random
  Rng rng(2024);
  std::vector<std::string> pool;
  for (int i = 0; i < 40; ++i) pool.push_back("term" + std::to_string(i));
  std::vector<std::vector<std::string>> train_docs;
  for (int d = 0; d < 25; ++d) {
    std::vector<std::string> doc;
    std::size_t len = 1 + rng.index(30);
    for (std::size_t t = 0; t < len; ++t) doc.push_back(pool[rng.index(pool.size())]);
    train_docs.push_back(doc);
  }
  Vocabulary vocab = build_vocabulary(train_docs);

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> doc;
    std::size_t len = rng.index(25);
    std::size_t distinct_cap = 0;
    for (std::size_t t = 0; t < len; ++t) doc.push_back(pool[rng.index(pool.size())]);
    {
      auto sorted = doc;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      distinct_cap = sorted.size();
    }
    FeatureVector fv = vectorize(doc, vocab);

    // sparsity bound and strictly increasing indices
    CHECK(fv.entries.size() <= distinct_cap);
    for (std::size_t i = 1; i < fv.entries.size(); ++i)
      CHECK(fv.entries[i - 1].first < fv.entries[i].first);

    // unit norm unless empty
    double sq = 0.0;
    for (const auto& [idx, w] : fv.entries) sq += w * w;
    if (!fv.entries.empty())
      CHECK(std::abs(std::sqrt(sq) - 1.0) <= 1e-9);

    // determinism
    FeatureVector fv2 = vectorize(doc, vocab);
    CHECK(fv.entries == fv2.entries);
  }
}

TEST_CASE("vocabulary derives from training documents only") {
  Vocabulary vocab = build_vocabulary({{"alpha", "beta"}, {"alpha"}});
  CHECK(vocab.term_to_index.count("gamma") == 0);
  FeatureVector fv = vectorize({"gamma", "alpha"}, vocab);
  REQUIRE(fv.entries.size() == 1);  // gamma ignored, not added
  CHECK(fv.entries[0].first == vocab.term_to_index.at("alpha"));
}
