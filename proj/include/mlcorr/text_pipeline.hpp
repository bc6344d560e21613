#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlcorr/porter_stemmer.hpp"

namespace mlcorr {

// Built-in English stopword list, applied after lowercasing and before
// stemming. The same list ships as data/stopwords.txt; a unit test keeps
// the two in sync. Contraction fragments (don, isn, ...) appear because
// the tokenizer splits on apostrophes.
inline const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a",       "about",   "above",   "after",   "again",    "against",
      "ain",     "all",     "am",      "an",      "and",      "any",
      "are",     "aren",    "as",      "at",      "be",       "because",
      "been",    "before",  "being",   "below",   "between",  "both",
      "but",     "by",      "can",     "couldn",  "did",      "didn",
      "do",      "does",    "doesn",   "doing",   "don",      "down",
      "during",  "each",    "few",     "for",     "from",     "further",
      "had",     "hadn",    "has",     "hasn",    "have",     "haven",
      "having",  "he",      "her",     "here",    "hers",     "herself",
      "him",     "himself", "his",     "how",     "i",        "if",
      "in",      "into",    "is",      "isn",     "it",       "its",
      "itself",  "just",    "ll",      "ma",      "me",       "mightn",
      "more",    "most",    "mustn",   "my",      "myself",   "needn",
      "no",      "nor",     "not",     "now",     "o",        "of",
      "off",     "on",      "once",    "only",    "or",       "other",
      "our",     "ours",    "ourselves", "out",   "over",     "own",
      "re",      "s",       "same",    "shan",    "she",      "should",
      "shouldn", "so",      "some",    "such",    "t",        "than",
      "that",    "the",     "their",   "theirs",  "them",     "themselves",
      "then",    "there",   "these",   "they",    "this",     "those",
      "through", "to",      "too",     "under",   "until",    "up",
      "ve",      "very",    "was",     "wasn",    "we",       "were",
      "weren",   "what",    "when",    "where",   "which",    "while",
      "who",     "whom",    "why",     "will",    "with",     "won",
      "wouldn",  "y",       "you",     "your",    "yours",    "yourself",
      "yourselves"};
  return words;
}

class StopwordSet {
public:
  StopwordSet() : StopwordSet(default_stopwords()) {}
  explicit StopwordSet(const std::vector<std::string>& words)
      : words_(words.begin(), words.end()) {}

  bool contains(const std::string& w) const { return words_.count(w) != 0; }
  std::size_t size() const { return words_.size(); }

private:
  std::unordered_set<std::string> words_;
};

// lowercase -> split on non-alphanumeric -> drop stopwords -> drop
// tokens shorter than 2 -> Porter stem, order preserved
inline std::vector<std::string> tokenize(std::string_view text,
                                         const StopwordSet& stopwords) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (!stopwords.contains(cur) && cur.size() >= 2)
      out.push_back(porter_stem(cur));
    cur.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c))
      cur.push_back(static_cast<char>(std::tolower(c)));
    else
      flush();
  }
  flush();
  return out;
}

inline std::vector<std::string> tokenize(std::string_view text) {
  static const StopwordSet defaults;
  return tokenize(text, defaults);
}

struct Vocabulary {
  std::vector<std::string> terms;  // index -> term, lexicographic
  std::unordered_map<std::string, std::size_t> term_to_index;
  std::vector<std::int64_t> doc_freq;  // documents containing the term
  std::int64_t num_docs = 0;

  std::size_t size() const { return terms.size(); }
};

// doc_freq counts documents containing a term, not occurrences;
// index assignment is lexicographic so document order cannot matter
inline Vocabulary build_vocabulary(
    const std::vector<std::vector<std::string>>& train_docs) {
  if (train_docs.empty())
    throw std::invalid_argument("build_vocabulary: no training documents");
  std::map<std::string, std::int64_t> df;
  std::unordered_set<std::string> seen;
  for (const auto& doc : train_docs) {
    seen.clear();
    for (const auto& tok : doc)
      if (seen.insert(tok).second) ++df[tok];
  }
  Vocabulary vocab;
  vocab.num_docs = static_cast<std::int64_t>(train_docs.size());
  vocab.terms.reserve(df.size());
  vocab.doc_freq.reserve(df.size());
  for (const auto& [term, count] : df) {
    vocab.term_to_index.emplace(term, vocab.terms.size());
    vocab.terms.push_back(term);
    vocab.doc_freq.push_back(count);
  }
  return vocab;
}

struct FeatureVector {
  std::vector<std::pair<std::size_t, double>> entries;  // index ascending
  double norm = 0.0;  // Euclidean norm before normalization

  bool empty() const { return entries.empty(); }
};

inline double smoothed_idf(std::int64_t num_docs, std::int64_t doc_freq) {
  return std::log((1.0 + static_cast<double>(num_docs)) /
                  (1.0 + static_cast<double>(doc_freq))) +
         1.0;
}

// weight(t) = tf(t) * (ln((1+N)/(1+df)) + 1), then L2 normalization;
// out-of-vocabulary tokens are ignored and empty documents stay zero
inline FeatureVector vectorize(const std::vector<std::string>& tokens,
                               const Vocabulary& vocab, bool normalize = true) {
  std::map<std::size_t, double> counts;
  for (const auto& tok : tokens) {
    auto it = vocab.term_to_index.find(tok);
    if (it != vocab.term_to_index.end()) counts[it->second] += 1.0;
  }
  FeatureVector fv;
  fv.entries.reserve(counts.size());
  double sq = 0.0;
  for (const auto& [idx, tf] : counts) {
    double w = tf * smoothed_idf(vocab.num_docs, vocab.doc_freq[idx]);
    fv.entries.emplace_back(idx, w);
    sq += w * w;
  }
  fv.norm = std::sqrt(sq);
  if (normalize && fv.norm > 0.0)
    for (auto& [idx, w] : fv.entries) w /= fv.norm;
  return fv;
}

}  // namespace mlcorr
