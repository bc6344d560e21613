#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlcorr/correlation_matrix.hpp"
#include "mlcorr/linear_model.hpp"

namespace mlcorr {

// Number of label pairs kept by the correlated predictor: either a fixed
// count or the size of the baseline prediction (floored at 1).
struct KPairs {
  enum class Mode { fixed, baseline_count };
  Mode mode = Mode::fixed;
  std::size_t count = 6;

  static KPairs fixed(std::size_t k) {
    if (k < 1) throw std::invalid_argument("KPairs: fixed count must be >= 1");
    return {Mode::fixed, k};
  }
  static KPairs baseline_count() { return {Mode::baseline_count, 0}; }

  std::size_t resolve(std::size_t baseline_size) const {
    if (mode == Mode::fixed) return count;
    return std::max<std::size_t>(1, baseline_size);
  }

  bool operator==(const KPairs&) const = default;
};

struct HyperParams {
  double alpha = 0.3;          // correlation discount exponent
  double gamma = 1.0 / 3.0;    // error-metric precision exponent
  std::size_t j_top = 12;      // candidate labels kept per review
  KPairs k_pairs = KPairs::fixed(6);
  double threshold = 0.5;      // baseline decision threshold, inclusive

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("HyperParams: alpha must be in [0,1]");
    if (!(gamma > 0.0)) throw std::invalid_argument("HyperParams: gamma > 0");
    if (j_top < 2) throw std::invalid_argument("HyperParams: j_top >= 2");
    if (!(threshold > 0.0 && threshold < 1.0))
      throw std::invalid_argument("HyperParams: threshold must be in (0,1)");
  }

  bool operator==(const HyperParams&) const = default;
};

// Table I profiles
inline HyperParams amazon_profile() {
  return HyperParams{0.3, 1.0 / 3.0, 12, KPairs::fixed(6), 0.5};
}
inline HyperParams twitter_profile() {
  return HyperParams{0.25, 1.0 / 3.0, 10, KPairs::baseline_count(), 0.5};
}

struct PairScore {
  std::size_t a = 0;
  std::size_t b = 0;  // a < b
  double score = 0.0;

  bool operator==(const PairScore&) const = default;
};

struct Prediction {
  std::vector<double> probs;        // per-label, length L
  LabelSet baseline_set;            // probs[i] >= threshold
  LabelSet correlated_set;          // union of the selected pairs' labels
  std::vector<PairScore> pair_scores;  // evaluated pairs in selection order
  std::size_t num_pairs_selected = 0;  // prefix of pair_scores taken
};

inline LabelSet threshold_set(const std::vector<double>& probs,
                              double threshold) {
  LabelSet out;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] >= threshold) out.push_back(i);
  return out;
}

inline LabelSet predict_baseline(const BinaryModelSet& models,
                                 const FeatureVector& x, double threshold = 0.5) {
  return threshold_set(predict_all_probs(models, x), threshold);
}

inline double score_pair(double p_a, double p_b, double corr_ab, double alpha) {
  return p_a * p_b * std::pow(corr_ab, alpha);
}

// deterministic rank order: higher probability first, lower index on ties
inline std::vector<std::size_t> top_j_labels(const std::vector<double>& probs,
                                             std::size_t j) {
  std::vector<std::size_t> order(probs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  order.resize(std::min(j, order.size()));
  return order;
}

// Approximate joint inference: keep the J most probable labels, score all
// their pairs with P(a)P(b)P(a,b)^alpha, keep the K best pairs and output
// the union of their labels. Ties in pair score break lexicographically.
inline Prediction predict_correlated_from_probs(std::vector<double> probs,
                                                const CorrelationMatrix& corr,
                                                const HyperParams& hp) {
  hp.validate();
  if (corr.num_labels() != probs.size())
    throw std::invalid_argument(
        "predict_correlated: matrix size does not match label count");

  Prediction pred;
  pred.probs = std::move(probs);
  pred.baseline_set = threshold_set(pred.probs, hp.threshold);

  std::vector<std::size_t> candidates = top_j_labels(pred.probs, hp.j_top);
  if (candidates.size() < 2) {
    pred.correlated_set = pred.baseline_set;
    return pred;
  }
  std::sort(candidates.begin(), candidates.end());

  pred.pair_scores.reserve(candidates.size() * (candidates.size() - 1) / 2);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      std::size_t a = candidates[i], b = candidates[j];
      pred.pair_scores.push_back(
          {a, b,
           score_pair(pred.probs[a], pred.probs[b], corr.at(a, b), hp.alpha)});
    }
  }
  std::sort(pred.pair_scores.begin(), pred.pair_scores.end(),
            [](const PairScore& x, const PairScore& y) {
              if (x.score != y.score) return x.score > y.score;
              if (x.a != y.a) return x.a < y.a;
              return x.b < y.b;
            });

  std::size_t k = hp.k_pairs.resolve(pred.baseline_set.size());
  pred.num_pairs_selected = std::min(k, pred.pair_scores.size());
  for (std::size_t i = 0; i < pred.num_pairs_selected; ++i) {
    pred.correlated_set.push_back(pred.pair_scores[i].a);
    pred.correlated_set.push_back(pred.pair_scores[i].b);
  }
  normalize_label_set(pred.correlated_set);
  return pred;
}

inline Prediction predict_correlated(const BinaryModelSet& models,
                                     const CorrelationMatrix& corr,
                                     const FeatureVector& x,
                                     const HyperParams& hp) {
  return predict_correlated_from_probs(predict_all_probs(models, x), corr, hp);
}

// Exact log joint score the greedy pair selection approximates:
// sum_i log q_i + alpha * sum_{j<k in y} log corr[j][k], with q_i the
// model probability of label i's assignment. A zero correlation entry
// for a selected pair yields -infinity.
inline double joint_log_score(const LabelSet& y, const std::vector<double>& probs,
                              const CorrelationMatrix& corr, double alpha) {
  double score = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    bool in_y = std::binary_search(y.begin(), y.end(), i);
    score += std::log(in_y ? probs[i] : 1.0 - probs[i]);
  }
  if (alpha != 0.0)
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t b = a + 1; b < y.size(); ++b)
        score += alpha * std::log(corr.at(y[a], y[b]));
  return score;
}

}  // namespace mlcorr
