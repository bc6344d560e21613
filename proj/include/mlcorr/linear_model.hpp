#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlcorr/dataset.hpp"
#include "mlcorr/text_pipeline.hpp"

namespace mlcorr {

enum class ModelKind { logistic, naive_bayes };

inline std::string to_string(ModelKind kind) {
  return kind == ModelKind::logistic ? "logistic" : "naive_bayes";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "logistic") return ModelKind::logistic;
  if (s == "naive_bayes") return ModelKind::naive_bayes;
  throw std::invalid_argument("unknown model kind '" + s + "'");
}

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double reg_lambda = 0.0;

  bool operator==(const LinearModel&) const = default;
};

struct TrainConfig {
  double reg_lambda = 1e-4;
  int max_iters = 500;
  double tolerance = 1e-6;
  double learning_rate = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("TrainConfig: max_iters >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("TrainConfig: tolerance > 0");
    if (!(learning_rate > 0.0))
      throw std::invalid_argument("TrainConfig: learning_rate > 0");
    if (reg_lambda < 0.0) throw std::invalid_argument("TrainConfig: reg_lambda >= 0");
  }

  bool operator==(const TrainConfig&) const = default;
};

struct BinaryModelSet {
  std::vector<LinearModel> models;  // one per label
  ModelKind kind = ModelKind::logistic;
  std::size_t vocab_size = 0;

  std::size_t num_labels() const { return models.size(); }
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

inline double sparse_dot(const FeatureVector& x, const std::vector<double>& w) {
  double acc = 0.0;
  for (const auto& [idx, val] : x.entries) {
    if (idx >= w.size())
      throw std::out_of_range("feature index " + std::to_string(idx) +
                              " out of range for vocab size " +
                              std::to_string(w.size()));
    acc += val * w[idx];
  }
  return acc;
}

inline double decision_value(const LinearModel& m, const FeatureVector& x) {
  return sparse_dot(x, m.weights) + m.bias;
}

inline double predict_proba(const LinearModel& m, const FeatureVector& x) {
  return sigmoid(decision_value(m, x));
}

// mean logistic loss over the batch plus (reg_lambda/2)*||w||^2;
// targets are {0,1}, mapped to the +/-1 margin convention
inline double logistic_loss(const std::vector<FeatureVector>& features,
                            const std::vector<int>& targets,
                            const std::vector<double>& weights, double bias,
                            double reg_lambda) {
  const std::size_t n = features.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = targets[i] == 1 ? 1.0 : -1.0;
    double margin = z * (sparse_dot(features[i], weights) + bias);
    // log(1 + exp(-margin)) without overflow
    loss += margin > 0.0 ? std::log1p(std::exp(-margin))
                         : -margin + std::log1p(std::exp(margin));
  }
  loss /= static_cast<double>(n);
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return loss + 0.5 * reg_lambda * sq;
}

// gradient of logistic_loss; the bias is not regularized
inline void logistic_gradient(const std::vector<FeatureVector>& features,
                              const std::vector<int>& targets,
                              const std::vector<double>& weights, double bias,
                              double reg_lambda, std::vector<double>& grad_w,
                              double& grad_b) {
  const std::size_t n = features.size();
  grad_w.assign(weights.size(), 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = targets[i] == 1 ? 1.0 : -1.0;
    double margin = z * (sparse_dot(features[i], weights) + bias);
    double coeff = -z * sigmoid(-margin);
    for (const auto& [idx, val] : features[i].entries)
      grad_w[idx] += coeff * val;
    grad_b += coeff;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < weights.size(); ++j)
    grad_w[j] = grad_w[j] * inv_n + reg_lambda * weights[j];
  grad_b *= inv_n;
}

struct TrainTrace {
  std::vector<double> losses;  // loss after each gradient step
  int iterations = 0;
  double final_grad_norm = 0.0;
};

// Full-batch gradient descent with fixed step size, stopping when the
// gradient infinity-norm drops to cfg.tolerance or max_iters is reached.
// All-same-class targets are fine: the bias saturates toward that class.
inline LinearModel train_binary(const std::vector<FeatureVector>& features,
                                const std::vector<int>& targets,
                                const TrainConfig& cfg,
                                std::size_t vocab_size,
                                TrainTrace* trace = nullptr) {
  cfg.validate();
  if (features.empty())
    throw std::invalid_argument("train_binary: no training examples");
  if (features.size() != targets.size())
    throw std::invalid_argument("train_binary: feature/target length mismatch");

  LinearModel model;
  model.weights.assign(vocab_size, 0.0);
  model.bias = 0.0;
  model.reg_lambda = cfg.reg_lambda;

  std::vector<double> grad_w;
  double grad_b = 0.0;
  if (trace)
    trace->losses.push_back(logistic_loss(features, targets, model.weights,
                                          model.bias, cfg.reg_lambda));
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    logistic_gradient(features, targets, model.weights, model.bias,
                      cfg.reg_lambda, grad_w, grad_b);
    double inf_norm = std::abs(grad_b);
    for (double g : grad_w) inf_norm = std::max(inf_norm, std::abs(g));
    if (trace) {
      trace->iterations = iter;
      trace->final_grad_norm = inf_norm;
    }
    if (inf_norm <= cfg.tolerance) break;
    for (std::size_t j = 0; j < model.weights.size(); ++j)
      model.weights[j] -= cfg.learning_rate * grad_w[j];
    model.bias -= cfg.learning_rate * grad_b;
    if (trace) {
      trace->losses.push_back(logistic_loss(features, targets, model.weights,
                                            model.bias, cfg.reg_lambda));
      trace->iterations = iter + 1;
    }
  }
  return model;
}

// presence-of-term form used by the Bernoulli model
inline FeatureVector binarized(const FeatureVector& x) {
  FeatureVector out;
  out.entries.reserve(x.entries.size());
  for (const auto& [idx, val] : x.entries)
    if (val != 0.0) out.entries.emplace_back(idx, 1.0);
  out.norm = std::sqrt(static_cast<double>(out.entries.size()));
  return out;
}

// Bernoulli Naive Bayes in log-odds linear form: per-term weights are the
// presence-vs-absence log-likelihood ratios and the bias carries the
// (smoothed) log prior ratio plus the accumulated absence terms, so
// predict_proba on presence features reproduces the NB posterior exactly.
inline LinearModel train_naive_bayes(const std::vector<FeatureVector>& features,
                                     const std::vector<int>& targets,
                                     std::size_t vocab_size,
                                     double smoothing = 1.0) {
  if (!(smoothing > 0.0))
    throw std::invalid_argument("train_naive_bayes: smoothing must be positive");
  if (features.empty())
    throw std::invalid_argument("train_naive_bayes: no training examples");
  if (features.size() != targets.size())
    throw std::invalid_argument("train_naive_bayes: feature/target length mismatch");

  const double n = static_cast<double>(features.size());
  double n_pos = 0.0;
  std::vector<double> df_pos(vocab_size, 0.0), df_neg(vocab_size, 0.0);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const bool pos = targets[i] == 1;
    if (pos) n_pos += 1.0;
    for (const auto& [idx, val] : features[i].entries) {
      if (idx >= vocab_size)
        throw std::out_of_range("train_naive_bayes: feature index out of range");
      if (val == 0.0) continue;
      (pos ? df_pos : df_neg)[idx] += 1.0;
    }
  }
  const double n_neg = n - n_pos;

  LinearModel model;
  model.weights.assign(vocab_size, 0.0);
  model.reg_lambda = 0.0;
  double bias = std::log((n_pos + smoothing) / (n_neg + smoothing));
  for (std::size_t t = 0; t < vocab_size; ++t) {
    double p1 = (df_pos[t] + smoothing) / (n_pos + 2.0 * smoothing);
    double p0 = (df_neg[t] + smoothing) / (n_neg + 2.0 * smoothing);
    double present = std::log(p1 / p0);
    double absent = std::log((1.0 - p1) / (1.0 - p0));
    model.weights[t] = present - absent;
    bias += absent;
  }
  model.bias = bias;
  return model;
}

// One independent binary model per label; label l's targets are
// membership of l in each review's label set. Trainings never see other
// labels' targets, so their order cannot matter.
inline BinaryModelSet train_model_set(const std::vector<FeatureVector>& features,
                                      const std::vector<LabelSet>& label_sets,
                                      std::size_t num_labels,
                                      const TrainConfig& cfg,
                                      ModelKind kind = ModelKind::logistic,
                                      double nb_smoothing = 1.0,
                                      std::size_t vocab_size = 0) {
  if (features.size() != label_sets.size())
    throw std::invalid_argument("train_model_set: feature/label length mismatch");
  if (vocab_size == 0)
    for (const auto& fv : features)
      for (const auto& [idx, val] : fv.entries)
        vocab_size = std::max(vocab_size, idx + 1);

  std::vector<FeatureVector> presence;
  if (kind == ModelKind::naive_bayes) {
    presence.reserve(features.size());
    for (const auto& fv : features) presence.push_back(binarized(fv));
  }
  const auto& train_features =
      kind == ModelKind::naive_bayes ? presence : features;

  BinaryModelSet set;
  set.kind = kind;
  set.vocab_size = vocab_size;
  set.models.reserve(num_labels);
  std::vector<int> targets(features.size());
  for (std::size_t lbl = 0; lbl < num_labels; ++lbl) {
    for (std::size_t i = 0; i < label_sets.size(); ++i)
      targets[i] = std::binary_search(label_sets[i].begin(),
                                      label_sets[i].end(), lbl)
                       ? 1
                       : 0;
    set.models.push_back(kind == ModelKind::naive_bayes
                             ? train_naive_bayes(train_features, targets,
                                                 vocab_size, nb_smoothing)
                             : train_binary(train_features, targets, cfg,
                                            vocab_size));
  }
  return set;
}

// Per-label probabilities for one document. Naive Bayes models score the
// presence form of the features.
inline std::vector<double> predict_all_probs(const BinaryModelSet& set,
                                             const FeatureVector& x) {
  const FeatureVector* input = &x;
  FeatureVector presence;
  if (set.kind == ModelKind::naive_bayes) {
    presence = binarized(x);
    input = &presence;
  }
  std::vector<double> probs;
  probs.reserve(set.models.size());
  for (const auto& m : set.models) probs.push_back(predict_proba(m, *input));
  return probs;
}

}  // namespace mlcorr
