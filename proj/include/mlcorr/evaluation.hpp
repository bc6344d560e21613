#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mlcorr/correlation_matrix.hpp"
#include "mlcorr/dataset.hpp"
#include "mlcorr/inference.hpp"
#include "mlcorr/linear_model.hpp"
#include "mlcorr/text_pipeline.hpp"

namespace mlcorr {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// aggregate counts over all (review, label) cells
inline ConfusionCounts confusion(const std::vector<LabelSet>& predictions,
                                 const std::vector<LabelSet>& truths,
                                 std::size_t num_labels) {
  if (predictions.size() != truths.size())
    throw std::invalid_argument("confusion: prediction/truth length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const LabelSet& pred = predictions[i];
    const LabelSet& truth = truths[i];
    std::size_t inter = 0;
    for (std::size_t lbl : pred)
      if (std::binary_search(truth.begin(), truth.end(), lbl)) ++inter;
    c.tp += inter;
    c.fp += pred.size() - inter;
    c.fn += truth.size() - inter;
    c.tn += num_labels - pred.size() - truth.size() + inter;
  }
  return c;
}

// Error = 1 - (tp/(tp+fn)) * (tp/(tp+fp))^gamma. False negatives count
// fully; the precision factor is discounted by gamma. Degenerate cases:
// empty ground truth scores 0 when nothing was predicted and 1 otherwise;
// tp == 0 against nonempty truth scores 1.
inline double error_metric(const ConfusionCounts& c, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("error_metric: gamma > 0");
  const double tp = static_cast<double>(c.tp);
  if (c.tp + c.fn == 0) return c.fp == 0 ? 0.0 : 1.0;
  if (c.tp == 0) return 1.0;
  double recall = tp / static_cast<double>(c.tp + c.fn);
  double precision = tp / static_cast<double>(c.tp + c.fp);
  return 1.0 - recall * std::pow(precision, gamma);
}

// mean of the per-review error metric; the comparison mode, not the
// reference aggregate
inline double error_metric_per_review(const std::vector<LabelSet>& predictions,
                                      const std::vector<LabelSet>& truths,
                                      std::size_t num_labels, double gamma) {
  if (predictions.size() != truths.size())
    throw std::invalid_argument("error_metric_per_review: length mismatch");
  if (predictions.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    total += error_metric(confusion({predictions[i]}, {truths[i]}, num_labels),
                          gamma);
  return total / static_cast<double>(predictions.size());
}

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double f_beta = 0.0;
};

// F_beta uses (1+b^2)PR / (P + b^2 R); this denominator ordering is the
// convention that reproduces the published score tables, not the usual
// textbook form. Zero denominators yield 0.
inline PrfScores prf_scores(const ConfusionCounts& c, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("prf_scores: beta > 0");
  PrfScores s;
  const double tp = static_cast<double>(c.tp);
  if (c.tp + c.fp > 0) s.precision = tp / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) s.recall = tp / static_cast<double>(c.tp + c.fn);
  if (s.precision + s.recall > 0.0)
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  const double b2 = beta * beta;
  const double denom = s.precision + b2 * s.recall;
  if (denom > 0.0) s.f_beta = (1.0 + b2) * s.precision * s.recall / denom;
  return s;
}

struct EvalReport {
  ConfusionCounts confusion;
  double error = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double f_beta = 0.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
  double per_review_error = 0.0;  // comparison mode, informational
};

inline EvalReport make_report(const ConfusionCounts& c, double gamma, double beta) {
  EvalReport r;
  r.confusion = c;
  r.error = error_metric(c, gamma);
  PrfScores s = prf_scores(c, beta);
  r.precision = s.precision;
  r.recall = s.recall;
  r.f1 = s.f1;
  r.f_beta = s.f_beta;
  r.beta = beta;
  r.gamma = gamma;
  return r;
}

struct PairedReport {
  EvalReport baseline;
  EvalReport correlated;
};

// Everything one experiment needs beyond the datasets themselves. The
// correlation prior comes from corr_corpus when set (the paper built it
// from a far larger corpus than the train split), else from the train
// split; pinned_matrix short-circuits both.
struct ExperimentConfig {
  HyperParams hyper;
  TrainConfig train;
  ModelKind model_kind = ModelKind::logistic;
  double nb_smoothing = 1.0;
  double laplace = 1.0;
  double beta = 1.0 / 3.0;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  const Dataset* corr_corpus = nullptr;
  const CorrelationMatrix* pinned_matrix = nullptr;
  const StopwordSet* stopwords = nullptr;
  std::int64_t min_df = 1;
};

namespace detail {

inline const StopwordSet& stopwords_of(const ExperimentConfig& cfg) {
  static const StopwordSet defaults;
  return cfg.stopwords ? *cfg.stopwords : defaults;
}

}  // namespace detail

// vocabulary terms with doc_freq below min_df are dropped and indices
// reassigned (still lexicographic)
inline Vocabulary prune_vocabulary(const Vocabulary& vocab, std::int64_t min_df) {
  if (min_df <= 1) return vocab;
  Vocabulary out;
  out.num_docs = vocab.num_docs;
  for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
    if (vocab.doc_freq[i] < min_df) continue;
    out.term_to_index.emplace(vocab.terms[i], out.terms.size());
    out.terms.push_back(vocab.terms[i]);
    out.doc_freq.push_back(vocab.doc_freq[i]);
  }
  return out;
}

struct TrainedPipeline {
  Vocabulary vocab;
  BinaryModelSet models;
  CorrelationMatrix corr;
};

// vocabulary and models come from the training reviews only
inline TrainedPipeline fit_pipeline(const Dataset& train,
                                    const ExperimentConfig& cfg) {
  const StopwordSet& stop = detail::stopwords_of(cfg);
  std::vector<std::vector<std::string>> docs;
  docs.reserve(train.reviews.size());
  for (const auto& r : train.reviews) docs.push_back(tokenize(r.text, stop));

  TrainedPipeline out;
  out.vocab = prune_vocabulary(build_vocabulary(docs), cfg.min_df);

  std::vector<FeatureVector> features;
  features.reserve(docs.size());
  for (const auto& d : docs) features.push_back(vectorize(d, out.vocab));

  std::vector<LabelSet> label_sets;
  label_sets.reserve(train.reviews.size());
  for (const auto& r : train.reviews) label_sets.push_back(r.labels);

  out.models = train_model_set(features, label_sets, train.num_labels(),
                               cfg.train, cfg.model_kind, cfg.nb_smoothing,
                               out.vocab.size());

  if (cfg.pinned_matrix)
    out.corr = *cfg.pinned_matrix;
  else if (cfg.corr_corpus)
    out.corr = correlation_from_dataset(*cfg.corr_corpus, cfg.laplace);
  else
    out.corr = correlation_from_dataset(train, cfg.laplace);
  return out;
}

inline PairedReport evaluate_split(const TrainedPipeline& pipe,
                                   const Dataset& test,
                                   const ExperimentConfig& cfg) {
  const StopwordSet& stop = detail::stopwords_of(cfg);
  std::vector<LabelSet> base_preds, corr_preds, truths;
  base_preds.reserve(test.reviews.size());
  corr_preds.reserve(test.reviews.size());
  truths.reserve(test.reviews.size());
  for (const auto& r : test.reviews) {
    FeatureVector x = vectorize(tokenize(r.text, stop), pipe.vocab);
    Prediction pred = predict_correlated(pipe.models, pipe.corr, x, cfg.hyper);
    base_preds.push_back(std::move(pred.baseline_set));
    corr_preds.push_back(std::move(pred.correlated_set));
    truths.push_back(r.labels);
  }
  const std::size_t L = test.num_labels();
  const double gamma = cfg.hyper.gamma;
  PairedReport out;
  out.baseline = make_report(confusion(base_preds, truths, L), gamma, cfg.beta);
  out.correlated = make_report(confusion(corr_preds, truths, L), gamma, cfg.beta);
  out.baseline.per_review_error =
      error_metric_per_review(base_preds, truths, L, gamma);
  out.correlated.per_review_error =
      error_metric_per_review(corr_preds, truths, L, gamma);
  return out;
}

// 70/30-style protocol: split, fit on train, evaluate both predictors
inline PairedReport run_holdout(const Dataset& ds, const ExperimentConfig& cfg) {
  if (ds.reviews.empty()) throw std::invalid_argument("run_holdout: empty dataset");
  auto [train, test] = split_holdout(ds, cfg.train_fraction, cfg.seed);
  TrainedPipeline pipe = fit_pipeline(train, cfg);
  return evaluate_split(pipe, test, cfg);
}

struct FoldStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct PredictorSummary {
  FoldStats error, precision, recall, f1, f_beta;
};

struct KFoldResult {
  std::vector<PairedReport> folds;
  PredictorSummary baseline;
  PredictorSummary correlated;
};

namespace detail {

inline FoldStats fold_stats(const std::vector<double>& xs) {
  FoldStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return s;
}

inline PredictorSummary summarize(const std::vector<PairedReport>& folds,
                                  bool correlated) {
  std::vector<double> err, pre, rec, f1, fb;
  for (const auto& f : folds) {
    const EvalReport& r = correlated ? f.correlated : f.baseline;
    err.push_back(r.error);
    pre.push_back(r.precision);
    rec.push_back(r.recall);
    f1.push_back(r.f1);
    fb.push_back(r.f_beta);
  }
  return {fold_stats(err), fold_stats(pre), fold_stats(rec), fold_stats(f1),
          fold_stats(fb)};
}

}  // namespace detail

// Contiguous folds over one seeded shuffle, sizes differing by at most 1.
// Vocabulary, models, and (unless pinned) the correlation matrix are
// rebuilt from scratch for every fold.
inline KFoldResult run_kfold(const Dataset& ds, std::size_t k,
                             const ExperimentConfig& cfg) {
  const std::size_t n = ds.reviews.size();
  if (k < 2) throw std::invalid_argument("run_kfold: k must be >= 2");
  if (n < k) throw std::invalid_argument("run_kfold: fewer reviews than folds");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(cfg.seed);
  rng.shuffle(order);

  const std::size_t base = n / k, rem = n % k;
  KFoldResult result;
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < rem ? 1 : 0);
    Dataset train{ds.label_space, {}};
    Dataset test{ds.label_space, {}};
    for (std::size_t i = 0; i < n; ++i) {
      const Review& r = ds.reviews[order[i]];
      if (i >= start && i < start + size)
        test.reviews.push_back(r);
      else
        train.reviews.push_back(r);
    }
    start += size;
    TrainedPipeline pipe = fit_pipeline(train, cfg);
    result.folds.push_back(evaluate_split(pipe, test, cfg));
  }
  result.baseline = detail::summarize(result.folds, false);
  result.correlated = detail::summarize(result.folds, true);
  return result;
}

// train on one corpus, test on another sharing the same label space
inline PairedReport run_cross_domain(const Dataset& train_ds,
                                     const Dataset& test_ds,
                                     const ExperimentConfig& cfg) {
  if (!(train_ds.label_space == test_ds.label_space))
    throw std::invalid_argument("run_cross_domain: label spaces differ");
  TrainedPipeline pipe = fit_pipeline(train_ds, cfg);
  return evaluate_split(pipe, test_ds, cfg);
}

}  // namespace mlcorr
