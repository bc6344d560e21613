#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mlcorr/correlation_matrix.hpp"
#include "mlcorr/dataset.hpp"
#include "mlcorr/evaluation.hpp"
#include "mlcorr/inference.hpp"
#include "mlcorr/linear_model.hpp"
#include "mlcorr/text_pipeline.hpp"

namespace mlcorr {

using json = nlohmann::ordered_json;

// write-temp-then-rename so readers never observe partial files
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- label space

inline json label_space_to_json(const LabelSpace& space) {
  json j;
  j["labels"] = space.names();
  std::map<std::string, std::string> subs;  // sorted for stable output
  for (const auto& [sub, idx] : space.sublabel_map())
    subs.emplace(sub, space.name(idx));
  j["sublabels"] = subs;
  return j;
}

inline LabelSpace label_space_from_json(const json& j) {
  std::vector<std::string> names = j.at("labels").get<std::vector<std::string>>();
  std::map<std::string, std::string> subs;
  if (j.contains("sublabels"))
    subs = j.at("sublabels").get<std::map<std::string, std::string>>();
  return LabelSpace(std::move(names), subs);
}

inline void save_label_space(const std::filesystem::path& path,
                             const LabelSpace& space) {
  atomic_write_file(path, label_space_to_json(space).dump(2) + "\n");
}

inline LabelSpace load_label_space(const std::filesystem::path& path) {
  try {
    return label_space_from_json(json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("label space '" + path.string() + "': " + e.what());
  }
}

// -------------------------------------------------------------- dataset JSONL

struct LoadOptions {
  bool strict = false;      // unknown label -> error instead of skip
  bool keep_empty = false;  // keep reviews with no labels (prediction inputs)
  std::vector<std::string>* warnings = nullptr;
};

namespace detail {

inline void warn(const LoadOptions& opts, const std::string& msg) {
  if (opts.warnings) opts.warnings->push_back(msg);
}

}  // namespace detail

// One JSON object per line: {"id", "text", "labels": [strings]}. Label
// strings may be top-level names or sub-labels; sub-labels roll up
// through the label space and duplicates collapse. Unknown labels are
// skipped with a warning (error under strict); reviews left with no
// labels are dropped with a warning unless keep_empty.
inline Dataset load_dataset(const std::filesystem::path& path,
                            const LabelSpace& space,
                            const LoadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");

  Dataset ds{space, {}};
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(where + ": malformed JSON: " + e.what());
    }
    Review r;
    try {
      r.id = j.at("id").get<std::string>();
      r.text = j.at("text").get<std::string>();
      for (const auto& lbl : j.at("labels")) {
        const std::string name = lbl.get<std::string>();
        if (auto idx = space.resolve(name)) {
          r.labels.push_back(*idx);
        } else if (opts.strict) {
          throw std::runtime_error(where + ": unknown label '" + name + "'");
        } else {
          detail::warn(opts, where + ": skipping unknown label '" + name + "'");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(where + ": bad record: " + e.what());
    }
    normalize_label_set(r.labels);
    if (!seen_ids.insert(r.id).second)
      throw std::runtime_error(where + ": duplicate review id '" + r.id + "'");
    if (r.labels.empty() && !opts.keep_empty) {
      detail::warn(opts, where + ": dropping review '" + r.id +
                             "' with no usable labels");
      continue;
    }
    ds.reviews.push_back(std::move(r));
  }
  return ds;
}

inline std::string dataset_to_jsonl(const Dataset& ds) {
  std::string out;
  for (const auto& r : ds.reviews) {
    json j;
    j["id"] = r.id;
    j["text"] = r.text;
    std::vector<std::string> names;
    names.reserve(r.labels.size());
    for (std::size_t lbl : r.labels) names.push_back(ds.label_space.name(lbl));
    j["labels"] = names;
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
  atomic_write_file(path, dataset_to_jsonl(ds));
}

// ---------------------------------------------------------------- vocabulary

inline constexpr int kFormatVersion = 1;

inline json vocabulary_to_json(const Vocabulary& vocab) {
  json j;
  j["version"] = kFormatVersion;
  j["num_docs"] = vocab.num_docs;
  json terms = json::array();
  for (std::size_t i = 0; i < vocab.terms.size(); ++i)
    terms.push_back(json::array({vocab.terms[i], vocab.doc_freq[i]}));
  j["terms"] = terms;
  return j;
}

inline Vocabulary vocabulary_from_json(const json& j) {
  if (j.at("version").get<int>() != kFormatVersion)
    throw std::runtime_error("vocabulary: unsupported format version");
  Vocabulary vocab;
  vocab.num_docs = j.at("num_docs").get<std::int64_t>();
  for (const auto& t : j.at("terms")) {
    std::string term = t.at(0).get<std::string>();
    vocab.term_to_index.emplace(term, vocab.terms.size());
    vocab.terms.push_back(std::move(term));
    vocab.doc_freq.push_back(t.at(1).get<std::int64_t>());
  }
  return vocab;
}

inline void save_vocabulary(const std::filesystem::path& path,
                            const Vocabulary& vocab) {
  atomic_write_file(path, vocabulary_to_json(vocab).dump() + "\n");
}

inline Vocabulary load_vocabulary(const std::filesystem::path& path) {
  try {
    return vocabulary_from_json(json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("vocabulary '" + path.string() + "': " + e.what());
  }
}

// ----------------------------------------------------------------- model set

inline json train_config_to_json(const TrainConfig& cfg) {
  json j;
  j["reg_lambda"] = cfg.reg_lambda;
  j["max_iters"] = cfg.max_iters;
  j["tolerance"] = cfg.tolerance;
  j["learning_rate"] = cfg.learning_rate;
  j["seed"] = cfg.seed;
  return j;
}

inline TrainConfig train_config_from_json(const json& j) {
  TrainConfig cfg;
  cfg.reg_lambda = j.at("reg_lambda").get<double>();
  cfg.max_iters = j.at("max_iters").get<int>();
  cfg.tolerance = j.at("tolerance").get<double>();
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

inline json model_set_to_json(const BinaryModelSet& set,
                              const TrainConfig& train_cfg) {
  json j;
  j["version"] = kFormatVersion;
  j["model_kind"] = to_string(set.kind);
  j["vocab_size"] = set.vocab_size;
  j["train_config"] = train_config_to_json(train_cfg);
  json models = json::array();
  for (const auto& m : set.models) {
    json mj;
    mj["bias"] = m.bias;
    mj["reg_lambda"] = m.reg_lambda;
    mj["weights"] = m.weights;
    models.push_back(std::move(mj));
  }
  j["models"] = models;
  return j;
}

inline BinaryModelSet model_set_from_json(const json& j,
                                          TrainConfig* train_cfg = nullptr) {
  if (j.at("version").get<int>() != kFormatVersion)
    throw std::runtime_error("model set: unsupported format version");
  BinaryModelSet set;
  set.kind = model_kind_from_string(j.at("model_kind").get<std::string>());
  set.vocab_size = j.at("vocab_size").get<std::size_t>();
  if (train_cfg) *train_cfg = train_config_from_json(j.at("train_config"));
  for (const auto& mj : j.at("models")) {
    LinearModel m;
    m.bias = mj.at("bias").get<double>();
    m.reg_lambda = mj.at("reg_lambda").get<double>();
    m.weights = mj.at("weights").get<std::vector<double>>();
    if (m.weights.size() != set.vocab_size)
      throw std::runtime_error("model set: weight vector size mismatch");
    set.models.push_back(std::move(m));
  }
  return set;
}

inline void save_model_set(const std::filesystem::path& path,
                           const BinaryModelSet& set, const TrainConfig& cfg) {
  atomic_write_file(path, model_set_to_json(set, cfg).dump() + "\n");
}

inline BinaryModelSet load_model_set(const std::filesystem::path& path,
                                     TrainConfig* train_cfg = nullptr) {
  try {
    return model_set_from_json(json::parse(read_file(path)), train_cfg);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("model set '" + path.string() + "': " + e.what());
  }
}

// --------------------------------------------------------- correlation matrix

inline json correlation_to_json(const CorrelationMatrix& corr,
                                const std::vector<std::string>& label_names) {
  const std::size_t n = corr.num_labels();
  if (!label_names.empty() && label_names.size() != n)
    throw std::invalid_argument("correlation_to_json: label count mismatch");
  json j;
  j["version"] = kFormatVersion;
  j["num_labels"] = n;
  j["labels"] = label_names;
  std::vector<double> tri;  // rows below the diagonal, row-major
  tri.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) tri.push_back(corr.at(i, k));
  j["lower_triangular"] = tri;
  return j;
}

inline CorrelationMatrix correlation_from_json(
    const json& j, std::vector<std::string>* label_names = nullptr) {
  if (j.at("version").get<int>() != kFormatVersion)
    throw std::runtime_error("correlation matrix: unsupported format version");
  const auto n = j.at("num_labels").get<std::size_t>();
  auto tri = j.at("lower_triangular").get<std::vector<double>>();
  if (tri.size() != n * (n - 1) / 2)
    throw std::runtime_error("correlation matrix: triangle size mismatch");
  if (label_names)
    *label_names = j.at("labels").get<std::vector<std::string>>();
  CorrelationMatrix corr;
  corr.probs = SquareMatrix<double>(n, 0.0);
  std::size_t pos = 0;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      corr.probs.at(i, k) = tri[pos];
      corr.probs.at(k, i) = tri[pos];
      ++pos;
    }
  return corr;
}

inline void save_correlation(const std::filesystem::path& path,
                             const CorrelationMatrix& corr,
                             const std::vector<std::string>& label_names) {
  atomic_write_file(path, correlation_to_json(corr, label_names).dump() + "\n");
}

inline CorrelationMatrix load_correlation(
    const std::filesystem::path& path,
    std::vector<std::string>* label_names = nullptr) {
  try {
    return correlation_from_json(json::parse(read_file(path)), label_names);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("correlation matrix '" + path.string() +
                             "': " + e.what());
  }
}

// full L x L matrix, one row per line, for external plotting
inline std::string correlation_to_csv(const CorrelationMatrix& corr) {
  const std::size_t n = corr.num_labels();
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      std::snprintf(buf, sizeof(buf), "%.12g", corr.at(i, j2));
      if (j2) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------- predictions

inline double round6(double x) { return std::round(x * 1e6) / 1e6; }

inline json prediction_to_json(const std::string& id, const Prediction& pred,
                               const LabelSpace& space) {
  json j;
  j["id"] = id;
  std::vector<double> probs;
  probs.reserve(pred.probs.size());
  for (double p : pred.probs) probs.push_back(round6(p));
  j["probs"] = probs;
  auto names = [&](const LabelSet& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (std::size_t lbl : s) out.push_back(space.name(lbl));
    return out;
  };
  j["baseline"] = names(pred.baseline_set);
  j["correlated"] = names(pred.correlated_set);
  json pairs = json::array();
  for (std::size_t i = 0; i < pred.num_pairs_selected; ++i) {
    const PairScore& ps = pred.pair_scores[i];
    pairs.push_back(json{{"a", space.name(ps.a)},
                         {"b", space.name(ps.b)},
                         {"score", round6(ps.score)}});
  }
  j["top_pairs"] = pairs;
  return j;
}

// -------------------------------------------------------------------- reports

inline json eval_report_to_json(const EvalReport& r) {
  json j;
  j["tp"] = r.confusion.tp;
  j["fp"] = r.confusion.fp;
  j["fn"] = r.confusion.fn;
  j["tn"] = r.confusion.tn;
  j["error"] = r.error;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["f_beta"] = r.f_beta;
  j["beta"] = r.beta;
  j["gamma"] = r.gamma;
  j["per_review_error"] = r.per_review_error;
  return j;
}

inline json paired_report_to_json(const PairedReport& pr) {
  json j;
  j["baseline"] = eval_report_to_json(pr.baseline);
  j["correlated"] = eval_report_to_json(pr.correlated);
  return j;
}

inline json fold_stats_to_json(const FoldStats& s) {
  return json{{"mean", s.mean}, {"stddev", s.stddev}};
}

inline json predictor_summary_to_json(const PredictorSummary& s) {
  json j;
  j["error"] = fold_stats_to_json(s.error);
  j["precision"] = fold_stats_to_json(s.precision);
  j["recall"] = fold_stats_to_json(s.recall);
  j["f1"] = fold_stats_to_json(s.f1);
  j["f_beta"] = fold_stats_to_json(s.f_beta);
  return j;
}

inline json kfold_result_to_json(const KFoldResult& res) {
  json j;
  json folds = json::array();
  for (const auto& f : res.folds) folds.push_back(paired_report_to_json(f));
  j["folds"] = folds;
  j["summary"] =
      json{{"baseline", predictor_summary_to_json(res.baseline)},
           {"correlated", predictor_summary_to_json(res.correlated)}};
  return j;
}

inline const char* kReportCsvHeader =
    "dataset,predictor,tp,fp,fn,tn,error,precision,recall,f1,f_beta\n";

inline std::string report_csv_row(const std::string& dataset_tag,
                                  const std::string& predictor,
                                  const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s,%s,%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                dataset_tag.c_str(), predictor.c_str(),
                static_cast<unsigned long long>(r.confusion.tp),
                static_cast<unsigned long long>(r.confusion.fp),
                static_cast<unsigned long long>(r.confusion.fn),
                static_cast<unsigned long long>(r.confusion.tn), r.error,
                r.precision, r.recall, r.f1, r.f_beta);
  return buf;
}

}  // namespace mlcorr
