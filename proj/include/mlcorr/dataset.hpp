#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mlcorr/rng.hpp"

namespace mlcorr {

// Label sets are sorted, duplicate-free vectors of top-level indices.
using LabelSet = std::vector<std::size_t>;

inline void normalize_label_set(LabelSet& labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

// Top-level label names plus the sub-label -> top-level roll-up map.
class LabelSpace {
public:
  LabelSpace() = default;

  // sublabels map sub-label string -> top-level NAME
  LabelSpace(std::vector<std::string> names,
             const std::map<std::string, std::string>& sublabels = {})
      : names_(std::move(names)) {
    if (names_.size() < 2)
      throw std::invalid_argument("LabelSpace: need at least 2 labels");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!name_to_index_.emplace(names_[i], i).second)
        throw std::invalid_argument("LabelSpace: duplicate label name '" +
                                    names_[i] + "'");
    }
    for (const auto& [sub, top] : sublabels) {
      auto it = name_to_index_.find(top);
      if (it == name_to_index_.end())
        throw std::invalid_argument("LabelSpace: sub-label '" + sub +
                                    "' maps to unknown label '" + top + "'");
      sublabel_to_index_.emplace(sub, it->second);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> index_of(const std::string& top_name) const {
    auto it = name_to_index_.find(top_name);
    if (it == name_to_index_.end()) return std::nullopt;
    return it->second;
  }

  // resolves a top-level name or a sub-label; top-level names win
  std::optional<std::size_t> resolve(const std::string& label) const {
    if (auto top = index_of(label)) return top;
    auto it = sublabel_to_index_.find(label);
    if (it == sublabel_to_index_.end()) return std::nullopt;
    return it->second;
  }

  const std::unordered_map<std::string, std::size_t>& sublabel_map() const {
    return sublabel_to_index_;
  }

  bool operator==(const LabelSpace& other) const {
    return names_ == other.names_ &&
           sublabel_to_index_ == other.sublabel_to_index_;
  }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> name_to_index_;
  std::unordered_map<std::string, std::size_t> sublabel_to_index_;
};

struct Review {
  std::string id;
  std::string text;
  LabelSet labels;  // sorted, unique, indices < L

  bool operator==(const Review&) const = default;
};

struct Dataset {
  LabelSpace label_space;
  std::vector<Review> reviews;

  std::size_t num_labels() const { return label_space.size(); }
  std::size_t size() const { return reviews.size(); }

  bool operator==(const Dataset&) const = default;
};

// unique ids, labels in range
inline void validate_dataset(const Dataset& ds) {
  std::unordered_set<std::string> ids;
  for (const auto& r : ds.reviews) {
    if (!ids.insert(r.id).second)
      throw std::invalid_argument("Dataset: duplicate review id '" + r.id + "'");
    for (std::size_t lbl : r.labels)
      if (lbl >= ds.label_space.size())
        throw std::out_of_range("Dataset: label index out of range in review '" +
                                r.id + "'");
  }
}

// Deterministic shuffle split: train gets round(N * train_fraction)
// reviews, test the remainder. Both keep the shuffled order.
inline std::pair<Dataset, Dataset> split_holdout(const Dataset& ds,
                                                 double train_fraction,
                                                 std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split_holdout: train_fraction must be in (0,1)");
  const std::size_t n = ds.reviews.size();
  if (n < 2) throw std::invalid_argument("split_holdout: need at least 2 reviews");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  auto n_train = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * train_fraction));
  Dataset train{ds.label_space, {}};
  Dataset test{ds.label_space, {}};
  train.reviews.reserve(n_train);
  test.reviews.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i)
    (i < n_train ? train : test).reviews.push_back(ds.reviews[order[i]]);
  return {std::move(train), std::move(test)};
}

}  // namespace mlcorr
