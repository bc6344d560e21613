#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mlcorr/dataset.hpp"

namespace mlcorr {

template <typename T>
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<T> data;  // row-major

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n_, T init = T{}) : n(n_), data(n_ * n_, init) {}

  T& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
  const T& at(std::size_t i, std::size_t j) const { return data[i * n + j]; }

  bool operator==(const SquareMatrix&) const = default;
};

struct CooccurrenceCounts {
  SquareMatrix<std::int64_t> counts;  // symmetric, zero diagonal
  std::int64_t num_reviews = 0;

  std::size_t num_labels() const { return counts.n; }
};

// Pairwise label prior: Laplace-smoothed row-normalized co-occurrence,
// symmetrized by the geometric mean of the two row-normalized cells.
// Off-diagonal entries are strictly positive; the diagonal is 0.
struct CorrelationMatrix {
  SquareMatrix<double> probs;

  std::size_t num_labels() const { return probs.n; }
  double at(std::size_t i, std::size_t j) const { return probs.at(i, j); }

  bool operator==(const CorrelationMatrix&) const = default;
};

// counts[i][j] = number of reviews whose label set contains both i and j
inline CooccurrenceCounts count_cooccurrences(
    const std::vector<LabelSet>& reviews, std::size_t num_labels) {
  CooccurrenceCounts out;
  out.counts = SquareMatrix<std::int64_t>(num_labels, 0);
  out.num_reviews = static_cast<std::int64_t>(reviews.size());
  for (const auto& labels : reviews) {
    for (std::size_t a = 0; a < labels.size(); ++a) {
      if (labels[a] >= num_labels)
        throw std::out_of_range("count_cooccurrences: label index out of range");
      for (std::size_t b = a + 1; b < labels.size(); ++b) {
        ++out.counts.at(labels[a], labels[b]);
        ++out.counts.at(labels[b], labels[a]);
      }
    }
  }
  return out;
}

// rownorm[i][j] = (counts[i][j] + laplace) / sum_{k != i}(counts[i][k] + laplace);
// each row sums to 1 over its off-diagonal entries, the diagonal is 0
inline SquareMatrix<double> row_normalized(const CooccurrenceCounts& counts,
                                           double laplace) {
  const std::size_t n = counts.num_labels();
  if (n < 2) throw std::invalid_argument("row_normalized: need at least 2 labels");
  if (!(laplace > 0.0))
    throw std::invalid_argument("row_normalized: laplace must be positive");
  SquareMatrix<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double denom = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) denom += static_cast<double>(counts.counts.at(i, k)) + laplace;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        out.at(i, j) =
            (static_cast<double>(counts.counts.at(i, j)) + laplace) / denom;
  }
  return out;
}

inline CorrelationMatrix build_correlation(const CooccurrenceCounts& counts,
                                           double laplace = 1.0) {
  SquareMatrix<double> rownorm = row_normalized(counts, laplace);
  const std::size_t n = rownorm.n;
  CorrelationMatrix corr;
  corr.probs = SquareMatrix<double>(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double g = std::sqrt(rownorm.at(i, j) * rownorm.at(j, i));
      corr.probs.at(i, j) = g;  // mirrored, so symmetry is exact
      corr.probs.at(j, i) = g;
    }
  }
  return corr;
}

inline CorrelationMatrix correlation_from_dataset(const Dataset& ds,
                                                  double laplace = 1.0) {
  std::vector<LabelSet> sets;
  sets.reserve(ds.reviews.size());
  for (const auto& r : ds.reviews) sets.push_back(r.labels);
  return build_correlation(count_cooccurrences(sets, ds.num_labels()), laplace);
}

}  // namespace mlcorr
