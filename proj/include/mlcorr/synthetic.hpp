#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlcorr/dataset.hpp"
#include "mlcorr/rng.hpp"

namespace mlcorr {

// Correlated-corpus generator. Labels are paired (0,1), (2,3), ...; a
// designated pair co-occurs with probability correlation_strength. Each
// label owns label_keyword_count distinctive tokens and reviews draw
// their text from the keyword pools of their labels.
//
// The empirical mean label count tracks mean_labels_per_review to within
// a few percent once mean_labels_per_review >= 1 + correlation_strength;
// below that the pair structure forces more labels than requested and the
// generator saturates.
struct SynthSpec {
  std::size_t num_labels = 10;
  std::size_t num_reviews = 1000;
  double mean_labels_per_review = 3.0;  // paper corpus: mean 3.06, std 1.3
  std::size_t label_keyword_count = 20;
  double correlation_strength = 0.5;
  std::uint64_t seed = 1;

  void validate() const {
    if (num_labels < 2)
      throw std::invalid_argument("SynthSpec: num_labels must be >= 2");
    if (num_reviews == 0)
      throw std::invalid_argument("SynthSpec: num_reviews must be positive");
    if (label_keyword_count == 0)
      throw std::invalid_argument("SynthSpec: label_keyword_count must be positive");
    if (!(mean_labels_per_review >= 1.0 &&
          mean_labels_per_review <= static_cast<double>(num_labels)))
      throw std::invalid_argument(
          "SynthSpec: mean_labels_per_review must be in [1, num_labels]");
    if (!(correlation_strength >= 0.0 && correlation_strength <= 1.0))
      throw std::invalid_argument(
          "SynthSpec: correlation_strength must be in [0,1]");
  }
};

namespace detail {

// base-4 encoding over consonants so tokens survive stemming unchanged
inline std::string consonant_code(std::size_t value, std::size_t width) {
  static const char digits[] = {'b', 'd', 'g', 'k'};
  std::string out(width, 'b');
  for (std::size_t i = width; i-- > 0;) {
    out[i] = digits[value % 4];
    value /= 4;
  }
  return out;
}

inline std::size_t code_width(std::size_t count) {
  std::size_t w = 1, cap = 4;
  while (cap < count) {
    cap *= 4;
    ++w;
  }
  return w;
}

}  // namespace detail

inline std::string synth_keyword(std::size_t label, std::size_t keyword,
                                 const SynthSpec& spec) {
  return "z" + detail::consonant_code(label, detail::code_width(spec.num_labels)) +
         "w" +
         detail::consonant_code(keyword,
                                detail::code_width(spec.label_keyword_count));
}

inline std::optional<std::size_t> synth_partner(std::size_t label,
                                                std::size_t num_labels) {
  std::size_t paired = num_labels - num_labels % 2;
  if (label >= paired) return std::nullopt;
  return label ^ 1;
}

inline Dataset generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  const std::size_t L = spec.num_labels;
  const double corr = spec.correlation_strength;

  // partner adds overshoot the per-review label-count target by roughly
  // corr/2, so the target mean is lowered to compensate
  double mean_adj = spec.mean_labels_per_review - 0.5 * corr;
  if (mean_adj < 1.0) mean_adj = 1.0;
  const double p_extra = (mean_adj - 1.0) / static_cast<double>(L - 1);

  std::vector<std::string> names;
  names.reserve(L);
  const std::size_t name_width = detail::code_width(L);
  for (std::size_t i = 0; i < L; ++i)
    names.push_back("label" + detail::consonant_code(i, name_width));

  Dataset ds{LabelSpace(names), {}};
  ds.reviews.reserve(spec.num_reviews);

  constexpr std::size_t kTokensPerLabel = 4;
  constexpr std::size_t kFillerTokens = 6;
  constexpr std::size_t kFillerPool = 30;
  constexpr double kContamination = 0.1;
  const std::size_t filler_width = detail::code_width(kFillerPool);

  std::size_t id_width = 1;
  for (std::size_t v = spec.num_reviews; v >= 10; v /= 10) ++id_width;

  Rng rng(spec.seed);
  std::vector<std::size_t> remaining;
  std::vector<double> weights;
  std::vector<std::string> tokens;

  for (std::size_t m = 0; m < spec.num_reviews; ++m) {
    // label-count target: 1 + Binomial(L-1, p_extra), mean mean_adj
    std::size_t n_target = 1;
    for (std::size_t t = 0; t + 1 < L; ++t)
      if (rng.bernoulli(p_extra)) ++n_target;

    remaining.clear();
    for (std::size_t i = 0; i < L; ++i) remaining.push_back(i);
    LabelSet labels;
    auto take = [&](std::size_t lbl) {
      labels.push_back(lbl);
      for (std::size_t& r : remaining)
        if (r == lbl) {
          r = remaining.back();
          remaining.pop_back();
          break;
        }
    };
    while (labels.size() < n_target && !remaining.empty()) {
      std::size_t pick = remaining[rng.index(remaining.size())];
      take(pick);
      auto partner = synth_partner(pick, L);
      if (partner && rng.bernoulli(corr)) {
        bool present = false;
        for (std::size_t lbl : labels) present |= (lbl == *partner);
        if (!present) take(*partner);
      }
    }
    normalize_label_set(labels);

    // uneven per-label token budgets leave some labels weakly evidenced
    weights.clear();
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      double u = rng.uniform();
      weights.push_back(u * u + 1e-3);
      weight_sum += weights.back();
    }

    tokens.clear();
    const std::size_t budget = kTokensPerLabel * labels.size();
    for (std::size_t t = 0; t < budget; ++t) {
      std::size_t lbl;
      if (rng.bernoulli(kContamination)) {
        lbl = rng.index(L);
      } else {
        double target = rng.uniform() * weight_sum;
        std::size_t pos = 0;
        while (pos + 1 < weights.size() && target >= weights[pos]) {
          target -= weights[pos];
          ++pos;
        }
        lbl = labels[pos];
      }
      tokens.push_back(synth_keyword(lbl, rng.index(spec.label_keyword_count), spec));
    }
    for (std::size_t t = 0; t < kFillerTokens; ++t)
      tokens.push_back("x" + detail::consonant_code(rng.index(kFillerPool),
                                                    filler_width));
    rng.shuffle(tokens);

    std::string text;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t) text.push_back(' ');
      text += tokens[t];
    }

    std::string idx = std::to_string(m);
    ds.reviews.push_back(Review{
        "synth-" + std::string(id_width - idx.size(), '0') + idx,
        std::move(text), std::move(labels)});
  }
  return ds;
}

}  // namespace mlcorr
