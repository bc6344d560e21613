#pragma once

// Multi-label text classification with a pairwise label-correlation prior:
// independent per-label linear models, a co-occurrence matrix mined from a
// corpus, and top-J/top-K pair-selection joint inference.

#include "mlcorr/correlation_matrix.hpp"
#include "mlcorr/dataset.hpp"
#include "mlcorr/evaluation.hpp"
#include "mlcorr/inference.hpp"
#include "mlcorr/io.hpp"
#include "mlcorr/linear_model.hpp"
#include "mlcorr/porter_stemmer.hpp"
#include "mlcorr/rng.hpp"
#include "mlcorr/synthetic.hpp"
#include "mlcorr/text_pipeline.hpp"

namespace mlcorr {
inline constexpr const char* kVersion = "0.1.0";
}
