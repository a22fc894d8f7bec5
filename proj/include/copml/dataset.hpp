#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace copml {

/// Real-valued dataset: one row per sample, binary labels.
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<double> labels; // 0.0 or 1.0

    std::size_t samples() const { return features.size(); }
    std::size_t dims() const { return features.empty() ? 0 : features[0].size(); }
};

/// CSV ingestion: d numeric feature columns then one {0,1} label column,
/// optional header. Throws with the offending row number on ragged rows or
/// non-binary labels.
Dataset load_dataset(const std::string& path);

/// Min-max normalize each feature column to [-1, 1] in place. Constant
/// columns map to 0.
void normalize_minmax(Dataset& data);

/// Apply a previously computed column range (so test data uses the training
/// normalization).
struct ColumnRange {
    std::vector<double> min, max;
};
ColumnRange column_range(const Dataset& data);
void normalize_with(Dataset& data, const ColumnRange& range);

/// Linearly separable synthetic binary classification data (labels from a
/// random hyperplane with a small noise margin). Deterministic given seed.
Dataset make_synthetic(std::size_t samples, std::size_t dims, std::uint64_t seed,
                       double label_noise = 0.1);

/// Split a dataset into `parts` nearly equal consecutive slices.
std::vector<Dataset> split_evenly(const Dataset& data, std::size_t parts);

void save_csv(const Dataset& data, const std::string& path);

} // namespace copml
