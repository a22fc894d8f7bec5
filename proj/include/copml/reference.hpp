#pragma once

#include <vector>

#include "copml/dataset.hpp"

namespace copml {

/// Plaintext floating-point logistic regression: full-batch gradient descent
/// from w = 0 with the exact sigmoid. The accuracy yardstick for the secure
/// runs.
std::vector<double> train_logistic_float(const Dataset& data, double eta, std::size_t iters);

/// Mean cross-entropy loss of w on the dataset (predictions clamped away
/// from 0 and 1).
double cross_entropy_loss(const Dataset& data, const std::vector<double>& w);

/// Fraction of samples classified correctly by sign(x . w).
double accuracy(const Dataset& data, const std::vector<double>& w);

} // namespace copml
