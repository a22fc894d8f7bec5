#pragma once

#include <string>
#include <vector>

#include "copml/protocol.hpp"

namespace copml {

/// Atomic text output: write to path + ".tmp", then rename. Errors never
/// leave a partial file at the destination.
void write_file_atomic(const std::string& path, const std::string& content);

/// Metrics CSV, schema v1: t,loss,train_acc,test_acc,bytes,field_muls.
std::string metrics_csv(const std::vector<IterationMetrics>& series);

/// Final model, one coefficient per line.
std::string model_text(const std::vector<double>& w);

/// Human-readable run summary: config echo (including seed) plus final
/// metrics.
std::string summary_text(const ProtocolConfig& cfg, const std::vector<IterationMetrics>& series);

} // namespace copml
