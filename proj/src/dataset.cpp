#include "copml/dataset.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "copml/errors.hpp"

namespace copml {

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        // trim
        std::size_t b = cell.find_first_not_of(" \t\r");
        if (b == std::string::npos) return false;
        std::size_t e = cell.find_last_not_of(" \t\r");
        try {
            std::size_t used = 0;
            double v = std::stod(cell.substr(b, e - b + 1), &used);
            if (used != e - b + 1) return false;
            out.push_back(v);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

} // namespace

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset file: " + path);
    Dataset data;
    std::string line;
    std::size_t lineno = 0;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        if (!parse_row(line, row)) {
            if (first_data_row) continue; // header
            throw Error("row " + std::to_string(lineno) + ": unparseable");
        }
        first_data_row = false;
        if (row.size() < 2)
            throw Error("row " + std::to_string(lineno) + ": need features plus a label");
        double label = row.back();
        if (label != 0.0 && label != 1.0)
            throw Error("row " + std::to_string(lineno) + ": non-binary label " +
                        std::to_string(label));
        row.pop_back();
        if (!data.features.empty() && row.size() != data.dims())
            throw Error("row " + std::to_string(lineno) + ": ragged row (" +
                        std::to_string(row.size()) + " features, expected " +
                        std::to_string(data.dims()) + ")");
        data.features.push_back(std::move(row));
        data.labels.push_back(label);
    }
    if (data.features.empty()) throw Error("dataset file is empty: " + path);
    return data;
}

ColumnRange column_range(const Dataset& data) {
    ColumnRange r;
    r.min.assign(data.dims(), std::numeric_limits<double>::infinity());
    r.max.assign(data.dims(), -std::numeric_limits<double>::infinity());
    for (const auto& row : data.features)
        for (std::size_t j = 0; j < row.size(); ++j) {
            r.min[j] = std::min(r.min[j], row[j]);
            r.max[j] = std::max(r.max[j], row[j]);
        }
    return r;
}

void normalize_with(Dataset& data, const ColumnRange& range) {
    for (auto& row : data.features)
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double span = range.max[j] - range.min[j];
            if (span <= 0) {
                row[j] = 0.0;
            } else {
                double v = 2.0 * (row[j] - range.min[j]) / span - 1.0;
                row[j] = std::clamp(v, -1.0, 1.0);
            }
        }
}

void normalize_minmax(Dataset& data) { normalize_with(data, column_range(data)); }

Dataset make_synthetic(std::size_t samples, std::size_t dims, std::uint64_t seed,
                       double label_noise) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> w(dims);
    double norm = 0.0;
    for (auto& v : w) {
        v = gauss(rng);
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : w) v /= norm;
    Dataset data;
    data.features.assign(samples, std::vector<double>(dims));
    data.labels.assign(samples, 0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        double margin = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
            data.features[i][j] = unif(rng);
            margin += data.features[i][j] * w[j];
        }
        margin += label_noise * gauss(rng);
        data.labels[i] = margin > 0 ? 1.0 : 0.0;
    }
    return data;
}

std::vector<Dataset> split_evenly(const Dataset& data, std::size_t parts) {
    std::vector<Dataset> out(parts);
    const std::size_t m = data.samples();
    std::size_t start = 0;
    for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t count = m / parts + (p < m % parts ? 1 : 0);
        for (std::size_t i = start; i < start + count; ++i) {
            out[p].features.push_back(data.features[i]);
            out[p].labels.push_back(data.labels[i]);
        }
        start += count;
    }
    return out;
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write dataset file: " + path);
    out.precision(17);
    for (std::size_t i = 0; i < data.samples(); ++i) {
        for (double v : data.features[i]) out << v << ',';
        out << data.labels[i] << '\n';
    }
}

} // namespace copml
