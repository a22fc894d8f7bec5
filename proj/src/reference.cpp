#include "copml/reference.hpp"

#include <cmath>

#include "copml/errors.hpp"
#include "copml/sigmoid.hpp"

namespace copml {

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) s += x[j] * w[j];
    return s;
}

} // namespace

std::vector<double> train_logistic_float(const Dataset& data, double eta, std::size_t iters) {
    if (data.samples() == 0) throw Error("train_logistic_float: empty dataset");
    const std::size_t m = data.samples(), d = data.dims();
    std::vector<double> w(d, 0.0);
    std::vector<double> grad(d);
    for (std::size_t t = 0; t < iters; ++t) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double e = sigmoid(dot(data.features[i], w)) - data.labels[i];
            for (std::size_t j = 0; j < d; ++j) grad[j] += e * data.features[i][j];
        }
        for (std::size_t j = 0; j < d; ++j) w[j] -= eta / double(m) * grad[j];
    }
    return w;
}

double cross_entropy_loss(const Dataset& data, const std::vector<double>& w) {
    const double eps = 1e-12;
    double loss = 0.0;
    for (std::size_t i = 0; i < data.samples(); ++i) {
        double yhat = sigmoid(dot(data.features[i], w));
        yhat = std::min(1.0 - eps, std::max(eps, yhat));
        loss -= data.labels[i] * std::log(yhat) + (1.0 - data.labels[i]) * std::log(1.0 - yhat);
    }
    return loss / double(data.samples());
}

double accuracy(const Dataset& data, const std::vector<double>& w) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.samples(); ++i) {
        const int pred = dot(data.features[i], w) >= 0.0 ? 1 : 0;
        if (pred == int(data.labels[i])) ++correct;
    }
    return double(correct) / double(data.samples());
}

} // namespace copml
