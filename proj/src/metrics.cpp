#include "copml/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "copml/errors.hpp"

namespace copml {

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out << content;
        if (!out.flush()) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("rename failed: " + tmp + " -> " + path);
}

std::string metrics_csv(const std::vector<IterationMetrics>& series) {
    std::ostringstream os;
    os.precision(10);
    os << "t,loss,train_acc,test_acc,bytes,field_muls\n";
    for (const auto& m : series)
        os << m.t << ',' << m.loss << ',' << m.train_accuracy << ',' << m.test_accuracy << ','
           << m.bytes_sent << ',' << m.field_muls << '\n';
    return os.str();
}

std::string model_text(const std::vector<double>& w) {
    std::ostringstream os;
    os.precision(17);
    for (double v : w) os << v << '\n';
    return os.str();
}

std::string summary_text(const ProtocolConfig& cfg,
                         const std::vector<IterationMetrics>& series) {
    std::ostringstream os;
    os << "scheme: " << scheme_name(cfg.scheme) << '\n'
       << "N: " << cfg.n << '\n'
       << "T: " << cfg.t << '\n'
       << "K: " << cfg.k << '\n'
       << "r: " << cfg.r << '\n'
       << "p: " << cfg.p.p << '\n'
       << "l_x: " << cfg.l_x << '\n'
       << "l_c: " << cfg.l_c << '\n'
       << "k1: " << cfg.k1 << '\n'
       << "k2: " << cfg.k2 << '\n'
       << "eta: " << cfg.eta << '\n'
       << "iterations: " << cfg.iterations << '\n'
       << "seed: " << cfg.seed << '\n';
    if (cfg.scheme != Scheme::Copml) os << "groups: " << cfg.groups << '\n';
    if (!series.empty()) {
        const auto& last = series.back();
        os << "final_loss: " << last.loss << '\n'
           << "final_train_acc: " << last.train_accuracy << '\n'
           << "final_test_acc: " << last.test_accuracy << '\n'
           << "max_party_bytes: " << last.bytes_sent << '\n'
           << "max_party_field_muls: " << last.field_muls << '\n';
    }
    return os.str();
}

} // namespace copml
