// Experiment driver: dataset ingestion, protocol configuration, secure
// training runs, sigmoid fitting, scaling benchmarks, transcript replay.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "copml/dataset.hpp"
#include "copml/metrics.hpp"
#include "copml/protocol.hpp"
#include "copml/reference.hpp"
#include "copml/sigmoid.hpp"

namespace {

struct RunOptions {
    copml::ProtocolConfig cfg;
    std::string dataset_path;
    std::string test_path;
    std::string out_dir = ".";
    std::string mul = "bgw";
    int case_id = 0;
    std::size_t synthetic_samples = 0;
    std::size_t synthetic_dims = 2;
    double test_fraction = 0.2;
    bool dump_transcript = false;
    bool float_reference = false;
    std::uint32_t prime = 67108859;
};

void add_run_flags(CLI::App* app, RunOptions& o) {
    app->add_option("--n", o.cfg.n, "number of parties");
    app->add_option("--t", o.cfg.t, "privacy threshold T");
    app->add_option("--k", o.cfg.k, "parallelization parameter K");
    app->add_option("--case", o.case_id, "derive (K,T) preset 1 or 2 from N")
        ->check(CLI::Range(1, 2));
    app->add_option("--r", o.cfg.r, "sigmoid polynomial degree");
    app->add_option("--prime", o.prime, "field prime p");
    app->add_option("--l-x", o.cfg.l_x, "data scale bits");
    app->add_option("--l-c", o.cfg.l_c, "coefficient scale bits");
    app->add_option("--k1", o.cfg.k1, "truncation drop bits");
    app->add_option("--k2", o.cfg.k2, "truncation range bits");
    app->add_option("--eta", o.cfg.eta, "learning rate");
    app->add_option("--iters", o.cfg.iterations, "training iterations J");
    app->add_option("--seed", o.cfg.seed, "master seed");
    app->add_option("--mul", o.mul, "secure multiplication scheme: bgw | bh08")
        ->check(CLI::IsMember({"bgw", "bh08"}));
    app->add_flag("--random-init", o.cfg.random_init, "random w^(0) instead of zero");
    app->add_flag("--subgroup-encoding", o.cfg.subgroup_encoding,
                  "only T+1 parties distribute encoded-shard shares during setup");
    app->add_option("--fit-interval", o.cfg.fit_interval, "sigmoid fit half-width B");
    app->add_option("--dataset", o.dataset_path, "training CSV (features then {0,1} label)")
        ->check(CLI::ExistingFile);
    app->add_option("--test", o.test_path, "held-out test CSV")->check(CLI::ExistingFile);
    app->add_option("--synthetic", o.synthetic_samples,
                    "generate a separable synthetic training set of this many samples");
    app->add_option("--synthetic-dims", o.synthetic_dims, "synthetic feature count");
    app->add_option("--test-fraction", o.test_fraction,
                    "synthetic test-set size relative to the training set");
    app->add_option("--out", o.out_dir, "output directory");
    app->add_flag("--transcript", o.dump_transcript, "also write transcript.txt");
    app->add_flag("--float-reference", o.float_reference,
                  "also train plaintext float logistic regression and report the gap");
}

int run_experiment(RunOptions& o, copml::Scheme scheme) {
    o.cfg.scheme = scheme;
    o.cfg.p = copml::FieldPrime(o.prime);
    o.cfg.mul_scheme = o.mul == "bh08" ? copml::MpcScheme::BH08 : copml::MpcScheme::BGW;
    if (o.case_id != 0) {
        auto cp = copml::case_params(o.cfg.n, o.case_id);
        o.cfg.k = cp.k;
        o.cfg.t = cp.t;
        std::cout << "case " << o.case_id << ": K=" << cp.k << ", T=" << cp.t << "\n";
    }

    copml::Dataset train_set, test_set;
    if (!o.dataset_path.empty()) {
        train_set = copml::load_dataset(o.dataset_path);
        if (!o.test_path.empty()) test_set = copml::load_dataset(o.test_path);
    } else if (o.synthetic_samples > 0) {
        // One pool, one hyperplane: the tail becomes the held-out set.
        const auto m_test = std::size_t(double(o.synthetic_samples) * o.test_fraction);
        auto pool = copml::make_synthetic(o.synthetic_samples + m_test, o.synthetic_dims,
                                          o.cfg.seed);
        for (std::size_t i = 0; i < pool.samples(); ++i) {
            auto& dst = i < o.synthetic_samples ? train_set : test_set;
            dst.features.push_back(pool.features[i]);
            dst.labels.push_back(pool.labels[i]);
        }
    } else {
        std::cerr << "error: provide --dataset or --synthetic\n";
        return 2;
    }
    // Normalize with the training ranges only, so the test set sees the same
    // affine map.
    auto ranges = copml::column_range(train_set);
    copml::normalize_with(train_set, ranges);
    if (test_set.samples() > 0) copml::normalize_with(test_set, ranges);

    copml::Simulation sim(o.cfg, train_set, test_set);
    auto series = sim.train();

    std::filesystem::create_directories(o.out_dir);
    const auto out = [&](const std::string& name) {
        return (std::filesystem::path(o.out_dir) / name).string();
    };
    copml::write_file_atomic(out("metrics.csv"), copml::metrics_csv(series));
    copml::write_file_atomic(out("model.txt"), copml::model_text(sim.reconstruct_model()));
    std::string summary = copml::summary_text(sim.config(), series);
    if (o.float_reference) {
        auto wf = copml::train_logistic_float(train_set, o.cfg.eta, o.cfg.iterations);
        std::ostringstream extra;
        extra.precision(10);
        extra << "float_train_acc: " << copml::accuracy(train_set, wf) << '\n';
        if (test_set.samples() > 0)
            extra << "float_test_acc: " << copml::accuracy(test_set, wf) << '\n';
        summary += extra.str();
    }
    copml::write_file_atomic(out("summary.txt"), summary);
    if (o.dump_transcript) {
        std::ostringstream ts;
        sim.transport().dump_transcript(ts);
        copml::write_file_atomic(out("transcript.txt"), ts.str());
    }
    std::cout << summary;
    std::cout << "transcript_hash: " << std::hex << sim.transport().transcript_hash()
              << std::dec << "\n";
    return 0;
}

int fit_sigmoid_cmd(int degree, double interval, int grid, int l_c, std::uint32_t prime) {
    auto approx = copml::fit_sigmoid(degree, interval, grid);
    copml::quantize_coeffs(approx, l_c, copml::FieldPrime(prime));
    std::cout.precision(10);
    std::cout << "degree: " << approx.degree << "\ninterval: [-" << interval << ", "
              << interval << "]\ngrid: " << grid << "\n";
    for (std::size_t i = 0; i < approx.real_coeffs.size(); ++i)
        std::cout << "c" << i << ": " << approx.real_coeffs[i]
                  << "  (field: " << approx.field_coeffs[i] << ")\n";
    std::cout << "rms_residual: " << approx.fit_residual << "\nmax_abs_error: "
              << copml::max_abs_error(approx, -interval, interval) << "\n";
    return 0;
}

int bench_cmd(std::vector<std::size_t> ns, std::size_t m, std::size_t d, std::uint64_t seed) {
    std::cout << "n,k,t,setup_bytes_per_party,iter_bytes_per_party,gradient_muls_per_party\n";
    for (std::size_t n : ns) {
        auto cp = copml::case_params(n, 1);
        copml::ProtocolConfig cfg;
        cfg.n = n;
        cfg.k = cp.k;
        cfg.t = cp.t;
        cfg.seed = seed;
        auto data = copml::make_synthetic(m, d, seed);
        copml::normalize_minmax(data);
        copml::Simulation sim(cfg, data, {});
        sim.setup();
        std::uint64_t setup_bytes = 0;
        for (const auto& c : sim.transport().counters())
            setup_bytes = std::max(setup_bytes, c.bytes_sent);
        sim.gradient_only();
        std::uint64_t total_bytes = 0, grad_muls = 0;
        for (const auto& c : sim.transport().counters())
            total_bytes = std::max(total_bytes, c.bytes_sent);
        for (const auto& c : sim.costs()) grad_muls = std::max(grad_muls, c.gradient_muls);
        std::cout << n << ',' << cfg.k << ',' << cfg.t << ',' << setup_bytes << ','
                  << total_bytes - setup_bytes << ',' << grad_muls << '\n';
    }
    return 0;
}

int replay_cmd(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return 2;
    }
    auto records = copml::parse_transcript(in);
    std::map<int, std::uint64_t> bytes_by_sender;
    std::uint64_t total = 0;
    for (const auto& r : records) {
        bytes_by_sender[r.from] += r.bytes;
        total += r.bytes;
    }
    std::cout << "messages: " << records.size() << "\ntotal_bytes: " << total << "\n";
    for (const auto& [from, b] : bytes_by_sender)
        std::cout << "party " << from << " bytes_sent: " << b << "\n";
    std::cout << "transcript_hash: " << std::hex << copml::transcript_digest(records)
              << std::dec << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure collaborative logistic regression simulator"};
    app.require_subcommand(1);

    RunOptions train_opt, base_opt;
    auto* train = app.add_subcommand("train", "run the coded secure training protocol");
    add_run_flags(train, train_opt);
    auto* baseline = app.add_subcommand("baseline", "run a subgroup MPC baseline");
    add_run_flags(baseline, base_opt);
    std::string base_scheme = "bgw";
    baseline->add_option("--scheme", base_scheme, "baseline flavor: bgw | bh08")
        ->check(CLI::IsMember({"bgw", "bh08"}));
    baseline->add_option("--groups", base_opt.cfg.groups, "subgroup count G");

    int fs_degree = 1, fs_grid = 1000, fs_lc = 6;
    double fs_interval = 10.0;
    std::uint32_t fs_prime = 67108859;
    auto* fit = app.add_subcommand("fit-sigmoid", "least-squares polynomial sigmoid fit");
    fit->add_option("--r", fs_degree, "polynomial degree");
    fit->add_option("--interval", fs_interval, "fit half-width B");
    fit->add_option("--grid", fs_grid, "fit grid points");
    fit->add_option("--l-c", fs_lc, "coefficient scale bits");
    fit->add_option("--prime", fs_prime, "field prime");

    std::vector<std::size_t> bench_ns{7, 13, 25};
    std::size_t bench_m = 120, bench_d = 4;
    std::uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "communication/computation scaling sweep");
    bench->add_option("--n-list", bench_ns, "party counts to sweep");
    bench->add_option("--samples", bench_m, "synthetic samples");
    bench->add_option("--dims", bench_d, "synthetic feature count");
    bench->add_option("--seed", bench_seed, "seed");

    std::string replay_path;
    auto* replay = app.add_subcommand("replay-transcript", "summarize a transcript dump");
    replay->add_option("file", replay_path, "transcript file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return run_experiment(train_opt, copml::Scheme::Copml);
        if (baseline->parsed())
            return run_experiment(base_opt, base_scheme == "bh08"
                                                ? copml::Scheme::BaselineBh08
                                                : copml::Scheme::BaselineBgw);
        if (fit->parsed())
            return fit_sigmoid_cmd(fs_degree, fs_interval, fs_grid, fs_lc, fs_prime);
        if (bench->parsed()) return bench_cmd(bench_ns, bench_m, bench_d, bench_seed);
        if (replay->parsed()) return replay_cmd(replay_path);
    } catch (const copml::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
