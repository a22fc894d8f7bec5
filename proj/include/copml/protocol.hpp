#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "copml/dataset.hpp"
#include "copml/dealer.hpp"
#include "copml/lagrange.hpp"
#include "copml/mpc.hpp"
#include "copml/sigmoid.hpp"
#include "copml/simulator.hpp"

namespace copml {

enum class Scheme { Copml, BaselineBgw, BaselineBh08 };

std::string scheme_name(Scheme s);

struct ProtocolConfig {
    std::size_t n = 4;      // parties
    std::uint32_t t = 1;    // privacy threshold
    std::size_t k = 1;      // parallelization (dataset partitions)
    int r = 1;              // sigmoid polynomial degree
    FieldPrime p{67108859}; // 2^26 - 5
    int l_x = 4;            // data scale bits
    int l_c = 6;            // coefficient scale bits
    int k1 = 21;            // truncation drop bits
    int k2 = 24;            // truncation range bits
    double eta = 1.0;       // learning rate
    std::size_t iterations = 10;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::Copml;
    std::size_t groups = 3; // baseline subgroup count G
    bool random_init = false;
    /// Optional setup optimization: only a group of T+1 parties distributes
    /// encoded-shard shares (enough to recover each X~_i) instead of all N.
    bool subgroup_encoding = false;
    MpcScheme mul_scheme = MpcScheme::BGW;
    double fit_interval = 10.0; // sigmoid fit half-width B
    LatencyModel latency;

    /// Scale of the local-computation output X^T ghat(Xw): l_c + (2r+1) l_x.
    int f_scale() const { return l_c + (2 * r + 1) * l_x; }
    /// Scale of the quantized eta/m constant so one k1-truncation lands the
    /// update back at scale l_x.
    int eta_scale() const { return k1 - (f_scale() - l_x); }
    std::uint64_t threshold() const { return recovery_threshold(std::uint64_t(r), k, t); }

    /// Throws ConfigError naming the violated inequality.
    void validate() const;
};

/// (K, T) presets: case 1 is K = floor((N-1)/3), T = 1; case 2 is
/// T = floor((N-3)/6), K = floor((N+2)/3) - T. Both for r = 1.
struct CaseParams {
    std::size_t k;
    std::uint32_t t;
};
CaseParams case_params(std::size_t n, int which);

/// Observer-side per-iteration record. Counter fields are cumulative
/// maxima over parties, so they are monotone across a run.
struct IterationMetrics {
    std::size_t t = 0;
    double loss = 0.0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::uint64_t bytes_sent = 0;  // max per-party cumulative
    std::uint64_t field_muls = 0;  // max per-party cumulative
    std::uint64_t msgs_sent = 0;   // max per-party cumulative
    std::uint64_t gradient_muls = 0;
};

/// One full multi-party training run over the in-process transport. All
/// per-party state lives in PartyState; cross-party data flows only through
/// the transport; the dealer supplies offline randomness. Metrics and the
/// reconstruct_* observers are the only places the plaintext model appears.
class Simulation {
public:
    Simulation(ProtocolConfig cfg, Dataset train_data, Dataset test_data);

    /// Secret-share the per-owner datasets, encode the data shards (copml),
    /// compute [X^T y], and initialize [w^(0)].
    void setup();

    /// One model update; dispatches on cfg.scheme.
    void iteration();

    /// Gradient phase only (no eta/m scaling, no truncation, no update):
    /// each party's degree-T share of X^T(ghat(Xw) - y) at f_scale.
    /// Consumes one iteration's round tags.
    std::vector<ShareMatrix> gradient_only();

    /// setup() + J iterations, recording metrics after each update.
    std::vector<IterationMetrics> train();

    const ProtocolConfig& config() const { return cfg_; }
    Transport& transport() { return net_; }
    Dealer& dealer() { return dealer_; }
    const std::vector<PartyCost>& costs() const { return costs_; }
    const PolyApprox& approx() const { return approx_; }
    std::size_t completed_iterations() const { return iter_; }

    /// Observers (test/metrics harness only; not part of the protocol).
    FieldMatrix reconstruct_model_field() const;
    std::vector<double> reconstruct_model() const;
    IterationMetrics observe(std::size_t t) const;
    /// Reconstructed decoded gradient X^T(ghat(Xw) - y) of the latest
    /// iteration, before the eta/m scaling and truncation.
    const FieldMatrix& last_pre_truncation_gradient() const;

private:
    struct PartyState {
        std::uint32_t lambda = 0;
        ShareMatrix x_share;                      // full padded [X]_i
        ShareMatrix y_share;                      // [y]_i
        std::vector<ShareMatrix> x_partitions;    // row blocks of x_share
        std::vector<ShareMatrix> y_partitions;    // baselines only
        FieldMatrix x_shard;                      // clear X~_i (copml)
        ShareMatrix xty_share;                    // [X^T y]_i at f_scale
        ShareMatrix w_share;                      // [w^(t)]_i at l_x
    };

    void setup_share_data();
    void setup_encode_dataset();
    void setup_xty();
    void setup_init_model();
    std::vector<ShareMatrix> compute_gradient(const std::string& rt);
    std::vector<ShareMatrix> copml_gradient(const std::string& rt);
    std::vector<ShareMatrix> baseline_gradient(const std::string& rt);
    std::vector<ShareMatrix> baseline_poly_on_shares(std::vector<ShareMatrix> z,
                                                     const std::vector<int>& members,
                                                     const std::string& rt);
    void apply_update(const std::vector<ShareMatrix>& grad_shares, const std::string& rt);
    std::vector<int> all_parties() const;

    ProtocolConfig cfg_;
    Dataset train_data_, test_data_;
    FieldMatrix x_plain_, y_plain_; // quantized padded inputs (observer/setup)
    std::size_t padded_rows_ = 0;
    std::size_t block_rows_ = 0; // padded_rows / K (copml) or / G (baseline)
    Transport net_;
    Dealer dealer_;
    std::vector<std::mt19937_64> party_rngs_;
    CodingPoints pts_;
    PolyApprox approx_;
    std::vector<PartyState> parties_;
    std::vector<PartyCost> costs_;
    std::size_t iter_ = 0;
    bool setup_done_ = false;
    FieldMatrix last_gradient_; // observer copy
};

} // namespace copml
