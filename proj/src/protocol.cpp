#include "copml/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "copml/reference.hpp"
#include "copml/wire.hpp"

namespace copml {

namespace {

constexpr std::uint64_t kSeedMix = 0x9e3779b97f4a7c15ULL;

/// Row counts per owner/partition: near-equal consecutive slices.
std::vector<std::size_t> slice_rows(std::size_t total, std::size_t parts) {
    std::vector<std::size_t> out(parts);
    for (std::size_t i = 0; i < parts; ++i) out[i] = total / parts + (i < total % parts ? 1 : 0);
    return out;
}

FieldMatrix row_block(const FieldMatrix& m, std::size_t start, std::size_t count) {
    FieldMatrix out(count, m.cols(), m.prime(), m.scale());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(start + i, j);
    return out;
}

} // namespace

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::Copml: return "copml";
    case Scheme::BaselineBgw: return "baseline_bgw";
    case Scheme::BaselineBh08: return "baseline_bh08";
    }
    return "?";
}

void ProtocolConfig::validate() const {
    if (n < 2) throw ConfigError("config: need at least 2 parties");
    if (t < 1) throw ConfigError("config: privacy threshold T must be >= 1");
    if (k < 1) throw ConfigError("config: parallelization K must be >= 1");
    if (r < 1) throw ConfigError("config: polynomial degree r must be >= 1");
    if (l_x < 1 || l_c < 1) throw ConfigError("config: scale bits must be >= 1");
    if (k1 <= 0 || k1 >= k2) throw ConfigError("config: need 0 < k1 < k2");
    if (k2 >= 31 || (std::uint64_t(1) << (k2 + 1)) >= p.p)
        throw ConfigError("config: truncation range violated: 2^(k2+1) < p requires k2 < " +
                          std::to_string(std::uint32_t(std::log2(double(p.p))) - 1) +
                          " for p = " + std::to_string(p.p));
    if (eta < 0) throw ConfigError("config: learning rate must be >= 0");
    if (scheme == Scheme::Copml) {
        const std::uint64_t need = threshold();
        if (n < need)
            throw ConfigError("config: N >= (2r+1)(K+T-1)+1 violated: N = " + std::to_string(n) +
                              " < " + std::to_string(need));
        if (k + t + n >= p.p)
            throw ConfigError("config: interpolation points need p > K+T+N");
    } else {
        if (groups < 1) throw ConfigError("config: need at least one subgroup");
        if (groups * (2 * std::size_t(t) + 1) > n)
            throw ConfigError("config: G(2T+1) <= N violated: " + std::to_string(groups) + "*" +
                              std::to_string(2 * t + 1) + " > " + std::to_string(n));
    }
}

CaseParams case_params(std::size_t n, int which) {
    if (n < 4) throw ConfigError("case_params: need N >= 4");
    CaseParams out{};
    if (which == 1) {
        out.k = (n - 1) / 3;
        out.t = 1;
    } else if (which == 2) {
        out.t = std::uint32_t((n - 3) / 6);
        if (out.t < 1) out.t = 1;
        const std::size_t k = (n + 2) / 3;
        if (k <= out.t) throw ConfigError("case_params: case 2 needs larger N");
        out.k = k - out.t;
    } else {
        throw ConfigError("case_params: case must be 1 or 2");
    }
    const std::uint64_t need = recovery_threshold(1, out.k, out.t);
    if (n < need)
        throw ConfigError("case_params: derived (K,T) violates N >= 3(K+T-1)+1: N = " +
                          std::to_string(n) + " < " + std::to_string(need));
    return out;
}

Simulation::Simulation(ProtocolConfig cfg, Dataset train_data, Dataset test_data)
    : cfg_(cfg), train_data_(std::move(train_data)), test_data_(std::move(test_data)),
      net_(int(cfg.n), cfg.latency), dealer_(cfg.p, cfg.t, cfg.seed ^ kSeedMix) {
    cfg_.validate();
    if (train_data_.samples() == 0) throw ConfigError("config: empty training set");

    const QuantParams q{cfg_.l_x, cfg_.p};
    FieldMatrix x = quantize(train_data_.features, q);
    FieldMatrix y = quantize_vector(train_data_.labels, q);

    const std::size_t blocks = cfg_.scheme == Scheme::Copml ? cfg_.k : cfg_.groups;
    padded_rows_ = (x.rows() + blocks - 1) / blocks * blocks;
    block_rows_ = padded_rows_ / blocks;
    x_plain_ = FieldMatrix(padded_rows_, x.cols(), cfg_.p, cfg_.l_x);
    y_plain_ = FieldMatrix(padded_rows_, 1, cfg_.p, cfg_.l_x);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) x_plain_.at(i, j) = x.at(i, j);
        y_plain_[i] = y[i];
    }

    party_rngs_.reserve(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i)
        party_rngs_.emplace_back(cfg_.seed + kSeedMix * (i + 1));

    if (cfg_.scheme == Scheme::Copml) pts_ = make_coding_points(cfg_.k, cfg_.t, cfg_.n, cfg_.p);

    approx_ = fit_sigmoid(cfg_.r, cfg_.fit_interval, 1000);
    quantize_coeffs(approx_, cfg_.l_c, cfg_.p);

    parties_.resize(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) parties_[i].lambda = std::uint32_t(i + 1);
    costs_.resize(cfg_.n);
}

std::vector<int> Simulation::all_parties() const {
    std::vector<int> ids(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) ids[i] = int(i);
    return ids;
}

void Simulation::setup() {
    if (setup_done_) throw Error("setup already run");
    setup_share_data();
    if (cfg_.scheme == Scheme::Copml) setup_encode_dataset();
    setup_xty();
    setup_init_model();
    setup_done_ = true;
}

void Simulation::setup_share_data() {
    const auto lambdas = default_points(cfg_.n);
    const std::size_t d = x_plain_.cols();
    const auto owner_rows = slice_rows(padded_rows_, cfg_.n);

    // Every owner Shamir-shares its slice of (X, y) to every other party:
    // the N(N-1)-message distribution round.
    std::vector<std::vector<ShareMatrix>> x_sh(cfg_.n), y_sh(cfg_.n);
    std::size_t start = 0;
    for (std::size_t j = 0; j < cfg_.n; ++j) {
        x_sh[j] = share(row_block(x_plain_, start, owner_rows[j]), cfg_.t, lambdas,
                        party_rngs_[j]);
        y_sh[j] = share(row_block(y_plain_, start, owner_rows[j]), cfg_.t, lambdas,
                        party_rngs_[j]);
        start += owner_rows[j];
        for (std::size_t i = 0; i < cfg_.n; ++i) {
            if (i == j) continue;
            net_.send(int(j), int(i), serialize_pair(x_sh[j][i], y_sh[j][i]), "setup/data");
        }
    }
    net_.advance_round();

    for (std::size_t i = 0; i < cfg_.n; ++i) {
        PartyState& ps = parties_[i];
        ps.x_share = ShareMatrix{ps.lambda, cfg_.t,
                                 FieldMatrix(padded_rows_, d, cfg_.p, cfg_.l_x)};
        ps.y_share = ShareMatrix{ps.lambda, cfg_.t,
                                 FieldMatrix(padded_rows_, 1, cfg_.p, cfg_.l_x)};
        std::size_t row = 0;
        for (std::size_t j = 0; j < cfg_.n; ++j) {
            std::pair<ShareMatrix, ShareMatrix> piece =
                i == j ? std::make_pair(x_sh[j][i], y_sh[j][i])
                       : deserialize_pair(net_.recv(int(i), int(j), "setup/data"));
            for (std::size_t rr = 0; rr < piece.first.values.rows(); ++rr) {
                for (std::size_t c = 0; c < d; ++c)
                    ps.x_share.values.at(row + rr, c) = piece.first.values.at(rr, c);
                ps.y_share.values[row + rr] = piece.second.values[rr];
            }
            row += piece.first.values.rows();
        }
        const std::size_t blocks = cfg_.scheme == Scheme::Copml ? cfg_.k : cfg_.groups;
        for (std::size_t b = 0; b < blocks; ++b)
            ps.x_partitions.push_back(ShareMatrix{
                ps.lambda, cfg_.t, row_block(ps.x_share.values, b * block_rows_, block_rows_)});
    }
}

void Simulation::setup_encode_dataset() {
    const auto lambdas = default_points(cfg_.n);
    const std::size_t d = x_plain_.cols();
    auto noise = dealer_.noise_shares(block_rows_, d, cfg_.t, cfg_.l_x, lambdas);

    // Each encoding party combines its shares at every alpha and routes the
    // share of X~_j to party j, who reconstructs its clear shard. Recovery
    // needs only T+1 shares, so with subgroup_encoding just the first T+1
    // parties distribute.
    const std::size_t encoders = cfg_.subgroup_encoding ? cfg_.t + 1 : cfg_.n;
    std::vector<std::vector<ShareMatrix>> enc(cfg_.n);
    for (std::size_t i = 0; i < encoders; ++i) {
        std::vector<ShareMatrix> my_noise;
        for (std::size_t c = 0; c < cfg_.t; ++c) my_noise.push_back(noise[c][i]);
        enc[i] = encode_dataset_shares(parties_[i].x_partitions, my_noise, pts_);
        costs_[i].add(std::uint64_t(cfg_.n) * (cfg_.k + cfg_.t) * block_rows_ * d, false);
        for (std::size_t j = 0; j < cfg_.n; ++j) {
            if (j == i) continue;
            net_.send(int(i), int(j), serialize(enc[i][j]), "setup/encode");
        }
    }
    net_.advance_round();
    for (std::size_t j = 0; j < cfg_.n; ++j) {
        std::vector<ShareMatrix> opening;
        for (std::size_t i = 0; i <= cfg_.t; ++i)
            opening.push_back(i == j ? enc[i][j]
                                     : deserialize_share(net_.recv(int(j), int(i),
                                                                   "setup/encode")));
        parties_[j].x_shard = reconstruct(opening);
        costs_[j].add(std::uint64_t(cfg_.t + 1) * block_rows_ * d, false);
    }
}

void Simulation::setup_xty() {
    std::vector<ShareMatrix> xs, ys;
    for (auto& ps : parties_) {
        xs.push_back(ps.x_share);
        ys.push_back(ps.y_share);
    }
    auto xty = mul_secure(xs, ys, MulKind::TransposeATimesB, cfg_.mul_scheme, dealer_, net_,
                          all_parties(), party_rngs_, "setup/xty", &costs_, false);
    // Align X^T y (scale 2 l_x) with the local-computation scale.
    const int shift = cfg_.f_scale() - 2 * cfg_.l_x;
    const std::uint32_t c = pow_mod(2, std::uint64_t(shift), cfg_.p.p);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        parties_[i].xty_share = mul_const_local(xty[i], c, shift);
        costs_[i].add(xty[i].values.size(), false);
    }
}

void Simulation::setup_init_model() {
    const std::size_t d = x_plain_.cols();
    if (cfg_.random_init) {
        auto w = dealer_.shared_uniform(d, 1, std::uint32_t(1) << cfg_.l_x, cfg_.l_x,
                                        default_points(cfg_.n));
        for (std::size_t i = 0; i < cfg_.n; ++i) parties_[i].w_share = w[i];
    } else {
        for (std::size_t i = 0; i < cfg_.n; ++i)
            parties_[i].w_share = ShareMatrix{parties_[i].lambda, cfg_.t,
                                              FieldMatrix(d, 1, cfg_.p, cfg_.l_x)};
    }
}

std::vector<ShareMatrix> Simulation::compute_gradient(const std::string& rt) {
    auto grad = cfg_.scheme == Scheme::Copml ? copml_gradient(rt) : baseline_gradient(rt);
    // Observer copy for the test harness; not protocol state.
    std::vector<ShareMatrix> probe(grad.begin(), grad.begin() + cfg_.t + 1);
    last_gradient_ = reconstruct(probe);
    return grad;
}

std::vector<ShareMatrix> Simulation::copml_gradient(const std::string& rt) {
    const auto lambdas = default_points(cfg_.n);
    const std::size_t d = x_plain_.cols();
    const std::size_t need = std::size_t(cfg_.threshold());

    // (a) Encode the model: same w share at every beta_k, fresh dealer noise
    // at the mask points; route the share of w~_j to party j.
    auto noise = dealer_.noise_shares(d, 1, cfg_.t, cfg_.l_x, lambdas);
    std::vector<std::vector<ShareMatrix>> enc(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        std::vector<ShareMatrix> my_noise;
        for (std::size_t c = 0; c < cfg_.t; ++c) my_noise.push_back(noise[c][i]);
        enc[i] = encode_model_shares(parties_[i].w_share, my_noise, pts_, cfg_.k);
        costs_[i].add(std::uint64_t(cfg_.n) * (cfg_.k + cfg_.t) * d, false);
        for (std::size_t j = 0; j < cfg_.n; ++j) {
            if (j == i) continue;
            net_.send(int(i), int(j), serialize(enc[i][j]), rt + "/wenc");
        }
    }
    net_.advance_round();

    // (b) Recover the clear shard w~_i and run the local computation
    // f(X~_i, w~_i) = X~_i^T ghat(X~_i w~_i).
    std::vector<FieldMatrix> f_local(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        std::vector<ShareMatrix> opening;
        for (std::size_t j = 0; j <= cfg_.t; ++j)
            opening.push_back(j == i ? enc[j][i]
                                     : deserialize_share(net_.recv(int(i), int(j),
                                                                   rt + "/wenc")));
        FieldMatrix w_shard = reconstruct(opening);
        costs_[i].add(std::uint64_t(cfg_.t + 1) * d, false);

        FieldMatrix z = matmul(parties_[i].x_shard, w_shard);
        costs_[i].add(matmul_cost(block_rows_, d, 1), true);
        FieldMatrix g = eval_poly_field(approx_, z);
        costs_[i].add(std::uint64_t(cfg_.r) * z.size(), true);
        f_local[i] = matmul(parties_[i].x_shard.transposed(), g);
        costs_[i].add(matmul_cost(d, block_rows_, 1), true);
    }

    // (c) Re-share f(X~_i, w~_i) and decode from the threshold-many fastest.
    std::vector<std::vector<ShareMatrix>> fsh(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        fsh[i] = share(f_local[i], cfg_.t, lambdas, party_rngs_[i]);
        costs_[i].add(std::uint64_t(cfg_.t + 1) * d * cfg_.n, false);
        for (std::size_t j = 0; j < cfg_.n; ++j) {
            if (j == i) continue;
            net_.send(int(i), int(j), serialize(fsh[i][j]), rt + "/fsh");
        }
    }
    net_.advance_round();

    // All parties must decode from the same alpha subset: decoding mixes the
    // sharing polynomials of the selected f-evaluations, so parties using
    // different subsets would hold shares of inconsistent polynomials. Pick
    // the threshold-many fastest responders as observed at party 0 (its own
    // evaluation is always available to it) and have everyone use that set.
    std::vector<int> set{0};
    for (int s : net_.fastest_subset(0, rt + "/fsh", need - 1)) set.push_back(s);

    std::vector<ShareMatrix> grad(cfg_.n);
    for (std::size_t j = 0; j < cfg_.n; ++j) {
        std::vector<ShareMatrix> comp;
        std::vector<std::uint32_t> alpha_points;
        for (int s : set) {
            comp.push_back(s == int(j)
                               ? fsh[j][j]
                               : deserialize_share(net_.recv(int(j), s, rt + "/fsh")));
            alpha_points.push_back(pts_.alphas[std::size_t(s)]);
        }
        auto subgrads = decode_gradient_shares(comp, alpha_points, pts_, std::uint64_t(cfg_.r),
                                               cfg_.k, cfg_.t);
        costs_[j].add(std::uint64_t(cfg_.k) * need * d, false);
        // (d) Aggregate the K sub-gradients, then subtract [X^T y].
        grad[j] = sub_local(aggregate_subgradients(subgrads), parties_[j].xty_share);
    }
    return grad;
}

std::vector<ShareMatrix> Simulation::baseline_poly_on_shares(std::vector<ShareMatrix> z,
                                                             const std::vector<int>& members,
                                                             const std::string& rt) {
    // ghat on degree-T shares: powers of z via secure multiplication, then a
    // local public-coefficient combination landing at scale l_c + 2r l_x.
    const std::uint32_t p = cfg_.p.p;
    const int zs = z[0].scale();
    const int out_scale = cfg_.l_c + cfg_.r * zs;
    const std::size_t nm = members.size();

    std::vector<std::vector<ShareMatrix>> powers; // powers[k-1] = [z^k]
    powers.push_back(z);
    for (int k = 2; k <= cfg_.r; ++k)
        powers.push_back(mul_secure(powers.back(), z, MulKind::ElementWise, cfg_.mul_scheme,
                                    dealer_, net_, members, party_rngs_,
                                    rt + "/pow:" + std::to_string(k), &costs_, true));

    std::vector<ShareMatrix> out(nm);
    FieldMatrix c0(z[0].values.rows(), z[0].values.cols(), cfg_.p, out_scale);
    const std::uint32_t c0v =
        mul_mod(approx_.field_coeffs[0], pow_mod(2, std::uint64_t(cfg_.r) * zs, p), p);
    for (std::size_t i = 0; i < c0.size(); ++i) c0[i] = c0v;

    for (std::size_t i = 0; i < nm; ++i) {
        ShareMatrix acc;
        for (int k = 1; k <= cfg_.r; ++k) {
            const std::uint32_t coeff =
                mul_mod(approx_.field_coeffs[std::size_t(k)],
                        pow_mod(2, std::uint64_t(cfg_.r - k) * zs, p), p);
            const int cs = cfg_.l_c + (cfg_.r - k) * zs;
            ShareMatrix term = mul_const_local(powers[std::size_t(k - 1)][i], coeff, cs);
            costs_[std::size_t(members[i])].add(term.values.size(), true);
            acc = k == 1 ? term : add_local(acc, term);
        }
        out[i] = add_public_local(acc, c0);
    }
    return out;
}

std::vector<ShareMatrix> Simulation::baseline_gradient(const std::string& rt) {
    const auto lambdas = default_points(cfg_.n);
    const std::size_t d = x_plain_.cols();
    const std::size_t gsize = 2 * std::size_t(cfg_.t) + 1;

    // Per-party aggregated sub-gradient shares, summed over subgroups.
    std::vector<ShareMatrix> agg(cfg_.n);
    for (std::size_t g = 0; g < cfg_.groups; ++g) {
        const std::string gt = rt + "/g" + std::to_string(g);
        std::vector<int> members;
        for (std::size_t i = 0; i < gsize; ++i) members.push_back(int(g * gsize + i));

        std::vector<ShareMatrix> xg, wg;
        for (int m : members) {
            xg.push_back(parties_[std::size_t(m)].x_partitions[g]);
            wg.push_back(parties_[std::size_t(m)].w_share);
        }
        auto z = mul_secure(xg, wg, MulKind::MatProduct, cfg_.mul_scheme, dealer_, net_,
                            members, party_rngs_, gt + "/xw", &costs_, true);
        auto gh = baseline_poly_on_shares(std::move(z), members, gt);
        auto fg = mul_secure(xg, gh, MulKind::TransposeATimesB, cfg_.mul_scheme, dealer_, net_,
                             members, party_rngs_, gt + "/xtg", &costs_, true);

        // Re-share the subgroup's degree-T result so every party holds a
        // share: member k shares its share, everyone recombines with
        // interpolation-at-zero weights over the member points.
        net_.advance_round();
        std::vector<std::vector<ShareMatrix>> resh(gsize);
        for (std::size_t s = 0; s < gsize; ++s) {
            const int pid = members[s];
            resh[s] = share(fg[s].values, cfg_.t, lambdas, party_rngs_[std::size_t(pid)]);
            costs_[std::size_t(pid)].add(std::uint64_t(cfg_.t + 1) * d * cfg_.n, false);
            for (std::size_t j = 0; j < cfg_.n; ++j) {
                if (int(j) == pid) continue;
                net_.send(pid, int(j), serialize(resh[s][j]), gt + "/rs:" + std::to_string(s));
            }
        }
        net_.advance_round();
        std::vector<std::uint32_t> member_points;
        for (int m : members) member_points.push_back(parties_[std::size_t(m)].lambda);
        auto w = interpolation_coeffs(member_points, 0, cfg_.p);
        for (std::size_t j = 0; j < cfg_.n; ++j) {
            FieldMatrix accv(d, 1, cfg_.p, cfg_.f_scale());
            for (std::size_t s = 0; s < gsize; ++s) {
                ShareMatrix piece =
                    members[s] == int(j)
                        ? resh[s][j]
                        : deserialize_share(
                              net_.recv(int(j), members[s], gt + "/rs:" + std::to_string(s)));
                for (std::size_t e = 0; e < accv.size(); ++e)
                    accv[e] = add_mod(accv[e], mul_mod(piece.values[e], w[s], cfg_.p.p),
                                      cfg_.p.p);
            }
            costs_[j].add(gsize * d, false);
            ShareMatrix fj{parties_[j].lambda, cfg_.t, std::move(accv)};
            agg[j] = g == 0 ? fj : add_local(agg[j], fj);
        }
    }

    std::vector<ShareMatrix> grad(cfg_.n);
    for (std::size_t j = 0; j < cfg_.n; ++j)
        grad[j] = sub_local(agg[j], parties_[j].xty_share);
    return grad;
}

void Simulation::apply_update(const std::vector<ShareMatrix>& grad_shares,
                              const std::string& rt) {
    const double m = double(train_data_.samples());
    const int ls = cfg_.eta_scale();
    const std::int64_t c_eta = round_half_up(cfg_.eta / m * std::ldexp(1.0, ls));
    if (cfg_.eta > 0 && c_eta == 0)
        throw ConfigError("config: eta/m quantizes to zero at scale 2^" + std::to_string(ls) +
                          "; raise k1 or eta");
    const std::uint32_t c = phi(c_eta, cfg_.p);

    std::vector<ShareMatrix> delta(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        delta[i] = mul_const_local(grad_shares[i], c, ls);
        costs_[i].add(delta[i].values.size(), false);
    }
    auto trunc = truncate_secure(delta, cfg_.k1, cfg_.k2, dealer_, net_, all_parties(),
                                 rt + "/trunc");
    for (std::size_t i = 0; i < cfg_.n; ++i)
        parties_[i].w_share = sub_local(parties_[i].w_share, trunc[i]);
}

void Simulation::iteration() {
    if (!setup_done_) throw Error("setup() must run before iteration()");
    const std::string rt = "it" + std::to_string(iter_);
    apply_update(compute_gradient(rt), rt);
    ++iter_;
}

std::vector<ShareMatrix> Simulation::gradient_only() {
    if (!setup_done_) throw Error("setup() must run before gradient_only()");
    const std::string rt = "it" + std::to_string(iter_);
    auto grad = compute_gradient(rt);
    ++iter_;
    return grad;
}

std::vector<IterationMetrics> Simulation::train() {
    setup();
    std::vector<IterationMetrics> series;
    series.reserve(cfg_.iterations);
    for (std::size_t t = 0; t < cfg_.iterations; ++t) {
        iteration();
        series.push_back(observe(t + 1));
    }
    return series;
}

FieldMatrix Simulation::reconstruct_model_field() const {
    std::vector<ShareMatrix> probe;
    for (std::size_t i = 0; i <= cfg_.t; ++i) probe.push_back(parties_[i].w_share);
    return reconstruct(probe);
}

std::vector<double> Simulation::reconstruct_model() const {
    return dequantize_vector(reconstruct_model_field());
}

IterationMetrics Simulation::observe(std::size_t t) const {
    IterationMetrics m;
    m.t = t;
    const auto w = reconstruct_model();
    m.loss = cross_entropy_loss(train_data_, w);
    m.train_accuracy = accuracy(train_data_, w);
    m.test_accuracy = test_data_.samples() ? accuracy(test_data_, w) : 0.0;
    for (const auto& pc : net_.counters()) {
        m.bytes_sent = std::max(m.bytes_sent, pc.bytes_sent);
        m.msgs_sent = std::max(m.msgs_sent, pc.msgs_sent);
    }
    for (const auto& c : costs_) {
        m.field_muls = std::max(m.field_muls, c.field_muls);
        m.gradient_muls = std::max(m.gradient_muls, c.gradient_muls);
    }
    return m;
}

const FieldMatrix& Simulation::last_pre_truncation_gradient() const {
    if (last_gradient_.size() == 0) throw Error("no iteration has run yet");
    return last_gradient_;
}

} // namespace copml
