#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "copml/protocol.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace copml;

namespace {

Dataset tiny_dataset(std::size_t m, std::size_t d, std::uint64_t seed) {
    Dataset data = make_synthetic(m, d, seed);
    return data;
}

ProtocolConfig small_copml(std::size_t m_unused = 0) {
    (void)m_unused;
    ProtocolConfig cfg;
    cfg.n = 4;
    cfg.t = 1;
    cfg.k = 1;
    cfg.p = FieldPrime(1073741789);
    cfg.l_x = 4;
    cfg.l_c = 6;
    cfg.k1 = 21;
    cfg.k2 = 28;
    cfg.eta = 0.5;
    cfg.iterations = 2;
    cfg.seed = 3;
    return cfg;
}

} // namespace

TEST_CASE("case presets") {
    CHECK(case_params(50, 1).k == 16);
    CHECK(case_params(50, 1).t == 1);
    CHECK(case_params(50, 2).k == 10);
    CHECK(case_params(50, 2).t == 7);
    CHECK(case_params(4, 1).k == 1);
    CHECK(case_params(4, 1).t == 1);
    CHECK_THROWS_AS(case_params(50, 3), ConfigError);
    CHECK_THROWS_AS(case_params(2, 1), ConfigError); // no valid K >= 1
}

TEST_CASE("config validation names the violated inequality") {
    ProtocolConfig cfg = small_copml();
    CHECK_NOTHROW(cfg.validate());

    ProtocolConfig bad = cfg;
    bad.k = 2; // threshold 7 > N = 4
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("N >= (2r+1)(K+T-1)+1"),
                         ConfigError);

    bad = cfg;
    bad.scheme = Scheme::BaselineBgw;
    bad.groups = 2; // 2 * (2T+1) = 6 > 4
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("G(2T+1) <= N"), ConfigError);

    bad = cfg;
    bad.k2 = 30; // 2^31 >= p
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("2^(k2+1) < p"), ConfigError);

    bad = cfg;
    bad.p = FieldPrime(11);
    bad.k1 = 1;
    bad.k2 = 2;
    bad.n = 10; // K+T+N = 12 >= p
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("p > K+T+N"), ConfigError);
}

TEST_CASE("scale bookkeeping of the derived quantities") {
    ProtocolConfig cfg = small_copml();
    CHECK(cfg.f_scale() == 6 + 3 * 4);
    CHECK(cfg.eta_scale() == 21 - (18 - 4));
    CHECK(cfg.threshold() == 4); // (2r+1)(K+T-1)+1 with K=T=r=1
}

TEST_CASE("gradient shares reconstruct to the plaintext field gradient") {
    ProtocolConfig cfg;
    cfg.n = 4;
    cfg.t = 1;
    cfg.k = 1;
    cfg.p = FieldPrime(67108859);
    cfg.l_x = 2;
    cfg.l_c = 4;
    cfg.k1 = 12;
    cfg.k2 = 24;
    cfg.seed = 11;
    const std::size_t m = 8, d = 3;
    Dataset train = tiny_dataset(m, d, 5);
    Simulation sim(cfg, train, train);
    sim.setup();
    auto grad_shares = sim.gradient_only();
    std::vector<ShareMatrix> probe(grad_shares.begin(), grad_shares.begin() + 2);
    FieldMatrix grad = reconstruct(probe);

    // independent plaintext recomputation
    FieldMatrix x = quantize(train.features, {cfg.l_x, cfg.p});
    std::vector<std::vector<double>> ycol;
    for (double y : train.labels) ycol.push_back({y});
    FieldMatrix y = quantize(ycol, {cfg.l_x, cfg.p});
    std::vector<std::uint32_t> w0(d, 0);
    auto expect = oracle::field_gradient(x, y, w0, sim.approx());
    REQUIRE(grad.size() == d);
    for (std::size_t j = 0; j < d; ++j) CHECK(grad[j] == expect[j]);
    CHECK(grad.scale() == cfg.f_scale());
}

TEST_CASE("one full update matches the fixed-point oracle bit for bit") {
    ProtocolConfig cfg;
    cfg.n = 4;
    cfg.t = 1;
    cfg.k = 1;
    cfg.p = FieldPrime(67108859);
    cfg.l_x = 2;
    cfg.l_c = 4;
    cfg.k1 = 12;
    cfg.k2 = 24;
    cfg.eta = 1.0;
    cfg.seed = 11;
    const std::size_t m = 8, d = 3;
    Dataset train = tiny_dataset(m, d, 5);
    Simulation sim(cfg, train, train);
    sim.setup();
    sim.dealer().record_truncation(true);
    sim.iteration();

    // eta/m at scale eta_scale: round(1/8 * 2^4) = 2
    CHECK(cfg.eta_scale() == 4);
    const std::int64_t c_eta = 2;

    const FieldMatrix& grad_field = sim.last_pre_truncation_gradient();
    REQUIRE(grad_field.size() == d);
    std::vector<std::int64_t> grad(d), w0(d, 0);
    for (std::size_t j = 0; j < d; ++j) grad[j] = phi_inv(grad_field[j], cfg.p);

    REQUIRE(sim.dealer().recorded_r_low().size() == d);
    auto expect = oracle::fixed_point_update(w0, grad, c_eta, cfg.k1,
                                             sim.dealer().recorded_r_low());
    FieldMatrix w1 = sim.reconstruct_model_field();
    CHECK(w1.scale() == cfg.l_x);
    for (std::size_t j = 0; j < d; ++j) CHECK(phi_inv(w1[j], cfg.p) == expect[j]);
}

TEST_CASE("zero learning rate leaves the zero-initialized model untouched") {
    ProtocolConfig cfg = small_copml();
    cfg.eta = 0.0;
    Dataset train = tiny_dataset(12, 3, 6);
    Simulation sim(cfg, train, train);
    sim.setup();
    sim.iteration();
    sim.iteration();
    for (double w : sim.reconstruct_model()) CHECK(w == 0.0);
}

TEST_CASE("a vanishing quantized learning rate is rejected, not silently zeroed") {
    ProtocolConfig cfg = small_copml();
    cfg.eta = 1e-9;
    Dataset train = tiny_dataset(12, 3, 6);
    Simulation sim(cfg, train, train);
    sim.setup();
    CHECK_THROWS_AS(sim.iteration(), ConfigError);
}

TEST_CASE("training is deterministic for a fixed seed") {
    ProtocolConfig cfg = small_copml();
    Dataset train = tiny_dataset(16, 3, 7), test = tiny_dataset(8, 3, 8);
    Simulation a(cfg, train, test), b(cfg, train, test);
    auto ma = a.train(), mb = b.train();
    REQUIRE(ma.size() == mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i) {
        CHECK(ma[i].loss == mb[i].loss);
        CHECK(ma[i].bytes_sent == mb[i].bytes_sent);
        CHECK(ma[i].field_muls == mb[i].field_muls);
    }
    CHECK(a.reconstruct_model() == b.reconstruct_model());
    CHECK(a.transport().transcript_hash() == b.transport().transcript_hash());

    // a different seed draws different truncation randomness, so the
    // quantized models diverge (message sizes and order stay the same)
    ProtocolConfig other = cfg;
    other.seed = cfg.seed + 1;
    Simulation c(other, train, test);
    c.train();
    CHECK(c.reconstruct_model_field().data() != a.reconstruct_model_field().data());
}

TEST_CASE("the trained model is independent of network latency") {
    ProtocolConfig cfg;
    cfg.n = 8;
    cfg.t = 1;
    cfg.k = 2;
    cfg.p = FieldPrime(1073741789);
    cfg.l_x = 4;
    cfg.l_c = 6;
    cfg.k1 = 21;
    cfg.k2 = 28;
    cfg.eta = 0.5;
    cfg.seed = 9;
    Dataset train = tiny_dataset(16, 3, 9);

    ProtocolConfig slow = cfg;
    slow.latency.base_delay = {0.9, 0.1, 0.2, 0.8, 0.05, 0.3, 0.7, 0.15};
    slow.latency.per_byte = 1e-4;
    slow.latency.jitter_amp = 0.2;
    slow.latency.seed = 77;

    Simulation a(cfg, train, train), b(slow, train, train);
    a.setup();
    b.setup();
    for (int i = 0; i < 2; ++i) {
        a.iteration();
        b.iteration();
    }
    // straggler selection changes, the decoded update does not
    CHECK(a.reconstruct_model_field().data() == b.reconstruct_model_field().data());
    CHECK(a.transport().transcript_hash() != b.transport().transcript_hash());
}

TEST_CASE("BGW and BH08 multiplication give identical baseline models") {
    ProtocolConfig cfg = small_copml();
    cfg.n = 3;
    cfg.scheme = Scheme::BaselineBgw;
    cfg.groups = 1;
    Dataset train = tiny_dataset(12, 3, 10);

    Simulation bgw(cfg, train, train);
    cfg.scheme = Scheme::BaselineBh08;
    Simulation bh(cfg, train, train);
    bgw.train();
    bh.train();
    CHECK(bgw.reconstruct_model_field().data() == bh.reconstruct_model_field().data());
}

TEST_CASE("single-partition runs agree across schemes") {
    // With K=1 and G=1 both schemes compute the same exact field gradient and
    // draw the same truncation randomness, so the models match bitwise.
    ProtocolConfig cfg = small_copml();
    Dataset train = tiny_dataset(12, 3, 12);
    Simulation cop(cfg, train, train);

    ProtocolConfig base = cfg;
    base.n = 3;
    base.scheme = Scheme::BaselineBgw;
    base.groups = 1;
    Simulation bas(base, train, train);

    cop.train();
    bas.train();
    CHECK(cop.reconstruct_model_field().data() == bas.reconstruct_model_field().data());
}

TEST_CASE("metrics series shape and counter monotonicity") {
    ProtocolConfig cfg = small_copml();
    cfg.iterations = 4;
    Dataset train = tiny_dataset(16, 3, 13), test = tiny_dataset(8, 3, 14);
    Simulation sim(cfg, train, test);
    auto metrics = sim.train();
    REQUIRE(metrics.size() == 4);
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        CHECK(metrics[i].t == i + 1);
        CHECK(std::isfinite(metrics[i].loss));
        CHECK(metrics[i].train_accuracy >= 0.0);
        CHECK(metrics[i].train_accuracy <= 1.0);
        if (i > 0) {
            CHECK(metrics[i].bytes_sent > metrics[i - 1].bytes_sent);
            CHECK(metrics[i].field_muls > metrics[i - 1].field_muls);
            CHECK(metrics[i].msgs_sent > metrics[i - 1].msgs_sent);
        }
    }
    CHECK(sim.completed_iterations() == 4);

    ProtocolConfig none = cfg;
    none.iterations = 0;
    Simulation empty(none, train, test);
    CHECK(empty.train().empty());
}

TEST_CASE("per-iteration gradient multiplications follow (2d+r) m / K") {
    ProtocolConfig cfg = small_copml();
    cfg.iterations = 2;
    const std::size_t m = 24, d = 3;
    Dataset train = tiny_dataset(m, d, 15);
    Simulation sim(cfg, train, train);
    auto metrics = sim.train();
    const std::uint64_t per_iter = metrics[1].gradient_muls - metrics[0].gradient_muls;
    CHECK(per_iter == (2 * d + 1) * m / cfg.k);
}

TEST_CASE("per-iteration traffic scales linearly with the model dimension") {
    auto iter_bytes = [](std::size_t d) {
        ProtocolConfig cfg = small_copml();
        cfg.iterations = 2;
        Dataset train = tiny_dataset(16, d, 16);
        Simulation sim(cfg, train, train);
        auto metrics = sim.train();
        return double(metrics[1].bytes_sent - metrics[0].bytes_sent);
    };
    // d large enough that per-message framing overhead is a minor term
    const double ratio = iter_bytes(64) / iter_bytes(32);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.1);
}

TEST_CASE("subgroup encoding yields the same model as full encoding") {
    ProtocolConfig cfg = small_copml();
    cfg.n = 7;
    cfg.k = 2;
    Dataset train = tiny_dataset(16, 3, 17);
    Simulation full(cfg, train, train);
    cfg.subgroup_encoding = true;
    Simulation sub(cfg, train, train);
    full.train();
    sub.train();
    CHECK(full.reconstruct_model_field().data() == sub.reconstruct_model_field().data());
    // and it saves setup traffic
    CHECK(sub.transport().counters()[6].bytes_sent <
          full.transport().counters()[6].bytes_sent);
}

TEST_CASE("training reduces the loss on separable data") {
    ProtocolConfig cfg = small_copml();
    cfg.n = 7;
    cfg.k = 2;
    cfg.eta = 1.0;
    cfg.iterations = 6;
    Dataset train = tiny_dataset(64, 4, 18);
    Simulation sim(cfg, train, train);
    auto metrics = sim.train();
    CHECK(metrics.back().loss < std::log(2.0)); // below the w=0 starting loss
    CHECK(metrics.back().train_accuracy > 0.7);
}
