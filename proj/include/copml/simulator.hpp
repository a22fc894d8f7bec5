#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "copml/errors.hpp"

namespace copml {

/// Per-party delivery delays in abstract virtual-time units. Deterministic
/// given the seed; jitter is a pure function of (seed, sender, receiver, tag).
struct LatencyModel {
    std::vector<double> base_delay; // indexed by party; missing entries = 0
    double per_byte = 0.0;
    double jitter_amp = 0.0;
    std::uint64_t seed = 0;

    double delay(int from, int to, std::size_t bytes, const std::string& tag) const;
};

struct TranscriptRecord {
    int from = 0;
    int to = 0;
    std::string tag;
    std::size_t bytes = 0;
    double send_time = 0.0;
    double arrival_time = 0.0;
};

/// Order-sensitive digest of a transcript (also used on replayed dumps).
std::uint64_t transcript_digest(const std::vector<TranscriptRecord>& records);

/// Parse a dump produced by Transport::dump_transcript. Throws TransportError
/// on malformed lines.
std::vector<TranscriptRecord> parse_transcript(std::istream& is);

/// In-process message transport between simulated parties. Delivery order is
/// defined by virtual arrival time (send time + modeled latency), ties broken
/// by sender index. One message per (sender, receiver, round-tag).
class Transport {
public:
    struct PartyCounters {
        std::uint64_t msgs_sent = 0, bytes_sent = 0;
        std::uint64_t msgs_recv = 0, bytes_recv = 0;
    };

    explicit Transport(int n_parties, LatencyModel model = {}, bool record_transcript = true);

    int party_count() const { return n_; }
    double now() const { return round_base_; }
    void advance_round(double dt = 1.0) { round_base_ += dt; }

    void send(int from, int to, std::vector<std::uint8_t> payload, const std::string& tag);
    const std::vector<std::uint8_t>& recv(int to, int from, const std::string& tag) const;
    bool has_message(int to, int from, const std::string& tag) const;

    /// Senders that delivered a message to `to` under `tag`, by arrival order.
    std::vector<int> arrivals(int to, const std::string& tag) const;
    /// The `size` earliest arrivals; ties broken by party index.
    std::vector<int> fastest_subset(int to, const std::string& tag, std::size_t size) const;

    const std::vector<PartyCounters>& counters() const { return counters_; }
    const std::vector<TranscriptRecord>& transcript() const { return transcript_; }

    /// Line-delimited dump: sender receiver tag bytes send_time arrival_time.
    void dump_transcript(std::ostream& os) const;
    std::uint64_t transcript_hash() const;

private:
    struct Message {
        std::vector<std::uint8_t> payload;
        double arrival = 0.0;
        std::uint64_t seq = 0;
    };

    void check_party(int idx, const char* role) const;

    int n_;
    LatencyModel model_;
    bool record_;
    double round_base_ = 0.0;
    std::uint64_t seq_ = 0;
    // (to, tag) -> from -> message
    std::map<std::pair<int, std::string>, std::map<int, Message>> inbox_;
    std::vector<PartyCounters> counters_;
    std::vector<TranscriptRecord> transcript_;
};

} // namespace copml
