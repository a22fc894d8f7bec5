#include "copml/simulator.hpp"

#include <algorithm>
#include <sstream>

namespace copml {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* b = static_cast<const std::uint8_t*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
}

} // namespace

double LatencyModel::delay(int from, int to, std::size_t bytes, const std::string& tag) const {
    double d = 0.0;
    if (from >= 0 && std::size_t(from) < base_delay.size()) d += base_delay[from];
    d += per_byte * double(bytes);
    if (jitter_amp > 0.0) {
        std::uint64_t h = fnv1a(0xcbf29ce484222325ull, tag.data(), tag.size());
        h = mix64(h ^ seed ^ (std::uint64_t(std::uint32_t(from)) << 32) ^ std::uint32_t(to));
        d += jitter_amp * double(h >> 11) * 0x1.0p-53;
    }
    return d;
}

Transport::Transport(int n_parties, LatencyModel model, bool record_transcript)
    : n_(n_parties), model_(std::move(model)), record_(record_transcript),
      counters_(std::size_t(n_parties)) {}

void Transport::check_party(int idx, const char* role) const {
    if (idx < 0 || idx >= n_)
        throw TransportError(std::string("unknown ") + role + " party " + std::to_string(idx));
}

void Transport::send(int from, int to, std::vector<std::uint8_t> payload,
                     const std::string& tag) {
    check_party(from, "sender");
    check_party(to, "receiver");
    auto& slot = inbox_[{to, tag}];
    if (slot.count(from))
        throw TransportError("duplicate round-tag '" + tag + "' from party " +
                             std::to_string(from) + " to " + std::to_string(to));
    const std::size_t bytes = payload.size();
    const double sent = round_base_;
    const double arrival = sent + model_.delay(from, to, bytes, tag);
    counters_[std::size_t(from)].msgs_sent++;
    counters_[std::size_t(from)].bytes_sent += bytes;
    counters_[std::size_t(to)].msgs_recv++;
    counters_[std::size_t(to)].bytes_recv += bytes;
    if (record_) transcript_.push_back({from, to, tag, bytes, sent, arrival});
    slot.emplace(from, Message{std::move(payload), arrival, seq_++});
}

bool Transport::has_message(int to, int from, const std::string& tag) const {
    auto it = inbox_.find({to, tag});
    return it != inbox_.end() && it->second.count(from) > 0;
}

const std::vector<std::uint8_t>& Transport::recv(int to, int from, const std::string& tag) const {
    auto it = inbox_.find({to, tag});
    if (it == inbox_.end() || !it->second.count(from))
        throw TransportError("no message for tag '" + tag + "' from " + std::to_string(from) +
                             " to " + std::to_string(to));
    return it->second.at(from).payload;
}

std::vector<int> Transport::arrivals(int to, const std::string& tag) const {
    check_party(to, "receiver");
    std::vector<std::pair<double, int>> order;
    auto it = inbox_.find({to, tag});
    if (it != inbox_.end())
        for (const auto& [from, msg] : it->second) order.emplace_back(msg.arrival, from);
    std::sort(order.begin(), order.end());
    std::vector<int> out;
    out.reserve(order.size());
    for (auto& [_, from] : order) out.push_back(from);
    return out;
}

std::vector<int> Transport::fastest_subset(int to, const std::string& tag,
                                           std::size_t size) const {
    auto order = arrivals(to, tag);
    if (order.size() < size)
        throw TransportError("fastest_subset: only " + std::to_string(order.size()) +
                             " responses for tag '" + tag + "', need " + std::to_string(size));
    order.resize(size);
    return order;
}

void Transport::dump_transcript(std::ostream& os) const {
    const auto prec = os.precision(17);
    for (const auto& r : transcript_)
        os << r.from << ' ' << r.to << ' ' << r.tag << ' ' << r.bytes << ' ' << r.send_time
           << ' ' << r.arrival_time << '\n';
    os.precision(prec);
}

std::uint64_t transcript_digest(const std::vector<TranscriptRecord>& records) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& r : records) {
        h = fnv1a(h, &r.from, sizeof(r.from));
        h = fnv1a(h, &r.to, sizeof(r.to));
        h = fnv1a(h, r.tag.data(), r.tag.size());
        h = fnv1a(h, &r.bytes, sizeof(r.bytes));
        h = fnv1a(h, &r.arrival_time, sizeof(r.arrival_time));
    }
    return h;
}

std::vector<TranscriptRecord> parse_transcript(std::istream& is) {
    std::vector<TranscriptRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        TranscriptRecord r;
        if (!(ls >> r.from >> r.to >> r.tag >> r.bytes >> r.send_time >> r.arrival_time))
            throw TransportError("transcript line " + std::to_string(lineno) + " malformed");
        out.push_back(std::move(r));
    }
    return out;
}

std::uint64_t Transport::transcript_hash() const { return transcript_digest(transcript_); }

} // namespace copml
