#include "copml/wire.hpp"

namespace copml {

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    buf.push_back(std::uint8_t(v));
    buf.push_back(std::uint8_t(v >> 8));
    buf.push_back(std::uint8_t(v >> 16));
    buf.push_back(std::uint8_t(v >> 24));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& buf, std::size_t& off) {
    if (off + 4 > buf.size()) throw Error("wire: truncated payload");
    std::uint32_t v = std::uint32_t(buf[off]) | std::uint32_t(buf[off + 1]) << 8 |
                      std::uint32_t(buf[off + 2]) << 16 | std::uint32_t(buf[off + 3]) << 24;
    off += 4;
    return v;
}

static void put_matrix(std::vector<std::uint8_t>& buf, const FieldMatrix& m) {
    put_u32(buf, std::uint32_t(m.rows()));
    put_u32(buf, std::uint32_t(m.cols()));
    put_u32(buf, std::uint32_t(m.scale()));
    put_u32(buf, m.prime().p);
    for (std::size_t i = 0; i < m.size(); ++i) put_u32(buf, m[i]);
}

std::vector<std::uint8_t> serialize(const FieldMatrix& m) {
    std::vector<std::uint8_t> buf;
    buf.reserve(16 + 4 * m.size());
    put_matrix(buf, m);
    return buf;
}

FieldMatrix deserialize_matrix(const std::vector<std::uint8_t>& buf, std::size_t& off) {
    std::uint32_t rows = get_u32(buf, off);
    std::uint32_t cols = get_u32(buf, off);
    int scale = int(std::int32_t(get_u32(buf, off)));
    FieldPrime p(get_u32(buf, off));
    FieldMatrix m(rows, cols, p, scale);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = get_u32(buf, off);
    return m;
}

FieldMatrix deserialize_matrix(const std::vector<std::uint8_t>& buf) {
    std::size_t off = 0;
    return deserialize_matrix(buf, off);
}

std::vector<std::uint8_t> serialize(const ShareMatrix& s) {
    std::vector<std::uint8_t> buf;
    buf.reserve(24 + 4 * s.values.size());
    put_u32(buf, s.owner_point);
    put_u32(buf, s.degree);
    put_matrix(buf, s.values);
    return buf;
}

ShareMatrix deserialize_share(const std::vector<std::uint8_t>& buf, std::size_t& off) {
    ShareMatrix s;
    s.owner_point = get_u32(buf, off);
    s.degree = get_u32(buf, off);
    s.values = deserialize_matrix(buf, off);
    return s;
}

ShareMatrix deserialize_share(const std::vector<std::uint8_t>& buf) {
    std::size_t off = 0;
    return deserialize_share(buf, off);
}

std::vector<std::uint8_t> serialize_pair(const ShareMatrix& a, const ShareMatrix& b) {
    auto buf = serialize(a);
    auto second = serialize(b);
    buf.insert(buf.end(), second.begin(), second.end());
    return buf;
}

std::pair<ShareMatrix, ShareMatrix> deserialize_pair(const std::vector<std::uint8_t>& buf) {
    std::size_t off = 0;
    ShareMatrix a = deserialize_share(buf, off);
    ShareMatrix b = deserialize_share(buf, off);
    return {std::move(a), std::move(b)};
}

} // namespace copml
