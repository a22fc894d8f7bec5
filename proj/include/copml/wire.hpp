#pragma once

#include <cstdint>
#include <vector>

#include "copml/field.hpp"
#include "copml/shamir.hpp"

namespace copml {

/// Byte codec for matrices crossing the simulated wire. Little-endian,
/// 4 bytes per field element (p < 2^31).
void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v);
std::uint32_t get_u32(const std::vector<std::uint8_t>& buf, std::size_t& off);

std::vector<std::uint8_t> serialize(const FieldMatrix& m);
FieldMatrix deserialize_matrix(const std::vector<std::uint8_t>& buf, std::size_t& off);
FieldMatrix deserialize_matrix(const std::vector<std::uint8_t>& buf);

std::vector<std::uint8_t> serialize(const ShareMatrix& s);
ShareMatrix deserialize_share(const std::vector<std::uint8_t>& buf, std::size_t& off);
ShareMatrix deserialize_share(const std::vector<std::uint8_t>& buf);

/// Two shares in one payload (dataset + label sharing during setup).
std::vector<std::uint8_t> serialize_pair(const ShareMatrix& a, const ShareMatrix& b);
std::pair<ShareMatrix, ShareMatrix> deserialize_pair(const std::vector<std::uint8_t>& buf);

} // namespace copml
