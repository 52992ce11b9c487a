#ifndef ECDL_IO_HPP
#define ECDL_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecdl/curve.hpp"

namespace ecdl {

// flat "key = value" config text, one pair per line, # comments
std::map<std::string, std::string> parse_kv(const std::string& text);
uint64_t parse_u64(const std::string& s);  // decimal or 0x-prefixed hex
std::string to_hex(uint64_t v);

// Instance round-trip: n, f, A, B, P.x, P.y, r, N, Q.x, Q.y (hex fields),
// optionally z_true.
std::string instance_to_config(const SubgroupCtx& sub);
SubgroupCtx instance_from_config(const std::string& text);

// minimal CSV with RFC-style quoting
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

} // namespace ecdl

#endif
