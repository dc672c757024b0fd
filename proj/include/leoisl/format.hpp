#pragma once

#include <string>

namespace leoisl {

// Shortest decimal representation that round-trips the exact double; used for
// all CSV output so files are byte-stable across runs and platforms.
std::string format_double(double v);

// Strict full-string double parse; throws std::runtime_error with `what` in
// the message on failure.
double parse_double(const std::string& s, const std::string& what);

// FNV-1a 64-bit hash as 16 lowercase hex digits; used for config hashes.
std::string fnv1a64_hex(const std::string& text);

}  // namespace leoisl
