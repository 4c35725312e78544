#pragma once

#include <string>

namespace mfglab {

/// %.17g, enough digits to round-trip a double exactly.
std::string format_double(double v);

/// Writes to <path>.tmp then renames, so readers never see partial files.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// FNV-1a 64-bit hash, hex encoded; used for config fingerprints in manifests.
std::string fnv1a_hex(const std::string& text);

}  // namespace mfglab
