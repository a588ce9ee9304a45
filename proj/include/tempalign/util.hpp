#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace tempalign {

void ensure_dir(const std::string& path);

// FNV-1a on file bytes; used for manifest integrity lines.
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t value);

inline std::string fmt_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9f", value);
    return buf;
}

// Writes via a temporary file and renames into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace tempalign
