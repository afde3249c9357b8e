#pragma once

#include <string>

#include "lmp/pa_map.hpp"

namespace lmp {

// pam-v1 wire format:
//   {"schema": "pam-v1", "breakpoints": [{"x": "num/den", "y": "num/den"}, ...]}
// Rationals are decimal integer strings "num/den" in lowest terms.
// serialize . parse is the identity on canonical maps.
std::string serialize_pam(const PAMap& f);
PAMap parse_pam(const std::string& json_text);

PAMap load_pam_file(const std::string& path);
// Atomic: writes to a temp file in the same directory, then renames.
void save_pam_file(const PAMap& f, const std::string& path);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lmp
