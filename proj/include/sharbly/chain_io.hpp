#pragma once
// Chain JSON format: {"n": int, "degree": int, "terms": [{"coeff": "p/q",
// "cols": [[int,...], ...]}]}; columns listed column-by-column; the reader
// applies make_basic to every term.

#include <string>

#include "sharbly/core.hpp"

namespace sharbly {

std::string chain_to_json(const Chain& z);
Chain chain_from_json(const std::string& text);
Chain load_chain_file(const std::string& path);
void save_chain_file(const Chain& z, const std::string& path);

}  // namespace sharbly
