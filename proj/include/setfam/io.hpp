// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "setfam/boolfn.hpp"

namespace setfam {

// BFTT1 layout: "BFTT1\n", the arity in decimal followed by "\n", then
// ceil(2^n / 8) raw bytes. Point index i is bit (i % 8) of byte i / 8.

std::string encode_bftt1(const TruthTable& table);
TruthTable decode_bftt1(std::string_view bytes);

/// {"n": int, "ones": [indices...]} with indices ascending.
std::string encode_table_json(const TruthTable& table);
TruthTable decode_table_json(std::string_view text);

void write_file(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

/// Reads either format, picking by the magic prefix.
TruthTable load_table(const std::filesystem::path& path);

}  // namespace setfam
