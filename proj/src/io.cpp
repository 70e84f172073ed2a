// SPDX-License-Identifier: Apache-2.0
#include "setfam/io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include "json.hpp"

namespace setfam {

namespace {
constexpr std::string_view kMagic = "BFTT1\n";
}

std::string encode_bftt1(const TruthTable& table) {
  std::string out(kMagic);
  out += std::to_string(table.arity());
  out += '\n';
  const std::uint64_t nbytes = (table.size() + 7) / 8;
  const auto words = table.words();
  for (std::uint64_t b = 0; b < nbytes; ++b)
    out.push_back(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFFU));
  return out;
}

TruthTable decode_bftt1(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) != kMagic) throw ParseError("missing BFTT1 magic");
  bytes.remove_prefix(kMagic.size());
  const auto eol = bytes.find('\n');
  if (eol == std::string_view::npos || eol == 0) throw ParseError("BFTT1: missing arity line");
  int arity = -1;
  const auto [ptr, ec] = std::from_chars(bytes.data(), bytes.data() + eol, arity);
  if (ec != std::errc{} || ptr != bytes.data() + eol)
    throw ParseError("BFTT1: arity line is not a decimal integer");
  if (arity < 0 || arity > kMaxTableArity)
    throw ParseError("BFTT1: arity " + std::to_string(arity) + " outside [0, 24]");
  bytes.remove_prefix(eol + 1);
  TruthTable table(arity);
  const std::uint64_t nbytes = (table.size() + 7) / 8;
  if (bytes.size() != nbytes)
    throw ParseError("BFTT1: expected " + std::to_string(nbytes) + " payload bytes, found " +
                     std::to_string(bytes.size()));
  for (std::uint64_t i = 0; i < table.size(); ++i)
    if ((static_cast<unsigned char>(bytes[i / 8]) >> (i % 8)) & 1U) table.set(i, true);
  // Padding bits past 2^n must be zero.
  for (std::uint64_t i = table.size(); i < nbytes * 8; ++i)
    if ((static_cast<unsigned char>(bytes[i / 8]) >> (i % 8)) & 1U)
      throw ParseError("BFTT1: nonzero padding bit");
  return table;
}

std::string encode_table_json(const TruthTable& table) {
  nlohmann::json j;
  j["n"] = table.arity();
  j["ones"] = table.ones();
  return j.dump();
}

TruthTable decode_table_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("truth-table JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("ones") || !j["n"].is_number_integer() ||
      !j["ones"].is_array())
    throw ParseError("truth-table JSON needs integer \"n\" and array \"ones\"");
  const int n = j["n"].get<int>();
  if (n < 0 || n > kMaxTableArity) throw ParseError("truth-table JSON: arity outside [0, 24]");
  TruthTable table(n);
  for (const auto& v : j["ones"]) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ParseError("truth-table JSON: point indices must be non-negative integers");
    const auto idx = v.get<std::uint64_t>();
    if (idx >= table.size()) throw ParseError("truth-table JSON: point index out of range");
    table.set(idx, true);
  }
  return table;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TruthTable load_table(const std::filesystem::path& path) {
  const std::string contents = read_file(path);
  if (contents.starts_with(kMagic)) return decode_bftt1(contents);
  return decode_table_json(contents);
}

}  // namespace setfam
