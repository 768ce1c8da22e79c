#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"

namespace rascal {

// Nucleotides plus the IUPAC ambiguity codes that appear in the UCI
// molecular-biology files. Ambiguity codes become ordinary domain values.
inline constexpr std::string_view kNucleotideAlphabet = "ACGT";
inline constexpr std::string_view kAmbiguityCodes = "BDHKMNRSUVWY";

// Reads the UCI molecular-biology format (promoters.data, splice.data):
//   label , identifier , sequence
// Whitespace inside the sequence is ignored and case is folded to upper.
// Features are named p1..pK and share the domain ACGT plus any ambiguity
// codes observed anywhere in the file. The class attribute is "class".
inline Dataset load_uci_molbio(std::istream& in) {
  struct Row {
    std::string label;
    std::string sequence;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string raw;
  std::size_t line = 0;
  auto trim = [](std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
  };
  while (std::getline(in, raw)) {
    ++line;
    if (trim(raw).empty()) continue;
    auto c1 = raw.find(',');
    auto c2 = c1 == std::string::npos ? std::string::npos : raw.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw DataError("line " + std::to_string(line) + ": expected 'label,identifier,sequence'");
    Row row{trim(raw.substr(0, c1)), {}, line};
    if (row.label.empty()) throw DataError("line " + std::to_string(line) + ": empty class label");
    for (char ch : std::string_view(raw).substr(c2 + 1)) {
      auto uc = static_cast<unsigned char>(ch);
      if (std::isspace(uc)) continue;
      char up = static_cast<char>(std::toupper(uc));
      if (kNucleotideAlphabet.find(up) == std::string_view::npos && kAmbiguityCodes.find(up) == std::string_view::npos)
        throw DataError("line " + std::to_string(line) + ": character '" + std::string(1, ch) +
                        "' is not a nucleotide or ambiguity code");
      row.sequence.push_back(up);
    }
    if (row.sequence.empty()) throw DataError("line " + std::to_string(line) + ": empty sequence");
    if (!rows.empty() && row.sequence.size() != rows.front().sequence.size())
      throw DataError("line " + std::to_string(line) + ": sequence length " + std::to_string(row.sequence.size()) +
                      " differs from " + std::to_string(rows.front().sequence.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty UCI input");

  std::set<std::string> alphabet;
  for (char c : kNucleotideAlphabet) alphabet.insert(std::string(1, c));
  std::set<std::string> labels;
  for (const auto& r : rows) {
    labels.insert(r.label);
    for (char c : r.sequence) alphabet.insert(std::string(1, c));
  }
  if (labels.size() < 2) throw DataError("UCI input has fewer than 2 distinct class labels");

  const std::vector<std::string> domain(alphabet.begin(), alphabet.end());
  const std::size_t width = rows.front().sequence.size();
  std::vector<Attribute> features;
  features.reserve(width);
  for (std::size_t p = 0; p < width; ++p) features.push_back({"p" + std::to_string(p + 1), domain});
  Schema schema(std::move(features), Attribute{"class", {labels.begin(), labels.end()}});

  Dataset out(schema);
  out.reserve(rows.size());
  for (const auto& r : rows) {
    Instance inst;
    inst.values.reserve(width);
    for (char c : r.sequence) inst.values.push_back(*schema.feature(0).find(std::string(1, c)));
    inst.class_label = *schema.class_attribute().find(r.label);
    out.add(std::move(inst));
  }
  return out;
}

inline Dataset load_uci_molbio(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return load_uci_molbio(in);
}

}  // namespace rascal
