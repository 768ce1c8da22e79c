#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"
#include "rascal/io.hpp"

namespace rascal {

inline constexpr const char* kProvenanceColumn = "__provenance";

namespace detail {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines, CRLF.
inline std::vector<CsvRecord> read_csv_records(std::istream& in) {
  std::vector<CsvRecord> records;
  std::string field;
  CsvRecord current;
  bool in_quotes = false;
  bool field_started = false;
  bool record_has_content = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    if (record_has_content) {
      end_field();
      records.push_back(std::move(current));
    }
    current = CsvRecord{};
    field.clear();
    field_started = false;
    record_has_content = false;
    current.line = line;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty())
          throw DataError("line " + std::to_string(line) + ": stray quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        record_has_content = true;
        break;
      case ',':
        record_has_content = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        record_has_content = true;
    }
  }
  if (in_quotes) throw DataError("line " + std::to_string(current.line) + ": unterminated quoted field");
  end_record();
  return records;
}

inline std::string csv_escape(const std::string& s) {
  bool quote = s.find_first_of(",\"\r\n") != std::string::npos ||
               (!s.empty() && (s.front() == ' ' || s.back() == ' '));
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void check_value(const std::string& v, const std::string& column, std::size_t line) {
  if (v == "?")
    throw DataError("line " + std::to_string(line) + ": missing value '?' in column '" + column +
                    "' (missing values are not supported)");
  if (v.empty())
    throw DataError("line " + std::to_string(line) + ": empty value in column '" + column + "'");
}

inline Provenance parse_provenance(const std::string& s, std::size_t line) {
  if (s == "original") return Provenance::original();
  const std::string prefix = "virtual:";
  if (s.rfind(prefix, 0) == 0) {
    std::string digits = s.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Provenance::from_rule(std::stoull(digits));
  }
  throw DataError("line " + std::to_string(line) + ": bad provenance '" + s + "'");
}

// Observed values, sorted. A column that only ever shows T or F is widened
// to the boolean domain {F, T}.
inline std::vector<std::string> infer_domain(const std::set<std::string>& observed, const std::string& column,
                                             bool is_class) {
  std::vector<std::string> domain(observed.begin(), observed.end());
  if (domain.size() >= 2) return domain;
  if (is_class)
    throw DataError("class column '" + column + "' has fewer than 2 distinct labels");
  if (domain.size() == 1 && (domain[0] == "T" || domain[0] == "F")) return {"F", "T"};
  throw DataError("column '" + column + "' has a single observed value; supply a schema file declaring its domain");
}

}  // namespace detail

// Sidecar schema: one attribute per line, "feature NAME V1 V2 ..." or
// "class NAME V1 V2 ...". '#' starts a comment. Feature order is line order.
inline Schema load_schema(std::istream& in) {
  std::vector<Attribute> features;
  std::optional<Attribute> cls;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string kind;
    if (!(words >> kind)) continue;
    Attribute a;
    if (!(words >> a.name)) throw DataError("schema line " + std::to_string(line) + ": missing attribute name");
    for (std::string v; words >> v;) a.domain.push_back(v);
    if (kind == "feature") {
      features.push_back(std::move(a));
    } else if (kind == "class") {
      if (cls) throw DataError("schema line " + std::to_string(line) + ": second class declaration");
      cls = std::move(a);
    } else {
      throw DataError("schema line " + std::to_string(line) + ": expected 'feature' or 'class', got '" + kind + "'");
    }
  }
  if (!cls) throw DataError("schema declares no class attribute");
  return Schema(std::move(features), std::move(*cls));
}

inline Schema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file " + path.string());
  return load_schema(in);
}

inline void save_schema(const Schema& schema, std::ostream& out) {
  auto line = [&](const char* kind, const Attribute& a) {
    out << kind << ' ' << a.name;
    for (const auto& v : a.domain) out << ' ' << v;
    out << '\n';
  };
  for (const auto& f : schema.features()) line("feature", f);
  line("class", schema.class_attribute());
}

// Reads a header-first CSV. The named column becomes the class attribute and
// every other column a feature, in header order. Domains are inferred from the
// data unless `schema` is given, in which case columns are matched to it by
// name. A trailing "__provenance" column, as written by save_csv, is restored.
inline Dataset load_csv(std::istream& in, const std::string& class_column,
                        const std::optional<Schema>& schema = std::nullopt) {
  auto records = detail::read_csv_records(in);
  if (records.empty()) throw DataError("empty CSV input");
  const auto& header = records.front().fields;
  const std::size_t arity = header.size();

  std::optional<std::size_t> class_col;
  std::optional<std::size_t> prov_col;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < arity; ++c) {
    if (header[c] == class_column) {
      if (class_col) throw DataError("class column '" + class_column + "' appears twice in header");
      class_col = c;
    } else if (header[c] == kProvenanceColumn) {
      prov_col = c;
    } else {
      feature_cols.push_back(c);
    }
  }
  if (!class_col) throw DataError("class column '" + class_column + "' not found in header");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != arity)
      throw DataError("line " + std::to_string(rec.line) + ": ragged row with " +
                      std::to_string(rec.fields.size()) + " fields, header has " + std::to_string(arity));
    for (std::size_t c = 0; c < arity; ++c)
      if (!prov_col || c != *prov_col) detail::check_value(rec.fields[c], header[c], rec.line);
  }

  Schema bound;
  // Column index feeding each schema feature, in schema order.
  std::vector<std::size_t> source_col;
  if (schema) {
    if (schema->class_attribute().name != class_column)
      throw DataError("schema class attribute '" + schema->class_attribute().name +
                      "' differs from class column '" + class_column + "'");
    std::map<std::string, std::size_t> by_name;
    for (std::size_t c : feature_cols) by_name[header[c]] = c;
    for (const auto& f : schema->features()) {
      auto it = by_name.find(f.name);
      if (it == by_name.end()) throw DataError("schema feature '" + f.name + "' missing from CSV header");
      source_col.push_back(it->second);
      by_name.erase(it);
    }
    if (!by_name.empty()) throw DataError("CSV column '" + by_name.begin()->first + "' is not in the schema");
    bound = *schema;
  } else {
    std::vector<Attribute> features;
    for (std::size_t c : feature_cols) {
      std::set<std::string> observed;
      for (std::size_t r = 1; r < records.size(); ++r) observed.insert(records[r].fields[c]);
      features.push_back({header[c], detail::infer_domain(observed, header[c], false)});
      source_col.push_back(c);
    }
    std::set<std::string> labels;
    for (std::size_t r = 1; r < records.size(); ++r) labels.insert(records[r].fields[*class_col]);
    Attribute cls{class_column, detail::infer_domain(labels, class_column, true)};
    bound = Schema(std::move(features), std::move(cls));
  }

  Dataset out(bound);
  out.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    Instance inst;
    inst.values.reserve(source_col.size());
    for (std::size_t f = 0; f < source_col.size(); ++f) {
      const std::string& v = rec.fields[source_col[f]];
      auto id = bound.feature(f).find(v);
      if (!id)
        throw DataError("line " + std::to_string(rec.line) + ": value '" + v + "' not in domain of '" +
                        bound.feature(f).name + "'");
      inst.values.push_back(*id);
    }
    auto label = bound.class_attribute().find(rec.fields[*class_col]);
    if (!label)
      throw DataError("line " + std::to_string(rec.line) + ": class label '" + rec.fields[*class_col] +
                      "' not in class domain");
    inst.class_label = *label;
    if (prov_col) inst.provenance = detail::parse_provenance(rec.fields[*prov_col], rec.line);
    out.add(std::move(inst));
  }
  return out;
}

inline Dataset load_csv(const std::filesystem::path& path, const std::string& class_column,
                        const std::optional<Schema>& schema = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return load_csv(in, class_column, schema);
}

// Features in schema order, then the class column, then optionally the
// provenance column. Lines end in '\n'.
inline void save_csv(const Dataset& dataset, std::ostream& out, bool include_provenance = false) {
  const Schema& schema = dataset.schema();
  bool first = true;
  auto cell = [&](const std::string& s) {
    if (!first) out << ',';
    out << detail::csv_escape(s);
    first = false;
  };
  for (const auto& f : schema.features()) cell(f.name);
  cell(schema.class_attribute().name);
  if (include_provenance) cell(kProvenanceColumn);
  out << '\n';
  for (const Instance& inst : dataset.instances()) {
    first = true;
    for (std::size_t f = 0; f < inst.values.size(); ++f) cell(schema.value_name(f, inst.values[f]));
    cell(schema.class_name(inst.class_label));
    if (include_provenance) cell(inst.provenance.label());
    out << '\n';
  }
  if (!out) throw DataError("write failure while saving CSV");
}

inline void save_csv(const Dataset& dataset, const std::filesystem::path& path, bool include_provenance = false) {
  atomic_write(path, [&](std::ostream& out) { save_csv(dataset, out, include_provenance); });
}

}  // namespace rascal
