#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"
#include "rascal/rules/literal.hpp"

namespace rascal {

// Where an instance came from: the input data or a generated sample.
struct Provenance {
  bool is_virtual = false;
  std::size_t rule_id = 0;  // meaningful only when is_virtual

  static Provenance original() { return {}; }
  static Provenance from_rule(std::size_t rule) { return {true, rule}; }

  std::string label() const {
    return is_virtual ? "virtual:" + std::to_string(rule_id) : std::string("original");
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Instance {
  std::vector<ValueId> values;  // positionally aligned with Schema::features()
  ValueId class_label = 0;
  Provenance provenance;

  friend bool operator==(const Instance&, const Instance&) = default;
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Schema schema) : schema_(std::move(schema)) {}

  Dataset(Schema schema, std::vector<Instance> instances) : schema_(std::move(schema)) {
    instances_.reserve(instances.size());
    for (auto& inst : instances) add(std::move(inst));
  }

  const Schema& schema() const noexcept { return schema_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }

  // N
  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }

  void add(Instance inst) {
    check(inst);
    instances_.push_back(std::move(inst));
  }

  void reserve(std::size_t n) { instances_.reserve(n); }

  // New dataset sharing this schema and holding the given rows, in the given order.
  Dataset subset(const std::vector<std::size_t>& rows) const {
    Dataset out(schema_);
    out.instances_.reserve(rows.size());
    for (std::size_t r : rows) out.instances_.push_back(instances_.at(r));
    return out;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  void check(const Instance& inst) const {
    if (inst.values.size() != schema_.num_features())
      throw SchemaMismatch("instance has " + std::to_string(inst.values.size()) +
                           " values, schema has " + std::to_string(schema_.num_features()) +
                           " features");
    for (std::size_t f = 0; f < inst.values.size(); ++f)
      if (inst.values[f] >= schema_.feature(f).arity())
        throw SchemaMismatch("value index out of domain for feature '" +
                             schema_.feature(f).name + "'");
    if (inst.class_label >= schema_.class_attribute().arity())
      throw SchemaMismatch("class label index out of domain");
  }

  Schema schema_;
  std::vector<Instance> instances_;
};

// Conforms(i, r): every literal of the rule holds on the instance.
inline bool conforms(const Instance& instance, const OperationalRule& rule) {
  for (const Literal& lit : rule.literals) {
    if (lit.feature >= instance.values.size())
      throw SchemaMismatch("rule references feature " + std::to_string(lit.feature) +
                           " beyond the instance's " + std::to_string(instance.values.size()));
    if (!lit.satisfied_by(instance.values[lit.feature])) return false;
  }
  return true;
}

struct MatchCounts {
  std::size_t matched = 0;     // M(r)
  std::size_t successful = 0;  // S(r)

  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

inline void check_rule_schema(const OperationalRule& rule, const Schema& schema) {
  for (const Literal& lit : rule.literals) {
    if (lit.feature >= schema.num_features() || lit.value >= schema.feature(lit.feature).arity())
      throw SchemaMismatch("rule literal does not belong to the dataset schema");
  }
  if (rule.class_label >= schema.class_attribute().arity())
    throw SchemaMismatch("rule class label does not belong to the dataset schema");
}

inline MatchCounts match_counts(const Dataset& dataset, const OperationalRule& rule) {
  check_rule_schema(rule, dataset.schema());
  MatchCounts out;
  for (const Instance& inst : dataset.instances()) {
    if (!conforms(inst, rule)) continue;
    ++out.matched;
    if (inst.class_label == rule.class_label) ++out.successful;
  }
  return out;
}

}  // namespace rascal
