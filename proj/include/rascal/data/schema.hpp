#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rascal/error.hpp"

namespace rascal {

// Index of a nominal value inside an attribute's ordered domain.
using ValueId = std::uint32_t;

// Position of a feature inside Schema::features().
using FeatureId = std::size_t;

struct Attribute {
  std::string name;
  std::vector<std::string> domain;

  std::optional<ValueId> find(std::string_view value) const {
    auto it = std::find(domain.begin(), domain.end(), value);
    if (it == domain.end()) return std::nullopt;
    return static_cast<ValueId>(it - domain.begin());
  }

  std::size_t arity() const noexcept { return domain.size(); }

  // Domain is exactly {F, T} in either order; bare identifiers in rule text
  // abbreviate name=T only for such features.
  bool is_boolean() const {
    return domain.size() == 2 && find("T").has_value() && find("F").has_value();
  }

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Ordered nominal features plus a distinguished class attribute.
class Schema {
 public:
  Schema() = default;

  Schema(std::vector<Attribute> features, Attribute class_attribute)
      : features_(std::move(features)), class_(std::move(class_attribute)) {
    check_attribute(class_);
    for (std::size_t i = 0; i < features_.size(); ++i) {
      check_attribute(features_[i]);
      if (features_[i].name == class_.name)
        throw DataError("class attribute '" + class_.name + "' is also listed as a feature");
      if (!index_.emplace(features_[i].name, i).second)
        throw DataError("duplicate feature name '" + features_[i].name + "'");
    }
  }

  const std::vector<Attribute>& features() const noexcept { return features_; }
  const Attribute& feature(FeatureId f) const { return features_.at(f); }
  const Attribute& class_attribute() const noexcept { return class_; }

  // K in the scoring formulas.
  std::size_t num_features() const noexcept { return features_.size(); }

  std::optional<FeatureId> find_feature(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& value_name(FeatureId f, ValueId v) const { return features_.at(f).domain.at(v); }
  const std::string& class_name(ValueId v) const { return class_.domain.at(v); }

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.features_ == b.features_ && a.class_ == b.class_;
  }

 private:
  static void check_attribute(const Attribute& a) {
    if (a.name.empty()) throw DataError("attribute with empty name");
    if (a.domain.size() < 2)
      throw DataError("attribute '" + a.name + "' needs at least 2 distinct values");
    std::vector<std::string> sorted = a.domain;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DataError("attribute '" + a.name + "' has a repeated domain value");
  }

  std::vector<Attribute> features_;
  Attribute class_;
  std::unordered_map<std::string, FeatureId> index_;
};

}  // namespace rascal
