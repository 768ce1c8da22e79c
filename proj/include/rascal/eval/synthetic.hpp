#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/data/schema.hpp"
#include "rascal/error.hpp"
#include "rascal/random.hpp"

namespace rascal {

// A DNF concept over boolean features x1..xK: a list of terms, each term a
// list of (feature, required truth value).
struct DnfConcept {
  struct Atom {
    FeatureId feature;
    bool value;
  };
  std::size_t num_features = 0;
  std::vector<std::vector<Atom>> terms;

  bool eval(const std::vector<ValueId>& values, ValueId true_id) const {
    for (const auto& term : terms) {
      bool ok = true;
      for (const auto& a : term) ok = ok && ((values[a.feature] == true_id) == a.value);
      if (ok) return true;
    }
    return false;
  }
};

// Random DNF: `terms` terms, each over distinct random features with a
// length in [min_length, max_length] and random polarity.
inline DnfConcept random_dnf(std::size_t num_features, std::size_t terms, std::size_t min_length,
                             std::size_t max_length, Rng& rng) {
  if (min_length < 1 || min_length > max_length || max_length > num_features)
    throw RangeError("term lengths must satisfy 1 <= min <= max <= number of features");
  DnfConcept out;
  out.num_features = num_features;
  std::vector<FeatureId> order(num_features);
  std::iota(order.begin(), order.end(), FeatureId{0});
  std::uniform_int_distribution<std::size_t> length(min_length, max_length);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < terms; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<DnfConcept::Atom> term;
    const std::size_t len = length(rng);
    for (std::size_t i = 0; i < len; ++i) term.push_back({order[i], coin(rng)});
    std::sort(term.begin(), term.end(), [](const auto& a, const auto& b) { return a.feature < b.feature; });
    out.terms.push_back(std::move(term));
  }
  return out;
}

inline Schema boolean_schema(std::size_t num_features, const std::string& class_name = "class") {
  std::vector<Attribute> features;
  for (std::size_t f = 0; f < num_features; ++f) features.push_back({"x" + std::to_string(f + 1), {"F", "T"}});
  return Schema(std::move(features), Attribute{class_name, {"F", "T"}});
}

// One class rule per term: "class <- x1 & !x4."
inline std::string concept_rules(const DnfConcept& target) {
  std::string out;
  for (const auto& term : target.terms) {
    out += "class <-";
    for (std::size_t i = 0; i < term.size(); ++i) {
      out += i ? " & " : " ";
      out += (term[i].value ? "" : "!") + std::string("x") + std::to_string(term[i].feature + 1);
    }
    out += ".\n";
  }
  return out;
}

struct SyntheticData {
  Dataset data;
  std::vector<bool> noisy;  // label flipped relative to the concept
};

// n uniform random instances labelled by the concept, with exactly
// round(noise * n) labels flipped at random positions.
inline SyntheticData sample_concept(const DnfConcept& target, std::size_t n, double noise, Rng& rng) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw RangeError("label noise must lie in [0, 1]");
  Schema schema = boolean_schema(target.num_features);
  const ValueId t = *schema.class_attribute().find("T");
  const ValueId f = *schema.class_attribute().find("F");
  const ValueId true_value = *schema.feature(0).find("T");
  SyntheticData out{Dataset(schema), std::vector<bool>(n, false)};
  std::vector<Instance> rows(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& inst : rows) {
    inst.values.resize(target.num_features);
    for (auto& v : inst.values) v = coin(rng) ? true_value : static_cast<ValueId>(1 - true_value);
    inst.class_label = target.eval(inst.values, true_value) ? t : f;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto flips = static_cast<std::size_t>(std::llround(noise * static_cast<double>(n)));
  for (std::size_t j = 0; j < flips; ++j) {
    rows[order[j]].class_label = rows[order[j]].class_label == t ? f : t;
    out.noisy[order[j]] = true;
  }
  out.data = Dataset(schema, std::move(rows));
  return out;
}

}  // namespace rascal
