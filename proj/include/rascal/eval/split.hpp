#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"
#include "rascal/random.hpp"

namespace rascal {

struct Split {
  std::vector<std::size_t> train;  // row indices, ascending
  std::vector<std::size_t> test;   // row indices, ascending
};

namespace detail {
inline std::vector<std::vector<std::size_t>> rows_by_class(const Dataset& data) {
  std::vector<std::vector<std::size_t>> by_class(data.schema().class_attribute().arity());
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data[i].class_label].push_back(i);
  return by_class;
}
}  // namespace detail

// Random train/test split preserving class proportions: each class
// contributes round(fraction * count) rows to training, the rest to test.
inline Split stratified_split(const Dataset& data, double fraction, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw RangeError("train fraction must lie in (0, 1]");
  Split out;
  auto by_class = detail::rows_by_class(data);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& rows = by_class[c];
    if (rows.empty()) continue;
    std::shuffle(rows.begin(), rows.end(), rng);
    auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(rows.size())));
    if (take == 0)
      throw DataError("train fraction leaves class '" + data.schema().class_name(static_cast<ValueId>(c)) +
                      "' with no training instances");
    out.train.insert(out.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
    out.test.insert(out.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

// Stratified k-fold partition; fold f is the test split of element f.
inline std::vector<Split> stratified_folds(const Dataset& data, std::size_t folds, Rng& rng) {
  if (folds < 2) throw RangeError("cross-validation needs at least 2 folds");
  if (data.size() < folds) throw DataError("fewer instances than cross-validation folds");
  std::vector<std::size_t> fold_of(data.size());
  std::size_t next = 0;
  for (auto& rows : detail::rows_by_class(data)) {
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t r : rows) fold_of[r] = next++ % folds;
  }
  std::vector<Split> out(folds);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t f = 0; f < folds; ++f) (fold_of[i] == f ? out[f].test : out[f].train).push_back(i);
  return out;
}

}  // namespace rascal
