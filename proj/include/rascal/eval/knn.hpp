#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "rascal/data/dataset.hpp"
#include "rascal/error.hpp"

namespace rascal {

inline constexpr std::size_t kDefaultNeighbours = 3;

// Number of features on which two instances differ.
inline std::size_t hamming_distance(const Instance& a, const Instance& b) {
  if (a.values.size() != b.values.size()) throw SchemaMismatch("hamming_distance: instances differ in arity");
  std::size_t d = 0;
  for (std::size_t f = 0; f < a.values.size(); ++f) d += a.values[f] != b.values[f] ? 1 : 0;
  return d;
}

// Majority label of the k nearest training instances under Hamming distance.
// Distance ties prefer the lower training index; label ties prefer the label
// that comes first in the class domain.
inline ValueId knn_classify(const Dataset& train, const Instance& query, std::size_t k = kDefaultNeighbours) {
  if (train.empty()) throw DataError("knn: empty training set");
  if (k == 0) throw RangeError("knn: k must be at least 1");
  const std::size_t n = train.size();
  std::vector<std::size_t> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = hamming_distance(train[i], query);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) { return dist[a] != dist[b] ? dist[a] < dist[b] : a < b; });

  std::vector<std::size_t> votes(train.schema().class_attribute().arity(), 0);
  for (std::size_t j = 0; j < take; ++j) ++votes[train[order[j]].class_label];
  auto best = std::max_element(votes.begin(), votes.end());  // first maximum wins ties
  return static_cast<ValueId>(best - votes.begin());
}

// Fraction of `test` classified correctly by k-NN over `train`.
inline double knn_accuracy(const Dataset& train, const Dataset& test, std::size_t k = kDefaultNeighbours) {
  if (test.empty()) throw DataError("knn: empty test set");
  std::size_t correct = 0;
  for (const Instance& q : test.instances()) correct += knn_classify(train, q, k) == q.class_label ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace rascal
