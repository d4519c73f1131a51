#pragma once

#include <string>
#include <vector>

#include "gpdkit/constructors.hpp"
#include "gpdkit/groupoid.hpp"

namespace fixture {

// The qubit groupoid written out by hand: 1+, 1-, alpha: plus -> minus and
// its inverse, in canonical order.
inline gpdkit::GroupoidTables qubit_tables() {
  gpdkit::GroupoidTables t;
  t.object_labels = {"plus", "minus"};
  t.morphism_labels = {"1_plus", "1_minus", "alphaInv", "alpha"};
  t.source = {0, 1, 1, 0};
  t.target = {0, 1, 0, 1};
  t.unit = {0, 1};
  t.inverse = {0, 1, 3, 2};
  t.comp = {
      {0, 0, 0}, {1, 1, 1}, {0, 2, 2}, {1, 3, 3}, {2, 1, 2}, {3, 0, 3}, {2, 3, 0}, {3, 2, 1},
  };
  return t;
}

inline gpdkit::FiniteGroupoid qubit() { return gpdkit::FiniteGroupoid::create(qubit_tables()); }

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline gpdkit::FiniteGroupoid pair(std::size_t n) { return gpdkit::pair_groupoid(labels(n)); }

inline gpdkit::ActionSpec z2_swap(std::size_t points) {
  const auto z2 = gpdkit::cyclic_group(2);
  std::vector<std::vector<std::size_t>> act(2, std::vector<std::size_t>(points));
  for (std::size_t x = 0; x < points; ++x) {
    act[0][x] = x;
    act[1][x] = x ^ 1U;
  }
  return gpdkit::ActionSpec::create(z2, labels(points, ""), act);
}

}  // namespace fixture
