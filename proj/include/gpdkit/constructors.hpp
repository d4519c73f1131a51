#pragma once

// Canonical groupoid families and closure operations.
//
// Orientation of pair-groupoid morphisms: the label "(x,y)" names the
// morphism y -> x (target first), so "(x,y)" o "(y,z)" = "(x,z)".

#include <cstddef>
#include <string>
#include <vector>

#include "gpdkit/groupoid.hpp"

namespace gpdkit {

// A finite group given by its full Cayley table. Validated on construction;
// element 0 need not be the identity.
class GroupTable {
 public:
  // mult[i][j] is element_labels[i] * element_labels[j].
  static GroupTable create(std::vector<std::string> element_labels,
                           std::vector<std::vector<std::size_t>> mult);

  std::size_t order() const noexcept { return labels_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_.at(a).at(b); }
  std::size_t inverse(std::size_t a) const { return inv_.at(a); }
  const std::string& label(std::size_t a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  GroupTable() = default;

  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::size_t> inv_;
  std::size_t identity_ = 0;
};

GroupTable cyclic_group(std::size_t order);
// Permutations of {0..degree-1} in lexicographic order, composed as functions:
// (p * q)(i) = p(q(i)).
GroupTable symmetric_group(std::size_t degree);

// A left action of a group on a finite set, act[g][x] = g . x.
class ActionSpec {
 public:
  static ActionSpec create(GroupTable group, std::vector<std::string> point_labels,
                           std::vector<std::vector<std::size_t>> act);

  const GroupTable& group() const noexcept { return group_; }
  const std::vector<std::string>& points() const noexcept { return points_; }
  std::size_t act(std::size_t g, std::size_t x) const { return act_.at(g).at(x); }

 private:
  ActionSpec(GroupTable g) : group_(std::move(g)) {}

  GroupTable group_;
  std::vector<std::string> points_;
  std::vector<std::vector<std::size_t>> act_;
};

// All ordered pairs (x,y) with unit (x,x) and inverse (y,x).
FiniteGroupoid pair_groupoid(const std::vector<std::string>& labels);

// Only units; the classical bit is units_only({"0", "1"}).
FiniteGroupoid units_only(const std::vector<std::string>& labels);

// One object "pt", one morphism per group element.
FiniteGroupoid group_as_groupoid(const GroupTable& group);

// Morphisms (g,x): x -> g.x, composed as (g',g.x) o (g,x) = (g'g, x).
FiniteGroupoid action_groupoid(const ActionSpec& action);

// Full subgroupoid on `objects`. Throws EmptyRestriction.
FiniteGroupoid restrict(const FiniteGroupoid& g, const std::vector<ObjectIndex>& objects);

// Labels are prefixed "L." and "R."; nothing composes across the halves.
FiniteGroupoid disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right);

}  // namespace gpdkit
