#include "gpdkit/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace gpdkit {

namespace {

void require_distinct(const std::vector<std::string>& labels, std::string_view what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw DuplicateLabel("duplicate " + std::string(what) + " label '" + l + "'");
    }
  }
}

}  // namespace

GroupTable GroupTable::create(std::vector<std::string> labels,
                              std::vector<std::vector<std::size_t>> mult) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidGroupTable("a group needs at least one element");
  require_distinct(labels, "group element");
  if (mult.size() != n) throw InvalidGroupTable("multiplication table has the wrong number of rows");
  for (const auto& row : mult) {
    if (row.size() != n) throw InvalidGroupTable("multiplication table row has the wrong length");
    for (auto v : row) {
      if (v >= n) throw InvalidGroupTable("multiplication table entry out of range");
    }
  }

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mult[e][x] == x && mult[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw InvalidGroupTable("no two-sided identity");

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) {
          throw InvalidGroupTable("multiplication is not associative at (" + labels[a] + ", " +
                                  labels[b] + ", " + labels[c] + ")");
        }
      }
    }
  }

  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = std::find_if(mult[a].begin(), mult[a].end(), [&](std::size_t v) { return v == *identity; });
    if (it == mult[a].end()) throw InvalidGroupTable("element '" + labels[a] + "' has no inverse");
    const auto b = static_cast<std::size_t>(it - mult[a].begin());
    if (mult[b][a] != *identity) throw InvalidGroupTable("element '" + labels[a] + "' has no two-sided inverse");
    inv[a] = b;
  }

  GroupTable t;
  t.labels_ = std::move(labels);
  t.mult_ = std::move(mult);
  t.inv_ = std::move(inv);
  t.identity_ = *identity;
  return t;
}

GroupTable cyclic_group(std::size_t order) {
  if (order == 0) throw InvalidGroupTable("cyclic group of order 0");
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i) {
    labels.push_back(i == 0 ? "e" : "r" + std::to_string(i));
    for (std::size_t j = 0; j < order; ++j) mult[i][j] = (i + j) % order;
  }
  return GroupTable::create(std::move(labels), std::move(mult));
}

GroupTable symmetric_group(std::size_t degree) {
  if (degree == 0) throw InvalidGroupTable("symmetric group of degree 0");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(degree);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string l = "p";
    for (auto v : q) l += std::to_string(v);
    labels.push_back(std::move(l));
  }
  const std::size_t n = perms.size();
  std::vector<std::vector<std::size_t>> mult(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> c(degree);
      for (std::size_t i = 0; i < degree; ++i) c[i] = perms[a][perms[b][i]];
      mult[a][b] = static_cast<std::size_t>(
          std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return GroupTable::create(std::move(labels), std::move(mult));
}

ActionSpec ActionSpec::create(GroupTable group, std::vector<std::string> points,
                              std::vector<std::vector<std::size_t>> act) {
  require_distinct(points, "point");
  if (points.empty()) throw InvalidAction("an action needs a nonempty set");
  const std::size_t order = group.order();
  const std::size_t n = points.size();
  if (act.size() != order) throw InvalidAction("action table needs one row per group element");
  for (const auto& row : act) {
    if (row.size() != n) throw InvalidAction("action row has the wrong length");
    for (auto v : row) {
      if (v >= n) throw InvalidAction("action table entry out of range");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (act[group.identity()][x] != x) {
      throw InvalidAction("identity moves point '" + points[x] + "'");
    }
  }
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      for (std::size_t x = 0; x < n; ++x) {
        if (act[g][act[h][x]] != act[group.multiply(g, h)][x]) {
          throw InvalidAction("action is not compatible with the group law at (" + group.label(g) +
                              ", " + group.label(h) + ", " + points[x] + ")");
        }
      }
    }
  }
  ActionSpec a(std::move(group));
  a.points_ = std::move(points);
  a.act_ = std::move(act);
  return a;
}

FiniteGroupoid pair_groupoid(const std::vector<std::string>& labels) {
  if (labels.empty()) throw InvalidGroupoid("a pair groupoid needs at least one object");
  require_distinct(labels, "object");
  const std::size_t n = labels.size();
  // Morphism (x,y) stored at x * n + y.
  GroupoidTables t;
  t.object_labels = labels;
  for (std::size_t x = 0; x < n; ++x) {
    t.unit.push_back(x * n + x);
    for (std::size_t y = 0; y < n; ++y) {
      t.morphism_labels.push_back("(" + labels[x] + "," + labels[y] + ")");
      t.target.push_back(x);
      t.source.push_back(y);
      t.inverse.push_back(y * n + x);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) t.comp.push_back({x * n + y, y * n + z, x * n + z});
    }
  }
  return FiniteGroupoid::create(std::move(t));
}

FiniteGroupoid units_only(const std::vector<std::string>& labels) {
  GroupoidTables t;
  t.object_labels = labels;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    t.morphism_labels.push_back("1_" + labels[x]);
    t.source.push_back(x);
    t.target.push_back(x);
    t.unit.push_back(x);
    t.inverse.push_back(x);
    t.comp.push_back({x, x, x});
  }
  return FiniteGroupoid::create(std::move(t));
}

FiniteGroupoid group_as_groupoid(const GroupTable& group) {
  const std::size_t n = group.order();
  GroupoidTables t;
  t.object_labels = {"pt"};
  t.unit = {group.identity()};
  for (std::size_t a = 0; a < n; ++a) {
    t.morphism_labels.push_back(group.label(a));
    t.source.push_back(0);
    t.target.push_back(0);
    t.inverse.push_back(group.inverse(a));
    for (std::size_t b = 0; b < n; ++b) t.comp.push_back({a, b, group.multiply(a, b)});
  }
  return FiniteGroupoid::create(std::move(t));
}

FiniteGroupoid action_groupoid(const ActionSpec& action) {
  const auto& group = action.group();
  const std::size_t order = group.order();
  const std::size_t n = action.points().size();
  // Morphism (g,x) stored at g * n + x.
  auto at = [n](std::size_t g, std::size_t x) { return g * n + x; };
  GroupoidTables t;
  t.object_labels = action.points();
  for (std::size_t x = 0; x < n; ++x) t.unit.push_back(at(group.identity(), x));
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t x = 0; x < n; ++x) {
      t.morphism_labels.push_back("(" + group.label(g) + "," + action.points()[x] + ")");
      t.source.push_back(x);
      t.target.push_back(action.act(g, x));
      t.inverse.push_back(at(group.inverse(g), action.act(g, x)));
    }
  }
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t x = 0; x < n; ++x) {
      const auto gx = action.act(g, x);
      for (std::size_t h = 0; h < order; ++h) {
        t.comp.push_back({at(h, gx), at(g, x), at(group.multiply(h, g), x)});
      }
    }
  }
  return FiniteGroupoid::create(std::move(t));
}

FiniteGroupoid restrict(const FiniteGroupoid& g, const std::vector<ObjectIndex>& objects) {
  return full_subgroupoid(g, objects).groupoid;
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& left, const FiniteGroupoid& right) {
  const auto a = left.tables();
  const auto b = right.tables();
  const std::size_t no = a.object_labels.size();
  const std::size_t nm = a.morphism_labels.size();
  GroupoidTables t;
  for (const auto& l : a.object_labels) t.object_labels.push_back("L." + l);
  for (const auto& l : b.object_labels) t.object_labels.push_back("R." + l);
  for (const auto& l : a.morphism_labels) t.morphism_labels.push_back("L." + l);
  for (const auto& l : b.morphism_labels) t.morphism_labels.push_back("R." + l);
  t.source = a.source;
  t.target = a.target;
  t.unit = a.unit;
  t.inverse = a.inverse;
  t.comp = a.comp;
  for (auto s : b.source) t.source.push_back(s + no);
  for (auto s : b.target) t.target.push_back(s + no);
  for (auto u : b.unit) t.unit.push_back(u + nm);
  for (auto i : b.inverse) t.inverse.push_back(i + nm);
  for (const auto& e : b.comp) t.comp.push_back({e.left + nm, e.right + nm, e.result + nm});
  return FiniteGroupoid::create(std::move(t));
}

}  // namespace gpdkit
