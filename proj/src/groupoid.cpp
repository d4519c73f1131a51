#include "gpdkit/groupoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace gpdkit {

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::closure:
      return "closure";
    case Axiom::source_target:
      return "source-target";
    case Axiom::units:
      return "units";
    case Axiom::associativity:
      return "associativity";
    case Axiom::inverses:
      return "inverses";
    case Axiom::involution:
      return "involution";
  }
  return "unknown";
}

std::string_view axiom_letter(Axiom a) {
  switch (a) {
    case Axiom::source_target:
      return "a";
    case Axiom::units:
      return "b";
    case Axiom::associativity:
      return "c";
    case Axiom::inverses:
    case Axiom::involution:
      return "e";
    case Axiom::closure:
      break;
  }
  return "";
}

bool ValidationReport::has(Axiom a) const {
  return std::any_of(violations.begin(), violations.end(),
                     [a](const Violation& v) { return v.axiom == a; });
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    out << "\n  " << axiom_name(v.axiom);
    if (const auto letter = axiom_letter(v.axiom); !letter.empty()) out << " (axiom " << letter << ")";
    out << ": " << v.message;
  }
  return out.str();
}

AxiomViolation::AxiomViolation(ValidationReport report)
    : Error("groupoid axioms violated: " + report.summary()), report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// CompositionTable

std::size_t CompositionTable::dense_limit() {
  if (const char* env = std::getenv("GPDKIT_MAX_N")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 1024;
}

CompositionTable::CompositionTable(std::size_t morphism_count,
                                   const std::vector<CompEntry>& entries)
    : n_(morphism_count), dense_(morphism_count <= dense_limit()) {
  if (dense_) {
    cells_.assign(n_ * n_, kAbsent);
    for (const auto& e : entries) {
      auto& cell = cells_[e.left * n_ + e.right];
      if (cell == kAbsent) cell = static_cast<std::uint32_t>(e.result);
    }
  } else {
    sparse_ = entries;
    std::stable_sort(sparse_.begin(), sparse_.end(), [](const CompEntry& a, const CompEntry& b) {
      return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });
    sparse_.erase(std::unique(sparse_.begin(), sparse_.end(),
                              [](const CompEntry& a, const CompEntry& b) {
                                return a.left == b.left && a.right == b.right;
                              }),
                  sparse_.end());
  }
}

std::optional<MorphismIndex> CompositionTable::find(MorphismIndex left,
                                                    MorphismIndex right) const {
  if (left >= n_ || right >= n_) return std::nullopt;
  if (dense_) {
    auto cell = cells_[left * n_ + right];
    if (cell == kAbsent) return std::nullopt;
    return cell;
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::make_pair(left, right),
                             [](const CompEntry& e, const std::pair<std::size_t, std::size_t>& k) {
                               return std::tie(e.left, e.right) < std::tie(k.first, k.second);
                             });
  if (it == sparse_.end() || it->left != left || it->right != right) return std::nullopt;
  return it->result;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

void check_shape(const GroupoidTables& c) {
  const std::size_t n = c.object_labels.size();
  const std::size_t N = c.morphism_labels.size();
  if (n == 0) throw InvalidGroupoid("a groupoid needs at least one object");
  auto len = [](std::string_view what, std::size_t got, std::size_t want) {
    if (got != want) {
      throw IndexOutOfRange(std::string(what) + " table has " + idx(got) + " entries, expected " +
                            idx(want));
    }
  };
  len("source", c.source.size(), N);
  len("target", c.target.size(), N);
  len("inverse", c.inverse.size(), N);
  len("unit", c.unit.size(), n);
  for (std::size_t m = 0; m < N; ++m) {
    if (c.source[m] >= n || c.target[m] >= n) {
      throw IndexOutOfRange("morphism " + idx(m) + " has an endpoint outside the object range");
    }
    if (c.inverse[m] >= N) throw IndexOutOfRange("inverse of morphism " + idx(m) + " out of range");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (c.unit[x] >= N) throw IndexOutOfRange("unit of object " + idx(x) + " out of range");
  }
  for (const auto& e : c.comp) {
    if (e.left >= N || e.right >= N || e.result >= N) {
      throw IndexOutOfRange("composition entry (" + idx(e.left) + ", " + idx(e.right) + ") -> " +
                            idx(e.result) + " out of range");
    }
  }
  auto distinct = [](const std::vector<std::string>& labels, std::string_view what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw DuplicateLabel("duplicate " + std::string(what) + " label '" + l + "'");
      }
    }
  };
  distinct(c.object_labels, "object");
  distinct(c.morphism_labels, "morphism");
}

}  // namespace

ValidationReport validate(const GroupoidTables& c) {
  check_shape(c);
  const std::size_t n = c.object_labels.size();
  const std::size_t N = c.morphism_labels.size();
  auto lab = [&c](std::size_t m) { return "'" + c.morphism_labels[m] + "'"; };
  ValidationReport report;
  auto add = [&report](Axiom a, std::vector<MorphismIndex> ms, std::string msg) {
    report.violations.push_back({a, std::move(ms), std::move(msg)});
  };

  for (std::size_t x = 0; x < n; ++x) {
    const auto u = c.unit[x];
    if (c.source[u] != x || c.target[u] != x) {
      add(Axiom::units, {u}, "unit of object '" + c.object_labels[x] + "'" + " is not a loop at that object");
    }
  }

  // Closure: exactly one entry per composable pair and none elsewhere.
  CompositionTable table(N, c.comp);
  {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : c.comp) {
      if (!seen.insert({e.left, e.right}).second) {
        add(Axiom::closure, {e.left, e.right},
            "pair (" + lab(e.left) + ", " + lab(e.right) + ") has more than one entry");
      }
      if (c.source[e.left] != c.target[e.right]) {
        add(Axiom::closure, {e.left, e.right},
            "entry for non-composable pair (" + lab(e.left) + ", " + lab(e.right) + ")");
      }
    }
  }
  std::vector<std::vector<MorphismIndex>> into(n);  // morphisms by target
  for (std::size_t m = 0; m < N; ++m) into[c.target[m]].push_back(m);
  for (std::size_t i = 0; i < N; ++i) {
    for (auto j : into[c.source[i]]) {
      if (!table.find(i, j)) {
        add(Axiom::closure, {i, j}, "composable pair (" + lab(i) + ", " + lab(j) + ") has no entry");
      }
    }
  }

  for (const auto& e : c.comp) {
    if (c.source[e.left] != c.target[e.right]) continue;
    if (c.source[e.result] != c.source[e.right] || c.target[e.result] != c.target[e.left]) {
      add(Axiom::source_target, {e.left, e.right, e.result},
          "composite " + lab(e.left) + " o " + lab(e.right) + " = " + lab(e.result) +
              " has wrong endpoints");
    }
  }

  for (std::size_t m = 0; m < N; ++m) {
    auto left = table.find(c.unit[c.target[m]], m);
    if (left && *left != m) {
      add(Axiom::units, {m}, "left unit law fails for morphism " + lab(m));
    }
    auto right = table.find(m, c.unit[c.source[m]]);
    if (right && *right != m) {
      add(Axiom::units, {m}, "right unit law fails for morphism " + lab(m));
    }
  }

  for (std::size_t m = 0; m < N; ++m) {
    const auto inv = c.inverse[m];
    if (c.source[inv] != c.target[m] || c.target[inv] != c.source[m]) {
      add(Axiom::inverses, {m, inv}, "inverse of " + lab(m) + " does not reverse its endpoints");
      continue;
    }
    auto a = table.find(m, inv);
    if (a && *a != c.unit[c.target[m]]) {
      add(Axiom::inverses, {m, inv}, lab(m) + " o inverse is not the unit at its target");
    }
    auto b = table.find(inv, m);
    if (b && *b != c.unit[c.source[m]]) {
      add(Axiom::inverses, {m, inv}, "inverse o " + lab(m) + " is not the unit at its source");
    }
    if (c.inverse[inv] != m) {
      add(Axiom::involution, {m, inv}, "inverse of the inverse of " + lab(m) + " is not itself");
    }
  }

  // Composable triples i o j o k only.
  for (std::size_t i = 0; i < N; ++i) {
    for (auto j : into[c.source[i]]) {
      auto ij = table.find(i, j);
      if (!ij) continue;
      for (auto k : into[c.source[j]]) {
        auto jk = table.find(j, k);
        if (!jk) continue;
        auto lhs = table.find(*ij, k);
        auto rhs = table.find(i, *jk);
        if (lhs.has_value() != rhs.has_value() || (lhs && *lhs != *rhs)) {
          add(Axiom::associativity, {i, j, k},
              "(" + lab(i) + " o " + lab(j) + ") o " + lab(k) + " differs from " + lab(i) +
                  " o (" + lab(j) + " o " + lab(k) + ")");
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// FiniteGroupoid

FiniteGroupoid FiniteGroupoid::create(GroupoidTables tables) {
  return create_tracked(std::move(tables)).groupoid;
}

FiniteGroupoid::Tracked FiniteGroupoid::create_tracked(GroupoidTables c) {
  auto report = validate(c);
  if (!report.ok()) throw AxiomViolation(std::move(report));

  const std::size_t n = c.object_labels.size();
  const std::size_t N = c.morphism_labels.size();
  std::vector<MorphismIndex> order;
  order.reserve(N);
  std::vector<bool> is_unit(N, false);
  for (std::size_t x = 0; x < n; ++x) {
    order.push_back(c.unit[x]);
    is_unit[c.unit[x]] = true;
  }
  std::vector<MorphismIndex> rest;
  for (std::size_t m = 0; m < N; ++m) {
    if (!is_unit[m]) rest.push_back(m);
  }
  std::sort(rest.begin(), rest.end(), [&c](MorphismIndex a, MorphismIndex b) {
    return std::tie(c.target[a], c.source[a], c.morphism_labels[a]) <
           std::tie(c.target[b], c.source[b], c.morphism_labels[b]);
  });
  order.insert(order.end(), rest.begin(), rest.end());

  std::vector<MorphismIndex> new_index(N);
  for (std::size_t k = 0; k < N; ++k) new_index[order[k]] = k;

  auto d = std::make_shared<Data>();
  d->objects = std::move(c.object_labels);
  d->morphisms.resize(N);
  d->source.resize(N);
  d->target.resize(N);
  d->inverse.resize(N);
  d->outgoing.resize(n);
  d->incoming.resize(n);
  for (std::size_t k = 0; k < N; ++k) {
    const auto old = order[k];
    d->morphisms[k] = std::move(c.morphism_labels[old]);
    d->source[k] = c.source[old];
    d->target[k] = c.target[old];
    d->inverse[k] = new_index[c.inverse[old]];
    d->outgoing[d->source[k]].push_back(k);
    d->incoming[d->target[k]].push_back(k);
  }
  std::vector<CompEntry> comp;
  comp.reserve(c.comp.size());
  for (const auto& e : c.comp) {
    comp.push_back({new_index[e.left], new_index[e.right], new_index[e.result]});
  }
  d->comp = CompositionTable(N, comp);
  return {FiniteGroupoid(std::move(d)), std::move(new_index)};
}

const std::string& FiniteGroupoid::object_label(ObjectIndex x) const {
  if (x >= object_count()) throw IndexOutOfRange("object " + idx(x) + " out of range");
  return d_->objects[x];
}

const std::string& FiniteGroupoid::morphism_label(MorphismIndex m) const {
  if (m >= morphism_count()) throw IndexOutOfRange("morphism " + idx(m) + " out of range");
  return d_->morphisms[m];
}

ObjectIndex FiniteGroupoid::source(MorphismIndex m) const {
  if (m >= morphism_count()) throw IndexOutOfRange("morphism " + idx(m) + " out of range");
  return d_->source[m];
}

ObjectIndex FiniteGroupoid::target(MorphismIndex m) const {
  if (m >= morphism_count()) throw IndexOutOfRange("morphism " + idx(m) + " out of range");
  return d_->target[m];
}

MorphismIndex FiniteGroupoid::unit(ObjectIndex x) const {
  if (x >= object_count()) throw IndexOutOfRange("object " + idx(x) + " out of range");
  return x;
}

MorphismIndex FiniteGroupoid::inverse(MorphismIndex m) const {
  if (m >= morphism_count()) throw IndexOutOfRange("morphism " + idx(m) + " out of range");
  return d_->inverse[m];
}

bool FiniteGroupoid::composable(MorphismIndex left, MorphismIndex right) const {
  return source(left) == target(right);
}

std::optional<MorphismIndex> FiniteGroupoid::try_compose(MorphismIndex left,
                                                         MorphismIndex right) const {
  if (!composable(left, right)) return std::nullopt;
  return d_->comp.find(left, right);
}

MorphismIndex FiniteGroupoid::compose(MorphismIndex left, MorphismIndex right) const {
  auto r = try_compose(left, right);
  if (!r) throw NotComposable(left, right);
  return *r;
}

const std::vector<MorphismIndex>& FiniteGroupoid::outgoing(ObjectIndex x) const {
  if (x >= object_count()) throw IndexOutOfRange("object " + idx(x) + " out of range");
  return d_->outgoing[x];
}

const std::vector<MorphismIndex>& FiniteGroupoid::incoming(ObjectIndex x) const {
  if (x >= object_count()) throw IndexOutOfRange("object " + idx(x) + " out of range");
  return d_->incoming[x];
}

std::optional<ObjectIndex> FiniteGroupoid::find_object(std::string_view label) const {
  auto it = std::find(d_->objects.begin(), d_->objects.end(), label);
  if (it == d_->objects.end()) return std::nullopt;
  return static_cast<ObjectIndex>(it - d_->objects.begin());
}

std::optional<MorphismIndex> FiniteGroupoid::find_morphism(std::string_view label) const {
  auto it = std::find(d_->morphisms.begin(), d_->morphisms.end(), label);
  if (it == d_->morphisms.end()) return std::nullopt;
  return static_cast<MorphismIndex>(it - d_->morphisms.begin());
}

GroupoidTables FiniteGroupoid::tables() const {
  GroupoidTables t;
  t.object_labels = d_->objects;
  t.morphism_labels = d_->morphisms;
  t.source = d_->source;
  t.target = d_->target;
  t.inverse = d_->inverse;
  t.unit.resize(object_count());
  std::iota(t.unit.begin(), t.unit.end(), MorphismIndex{0});
  for (std::size_t i = 0; i < morphism_count(); ++i) {
    for (auto j : d_->incoming[d_->source[i]]) {
      t.comp.push_back({i, j, *d_->comp.find(i, j)});
    }
  }
  return t;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& other) const {
  if (d_ == other.d_) return true;
  if (d_->objects != other.d_->objects || d_->morphisms != other.d_->morphisms ||
      d_->source != other.d_->source || d_->target != other.d_->target ||
      d_->inverse != other.d_->inverse) {
    return false;
  }
  for (std::size_t i = 0; i < morphism_count(); ++i) {
    for (auto j : d_->incoming[d_->source[i]]) {
      if (d_->comp.find(i, j) != other.d_->comp.find(i, j)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structure

OrbitPartition orbits(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  OrbitPartition p;
  p.orbit_of.assign(n, kUnset);
  for (ObjectIndex start = 0; start < n; ++start) {
    if (p.orbit_of[start] != kUnset) continue;
    const std::size_t id = p.orbits.size();
    std::vector<ObjectIndex> members;
    std::deque<ObjectIndex> queue{start};
    p.orbit_of[start] = id;
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      members.push_back(x);
      for (auto m : g.outgoing(x)) {
        auto y = g.target(m);
        if (p.orbit_of[y] == kUnset) {
          p.orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    p.orbits.push_back(std::move(members));
  }
  return p;
}

IsotropyGroup isotropy_group(const FiniteGroupoid& g, ObjectIndex x) {
  IsotropyGroup iso;
  for (auto m : g.outgoing(x)) {
    if (g.target(m) == x) iso.elements.push_back(m);
  }
  const std::size_t k = iso.elements.size();
  std::map<MorphismIndex, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos[iso.elements[i]] = i;
  iso.table.assign(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      iso.table[i][j] = pos.at(g.compose(iso.elements[i], iso.elements[j]));
    }
  }
  return iso;
}

bool is_connected(const FiniteGroupoid& g) { return orbits(g).orbits.size() == 1; }

bool is_principal(const FiniteGroupoid& g) {
  std::set<std::pair<ObjectIndex, ObjectIndex>> ends;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!ends.insert({g.source(m), g.target(m)}).second) return false;
  }
  return true;
}

Component full_subgroupoid(const FiniteGroupoid& g, const std::vector<ObjectIndex>& objects) {
  if (objects.empty()) throw EmptyRestriction("restriction to an empty set of objects");
  std::vector<ObjectIndex> objs = objects;
  std::sort(objs.begin(), objs.end());
  objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
  std::vector<std::size_t> local(g.object_count(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (objs[i] >= g.object_count()) throw IndexOutOfRange("object " + idx(objs[i]) + " out of range");
    local[objs[i]] = i;
  }

  std::vector<MorphismIndex> kept;
  std::vector<std::size_t> local_m(g.morphism_count(), static_cast<std::size_t>(-1));
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (local[g.source(m)] != static_cast<std::size_t>(-1) &&
        local[g.target(m)] != static_cast<std::size_t>(-1)) {
      local_m[m] = kept.size();
      kept.push_back(m);
    }
  }

  GroupoidTables t;
  for (auto x : objs) {
    t.object_labels.push_back(g.object_label(x));
    t.unit.push_back(local_m[g.unit(x)]);
  }
  for (auto m : kept) {
    t.morphism_labels.push_back(g.morphism_label(m));
    t.source.push_back(local[g.source(m)]);
    t.target.push_back(local[g.target(m)]);
    t.inverse.push_back(local_m[g.inverse(m)]);
  }
  for (auto i : kept) {
    for (auto j : g.incoming(g.source(i))) {
      if (local_m[j] == static_cast<std::size_t>(-1)) continue;
      t.comp.push_back({local_m[i], local_m[j], local_m[g.compose(i, j)]});
    }
  }
  auto built = FiniteGroupoid::create_tracked(std::move(t));
  Component c{built.groupoid, objs, std::vector<MorphismIndex>(kept.size())};
  for (std::size_t k = 0; k < kept.size(); ++k) c.parent_morphism[built.new_index[k]] = kept[k];
  return c;
}

std::vector<Component> decompose(const FiniteGroupoid& g) {
  std::vector<Component> out;
  for (const auto& orbit : orbits(g).orbits) out.push_back(full_subgroupoid(g, orbit));
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using GroupMap = std::vector<std::size_t>;
using Table = std::vector<std::vector<std::size_t>>;

std::size_t element_order(const Table& t, std::size_t g) {
  std::size_t order = 1;
  for (std::size_t h = g; h != 0; h = t[h][g]) ++order;
  return order;
}

std::vector<bool> generated(const Table& t, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(t.size(), false);
  std::deque<std::size_t> queue{0};
  in[0] = true;
  while (!queue.empty()) {
    auto h = queue.front();
    queue.pop_front();
    for (auto s : gens) {
      auto p = t[h][s];
      if (!in[p]) {
        in[p] = true;
        queue.push_back(p);
      }
    }
  }
  return in;
}

std::optional<GroupMap> extend_from_generators(const Table& a, const Table& b,
                                               const std::vector<std::size_t>& gens,
                                               const std::vector<std::size_t>& images) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  GroupMap map(a.size(), kUnset);
  map[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto h = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto p = a[h][gens[i]];
      auto q = b[map[h]][images[i]];
      if (map[p] == kUnset) {
        map[p] = q;
        queue.push_back(p);
      } else if (map[p] != q) {
        return std::nullopt;
      }
    }
  }
  std::vector<bool> hit(b.size(), false);
  for (auto v : map) {
    if (v == kUnset || hit[v]) return std::nullopt;
    hit[v] = true;
  }
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (map[a[x][y]] != b[map[x]][map[y]]) return std::nullopt;
    }
  }
  return map;
}

// Position 0 must be the identity in both tables.
std::optional<GroupMap> find_group_isomorphism(const Table& a, const Table& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::size_t> gens;
  auto in = generated(a, gens);
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (!in[g]) {
      gens.push_back(g);
      in = generated(a, gens);
    }
  }
  std::vector<std::size_t> b_order(b.size());
  for (std::size_t h = 0; h < b.size(); ++h) b_order[h] = element_order(b, h);

  std::vector<std::size_t> images(gens.size());
  std::optional<GroupMap> found;
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) {
      found = extend_from_generators(a, b, gens, images);
      return found.has_value();
    }
    const auto want = element_order(a, gens[k]);
    for (std::size_t h = 0; h < b.size(); ++h) {
      if (b_order[h] != want) continue;
      images[k] = h;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return found;
}

// Both groupoids connected with equal object counts.
std::optional<Isomorphism> connected_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const std::size_t n = a.object_count();
  if (n != b.object_count() || a.morphism_count() != b.morphism_count()) return std::nullopt;
  auto ga = isotropy_group(a, 0);
  auto gb = isotropy_group(b, 0);
  auto phi = find_group_isomorphism(ga.table, gb.table);
  if (!phi) return std::nullopt;
  std::map<MorphismIndex, std::size_t> pos_a;
  for (std::size_t i = 0; i < ga.elements.size(); ++i) pos_a[ga.elements[i]] = i;

  auto connectors = [n](const FiniteGroupoid& g) {
    constexpr auto kUnset = static_cast<MorphismIndex>(-1);
    std::vector<MorphismIndex> tau(n, kUnset);
    tau[0] = g.unit(0);
    for (auto m : g.outgoing(0)) {
      if (tau[g.target(m)] == kUnset) tau[g.target(m)] = m;
    }
    return tau;
  };
  auto tau = connectors(a);
  auto sigma = connectors(b);

  Isomorphism iso;
  iso.objects.resize(n);
  std::iota(iso.objects.begin(), iso.objects.end(), ObjectIndex{0});
  iso.morphisms.resize(a.morphism_count());
  for (MorphismIndex m = 0; m < a.morphism_count(); ++m) {
    auto x = a.source(m);
    auto y = a.target(m);
    auto loop = a.compose(a.inverse(tau[y]), a.compose(m, tau[x]));
    auto image = gb.elements[(*phi)[pos_a.at(loop)]];
    iso.morphisms[m] = b.compose(sigma[y], b.compose(image, b.inverse(sigma[x])));
  }
  if (!is_isomorphism(a, b, iso)) return std::nullopt;
  return iso;
}

}  // namespace

bool is_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, const Isomorphism& iso) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
  if (iso.objects.size() != a.object_count() || iso.morphisms.size() != a.morphism_count()) {
    return false;
  }
  std::vector<bool> hit_o(b.object_count(), false);
  for (auto y : iso.objects) {
    if (y >= b.object_count() || hit_o[y]) return false;
    hit_o[y] = true;
  }
  std::vector<bool> hit_m(b.morphism_count(), false);
  for (auto m : iso.morphisms) {
    if (m >= b.morphism_count() || hit_m[m]) return false;
    hit_m[m] = true;
  }
  for (MorphismIndex m = 0; m < a.morphism_count(); ++m) {
    const auto fm = iso.morphisms[m];
    if (b.source(fm) != iso.objects[a.source(m)] || b.target(fm) != iso.objects[a.target(m)]) {
      return false;
    }
  }
  for (MorphismIndex m = 0; m < a.morphism_count(); ++m) {
    const auto fm = iso.morphisms[m];
    for (auto j : a.incoming(a.source(m))) {
      if (iso.morphisms[a.compose(m, j)] != b.compose(fm, iso.morphisms[j])) return false;
    }
  }
  for (ObjectIndex x = 0; x < a.object_count(); ++x) {
    if (iso.morphisms[a.unit(x)] != b.unit(iso.objects[x])) return false;
  }
  return true;
}

std::optional<Isomorphism> find_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) {
    return std::nullopt;
  }
  auto ca = decompose(a);
  auto cb = decompose(b);
  if (ca.size() != cb.size()) return std::nullopt;

  std::vector<std::optional<std::size_t>> match(ca.size());
  std::vector<bool> used(cb.size(), false);
  std::vector<Isomorphism> pieces(ca.size());
  std::map<std::pair<std::size_t, std::size_t>, std::optional<Isomorphism>> memo;
  auto piece = [&](std::size_t i, std::size_t j) -> const std::optional<Isomorphism>& {
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it == memo.end()) {
      it = memo.emplace(key, connected_isomorphism(ca[i].groupoid, cb[j].groupoid)).first;
    }
    return it->second;
  };
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == ca.size()) return true;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (used[j]) continue;
      if (ca[i].groupoid.object_count() != cb[j].groupoid.object_count() ||
          ca[i].groupoid.morphism_count() != cb[j].groupoid.morphism_count()) {
        continue;
      }
      const auto& p = piece(i, j);
      if (!p) continue;
      used[j] = true;
      match[i] = j;
      pieces[i] = *p;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;

  Isomorphism iso;
  iso.objects.resize(a.object_count());
  iso.morphisms.resize(a.morphism_count());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const auto& from = ca[i];
    const auto& to = cb[*match[i]];
    for (std::size_t x = 0; x < from.parent_object.size(); ++x) {
      iso.objects[from.parent_object[x]] = to.parent_object[pieces[i].objects[x]];
    }
    for (std::size_t m = 0; m < from.parent_morphism.size(); ++m) {
      iso.morphisms[from.parent_morphism[m]] = to.parent_morphism[pieces[i].morphisms[m]];
    }
  }
  if (!is_isomorphism(a, b, iso)) return std::nullopt;
  return iso;
}

}  // namespace gpdkit
