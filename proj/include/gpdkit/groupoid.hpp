#pragma once

// Finite groupoids as validated tables.
//
// Conventions used throughout the library:
//   * compose(i, j) is "first j, then i" (i o j), defined iff
//     source(i) == target(j).
//   * Units occupy morphism indices 0..n-1 in object order; the remaining
//     morphisms are sorted by (target, source, label). Every FiniteGroupoid
//     is stored in this canonical order.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "gpdkit/error.hpp"

namespace gpdkit {

using ObjectIndex = std::size_t;
using MorphismIndex = std::size_t;

struct CompEntry {
  MorphismIndex left;    // applied second
  MorphismIndex right;   // applied first
  MorphismIndex result;  // left o right

  friend bool operator==(const CompEntry&, const CompEntry&) = default;
};

// Unvalidated description of a groupoid. Everything that builds a
// FiniteGroupoid goes through one of these.
struct GroupoidTables {
  std::vector<std::string> object_labels;
  std::vector<std::string> morphism_labels;
  std::vector<ObjectIndex> source;
  std::vector<ObjectIndex> target;
  std::vector<MorphismIndex> unit;
  std::vector<MorphismIndex> inverse;
  std::vector<CompEntry> comp;
};

enum class Axiom { closure, source_target, units, associativity, inverses, involution };

std::string_view axiom_name(Axiom a);
// Letter of the classical axiom list (a: source-target, b: units,
// c: associativity, e: inverses and involution); empty for closure.
std::string_view axiom_letter(Axiom a);

struct Violation {
  Axiom axiom;
  std::vector<MorphismIndex> morphisms;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Axiom a) const;
  std::string summary() const;
};

class AxiomViolation : public Error {
 public:
  explicit AxiomViolation(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

// Checks every groupoid axiom on a candidate. Throws IndexOutOfRange when the
// tables are not index-consistent, DuplicateLabel for repeated labels and
// InvalidGroupoid for an empty object set; axiom failures are reported, not
// thrown.
ValidationReport validate(const GroupoidTables& candidate);

// Dense N x N table up to a size guard, sorted association list above it.
// The guard defaults to 1024 and is read from GPDKIT_MAX_N when set.
class CompositionTable {
 public:
  CompositionTable() = default;
  CompositionTable(std::size_t morphism_count, const std::vector<CompEntry>& entries);

  std::optional<MorphismIndex> find(MorphismIndex left, MorphismIndex right) const;
  bool dense() const noexcept { return dense_; }

  static std::size_t dense_limit();

 private:
  static constexpr std::uint32_t kAbsent = UINT32_MAX;

  std::size_t n_ = 0;
  bool dense_ = true;
  std::vector<std::uint32_t> cells_;
  std::vector<CompEntry> sparse_;  // sorted by (left, right)
};

class FiniteGroupoid {
 public:
  // Validates and canonicalizes. Throws AxiomViolation if validation fails.
  static FiniteGroupoid create(GroupoidTables tables);

  struct Tracked;
  // Same as create(), also returning where each candidate morphism landed.
  static Tracked create_tracked(GroupoidTables tables);

  std::size_t object_count() const noexcept { return d_->objects.size(); }
  std::size_t morphism_count() const noexcept { return d_->morphisms.size(); }

  const std::string& object_label(ObjectIndex x) const;
  const std::string& morphism_label(MorphismIndex m) const;
  const std::vector<std::string>& object_labels() const noexcept { return d_->objects; }
  const std::vector<std::string>& morphism_labels() const noexcept { return d_->morphisms; }

  ObjectIndex source(MorphismIndex m) const;
  ObjectIndex target(MorphismIndex m) const;
  MorphismIndex unit(ObjectIndex x) const;
  MorphismIndex inverse(MorphismIndex m) const;
  bool is_unit(MorphismIndex m) const { return m < object_count(); }

  bool composable(MorphismIndex left, MorphismIndex right) const;
  std::optional<MorphismIndex> try_compose(MorphismIndex left, MorphismIndex right) const;
  // Throws NotComposable when source(left) != target(right).
  MorphismIndex compose(MorphismIndex left, MorphismIndex right) const;

  // Morphisms whose source (resp. target) is x, ascending.
  const std::vector<MorphismIndex>& outgoing(ObjectIndex x) const;
  const std::vector<MorphismIndex>& incoming(ObjectIndex x) const;

  std::optional<ObjectIndex> find_object(std::string_view label) const;
  std::optional<MorphismIndex> find_morphism(std::string_view label) const;

  GroupoidTables tables() const;

  // Two handles are equal when their canonical tables coincide.
  bool operator==(const FiniteGroupoid& other) const;
  bool same_instance(const FiniteGroupoid& other) const noexcept { return d_ == other.d_; }

 private:
  struct Data {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<ObjectIndex> source;
    std::vector<ObjectIndex> target;
    std::vector<MorphismIndex> inverse;
    std::vector<std::vector<MorphismIndex>> outgoing;
    std::vector<std::vector<MorphismIndex>> incoming;
    CompositionTable comp;
  };

  explicit FiniteGroupoid(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

struct FiniteGroupoid::Tracked {
  FiniteGroupoid groupoid;
  std::vector<MorphismIndex> new_index;  // candidate index -> canonical index
};

struct OrbitPartition {
  std::vector<std::size_t> orbit_of;             // object -> orbit id
  std::vector<std::vector<ObjectIndex>> orbits;  // ascending object indices
};

// Orbit ids follow the smallest object index they contain.
OrbitPartition orbits(const FiniteGroupoid& g);

struct IsotropyGroup {
  std::vector<MorphismIndex> elements;           // elements[0] is the unit
  std::vector<std::vector<std::size_t>> table;   // positions in `elements`
};

IsotropyGroup isotropy_group(const FiniteGroupoid& g, ObjectIndex x);

bool is_connected(const FiniteGroupoid& g);
bool is_principal(const FiniteGroupoid& g);

struct Component {
  FiniteGroupoid groupoid;
  std::vector<ObjectIndex> parent_object;      // component object -> parent object
  std::vector<MorphismIndex> parent_morphism;  // component morphism -> parent morphism
};

// All morphisms with both endpoints in `objects` (ascending, duplicates
// ignored). Throws EmptyRestriction when `objects` is empty.
Component full_subgroupoid(const FiniteGroupoid& g, const std::vector<ObjectIndex>& objects);

// One full subgroupoid per orbit, in orbit order.
std::vector<Component> decompose(const FiniteGroupoid& g);

struct Isomorphism {
  std::vector<ObjectIndex> objects;
  std::vector<MorphismIndex> morphisms;
};

// Constructs an isomorphism when one exists: components are matched by object
// count and isotropy group, then each connected piece is mapped through a
// spanning family of connecting morphisms.
std::optional<Isomorphism> find_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b);

bool is_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, const Isomorphism& iso);

}  // namespace gpdkit
