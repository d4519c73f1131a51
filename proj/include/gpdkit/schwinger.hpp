#pragma once

// Selective measurements and their 2-groupoid.
//
// A measurement symbol M(x, y) accepts outcome y and emits outcome x: its
// source is y and its target is x, so M(x, y) o M(y, z) = M(x, z).
//
// A 2-cell phi(a, a'; b, b') transforms M(a, a') into M(b, b') through the
// whiskers M(b, a) and M(a', b'):  M(b, a) o M(a, a') o M(a', b') = M(b, b').
// Vertical composition glues phi(a,a';b,b') and phi(b,b';c,c') into
// phi(a,a';c,c'); horizontal composition glues phi(a,a';b,b') and
// phi(a',a'';b',b'') into phi(a,a'';b,b'').

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gpdkit/algebra.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/matrix.hpp"

namespace gpdkit {

// A family of compatible observables, contributing only its outcome labels.
struct Frame {
  std::string label;
  std::vector<std::string> events;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct EventRef {
  std::string frame;
  std::string event;

  std::string str() const { return frame + "." + event; }
  friend bool operator==(const EventRef&, const EventRef&) = default;
};

using Identification = std::pair<EventRef, EventRef>;
using EventClass = std::size_t;

// Events of several frames, merged along declared identifications. Classes are
// numbered by first occurrence when scanning frames and events in order.
class EventSpace {
 public:
  // Throws UnknownEvent for references to missing frames or events,
  // IntraFrameIdentification when two events of one frame end up in one class
  // and DuplicateLabel for repeated frame or event labels.
  static EventSpace create(std::vector<Frame> frames, std::vector<Identification> identifications);

  const std::vector<Frame>& frames() const noexcept { return d_->frames; }
  const std::vector<Identification>& identifications() const noexcept { return d_->identifications; }

  std::size_t class_count() const noexcept { return d_->members.size(); }
  EventClass class_of(std::size_t frame, std::size_t event) const;
  // Throws UnknownEvent.
  EventClass class_of(const EventRef& ref) const;
  const std::vector<EventRef>& members(EventClass c) const;
  // Member references joined by '~', e.g. "A.a2~B.b1".
  std::string class_label(EventClass c) const;
  std::vector<EventClass> frame_classes(std::size_t frame) const;

  bool operator==(const EventSpace& other) const;

 private:
  struct Data {
    std::vector<Frame> frames;
    std::vector<Identification> identifications;
    std::vector<std::vector<EventClass>> class_of;  // [frame][event]
    std::vector<std::vector<EventRef>> members;
  };

  explicit EventSpace(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

EventSpace build_event_space(std::vector<Frame> frames, std::vector<Identification> identifications);

struct Measurement {
  EventSpace space;
  EventClass target;
  EventClass source;

  bool is_unit() const noexcept { return target == source; }
  bool operator==(const Measurement& other) const;
};

// M(target, source). Throws UnknownEvent for invalid classes.
Measurement measurement(const EventSpace& space, EventClass target, EventClass source);
// The filter M(a) = M(a, a).
Measurement selective(const EventSpace& space, EventClass a);
Measurement inverse(const Measurement& m);

// m2 o m1. Throws NotComposable unless source(m2) == target(m1), and
// ParentMismatch for measurements over different spaces.
Measurement compose_measurements(const Measurement& m2, const Measurement& m1);

// Pair groupoid over the class labels; M(x, y) is the morphism "(x,y)".
FiniteGroupoid total_groupoid(const EventSpace& space);
// Index of M(x, y) in total_groupoid(space). Throws ParentMismatch if `total`
// is not the total groupoid of the measurement's space.
MorphismIndex measurement_morphism(const FiniteGroupoid& total, const Measurement& m);
// delta of M(x, y) in the algebra of `total`. Products of incompatible symbols
// convolve to the zero element.
AlgebraElement measurement_delta(const FiniteGroupoid& total, const Measurement& m);
// The transitions of a single frame: total groupoid restricted to its classes.
FiniteGroupoid frame_groupoid(const EventSpace& space, std::size_t frame);

struct TwoCell {
  EventSpace space;
  EventClass a;
  EventClass a_prime;
  EventClass b;
  EventClass b_prime;

  Measurement source() const { return {space, a, a_prime}; }
  Measurement target() const { return {space, b, b_prime}; }
  Measurement left_whisker() const { return {space, b, a}; }
  Measurement right_whisker() const { return {space, a_prime, b_prime}; }
  // left_whisker o source o right_whisker, which always equals target().
  Measurement whiskered() const;

  bool operator==(const TwoCell& other) const;
};

// Throws UnknownEvent.
TwoCell two_cell(const EventSpace& space, EventClass a, EventClass a_prime, EventClass b,
                 EventClass b_prime);

TwoCell vertical_unit(const Measurement& m);
TwoCell vertical_inverse(const TwoCell& phi);
// 1_{ab}: 1_a => 1_b, i.e. phi(a, a; b, b).
TwoCell horizontal_unit(const EventSpace& space, EventClass a, EventClass b);
TwoCell horizontal_inverse(const TwoCell& phi);

// Throws NotVerticallyComposable unless target(first) == source(second).
TwoCell vcomp(const TwoCell& first, const TwoCell& second);
// Throws NotHorizontallyComposable unless the middle events agree:
// first over (a, a'; b, b'), second over (a', a''; b', b'').
TwoCell hcomp(const TwoCell& first, const TwoCell& second);

struct ExchangeReport {
  TwoCell lhs;  // (phi o_v psi) o_h (phi' o_v psi')
  TwoCell rhs;  // (phi o_h phi') o_v (psi o_h psi')
  bool equal;
};

// Composability errors propagate.
ExchangeReport check_exchange(const TwoCell& phi, const TwoCell& phi_prime, const TwoCell& psi,
                              const TwoCell& psi_prime);

struct ExchangeSweep {
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool exhaustive = false;
};

// Composable quadruples are parameterized by nine events
// (a, a', a'', b, b', b'', c, c', c''):
//   phi = (a,a';b,b'), phi' = (a',a'';b',b''), psi = (b,b';c,c'), psi' = (b',b'';c',c'').
// Spaces with at most `exhaustive_limit` classes are swept completely
// (class_count^9 quadruples); larger ones get `samples` seeded draws.
ExchangeSweep sweep_exchange(const EventSpace& space, std::uint64_t seed = 0,
                             std::size_t samples = 10000, std::size_t exhaustive_limit = 4);

// Factorized coefficients of a combination of 2-cells: the cell
// phi(a, a'; b, b') carries weight conj(T(a, b)) * T'(a', b'). Both factors
// are square over the event classes.
class CellAggregate {
 public:
  // Throws ShapeMismatch.
  static CellAggregate create(EventSpace space, MatrixC t, MatrixC t_prime);
  // T = E_{a,b}, T' = E_{a',b'}.
  static CellAggregate elementary(const TwoCell& cell);

  const EventSpace& space() const noexcept { return space_; }
  const MatrixC& t() const noexcept { return t_; }
  const MatrixC& t_prime() const noexcept { return t_prime_; }

 private:
  CellAggregate(EventSpace s, MatrixC t, MatrixC tp)
      : space_(std::move(s)), t_(std::move(t)), t_prime_(std::move(tp)) {}

  EventSpace space_;
  MatrixC t_;
  MatrixC t_prime_;
};

// T^H A T'. A holds the coefficients A_{x,y} of M(x, y). Throws ShapeMismatch.
MatrixC represent_cells(const CellAggregate& agg, const MatrixC& a);

}  // namespace gpdkit
