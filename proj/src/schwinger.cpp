#include "gpdkit/schwinger.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "disjoint_sets.hpp"
#include "gpdkit/constructors.hpp"

namespace gpdkit {

// ---------------------------------------------------------------------------
// EventSpace

EventSpace EventSpace::create(std::vector<Frame> frames, std::vector<Identification> ids) {
  {
    std::unordered_set<std::string> seen;
    for (const auto& f : frames) {
      if (!seen.insert(f.label).second) throw DuplicateLabel("duplicate frame '" + f.label + "'");
      if (f.events.empty()) throw UnknownEvent("frame '" + f.label + "' has no events");
      std::unordered_set<std::string> events;
      for (const auto& e : f.events) {
        if (!events.insert(e).second) {
          throw DuplicateLabel("duplicate event '" + e + "' in frame '" + f.label + "'");
        }
      }
    }
  }

  std::vector<std::size_t> first;  // flat index of (frame, 0)
  std::size_t total = 0;
  for (const auto& f : frames) {
    first.push_back(total);
    total += f.events.size();
  }
  auto locate = [&](const EventRef& r) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t fi = 0; fi < frames.size(); ++fi) {
      if (frames[fi].label != r.frame) continue;
      const auto& ev = frames[fi].events;
      auto it = std::find(ev.begin(), ev.end(), r.event);
      if (it == ev.end()) throw UnknownEvent("unknown event '" + r.str() + "'");
      return {fi, static_cast<std::size_t>(it - ev.begin())};
    }
    throw UnknownEvent("unknown frame in '" + r.str() + "'");
  };

  detail::DisjointSets sets(total);
  for (const auto& [x, y] : ids) {
    auto [fx, ex] = locate(x);
    auto [fy, ey] = locate(y);
    if (fx == fy && ex != ey) {
      throw IntraFrameIdentification("'" + x.str() + "' and '" + y.str() +
                                     "' are distinct outcomes of the same frame");
    }
    sets.unite(first[fx] + ex, first[fy] + ey);
  }

  auto d = std::make_shared<Data>();
  std::vector<std::size_t> class_of_root(total, static_cast<std::size_t>(-1));
  std::vector<std::size_t> frame_of_class_check;
  d->class_of.resize(frames.size());
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    for (std::size_t ei = 0; ei < frames[fi].events.size(); ++ei) {
      const auto root = sets.find(first[fi] + ei);
      if (class_of_root[root] == static_cast<std::size_t>(-1)) {
        class_of_root[root] = d->members.size();
        d->members.emplace_back();
      }
      const auto c = class_of_root[root];
      for (const auto& m : d->members[c]) {
        if (m.frame == frames[fi].label) {
          throw IntraFrameIdentification("'" + m.str() + "' and '" + frames[fi].label + "." +
                                         frames[fi].events[ei] +
                                         "' are identified through other frames");
        }
      }
      d->members[c].push_back({frames[fi].label, frames[fi].events[ei]});
      d->class_of[fi].push_back(c);
    }
  }
  d->frames = std::move(frames);
  d->identifications = std::move(ids);
  return EventSpace(std::move(d));
}

EventClass EventSpace::class_of(std::size_t frame, std::size_t event) const {
  if (frame >= d_->class_of.size() || event >= d_->class_of[frame].size()) {
    throw UnknownEvent("event index out of range");
  }
  return d_->class_of[frame][event];
}

EventClass EventSpace::class_of(const EventRef& ref) const {
  for (std::size_t fi = 0; fi < d_->frames.size(); ++fi) {
    if (d_->frames[fi].label != ref.frame) continue;
    const auto& ev = d_->frames[fi].events;
    auto it = std::find(ev.begin(), ev.end(), ref.event);
    if (it != ev.end()) return d_->class_of[fi][static_cast<std::size_t>(it - ev.begin())];
  }
  throw UnknownEvent("unknown event '" + ref.str() + "'");
}

const std::vector<EventRef>& EventSpace::members(EventClass c) const {
  if (c >= class_count()) throw UnknownEvent("event class " + std::to_string(c) + " out of range");
  return d_->members[c];
}

std::string EventSpace::class_label(EventClass c) const {
  std::string out;
  for (const auto& m : members(c)) {
    if (!out.empty()) out += "~";
    out += m.str();
  }
  return out;
}

std::vector<EventClass> EventSpace::frame_classes(std::size_t frame) const {
  if (frame >= d_->class_of.size()) throw UnknownEvent("frame index out of range");
  return d_->class_of[frame];
}

bool EventSpace::operator==(const EventSpace& other) const {
  if (d_ == other.d_) return true;
  return d_->frames == other.d_->frames && d_->class_of == other.d_->class_of;
}

EventSpace build_event_space(std::vector<Frame> frames, std::vector<Identification> ids) {
  return EventSpace::create(std::move(frames), std::move(ids));
}

// ---------------------------------------------------------------------------
// Measurements

namespace {

void check_class(const EventSpace& s, EventClass c) {
  if (c >= s.class_count()) throw UnknownEvent("event class " + std::to_string(c) + " out of range");
}

void same_space(const EventSpace& a, const EventSpace& b) {
  if (!(a == b)) throw ParentMismatch("measurements over different event spaces");
}

}  // namespace

bool Measurement::operator==(const Measurement& other) const {
  return target == other.target && source == other.source && space == other.space;
}

Measurement measurement(const EventSpace& space, EventClass target, EventClass source) {
  check_class(space, target);
  check_class(space, source);
  return {space, target, source};
}

Measurement selective(const EventSpace& space, EventClass a) { return measurement(space, a, a); }

Measurement inverse(const Measurement& m) { return {m.space, m.source, m.target}; }

Measurement compose_measurements(const Measurement& m2, const Measurement& m1) {
  same_space(m2.space, m1.space);
  if (m2.source != m1.target) throw NotComposable(m2.source, m1.target);
  return {m2.space, m2.target, m1.source};
}

FiniteGroupoid total_groupoid(const EventSpace& space) {
  std::vector<std::string> labels;
  for (EventClass c = 0; c < space.class_count(); ++c) labels.push_back(space.class_label(c));
  return pair_groupoid(labels);
}

MorphismIndex measurement_morphism(const FiniteGroupoid& total, const Measurement& m) {
  const auto& s = m.space;
  if (total.object_count() != s.class_count()) {
    throw ParentMismatch("groupoid is not the total groupoid of this event space");
  }
  auto idx = total.find_morphism("(" + s.class_label(m.target) + "," + s.class_label(m.source) + ")");
  if (!idx || total.object_label(m.target) != s.class_label(m.target)) {
    throw ParentMismatch("groupoid is not the total groupoid of this event space");
  }
  return *idx;
}

AlgebraElement measurement_delta(const FiniteGroupoid& total, const Measurement& m) {
  return delta(total, measurement_morphism(total, m));
}

FiniteGroupoid frame_groupoid(const EventSpace& space, std::size_t frame) {
  auto classes = space.frame_classes(frame);
  return restrict(total_groupoid(space), classes);
}

// ---------------------------------------------------------------------------
// 2-cells

Measurement TwoCell::whiskered() const {
  return compose_measurements(compose_measurements(left_whisker(), source()), right_whisker());
}

bool TwoCell::operator==(const TwoCell& other) const {
  return a == other.a && a_prime == other.a_prime && b == other.b && b_prime == other.b_prime &&
         space == other.space;
}

TwoCell two_cell(const EventSpace& space, EventClass a, EventClass a_prime, EventClass b,
                 EventClass b_prime) {
  for (auto c : {a, a_prime, b, b_prime}) check_class(space, c);
  return {space, a, a_prime, b, b_prime};
}

TwoCell vertical_unit(const Measurement& m) {
  return two_cell(m.space, m.target, m.source, m.target, m.source);
}

TwoCell vertical_inverse(const TwoCell& phi) {
  return {phi.space, phi.b, phi.b_prime, phi.a, phi.a_prime};
}

TwoCell horizontal_unit(const EventSpace& space, EventClass a, EventClass b) {
  return two_cell(space, a, a, b, b);
}

TwoCell horizontal_inverse(const TwoCell& phi) {
  return {phi.space, phi.a_prime, phi.a, phi.b_prime, phi.b};
}

TwoCell vcomp(const TwoCell& first, const TwoCell& second) {
  same_space(first.space, second.space);
  if (!(first.target() == second.source())) {
    throw NotVerticallyComposable("target transition of the first cell is not the source of the second");
  }
  // The composite is carried by the composed whiskers.
  const auto left = compose_measurements(second.left_whisker(), first.left_whisker());
  const auto right = compose_measurements(first.right_whisker(), second.right_whisker());
  return {first.space, first.a, first.a_prime, left.target, right.source};
}

TwoCell hcomp(const TwoCell& first, const TwoCell& second) {
  same_space(first.space, second.space);
  if (first.a_prime != second.a || first.b_prime != second.b) {
    throw NotHorizontallyComposable("middle events of the two cells differ");
  }
  const auto from = compose_measurements(first.source(), second.source());
  const auto to = compose_measurements(first.target(), second.target());
  return {first.space, from.target, from.source, to.target, to.source};
}

ExchangeReport check_exchange(const TwoCell& phi, const TwoCell& phi_prime, const TwoCell& psi,
                              const TwoCell& psi_prime) {
  auto lhs = hcomp(vcomp(phi, psi), vcomp(phi_prime, psi_prime));
  auto rhs = vcomp(hcomp(phi, phi_prime), hcomp(psi, psi_prime));
  const bool equal = lhs == rhs;
  return {std::move(lhs), std::move(rhs), equal};
}

ExchangeSweep sweep_exchange(const EventSpace& space, std::uint64_t seed, std::size_t samples,
                             std::size_t exhaustive_limit) {
  const std::size_t k = space.class_count();
  ExchangeSweep sweep;
  auto run = [&](const std::array<EventClass, 9>& e) {
    const auto [a, a1, a2, b, b1, b2, c, c1, c2] = e;
    TwoCell phi{space, a, a1, b, b1};
    TwoCell phi_p{space, a1, a2, b1, b2};
    TwoCell psi{space, b, b1, c, c1};
    TwoCell psi_p{space, b1, b2, c1, c2};
    auto r = check_exchange(phi, phi_p, psi, psi_p);
    const TwoCell expected{space, a, a2, c, c2};
    ++sweep.checked;
    if (!r.equal || !(r.lhs == expected)) ++sweep.failures;
  };

  std::array<EventClass, 9> e{};
  if (k <= exhaustive_limit) {
    sweep.exhaustive = true;
    std::size_t total = 1;
    for (int i = 0; i < 9; ++i) total *= k;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t rest = code;
      for (int i = 8; i >= 0; --i) {
        e[static_cast<std::size_t>(i)] = rest % k;
        rest /= k;
      }
      run(e);
    }
    return sweep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : e) v = pick(rng);
    run(e);
  }
  return sweep;
}

// ---------------------------------------------------------------------------
// Superoperator

CellAggregate CellAggregate::create(EventSpace space, MatrixC t, MatrixC t_prime) {
  const std::size_t n = space.class_count();
  for (const auto* m : {&t, &t_prime}) {
    if (m->rows() != n || m->cols() != n) {
      throw ShapeMismatch("coefficient factors must be " + std::to_string(n) + "x" +
                          std::to_string(n) + ", got " + std::to_string(m->rows()) + "x" +
                          std::to_string(m->cols()));
    }
  }
  return CellAggregate(std::move(space), std::move(t), std::move(t_prime));
}

CellAggregate CellAggregate::elementary(const TwoCell& cell) {
  const std::size_t n = cell.space.class_count();
  return create(cell.space, MatrixC::unit(n, n, cell.a, cell.b),
                MatrixC::unit(n, n, cell.a_prime, cell.b_prime));
}

MatrixC represent_cells(const CellAggregate& agg, const MatrixC& a) {
  const std::size_t n = agg.space().class_count();
  if (a.rows() != n || a.cols() != n) {
    throw ShapeMismatch("operand must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  return agg.t().adjoint() * a * agg.t_prime();
}

}  // namespace gpdkit
