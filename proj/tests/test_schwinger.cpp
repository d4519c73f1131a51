#include <gtest/gtest.h>

#include <array>
#include <random>

#include "gpdkit/constructors.hpp"
#include "gpdkit/representation.hpp"
#include "gpdkit/schwinger.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gpdkit;

namespace {

EventSpace two_frames(bool glue) {
  std::vector<Identification> ids;
  if (glue) ids.push_back({{"A", "a2"}, {"B", "b1"}});
  return build_event_space({{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}}, ids);
}

// Disjoint frames of the given sizes, no identifications.
EventSpace frames_of(const std::vector<std::size_t>& sizes) {
  std::vector<Frame> frames;
  for (std::size_t f = 0; f < sizes.size(); ++f) {
    Frame fr{"F" + std::to_string(f), {}};
    for (std::size_t e = 0; e < sizes[f]; ++e) fr.events.push_back("e" + std::to_string(e));
    frames.push_back(fr);
  }
  return build_event_space(frames, {});
}

std::vector<EventSpace> small_spaces(std::size_t max_classes) {
  std::vector<EventSpace> out;
  for (std::size_t k = 1; k <= max_classes; ++k) out.push_back(frames_of({k}));
  out.push_back(two_frames(true));
  if (max_classes >= 4) out.push_back(two_frames(false));
  for (const auto& [id, s] : oracle::corpus_spaces()) {
    if (s.class_count() <= max_classes) out.push_back(s);
  }
  return out;
}

using Quad = std::array<EventClass, 4>;

Quad quad(const TwoCell& c) { return {c.a, c.a_prime, c.b, c.b_prime}; }

}  // namespace

TEST(EventSpace, Examples) {
  EXPECT_EQ(two_frames(false).class_count(), 4U);
  const auto glued = two_frames(true);
  EXPECT_EQ(glued.class_count(), 3U);
  EXPECT_EQ(glued.class_of({"A", "a2"}), glued.class_of({"B", "b1"}));
  EXPECT_EQ(glued.class_label(glued.class_of({"B", "b1"})), "A.a2~B.b1");
  EXPECT_THROW(build_event_space({{"A", {"a1", "a2"}}}, {{{"A", "a1"}, {"A", "a2"}}}), IntraFrameIdentification);
  EXPECT_THROW(build_event_space({{"A", {"a1"}}}, {{{"A", "a1"}, {"B", "b1"}}}), UnknownEvent);
  EXPECT_THROW(build_event_space({{"A", {"a1"}}}, {{{"A", "a1"}, {"A", "zz"}}}), UnknownEvent);
  EXPECT_THROW(build_event_space({{"A", {"a1", "a1"}}}, {}), DuplicateLabel);
  EXPECT_THROW(build_event_space({{"A", {"a1"}}, {"A", {"a2"}}}, {}), DuplicateLabel);
}

TEST(EventSpace, TransitiveGlueStaysAcrossFrames) {
  // A.a1 ~ B.b1 ~ C.c1 ~ A.a2 forces two events of A together.
  const std::vector<Frame> frames = {{"A", {"a1", "a2"}}, {"B", {"b1"}}, {"C", {"c1"}}};
  EXPECT_THROW(build_event_space(frames, {{{"A", "a1"}, {"B", "b1"}}, {{"B", "b1"}, {"C", "c1"}},
                                          {{"C", "c1"}, {"A", "a2"}}}),
               IntraFrameIdentification);
  const auto ok = build_event_space(frames, {{{"A", "a1"}, {"B", "b1"}}, {{"B", "b1"}, {"C", "c1"}}});
  EXPECT_EQ(ok.class_count(), 2U);
  EXPECT_EQ(ok.members(0).size(), 3U);
}

TEST(EventSpace, FirstOccurrenceNumbering) {
  const auto s = build_event_space({{"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}}, {{{"B", "b2"}, {"A", "a1"}}});
  EXPECT_EQ(s.class_of(0, 0), 0U);
  EXPECT_EQ(s.class_of(0, 1), 1U);
  EXPECT_EQ(s.class_of(1, 0), 2U);
  EXPECT_EQ(s.class_of(1, 1), 0U);
  EXPECT_EQ(s.frame_classes(1), (std::vector<EventClass>{2, 0}));
}

TEST(EventSpace, UnequalFrameSizesAllowed) {
  const auto s = build_event_space({{"A", {"a1", "a2", "a3"}}, {"B", {"b1"}}}, {{{"A", "a3"}, {"B", "b1"}}});
  EXPECT_EQ(s.class_count(), 3U);
}

TEST(Measurement, Examples) {
  const auto s = frames_of({3});
  const auto m10 = measurement(s, 1, 0);
  const auto m21 = measurement(s, 2, 1);
  EXPECT_EQ(compose_measurements(m21, m10), measurement(s, 2, 0));
  EXPECT_EQ(compose_measurements(measurement(s, 0, 1), m10), selective(s, 0));
  EXPECT_THROW(compose_measurements(m21, measurement(s, 2, 0)), NotComposable);
  EXPECT_THROW(measurement(s, 3, 0), UnknownEvent);
  EXPECT_THROW(compose_measurements(measurement(frames_of({2}), 1, 0), m10), ParentMismatch);
  EXPECT_EQ(inverse(m10), measurement(s, 0, 1));
  EXPECT_TRUE(selective(s, 2).is_unit());
}

TEST(Measurement, LawsExhaustive) {
  for (const auto& s : small_spaces(5)) {
    const auto k = s.class_count();
    for (EventClass x = 0; x < k; ++x) {
      for (EventClass y = 0; y < k; ++y) {
        const auto mxy = measurement(s, x, y);
        EXPECT_EQ(compose_measurements(selective(s, x), mxy), mxy);
        EXPECT_EQ(compose_measurements(mxy, selective(s, y)), mxy);
        EXPECT_EQ(compose_measurements(inverse(mxy), mxy), selective(s, y));
        EXPECT_EQ(compose_measurements(mxy, inverse(mxy)), selective(s, x));
        for (EventClass z = 0; z < k; ++z) {
          const auto myz = measurement(s, y, z);
          EXPECT_EQ(compose_measurements(mxy, myz), measurement(s, x, z));
          for (EventClass w = 0; w < k; ++w) {
            const auto mzw = measurement(s, z, w);
            EXPECT_EQ(compose_measurements(compose_measurements(mxy, myz), mzw),
                      compose_measurements(mxy, compose_measurements(myz, mzw)));
            if (w != y) EXPECT_THROW(compose_measurements(mxy, measurement(s, w, z)), NotComposable);
          }
        }
      }
    }
  }
}

TEST(TotalGroupoid, Examples) {
  const auto t2 = total_groupoid(frames_of({2}));
  EXPECT_EQ(t2.morphism_count(), 4U);
  EXPECT_TRUE(find_isomorphism(t2, fixture::qubit()).has_value());
  const auto t3 = total_groupoid(two_frames(true));
  EXPECT_EQ(t3.morphism_count(), 9U);
  EXPECT_TRUE(find_isomorphism(t3, fixture::pair(3)).has_value());
  const auto t1 = total_groupoid(frames_of({1}));
  EXPECT_EQ(t1.morphism_count(), 1U);
  for (const auto& s : small_spaces(5)) {
    const auto t = total_groupoid(s);
    EXPECT_TRUE(is_connected(t));
    EXPECT_TRUE(is_principal(t));
    std::vector<MatrixC> images;
    for (MorphismIndex m = 0; m < t.morphism_count(); ++m) images.push_back(fundamental_matrix(t, m));
    EXPECT_EQ(oracle::span_rank(images), s.class_count() * s.class_count());
  }
}

TEST(TotalGroupoid, SymbolsMatchMorphisms) {
  const auto s = two_frames(true);
  const auto t = total_groupoid(s);
  for (EventClass x = 0; x < 3; ++x) {
    for (EventClass y = 0; y < 3; ++y) {
      const auto m = measurement_morphism(t, measurement(s, x, y));
      EXPECT_EQ(t.target(m), x);
      EXPECT_EQ(t.source(m), y);
      for (EventClass z = 0; z < 3; ++z) {
        for (EventClass w = 0; w < 3; ++w) {
          const auto p = convolve(measurement_delta(t, measurement(s, x, y)), measurement_delta(t, measurement(s, z, w)));
          if (y == z) {
            EXPECT_EQ(max_abs_difference(p, measurement_delta(t, measurement(s, x, w))), 0.0);
          } else {
            EXPECT_TRUE(p.is_zero());
          }
        }
      }
    }
  }
  EXPECT_THROW(measurement_morphism(fixture::pair(3), measurement(s, 0, 0)), ParentMismatch);
}

TEST(FrameGroupoid, EqualFramesAreIsomorphic) {
  const auto s = build_event_space({{"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2", "b3"}}}, {{{"A", "a1"}, {"B", "b3"}}});
  const auto ga = frame_groupoid(s, 0);
  const auto gb = frame_groupoid(s, 1);
  EXPECT_EQ(ga.object_count(), 3U);
  EXPECT_TRUE(find_isomorphism(ga, gb).has_value());
  EXPECT_TRUE(find_isomorphism(ga, fixture::pair(3)).has_value());
}

TEST(TwoCell, Examples) {
  const auto s = frames_of({4});
  const auto phi = two_cell(s, 0, 1, 2, 3);
  EXPECT_EQ(phi.whiskered(), phi.target());
  EXPECT_EQ(phi.left_whisker(), measurement(s, 2, 0));
  EXPECT_EQ(phi.right_whisker(), measurement(s, 1, 3));
  EXPECT_EQ(two_cell(s, 0, 1, 0, 1), vertical_unit(measurement(s, 0, 1)));
  EXPECT_EQ(vcomp(phi, vertical_inverse(phi)), vertical_unit(phi.source()));
  EXPECT_EQ(vertical_inverse(phi), two_cell(s, 2, 3, 0, 1));
  EXPECT_THROW(two_cell(s, 0, 1, 2, 4), UnknownEvent);
}

TEST(TwoCell, WhiskeringHoldsEverywhere) {
  for (const auto& s : small_spaces(4)) {
    const auto k = s.class_count();
    for (std::size_t code = 0; code < k * k * k * k; ++code) {
      const TwoCell c = two_cell(s, code % k, code / k % k, code / (k * k) % k, code / (k * k * k));
      const auto w = compose_measurements(compose_measurements(c.left_whisker(), c.source()), c.right_whisker());
      EXPECT_EQ(w, c.target());
      EXPECT_EQ(c.whiskered(), c.target());
    }
  }
}

TEST(Vcomp, Examples) {
  const auto s = frames_of({3});
  const auto phi = two_cell(s, 0, 1, 2, 0);
  const auto psi = two_cell(s, 2, 0, 1, 1);
  EXPECT_EQ(vcomp(phi, psi), two_cell(s, 0, 1, 1, 1));
  EXPECT_EQ(vcomp(phi, vertical_unit(phi.target())), phi);
  EXPECT_EQ(vcomp(vertical_unit(phi.source()), phi), phi);
  EXPECT_THROW(vcomp(phi, two_cell(s, 2, 1, 0, 0)), NotVerticallyComposable);
}

TEST(Hcomp, Examples) {
  const auto s = frames_of({3});
  const auto phi = two_cell(s, 0, 1, 2, 0);
  const auto phi2 = two_cell(s, 1, 2, 0, 1);
  EXPECT_EQ(hcomp(phi, phi2), two_cell(s, 0, 2, 2, 1));
  EXPECT_EQ(hcomp(phi, horizontal_unit(s, 1, 0)), phi);
  EXPECT_EQ(hcomp(horizontal_unit(s, 0, 2), phi), phi);
  EXPECT_EQ(horizontal_unit(s, 0, 2), two_cell(s, 0, 0, 2, 2));
  EXPECT_THROW(hcomp(phi, two_cell(s, 2, 2, 0, 1)), NotHorizontallyComposable);
  EXPECT_THROW(hcomp(phi, two_cell(s, 1, 2, 1, 1)), NotHorizontallyComposable);
}

// Cells are quadruples, so every law has a closed form to compare against.
TEST(TwoGroupoid, LawsExhaustiveUpToFourClasses) {
  for (const auto& s : small_spaces(4)) {
    const auto k = s.class_count();
    std::vector<TwoCell> cells;
    for (std::size_t code = 0; code < k * k * k * k; ++code) {
      cells.push_back(two_cell(s, code / (k * k * k), code / (k * k) % k, code / k % k, code % k));
    }
    std::size_t failures = 0;
    for (const auto& x : cells) {
      const auto [a, a1, b, b1] = quad(x);
      if (quad(vcomp(x, vertical_inverse(x))) != Quad{a, a1, a, a1}) ++failures;
      if (quad(vcomp(vertical_inverse(x), x)) != Quad{b, b1, b, b1}) ++failures;
      if (quad(hcomp(x, horizontal_inverse(x))) != Quad{a, a, b, b}) ++failures;
      if (quad(hcomp(horizontal_inverse(x), x)) != Quad{a1, a1, b1, b1}) ++failures;
      if (!(vcomp(x, vertical_unit(x.target())) == x) || !(vcomp(vertical_unit(x.source()), x) == x)) ++failures;
      if (!(hcomp(x, horizontal_unit(s, a1, b1)) == x) || !(hcomp(horizontal_unit(s, a, b), x) == x)) ++failures;
      for (const auto& y : cells) {
        const auto [c, c1, d, d1] = quad(y);
        const bool vok = c == b && c1 == b1;
        const bool hok = c == a1 && d == b1;
        if (vok) {
          const auto v = vcomp(x, y);
          if (quad(v) != Quad{a, a1, d, d1}) ++failures;
          // Source and target 1-cells are preserved.
          if (!(v.source() == x.source()) || !(v.target() == y.target())) ++failures;
        } else {
          EXPECT_THROW(vcomp(x, y), NotVerticallyComposable);
        }
        if (hok) {
          const auto h = hcomp(x, y);
          if (quad(h) != Quad{a, c1, b, d1}) ++failures;
          // Source and target maps are homomorphisms for horizontal composition.
          if (!(h.source() == compose_measurements(x.source(), y.source()))) ++failures;
          if (!(h.target() == compose_measurements(x.target(), y.target()))) ++failures;
        } else {
          EXPECT_THROW(hcomp(x, y), NotHorizontallyComposable);
        }
      }
    }
    EXPECT_EQ(failures, 0U) << k;
  }
}

TEST(TwoGroupoid, AssociativityBothLaws) {
  const auto s = frames_of({3});
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<EventClass> pick(0, 2);
  for (int t = 0; t < 2000; ++t) {
    EventClass e[8];
    for (auto& v : e) v = pick(rng);
    const auto x = two_cell(s, e[0], e[1], e[2], e[3]);
    const auto y = two_cell(s, e[2], e[3], e[4], e[5]);
    const auto z = two_cell(s, e[4], e[5], e[6], e[7]);
    EXPECT_EQ(vcomp(vcomp(x, y), z), vcomp(x, vcomp(y, z)));
    const auto p = two_cell(s, e[1], e[4], e[3], e[5]);
    const auto q = two_cell(s, e[4], e[6], e[5], e[7]);
    EXPECT_EQ(hcomp(hcomp(x, p), q), hcomp(x, hcomp(p, q)));
  }
}

TEST(Exchange, NamedInstance) {
  // a, a', a'', b, b', b'', c, c', c'' spread over two glued frames.
  const auto s = frames_of({9});
  const TwoCell phi = two_cell(s, 0, 1, 3, 4);
  const TwoCell phi_p = two_cell(s, 1, 2, 4, 5);
  const TwoCell psi = two_cell(s, 3, 4, 6, 7);
  const TwoCell psi_p = two_cell(s, 4, 5, 7, 8);
  const auto r = check_exchange(phi, phi_p, psi, psi_p);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.lhs, two_cell(s, 0, 2, 6, 8));
  EXPECT_EQ(r.rhs, two_cell(s, 0, 2, 6, 8));
  const auto u = vertical_unit(measurement(s, 0, 0));
  EXPECT_TRUE(check_exchange(u, u, u, u).equal);
  EXPECT_THROW(check_exchange(phi, two_cell(s, 2, 2, 4, 5), psi, psi_p), NotHorizontallyComposable);
  EXPECT_THROW(check_exchange(phi, phi_p, psi, phi), NotVerticallyComposable);
}

TEST(Exchange, IndependentEnumeration) {
  for (const auto& s : small_spaces(4)) {
    const auto k = s.class_count();
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<TwoCell> cells;
    for (std::size_t code = 0; code < k * k * k * k; ++code) {
      cells.push_back(two_cell(s, code / (k * k * k), code / (k * k) % k, code / k % k, code % k));
    }
    // Choose phi freely, then each remaining cell is forced except for one free event.
    for (const auto& phi : cells) {
      for (EventClass a2 = 0; a2 < k; ++a2) {
        for (EventClass b2 = 0; b2 < k; ++b2) {
          const auto phi_p = two_cell(s, phi.a_prime, a2, phi.b_prime, b2);
          for (EventClass c = 0; c < k; ++c) {
            for (EventClass c1 = 0; c1 < k; ++c1) {
              const auto psi = two_cell(s, phi.b, phi.b_prime, c, c1);
              for (EventClass c2 = 0; c2 < k; ++c2) {
                const auto psi_p = two_cell(s, phi_p.b, phi_p.b_prime, c1, c2);
                const auto r = check_exchange(phi, phi_p, psi, psi_p);
                ++checked;
                if (!r.equal || quad(r.lhs) != Quad{phi.a, a2, c, c2}) ++failures;
              }
            }
          }
        }
      }
    }
    std::size_t expected = 1;
    for (int i = 0; i < 9; ++i) expected *= k;
    EXPECT_EQ(checked, expected);
    EXPECT_EQ(failures, 0U);
    const auto sweep = sweep_exchange(s);
    EXPECT_TRUE(sweep.exhaustive);
    EXPECT_EQ(sweep.checked, expected);
    EXPECT_EQ(sweep.failures, 0U);
  }
}

TEST(Exchange, SampledAboveLimit) {
  const auto chain = oracle::corpus_spaces();
  for (const auto& [id, s] : chain) {
    if (s.class_count() <= 4) continue;
    const auto sweep = sweep_exchange(s, 7, 5000);
    EXPECT_FALSE(sweep.exhaustive) << id;
    EXPECT_EQ(sweep.checked, 5000U) << id;
    EXPECT_EQ(sweep.failures, 0U) << id;
  }
}

TEST(RepresentCells, IdentityIsIdentity) {
  const auto s = two_frames(true);
  const auto id = CellAggregate::create(s, MatrixC::identity(3), MatrixC::identity(3));
  std::mt19937_64 rng(37);
  std::normal_distribution<double> d;
  MatrixC a(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = {d(rng), d(rng)};
  }
  EXPECT_EQ(represent_cells(id, a), a);
  EXPECT_THROW(CellAggregate::create(s, MatrixC::identity(2), MatrixC::identity(3)), ShapeMismatch);
  EXPECT_THROW(represent_cells(id, MatrixC(2, 2)), ShapeMismatch);
}

TEST(RepresentCells, ElementaryCellsExhaustive) {
  const auto s = two_frames(true);
  const std::size_t k = 3;
  for (EventClass a = 0; a < k; ++a) {
    for (EventClass a1 = 0; a1 < k; ++a1) {
      for (EventClass b = 0; b < k; ++b) {
        for (EventClass b1 = 0; b1 < k; ++b1) {
          const auto agg = CellAggregate::elementary(two_cell(s, a, a1, b, b1));
          for (EventClass x = 0; x < k; ++x) {
            for (EventClass y = 0; y < k; ++y) {
              const auto img = represent_cells(agg, MatrixC::unit(k, k, x, y));
              EXPECT_EQ(img, (x == a && y == a1) ? MatrixC::unit(k, k, b, b1) : MatrixC(k, k));
            }
          }
        }
      }
    }
  }
}

TEST(RepresentCells, LinearAndVertical) {
  const auto s = frames_of({3});
  std::mt19937_64 rng(41);
  std::normal_distribution<double> d;
  auto rnd = [&] {
    MatrixC m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = {d(rng), d(rng)};
    }
    return m;
  };
  for (int t = 0; t < 20; ++t) {
    const auto agg = CellAggregate::create(s, rnd(), rnd());
    const auto x = rnd();
    const auto y = rnd();
    const Complex c(0.3, -1.1);
    const auto lhs = represent_cells(agg, x + c * y);
    const auto rhs = represent_cells(agg, x) + c * represent_cells(agg, y);
    EXPECT_LE(max_abs_difference(lhs, rhs), 1e-12);
    // Oracle: T^H A T' through Eigen.
    const Eigen::MatrixXcd ref = oracle::to_eigen(agg.t()).adjoint() * oracle::to_eigen(x) * oracle::to_eigen(agg.t_prime());
    EXPECT_LE(max_abs_difference(represent_cells(agg, x), oracle::from_eigen(ref)), 1e-12);
  }
  for (std::size_t code = 0; code < 729; ++code) {
    std::size_t r = code;
    EventClass e[6];
    for (auto& v : e) {
      v = r % 3;
      r /= 3;
    }
    const auto phi = two_cell(s, e[0], e[1], e[2], e[3]);
    const auto psi = two_cell(s, e[2], e[3], e[4], e[5]);
    const auto both = CellAggregate::elementary(vcomp(phi, psi));
    const auto a = rnd();
    const auto stepwise = represent_cells(CellAggregate::elementary(psi), represent_cells(CellAggregate::elementary(phi), a));
    EXPECT_EQ(stepwise, represent_cells(both, a));
  }
}
