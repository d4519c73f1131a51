#pragma once

// The convolution *-algebra of a finite groupoid: complex functions on the
// morphisms, with
//   (f1 * f2)(c) = sum over a o b = c of f1(a) f2(b),
//   f*(c)        = conj(f(c^-1)).

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpdkit/groupoid.hpp"

namespace gpdkit {

using Complex = std::complex<double>;

// Max-abs coefficient tolerance used for approximate element equality.
inline constexpr double kElementTolerance = 1e-12;

class AlgebraElement {
 public:
  // Zero element.
  explicit AlgebraElement(FiniteGroupoid parent);
  // Throws ShapeMismatch when coeffs.size() != parent.morphism_count().
  AlgebraElement(FiniteGroupoid parent, std::vector<Complex> coeffs);

  const FiniteGroupoid& parent() const noexcept { return parent_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  Complex operator[](MorphismIndex m) const { return coeffs_.at(m); }
  Complex& operator[](MorphismIndex m) { return coeffs_.at(m); }

  bool is_zero(double tol = 0.0) const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }

 private:
  FiniteGroupoid parent_;
  std::vector<Complex> coeffs_;
};

// Indicator of a single morphism. Throws IndexOutOfRange.
AlgebraElement delta(const FiniteGroupoid& g, MorphismIndex m);

// Sum of the unit deltas: the two-sided identity for convolution.
AlgebraElement unit_element(const FiniteGroupoid& g);

// Throws ParentMismatch unless both elements live on the same groupoid.
AlgebraElement convolve(const AlgebraElement& f1, const AlgebraElement& f2);

AlgebraElement involute(const AlgebraElement& f);

// Entry (j, k) is comp(j, k) when defined. Same as the delta-basis products.
std::vector<std::vector<std::optional<MorphismIndex>>> structure_constants(const FiniteGroupoid& g);

// Max-abs coefficient difference; throws ParentMismatch.
double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b);

bool approx_equal(const AlgebraElement& a, const AlgebraElement& b,
                  double tol = kElementTolerance);

// Coefficients with real and imaginary parts uniform in [-1, 1].
AlgebraElement random_element(const FiniteGroupoid& g, std::mt19937_64& rng);

}  // namespace gpdkit
