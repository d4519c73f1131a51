#include "gpdkit/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace gpdkit {

namespace {

void require_same_parent(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.parent() == b.parent())) {
    throw ParentMismatch("algebra elements belong to different groupoids");
  }
}

}  // namespace

AlgebraElement::AlgebraElement(FiniteGroupoid parent)
    : parent_(std::move(parent)), coeffs_(parent_.morphism_count(), Complex{}) {}

AlgebraElement::AlgebraElement(FiniteGroupoid parent, std::vector<Complex> coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != parent_.morphism_count()) {
    throw ShapeMismatch("element has " + std::to_string(coeffs_.size()) +
                        " coefficients but the groupoid has " +
                        std::to_string(parent_.morphism_count()) + " morphisms");
  }
}

bool AlgebraElement::is_zero(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [tol](Complex c) { return std::abs(c) <= tol; });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_parent(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_parent(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

AlgebraElement delta(const FiniteGroupoid& g, MorphismIndex m) {
  if (m >= g.morphism_count()) {
    throw IndexOutOfRange("morphism " + std::to_string(m) + " out of range");
  }
  AlgebraElement f(g);
  f[m] = 1.0;
  return f;
}

AlgebraElement unit_element(const FiniteGroupoid& g) {
  AlgebraElement f(g);
  for (ObjectIndex x = 0; x < g.object_count(); ++x) f[g.unit(x)] = 1.0;
  return f;
}

AlgebraElement convolve(const AlgebraElement& f1, const AlgebraElement& f2) {
  require_same_parent(f1, f2);
  const auto& g = f1.parent();
  std::vector<Complex> out(g.morphism_count(), Complex{});
  for (MorphismIndex j = 0; j < g.morphism_count(); ++j) {
    const Complex a = f1.coeffs()[j];
    if (a == Complex{}) continue;
    for (auto k : g.incoming(g.source(j))) {
      out[g.compose(j, k)] += a * f2.coeffs()[k];
    }
  }
  return AlgebraElement(g, std::move(out));
}

AlgebraElement involute(const AlgebraElement& f) {
  const auto& g = f.parent();
  std::vector<Complex> out(g.morphism_count());
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) out[m] = std::conj(f.coeffs()[g.inverse(m)]);
  return AlgebraElement(g, std::move(out));
}

std::vector<std::vector<std::optional<MorphismIndex>>> structure_constants(const FiniteGroupoid& g) {
  const std::size_t N = g.morphism_count();
  std::vector<std::vector<std::optional<MorphismIndex>>> table(
      N, std::vector<std::optional<MorphismIndex>>(N));
  for (MorphismIndex j = 0; j < N; ++j) {
    for (MorphismIndex k = 0; k < N; ++k) table[j][k] = g.try_compose(j, k);
  }
  return table;
}

double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_parent(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  return max_abs_difference(a, b) <= tol;
}

AlgebraElement random_element(const FiniteGroupoid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c(g.morphism_count());
  for (auto& v : c) {
    const double re = u(rng);
    const double im = u(rng);
    v = Complex(re, im);
  }
  return AlgebraElement(g, std::move(c));
}

}  // namespace gpdkit
