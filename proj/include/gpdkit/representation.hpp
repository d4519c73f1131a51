#pragma once

// Matrix realizations of groupoid algebras.
//
// A representation assigns a space of dimension dim(x) to every object x and a
// dim(target) x dim(source) matrix to every morphism. Its module is the direct
// sum of the object spaces (in object order), on which every morphism acts as
// a block matrix.

#include <cstdint>
#include <optional>
#include <vector>

#include "gpdkit/algebra.hpp"
#include "gpdkit/matrix.hpp"

namespace gpdkit {

// Max-abs tolerance for direct matrix identities.
inline constexpr double kMatrixTolerance = 1e-12;
// Relative tolerance for the C*-identity, where two norms compound roundoff.
inline constexpr double kNormTolerance = 1e-9;

class Representation {
 public:
  // Checks shapes only; functoriality is checked by functoriality_defect().
  // Throws ShapeMismatch.
  static Representation create(FiniteGroupoid g, std::vector<std::size_t> dims,
                               std::vector<MatrixC> mats);

  const FiniteGroupoid& parent() const noexcept { return parent_; }
  std::size_t dim(ObjectIndex x) const { return dims_.at(x); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const MatrixC& matrix(MorphismIndex m) const { return mats_.at(m); }
  std::size_t total_dimension() const noexcept { return offsets_.back(); }
  // First coordinate of the block for object x in the module.
  std::size_t offset(ObjectIndex x) const { return offsets_.at(x); }

  // The morphism as an operator on the whole module.
  MatrixC module_matrix(MorphismIndex m) const;
  // sum_m f(m) module_matrix(m). Throws ParentMismatch.
  MatrixC module_action(const AlgebraElement& f) const;

 private:
  explicit Representation(FiniteGroupoid g) : parent_(std::move(g)) {}

  FiniteGroupoid parent_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<MatrixC> mats_;
};

// Largest deviation from rho(1_x) = I and rho(a o b) = rho(a) rho(b).
double functoriality_defect(const Representation& rho);

// One-dimensional space per object, every morphism acting as [1].
Representation fundamental_rep(const FiniteGroupoid& g);

// n x n matrix of a morphism y -> x on the object space: a single 1 at (x, y).
MatrixC fundamental_matrix(const FiniteGroupoid& g, MorphismIndex m);

// pi(f) = sum_k f(k) fundamental_matrix(k). Throws ParentMismatch.
MatrixC apply_fundamental(const FiniteGroupoid& g, const AlgebraElement& f);

// D_c with D_c[i][k] = 1 iff c o k = i, one N x N matrix per morphism.
std::vector<MatrixC> regular_rep(const FiniteGroupoid& g);

// R(f) = sum_c f(c) D_c. Throws ParentMismatch.
MatrixC apply_regular(const FiniteGroupoid& g, const AlgebraElement& f);

struct NormOptions {
  double relative_tolerance = 1e-12;
  std::size_t max_iterations = 10000;
  std::uint64_t restart_seed = 0x5EED;
};

// Spectral norm sqrt(lambda_max(m^H m)) by power iteration, started from the
// all-ones vector and again from a seeded pseudorandom vector; the larger
// estimate wins, so a start orthogonal to the top eigenspace cannot hide it.
// A stalled run continues on the normalized square of m^H m.
// Throws ConvergenceFailure when a run exceeds the iteration cap.
double operator_norm(const MatrixC& m, const NormOptions& options = {});

struct StarRepReport {
  double max_deviation = 0.0;
  std::size_t basis_checked = 0;
  std::size_t random_checked = 0;

  bool passed(double tol = kMatrixTolerance) const { return max_deviation <= tol; }
};

// Max-abs deviation of pi(f*) from pi(f)^H over the delta basis and
// `samples` seeded random elements.
StarRepReport check_star_rep(const FiniteGroupoid& g, std::size_t samples = 100,
                             std::uint64_t seed = 0);

struct CStarReport {
  double lhs = 0.0;  // ||f* f||
  double rhs = 0.0;  // ||f||^2
  double relative_deviation = 0.0;

  bool passed(double tol = kNormTolerance) const { return relative_deviation <= tol; }
};

// Throws ParentMismatch.
CStarReport check_cstar_identity(const FiniteGroupoid& g, const AlgebraElement& f);

struct ModuleReport {
  double idempotent_deviation = 0.0;
  double orthogonality_deviation = 0.0;
  double resolution_deviation = 0.0;
  double reconstruction_deviation = 0.0;
  std::optional<Representation> reconstructed;

  bool exact() const {
    return idempotent_deviation == 0.0 && orthogonality_deviation == 0.0 &&
           resolution_deviation == 0.0 && reconstruction_deviation == 0.0;
  }
};

// Builds the module of rho with projectors P_x = R(1_x), checks they form an
// orthogonal resolution of the identity, and recovers rho from the ranges
// P_x(V). Throws NotFunctorial when rho is not a functor (max-abs
// kMatrixTolerance) and ParentMismatch when rho lives on another groupoid.
ModuleReport module_roundtrip_check(const FiniteGroupoid& g, const Representation& rho);

}  // namespace gpdkit
