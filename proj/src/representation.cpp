#include "gpdkit/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace gpdkit {

namespace {

void require_parent(const FiniteGroupoid& g, const AlgebraElement& f) {
  if (!(f.parent() == g)) throw ParentMismatch("element belongs to a different groupoid");
}

}  // namespace

Representation Representation::create(FiniteGroupoid g, std::vector<std::size_t> dims,
                                      std::vector<MatrixC> mats) {
  if (dims.size() != g.object_count()) {
    throw ShapeMismatch("representation needs one dimension per object");
  }
  if (mats.size() != g.morphism_count()) {
    throw ShapeMismatch("representation needs one matrix per morphism");
  }
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (mats[m].rows() != dims[g.target(m)] || mats[m].cols() != dims[g.source(m)]) {
      throw ShapeMismatch("matrix of morphism '" + g.morphism_label(m) +
                          "' does not map the source space to the target space");
    }
  }
  Representation rho(std::move(g));
  rho.offsets_.assign(dims.size() + 1, 0);
  for (std::size_t x = 0; x < dims.size(); ++x) rho.offsets_[x + 1] = rho.offsets_[x] + dims[x];
  rho.dims_ = std::move(dims);
  rho.mats_ = std::move(mats);
  return rho;
}

MatrixC Representation::module_matrix(MorphismIndex m) const {
  const std::size_t D = total_dimension();
  MatrixC out(D, D);
  const auto& block = matrix(m);
  const std::size_t r0 = offset(parent_.target(m));
  const std::size_t c0 = offset(parent_.source(m));
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) out(r0 + r, c0 + c) = block(r, c);
  }
  return out;
}

MatrixC Representation::module_action(const AlgebraElement& f) const {
  require_parent(parent_, f);
  const std::size_t D = total_dimension();
  MatrixC out(D, D);
  for (MorphismIndex m = 0; m < parent_.morphism_count(); ++m) {
    const auto coeff = f[m];
    if (coeff == Complex{}) continue;
    const auto& block = matrix(m);
    const std::size_t r0 = offset(parent_.target(m));
    const std::size_t c0 = offset(parent_.source(m));
    for (std::size_t r = 0; r < block.rows(); ++r) {
      for (std::size_t c = 0; c < block.cols(); ++c) out(r0 + r, c0 + c) += coeff * block(r, c);
    }
  }
  return out;
}

double functoriality_defect(const Representation& rho) {
  const auto& g = rho.parent();
  double worst = 0.0;
  for (ObjectIndex x = 0; x < g.object_count(); ++x) {
    worst = std::max(worst, max_abs_difference(rho.matrix(g.unit(x)), MatrixC::identity(rho.dim(x))));
  }
  for (MorphismIndex i = 0; i < g.morphism_count(); ++i) {
    for (auto j : g.incoming(g.source(i))) {
      worst = std::max(worst, max_abs_difference(rho.matrix(g.compose(i, j)),
                                                 rho.matrix(i) * rho.matrix(j)));
    }
  }
  return worst;
}

Representation fundamental_rep(const FiniteGroupoid& g) {
  std::vector<MatrixC> mats(g.morphism_count(), MatrixC::identity(1));
  return Representation::create(g, std::vector<std::size_t>(g.object_count(), 1), std::move(mats));
}

MatrixC fundamental_matrix(const FiniteGroupoid& g, MorphismIndex m) {
  const std::size_t n = g.object_count();
  return MatrixC::unit(n, n, g.target(m), g.source(m));
}

MatrixC apply_fundamental(const FiniteGroupoid& g, const AlgebraElement& f) {
  require_parent(g, f);
  const std::size_t n = g.object_count();
  MatrixC out(n, n);
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) out(g.target(m), g.source(m)) += f[m];
  return out;
}

std::vector<MatrixC> regular_rep(const FiniteGroupoid& g) {
  const std::size_t N = g.morphism_count();
  std::vector<MatrixC> out(N, MatrixC(N, N));
  for (MorphismIndex c = 0; c < N; ++c) {
    for (auto k : g.incoming(g.source(c))) out[c](g.compose(c, k), k) = 1.0;
  }
  return out;
}

MatrixC apply_regular(const FiniteGroupoid& g, const AlgebraElement& f) {
  require_parent(g, f);
  const std::size_t N = g.morphism_count();
  MatrixC out(N, N);
  for (MorphismIndex c = 0; c < N; ++c) {
    const auto coeff = f[c];
    if (coeff == Complex{}) continue;
    for (auto k : g.incoming(g.source(c))) out(g.compose(c, k), k) += coeff;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral norm

namespace {

using Vec = std::vector<Complex>;

double vec_norm(const Vec& v) {
  double s = 0.0;
  for (auto c : v) s += std::norm(c);
  return std::sqrt(s);
}

// Largest eigenvalue of the Hermitian PSD matrix h starting from v, or nullopt
// when the iterate collapses (start inside the kernel). When the estimate
// stalls, h is replaced by its normalized square, so a near tie r = l2 / l1
// shrinks to r^2; the eigenvalue is recovered as a root of the accumulated power.
std::optional<double> power_iterate(MatrixC h, Vec v, double scale, const NormOptions& opt) {
  constexpr std::size_t kCheckpoint = 32;
  constexpr double kStallRatio = 1e-3;
  constexpr int kMaxSquarings = 40;

  double nv = vec_norm(v);
  if (nv == 0.0) return std::nullopt;
  for (auto& c : v) c /= nv;
  h *= Complex(1.0 / scale, 0.0);
  double log_factor = std::log(scale);  // h_original^power = exp(log_factor) * h
  double power = 1.0;
  int squarings = 0;
  double previous = -1.0;
  double checkpoint_delta = -1.0;
  std::size_t since_square = 0;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    Vec w = h * v;
    double theta = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) theta += (std::conj(v[i]) * w[i]).real();
    const double nw = vec_norm(w);
    if (nw <= 1e-14) return std::nullopt;
    const double estimate = theta > 0.0 ? std::exp((log_factor + std::log(theta)) / power) : 0.0;
    const double delta = previous >= 0.0 ? std::abs(estimate - previous) : -1.0;
    if (delta >= 0.0 && delta <= opt.relative_tolerance * std::abs(estimate)) return estimate;
    previous = estimate;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / nw;

    if (++since_square % kCheckpoint != 0 || delta < 0.0) continue;
    if (checkpoint_delta > 0.0 && delta > kStallRatio * checkpoint_delta && squarings < kMaxSquarings) {
      h = h * h;
      double m = 0.0;
      for (auto c : h.entries()) m = std::max(m, std::abs(c));
      if (m == 0.0) return std::nullopt;
      h *= Complex(1.0 / m, 0.0);
      log_factor = 2.0 * log_factor + std::log(m);
      power *= 2.0;
      ++squarings;
      previous = -1.0;
      checkpoint_delta = -1.0;
      since_square = 0;
    } else {
      checkpoint_delta = delta;
    }
  }
  throw ConvergenceFailure("power iteration did not converge within " +
                           std::to_string(opt.max_iterations) + " iterations");
}

}  // namespace

double operator_norm(const MatrixC& m, const NormOptions& options) {
  const std::size_t n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  const MatrixC h = m.adjoint() * m;
  double scale = 0.0;
  for (auto c : h.entries()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;

  std::optional<double> best = power_iterate(h, Vec(n, Complex(1.0, 0.0)), scale, options);

  std::mt19937_64 rng(options.restart_seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec start(n);
  for (auto& c : start) {
    const double re = u(rng);
    const double im = u(rng);
    c = Complex(re, im);
  }
  if (auto second = power_iterate(h, std::move(start), scale, options)) {
    best = best ? std::max(*best, *second) : *second;
  }
  return best ? std::sqrt(*best) : 0.0;
}

// ---------------------------------------------------------------------------
// Checks

StarRepReport check_star_rep(const FiniteGroupoid& g, std::size_t samples, std::uint64_t seed) {
  StarRepReport report;
  auto check = [&](const AlgebraElement& f) {
    const double dev = max_abs_difference(apply_fundamental(g, involute(f)),
                                          apply_fundamental(g, f).adjoint());
    report.max_deviation = std::max(report.max_deviation, dev);
  };
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    check(delta(g, m));
    ++report.basis_checked;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    check(random_element(g, rng));
    ++report.random_checked;
  }
  return report;
}

CStarReport check_cstar_identity(const FiniteGroupoid& g, const AlgebraElement& f) {
  require_parent(g, f);
  CStarReport r;
  r.lhs = operator_norm(apply_fundamental(g, convolve(involute(f), f)));
  const double norm = operator_norm(apply_fundamental(g, f));
  r.rhs = norm * norm;
  const double denom = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.relative_deviation = denom == 0.0 ? 0.0 : std::abs(r.lhs - r.rhs) / denom;
  return r;
}

namespace {

// Orthonormal basis of the column space of p, as columns of a D x k matrix.
MatrixC range_basis(const MatrixC& p) {
  const std::size_t D = p.rows();
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < p.cols(); ++c) {
    Vec v(D);
    for (std::size_t r = 0; r < D; ++r) v[r] = p(r, c);
    for (const auto& b : basis) {
      Complex dot{};
      for (std::size_t r = 0; r < D; ++r) dot += std::conj(b[r]) * v[r];
      for (std::size_t r = 0; r < D; ++r) v[r] -= dot * b[r];
    }
    const double nv = vec_norm(v);
    if (nv <= 1e-9) continue;
    for (auto& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  MatrixC out(D, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (std::size_t r = 0; r < D; ++r) out(r, k) = basis[k][r];
  }
  return out;
}

}  // namespace

ModuleReport module_roundtrip_check(const FiniteGroupoid& g, const Representation& rho) {
  if (!(rho.parent() == g)) throw ParentMismatch("representation belongs to a different groupoid");
  const double defect = functoriality_defect(rho);
  if (defect > kMatrixTolerance) {
    throw NotFunctorial("representation is not functorial (max deviation " +
                        std::to_string(defect) + ")");
  }

  const std::size_t n = g.object_count();
  const std::size_t D = rho.total_dimension();
  std::vector<MatrixC> projector;
  for (ObjectIndex x = 0; x < n; ++x) projector.push_back(rho.module_matrix(g.unit(x)));

  ModuleReport report;
  MatrixC sum(D, D);
  for (ObjectIndex a = 0; a < n; ++a) {
    report.idempotent_deviation = std::max(
        report.idempotent_deviation, max_abs_difference(projector[a] * projector[a], projector[a]));
    for (ObjectIndex b = 0; b < n; ++b) {
      if (a == b) continue;
      report.orthogonality_deviation = std::max(report.orthogonality_deviation,
                                                max_abs_difference(projector[a] * projector[b], MatrixC(D, D)));
    }
    sum += projector[a];
  }
  report.resolution_deviation = max_abs_difference(sum, MatrixC::identity(D));

  std::vector<MatrixC> basis;
  std::vector<std::size_t> dims;
  for (ObjectIndex x = 0; x < n; ++x) {
    basis.push_back(range_basis(projector[x]));
    dims.push_back(basis.back().cols());
  }
  std::vector<MatrixC> mats;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    const auto& into = basis[g.target(m)];
    const auto& from = basis[g.source(m)];
    mats.push_back(into.adjoint() * rho.module_matrix(m) * from);
  }
  for (ObjectIndex x = 0; x < n; ++x) {
    if (dims[x] != rho.dim(x)) {
      report.reconstruction_deviation = std::numeric_limits<double>::infinity();
      return report;
    }
  }
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    report.reconstruction_deviation =
        std::max(report.reconstruction_deviation, max_abs_difference(mats[m], rho.matrix(m)));
  }
  report.reconstructed = Representation::create(g, std::move(dims), std::move(mats));
  return report;
}

}  // namespace gpdkit
