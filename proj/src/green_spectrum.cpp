#include "qdc/green_spectrum.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "lu_condition.hpp"

namespace qdc {

namespace {

void require_same_basis(const DensityMatrix& rho, const SectorMap& sector) {
  if (!(rho.basis == sector.basis())) {
    throw std::invalid_argument("green init: density matrix and sector use different bases (n_exc " +
                                std::to_string(rho.basis.n_exc()) + " vs " +
                                std::to_string(sector.basis().n_exc()) + ")");
  }
  if (sector.offset() != 1) throw std::invalid_argument("green init: sector offset must be +1");
}

void set_if_present(GreenVector& g, BareState row, BareState col, Complex value) {
  if (const auto p = g.sector->index_of(row, col)) g.values(static_cast<Eigen::Index>(*p)) = value;
}

CMatrix shifted(const ReducedLiouvillian& Lred, double omega) {
  CMatrix M = -Lred.dense;
  M.diagonal().array() += Complex{0.0, omega};
  return M;
}

std::string near_singular_message(double omega, double cond) {
  std::ostringstream msg;
  msg << "resolve_green: near-singular shift at omega = " << omega << " meV (condition estimate "
      << cond << ")";
  return msg.str();
}

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// LU factors of an upper Hessenberg matrix: row k+1 is eliminated against
// row k after an optional swap of the two.
class HessenbergLU {
 public:
  HessenbergLU(const CMatrix& H, Complex shift) : U_(-H), l_(H.rows()), swap_(H.rows(), 0) {
    const Eigen::Index m = U_.rows();
    U_.diagonal().array() += shift;
    norm1_ = U_.cwiseAbs().colwise().sum().maxCoeff();
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      if (std::abs(U_(k + 1, k)) > std::abs(U_(k, k))) {
        U_.row(k).tail(m - k).swap(U_.row(k + 1).tail(m - k));
        swap_[static_cast<std::size_t>(k)] = 1;
      }
      const Complex pivot = U_(k, k);
      const Complex l = pivot != Complex{0.0, 0.0} ? U_(k + 1, k) / pivot : Complex{0.0, 0.0};
      l_(k) = l;
      U_(k + 1, k) = 0.0;
      U_.row(k + 1).tail(m - k - 1) -= l * U_.row(k).tail(m - k - 1);
    }
  }

  bool singular() const { return (U_.diagonal().array() == Complex{0.0, 0.0}).any(); }

  CVector solve(CVector b) const {
    const Eigen::Index m = U_.rows();
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      if (swap_[static_cast<std::size_t>(k)]) std::swap(b(k), b(k + 1));
      b(k + 1) -= l_(k) * b(k);
    }
    U_.triangularView<Eigen::Upper>().solveInPlace(b);
    return b;
  }

  CVector solve_adjoint(CVector c) const {
    const Eigen::Index m = U_.rows();
    U_.adjoint().triangularView<Eigen::Lower>().solveInPlace(c);
    for (Eigen::Index k = m - 2; k >= 0; --k) {
      c(k) -= std::conj(l_(k)) * c(k + 1);
      if (swap_[static_cast<std::size_t>(k)]) std::swap(c(k), c(k + 1));
    }
    return c;
  }

  // Hager's 1-norm estimate of the inverse, with the alternating-sign probe
  // used by LAPACK as a safeguard.
  double condition() const {
    if (singular()) return std::numeric_limits<double>::infinity();
    const Eigen::Index m = U_.rows();
    CVector x = CVector::Constant(m, Complex{1.0 / static_cast<double>(m), 0.0});
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
      const CVector y = solve(x);
      const double est_new = y.cwiseAbs().sum();
      if (iter > 0 && est_new <= est) break;
      est = est_new;
      CVector xi(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = std::abs(y(i));
        xi(i) = a > 0.0 ? y(i) / a : Complex{1.0, 0.0};
      }
      const CVector z = solve_adjoint(xi);
      Eigen::Index j = 0;
      const double zmax = z.cwiseAbs().maxCoeff(&j);
      if (iter > 0 && zmax <= z.dot(x).real()) break;
      x = CVector::Unit(m, j);
    }
    CVector alt(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      alt(i) = sign * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<Eigen::Index>(m - 1, 1)));
    }
    est = std::max(est, 2.0 * solve(alt).cwiseAbs().sum() / (3.0 * static_cast<double>(m)));
    return norm1_ * est;
  }

 private:
  RowMatrix U_;
  CVector l_;
  std::vector<char> swap_;
  double norm1_ = 0.0;
};

// Runs body(k) for every grid index, serially or over OpenMP threads. The
// first exception thrown by any worker is rethrown on the caller's thread.
template <typename Body>
void for_each_point(std::size_t count, Execution execution, Body&& body) {
  const auto n = static_cast<long>(count);
  if (execution == Execution::serial) {
    for (long k = 0; k < n; ++k) body(static_cast<std::size_t>(k));
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(qdc_sweep_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

GreenVector cavity_green_init(const DensityMatrix& rho, std::shared_ptr<const SectorMap> sector) {
  require_same_basis(rho, *sector);
  GreenVector g{sector, CVector::Zero(static_cast<Eigen::Index>(sector->size())), std::nullopt};
  const Matter G = Matter::G;
  const Matter X = Matter::X;
  for (int l = 0; l <= rho.basis.n_exc(); ++l) {
    const double w = std::sqrt(static_cast<double>(l + 1));
    set_if_present(g, {G, l}, {G, l + 1}, w * rho.element({G, l + 1}, {G, l + 1}));
    set_if_present(g, {X, l}, {X, l + 1}, w * rho.element({X, l + 1}, {X, l + 1}));
    set_if_present(g, {G, l}, {X, l}, w * rho.element({G, l + 1}, {X, l}));
    set_if_present(g, {X, l}, {G, l + 2}, w * rho.element({X, l + 1}, {G, l + 2}));
  }
  return g;
}

GreenVector qd_green_init(const DensityMatrix& rho, std::shared_ptr<const SectorMap> sector) {
  require_same_basis(rho, *sector);
  GreenVector g{sector, CVector::Zero(static_cast<Eigen::Index>(sector->size())), std::nullopt};
  for (int l = 0; l <= rho.basis.n_exc(); ++l) {
    set_if_present(g, {Matter::G, l}, {Matter::X, l}, rho.element({Matter::X, l}, {Matter::X, l}));
    set_if_present(g, {Matter::G, l}, {Matter::G, l + 1},
                   rho.element({Matter::X, l}, {Matter::G, l + 1}));
  }
  return g;
}

Eigen::VectorXd readout_weights(const SectorMap& sector, Emitter emitter) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sector.size()));
  const Basis& b = sector.basis();
  for (std::size_t p = 0; p < sector.size(); ++p) {
    const BareState row = b[sector.pair(p).first];
    const BareState col = b[sector.pair(p).second];
    if (emitter == Emitter::cavity) {
      // <alpha,l| a^dagger ... picks G_{alpha l, alpha l+1} with sqrt(l+1)
      if (row.matter == col.matter && col.photons == row.photons + 1) {
        w(static_cast<Eigen::Index>(p)) = std::sqrt(static_cast<double>(col.photons));
      }
    } else if (row.matter == Matter::G && col.matter == Matter::X && row.photons == col.photons) {
      w(static_cast<Eigen::Index>(p)) = 1.0;
    }
  }
  return w;
}

GreenVector resolve_green(const ReducedLiouvillian& Lred, const GreenVector& g0, double omega,
                          double max_condition) {
  if (!g0.is_time_zero()) throw std::invalid_argument("resolve_green: g0 must be the tau = 0 vector");
  if (!std::isfinite(omega)) throw std::invalid_argument("resolve_green: omega must be finite");
  if (g0.values.size() != static_cast<Eigen::Index>(Lred.size())) {
    throw std::invalid_argument("resolve_green: g0 length does not match the sector");
  }
  const CMatrix M = shifted(Lred, omega);
  Eigen::PartialPivLU<CMatrix> lu(M);
  const double cond = detail::condition_estimate(lu);
  if (!(cond <= max_condition)) throw std::runtime_error(near_singular_message(omega, cond));
  GreenVector out{Lred.sector, lu.solve(g0.values), omega};
  const double residual = (M * out.values - g0.values).norm();
  if (residual > 1e-10 * g0.values.norm()) {
    std::ostringstream msg;
    msg << "resolve_green: residual " << residual << " at omega = " << omega << " meV";
    throw std::runtime_error(msg.str());
  }
  return out;
}

GreenVector SpectralCache::resolve(const GreenVector& g0, double omega) const {
  CVector c = inverse_ * g0.values;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) /= Complex{0.0, omega} - eigenvalues_(k);
  return GreenVector{sector_, vectors_ * c, omega};
}

SpectralCache::Projection SpectralCache::project(const Eigen::VectorXd& weights,
                                                 const GreenVector& g0) const {
  return {vectors_.transpose() * weights.cast<Complex>(), inverse_ * g0.values};
}

Complex SpectralCache::evaluate(const Projection& proj, double omega) const {
  Complex sum{0.0, 0.0};
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    sum += proj.left(k) * proj.right(k) / (Complex{0.0, omega} - eigenvalues_(k));
  }
  return sum;
}

SpectralCache precompute_spectral(const ReducedLiouvillian& Lred, double max_condition) {
  Eigen::ComplexEigenSolver<CMatrix> es(Lred.dense, true);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("precompute_spectral: eigendecomposition failed; use per-frequency factorization");
  }
  SpectralCache cache;
  cache.sector_ = Lred.sector;
  cache.eigenvalues_ = es.eigenvalues();
  cache.vectors_ = es.eigenvectors();
  Eigen::JacobiSVD<CMatrix> svd(cache.vectors_);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  cache.condition_ = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cache.condition_ <= max_condition)) {
    std::ostringstream msg;
    msg << "precompute_spectral: eigenvector condition estimate " << cache.condition_
        << " exceeds " << max_condition << "; fall back to per-frequency factorization";
    throw std::runtime_error(msg.str());
  }
  cache.inverse_ = cache.vectors_.partialPivLu().inverse();
  return cache;
}

EmissionProblem prepare_emission(const SystemParams& p, int n_exc, Emitter emitter,
                                 const SpectrumOptions& options) {
  if (n_exc < 1) throw std::invalid_argument("spectra need n_exc >= 1");
  const Basis basis = build_basis(n_exc);
  Liouvillian L = build_liouvillian(p, basis);
  SteadyStateResult steady = steady_state(L, options.steady);
  const double n = population(steady.rho, emitter == Emitter::cavity ? Population::cavity
                                                                       : Population::exciton);
  if (!(n >= options.population_floor)) {
    std::ostringstream msg;
    if (emitter == Emitter::cavity) {
      msg << "cavity unpopulated; spectrum undefined (n_c = " << n << ")";
    } else {
      msg << "quantum dot unpopulated; spectrum undefined (n_sigma = " << n << ")";
    }
    throw std::runtime_error(msg.str());
  }
  ReducedLiouvillian reduced = reduce_to_sector(L, 1);
  GreenVector g0 = emitter == Emitter::cavity ? cavity_green_init(steady.rho, reduced.sector)
                                              : qd_green_init(steady.rho, reduced.sector);
  Eigen::VectorXd weights = readout_weights(*reduced.sector, emitter);
  return EmissionProblem{p,
                         emitter,
                         std::move(L),
                         std::move(steady),
                         std::move(reduced),
                         std::move(g0),
                         std::move(weights),
                         n};
}

ShiftedHessenbergSolver::ShiftedHessenbergSolver(const ReducedLiouvillian& Lred) {
  if (Lred.size() == 0) return;
  Eigen::HessenbergDecomposition<CMatrix> hd(Lred.dense);
  H_ = hd.matrixH();
  Q_ = hd.matrixQ();
}

ShiftedHessenbergSolver::Solution ShiftedHessenbergSolver::solve(const CVector& b_rotated,
                                                                 double omega) const {
  const HessenbergLU lu(H_, Complex{0.0, omega});
  const double cond = lu.condition();
  if (!std::isfinite(cond)) return {CVector::Zero(H_.rows()), cond};
  return {Q_ * lu.solve(b_rotated), cond};
}

std::vector<Complex> resolvent_sweep(const ReducedLiouvillian& Lred, const GreenVector& g0,
                                     const Eigen::VectorXd& weights, const std::vector<double>& grid,
                                     Execution execution, double max_condition) {
  if (!g0.is_time_zero()) throw std::invalid_argument("resolvent_sweep: g0 must be the tau = 0 vector");
  const auto m = static_cast<Eigen::Index>(Lred.size());
  if (g0.values.size() != m || weights.size() != m) {
    throw std::invalid_argument("resolvent_sweep: vector lengths do not match the sector");
  }
  std::vector<Complex> out(grid.size());
  const CVector w = weights.cast<Complex>();
  const ShiftedHessenbergSolver solver(Lred);
  const CVector b = solver.rotate(g0.values);
  const double tolerance = 1e-10 * g0.values.norm();
  for_each_point(grid.size(), execution, [&](std::size_t k) {
    const double omega = grid[k];
    if (!std::isfinite(omega)) throw std::invalid_argument("resolvent_sweep: omega must be finite");
    const auto sol = solver.solve(b, omega);
    if (!(sol.condition <= max_condition)) throw std::runtime_error(near_singular_message(omega, sol.condition));
    const CVector residual = Complex{0.0, omega} * sol.x - Lred.sparse * sol.x - g0.values;
    if (residual.norm() > tolerance) {
      std::ostringstream msg;
      msg << "resolvent_sweep: residual " << residual.norm() << " at omega = " << omega << " meV";
      throw std::runtime_error(msg.str());
    }
    out[k] = w.transpose() * sol.x;
  });
  return out;
}

std::vector<Complex> spectral_sweep(const SpectralCache& cache, const GreenVector& g0,
                                    const Eigen::VectorXd& weights, const std::vector<double>& grid,
                                    Execution execution) {
  const auto proj = cache.project(weights, g0);
  std::vector<Complex> out(grid.size());
  for_each_point(grid.size(), execution, [&](std::size_t k) { out[k] = cache.evaluate(proj, grid[k]); });
  return out;
}

Spectrum gft_spectrum(const EmissionProblem& problem, const std::vector<double>& grid,
                      const SpectrumOptions& options) {
  if (grid.empty()) throw std::invalid_argument("spectrum: grid is empty");
  require_uniform_grid(grid);
  std::vector<Complex> k_tilde;
  if (options.strategy == SolveStrategy::spectral_decomposition) {
    const auto cache = precompute_spectral(problem.reduced, options.max_eigen_condition);
    k_tilde = spectral_sweep(cache, problem.g0, problem.weights, grid, options.execution);
  } else {
    k_tilde = resolvent_sweep(problem.reduced, problem.g0, problem.weights, grid,
                              options.execution, options.max_condition);
  }
  Spectrum s{grid, std::vector<double>(grid.size()), problem.normalization, problem.emitter};
  const double scale = 1.0 / (std::numbers::pi * problem.normalization);
  for (std::size_t k = 0; k < grid.size(); ++k) s.values[k] = scale * k_tilde[k].real();
  return s;
}

Spectrum cavity_spectrum(const SystemParams& p, int n_exc, const std::vector<double>& grid,
                         const SpectrumOptions& options) {
  return gft_spectrum(prepare_emission(p, n_exc, Emitter::cavity, options), grid, options);
}

Spectrum qd_spectrum(const SystemParams& p, int n_exc, const std::vector<double>& grid,
                     const SpectrumOptions& options) {
  return gft_spectrum(prepare_emission(p, n_exc, Emitter::qd, options), grid, options);
}

}  // namespace qdc
