#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qdc/liouvillian.hpp"
#include "qdc/spectrum.hpp"
#include "qdc/steady_state.hpp"

namespace qdc {

/// Green's-operator components on a coherence sector, either at tau = 0 or
/// transformed to frequency omega.
struct GreenVector {
  std::shared_ptr<const SectorMap> sector;
  CVector values;
  std::optional<double> omega;  ///< nullopt: tau = 0

  bool is_time_zero() const { return !omega.has_value(); }
};

/// G(0) = a rho_ss restricted to the offset +1 sector:
///   G_{Gl,Gl+1} = sqrt(l+1) rho_{Gl+1,Gl+1}   G_{Xl,Xl+1} = sqrt(l+1) rho_{Xl+1,Xl+1}
///   G_{Gl,Xl}   = sqrt(l+1) rho_{Gl+1,Xl}     G_{Xl,Gl+2} = sqrt(l+1) rho_{Xl+1,Gl+2}
GreenVector cavity_green_init(const DensityMatrix& rho_ss, std::shared_ptr<const SectorMap> sector);

/// G(0) = sigma rho_ss restricted to the offset +1 sector:
///   G_{Gl,Xl} = rho_{Xl,Xl}   G_{Gl,Gl+1} = rho_{Xl,Gl+1}
GreenVector qd_green_init(const DensityMatrix& rho_ss, std::shared_ptr<const SectorMap> sector);

/// Readout weights w with K(tau) = sum_p w_p G_p(tau) = Tr[A G(tau)], where
/// A = a^dagger (cavity) or sigma^dagger (dot).
Eigen::VectorXd readout_weights(const SectorMap& sector, Emitter emitter);

/// Solves (i omega - L_red) G~ = G(0) by LU with partial pivoting.
///
/// Throws std::runtime_error naming omega when the condition estimate exceeds
/// `max_condition`, or when the residual exceeds 1e-10 ||G(0)||.
GreenVector resolve_green(const ReducedLiouvillian& Lred, const GreenVector& g0, double omega,
                          double max_condition = 1e12);

/// Shifted solves (i omega - L_red) x = b for many omega. L_red = Q H Q^dagger is
/// reduced to upper Hessenberg form once; each shift is then factorized by
/// Gaussian elimination with partial pivoting on the Hessenberg matrix, which
/// costs O(m^2) instead of O(m^3).
class ShiftedHessenbergSolver {
 public:
  explicit ShiftedHessenbergSolver(const ReducedLiouvillian& Lred);

  struct Solution {
    CVector x;
    double condition;  ///< 1-norm condition estimate of the shifted Hessenberg matrix
  };
  /// `b_rotated` must be Q^dagger b (see rotate()); the returned x is in the
  /// original coordinates.
  Solution solve(const CVector& b_rotated, double omega) const;
  CVector rotate(const CVector& b) const { return Q_.adjoint() * b; }
  std::size_t size() const { return static_cast<std::size_t>(H_.rows()); }

 private:
  CMatrix H_;
  CMatrix Q_;
};

/// Diagonalization of L_red reused across all frequencies:
/// G~(omega) = V diag(1 / (i omega - lambda)) V^-1 G(0).
class SpectralCache {
 public:
  const CVector& eigenvalues() const { return eigenvalues_; }
  double eigenvector_condition() const { return condition_; }

  GreenVector resolve(const GreenVector& g0, double omega) const;

  /// Projects readout weights and G(0) onto the eigenbasis once, so each
  /// frequency costs O(size).
  struct Projection {
    CVector left;   ///< w^T V
    CVector right;  ///< V^-1 G(0)
  };
  Projection project(const Eigen::VectorXd& weights, const GreenVector& g0) const;
  Complex evaluate(const Projection& proj, double omega) const;

 private:
  friend SpectralCache precompute_spectral(const ReducedLiouvillian&, double);

  std::shared_ptr<const SectorMap> sector_;
  CVector eigenvalues_;
  CMatrix vectors_;
  CMatrix inverse_;
  double condition_ = 0.0;
};

/// Throws std::runtime_error (advising per-frequency factorization) when the
/// eigenvector condition estimate exceeds `max_condition`.
SpectralCache precompute_spectral(const ReducedLiouvillian& Lred, double max_condition = 1e8);

enum class SolveStrategy { per_frequency_factorization, spectral_decomposition };

struct SpectrumOptions {
  SolveStrategy strategy = SolveStrategy::per_frequency_factorization;
  Execution execution = Execution::parallel;
  double population_floor = 1e-10;
  double max_condition = 1e12;        ///< per-frequency solves
  double max_eigen_condition = 1e8;   ///< spectral decomposition admission
  SteadyStateOptions steady;
};

/// Everything shared by the frequency-domain and time-domain routes: the
/// reduced generator, G(0), the readout weights and the normalization.
struct EmissionProblem {
  SystemParams params;
  Emitter emitter;
  Liouvillian liouvillian;
  SteadyStateResult steady;
  ReducedLiouvillian reduced;
  GreenVector g0;
  Eigen::VectorXd weights;
  double normalization;  ///< n_c or n_sigma
};

/// Basis -> operators -> Liouvillian -> steady state -> G(0).
/// Throws std::runtime_error when the emitter population is below the floor.
EmissionProblem prepare_emission(const SystemParams& p, int n_exc, Emitter emitter,
                                 const SpectrumOptions& options = {});

/// K~(omega) = w . G~(omega) for each grid point, one shifted factorization
/// per frequency. Every point is held to the resolve_green contract (condition
/// estimate and residual against L_red). The serial path is the reference;
/// the parallel path distributes grid points over OpenMP threads.
std::vector<Complex> resolvent_sweep(const ReducedLiouvillian& Lred, const GreenVector& g0,
                                     const Eigen::VectorXd& weights, const std::vector<double>& grid,
                                     Execution execution, double max_condition = 1e12);

/// Same sweep through a precomputed eigendecomposition.
std::vector<Complex> spectral_sweep(const SpectralCache& cache, const GreenVector& g0,
                                    const Eigen::VectorXd& weights, const std::vector<double>& grid,
                                    Execution execution);

/// S(omega) = Re K~(omega) / (pi n) on the grid.
Spectrum gft_spectrum(const EmissionProblem& problem, const std::vector<double>& grid,
                      const SpectrumOptions& options = {});

Spectrum cavity_spectrum(const SystemParams& p, int n_exc, const std::vector<double>& grid,
                         const SpectrumOptions& options = {});
Spectrum qd_spectrum(const SystemParams& p, int n_exc, const std::vector<double>& grid,
                     const SpectrumOptions& options = {});

}  // namespace qdc
