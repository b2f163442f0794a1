#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdc/liouvillian.hpp"

namespace qdc {

/// Density matrix on a truncated basis.
struct DensityMatrix {
  Basis basis;
  CMatrix matrix;

  std::size_t dim() const { return basis.dimension(); }
  Complex operator()(std::size_t i, std::size_t j) const {
    return matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  Complex element(BareState bra, BareState ket) const;

  double hermiticity_error() const;
  double trace_error() const;
  double min_eigenvalue() const;

  /// Throws std::runtime_error if Hermiticity (1e-12), trace (1e-12) or
  /// positivity (-1e-10) fails.
  void validate() const;

  /// Writes `row,col,re,im` CSV with a header line.
  void write_csv(std::ostream& os) const;
};

DensityMatrix pure_state(const Basis& b, BareState s);

enum class SteadyStateMethod {
  constrained_solve,  ///< trace row replaces one balance equation, LU with partial pivoting
  kernel,             ///< SVD null vector of the dense full generator (small bases only)
};

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::constrained_solve;
  double truncation_threshold = 1e-6;
  double max_condition = 1e12;
};

struct SteadyStateResult {
  DensityMatrix rho;
  double residual = 0.0;            ///< ||L vec(rho)||
  double condition_estimate = 0.0;  ///< of the constrained system
  double top_manifold_population = 0.0;
  std::vector<std::string> warnings;
};

/// Stationary state of L. Requires kappa > 0.
SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options = {});

enum class Population { cavity, exciton };

/// cavity -> <a^dagger a>, exciton -> <sigma^dagger sigma>.
double population(const DensityMatrix& rho, Population which);

/// Population of the highest excitation manifold kept by the truncation.
double top_manifold_population(const DensityMatrix& rho);

/// Fixed-step fourth-order Runge-Kutta integration of d(rho)/dt = L rho.
/// The result is not renormalized; trace drift is a diagnostic.
DensityMatrix evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_max, double dt);

}  // namespace qdc
