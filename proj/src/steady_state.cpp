#include "qdc/steady_state.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "flush_denormals.hpp"
#include "lu_condition.hpp"

namespace qdc {

Complex DensityMatrix::element(BareState bra, BareState ket) const {
  const auto i = basis.index_of(bra);
  const auto j = basis.index_of(ket);
  if (!i || !j) return {0.0, 0.0};
  return (*this)(*i, *j);
}

double DensityMatrix::hermiticity_error() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(matrix.trace() - 1.0); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  std::ostringstream msg;
  if (const double e = hermiticity_error(); e > 1e-12) msg << " hermiticity error " << e << ';';
  if (const double e = trace_error(); e > 1e-12) msg << " trace error " << e << ';';
  if (const double e = min_eigenvalue(); e < -1e-10) msg << " negative eigenvalue " << e << ';';
  if (!msg.str().empty()) throw std::runtime_error("invalid density matrix:" + msg.str());
}

void DensityMatrix::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      os << i << ',' << j << ',' << matrix(i, j).real() << ',' << matrix(i, j).imag() << '\n';
    }
  }
  os.precision(old_precision);
}

DensityMatrix pure_state(const Basis& b, BareState s) {
  const auto i = b.index_of(s);
  if (!i) throw std::invalid_argument("pure_state: state outside the basis");
  const auto d = static_cast<Eigen::Index>(b.dimension());
  DensityMatrix rho{b, CMatrix::Zero(d, d)};
  rho.matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*i)) = 1.0;
  return rho;
}

double population(const DensityMatrix& rho, Population which) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const BareState s = rho.basis[i];
    const double weight = which == Population::cavity ? s.photons : (s.matter == Matter::X ? 1.0 : 0.0);
    sum += weight * rho(i, i).real();
  }
  return sum;
}

double top_manifold_population(const DensityMatrix& rho) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (excitation_number(rho.basis[i]) == rho.basis.n_exc()) sum += rho(i, i).real();
  }
  return sum;
}

namespace {

// Steady states live on the excitation-diagonal (offset 0) sector, which is
// invariant under L; solving there keeps the system at 4 n_exc + 1 unknowns.
SteadyStateResult solve_constrained(const Liouvillian& L, const SteadyStateOptions& options) {
  const ReducedLiouvillian block = reduce_to_sector(L, 0);
  const SectorMap& sector = *block.sector;
  const auto n = static_cast<Eigen::Index>(sector.size());

  CMatrix A = block.dense;
  CVector rhs = CVector::Zero(n);
  // Row of the (G0,G0) balance equation is redundant with the others; it
  // carries the normalization Tr(rho) = 1 instead.
  const auto trace_row = static_cast<Eigen::Index>(*sector.index_of(0, 0));
  A.row(trace_row).setZero();
  for (Eigen::Index p = 0; p < n; ++p) {
    const auto& [i, j] = sector.pair(static_cast<std::size_t>(p));
    if (i == j) A(trace_row, p) = 1.0;
  }
  rhs(trace_row) = 1.0;

  Eigen::PartialPivLU<CMatrix> lu(A);
  const double cond = detail::condition_estimate(lu);
  if (!(cond < options.max_condition)) {
    // A second vanishing singular value of the unconstrained block means the
    // stationary state is not unique; the trace row cannot repair that.
    Eigen::JacobiSVD<CMatrix> svd(block.dense);
    const auto& s = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, s(0));
    if (n > 1 && s(n - 2) <= tol) {
      std::ostringstream msg;
      msg << "steady_state: non-unique stationary state (two singular values below " << tol
          << ": " << s(n - 2) << ", " << s(n - 1) << ")";
      throw std::runtime_error(msg.str());
    }
    std::ostringstream msg;
    msg << "steady_state: constrained system is singular or ill-conditioned (condition estimate "
        << cond << ")";
    throw std::runtime_error(msg.str());
  }
  const CVector x = lu.solve(rhs);

  const auto d = static_cast<Eigen::Index>(L.dim());
  SteadyStateResult out{DensityMatrix{L.basis(), CMatrix::Zero(d, d)}, 0.0, 0.0, 0.0, {}};
  for (Eigen::Index p = 0; p < n; ++p) {
    const auto& [i, j] = sector.pair(static_cast<std::size_t>(p));
    out.rho.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(p);
  }
  out.condition_estimate = cond;
  return out;
}

SteadyStateResult solve_kernel(const Liouvillian& L) {
  if (L.dim2() > 4096) {
    throw std::invalid_argument("steady_state: kernel method is limited to d^2 <= 4096");
  }
  const CMatrix dense = CMatrix(L.matrix());
  Eigen::BDCSVD<CMatrix> svd(dense, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const auto n = s.size();
  const double tol = 1e-10 * std::max(1.0, s(0));
  if (n > 1 && s(n - 2) <= tol) {
    std::ostringstream msg;
    msg << "steady_state: non-unique kernel (singular values " << s(n - 2) << ", " << s(n - 1)
        << ")";
    throw std::runtime_error(msg.str());
  }
  CMatrix rho = L.unvectorize(svd.matrixV().col(n - 1));
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw std::runtime_error("steady_state: kernel vector is traceless");
  rho /= tr;
  // the exact kernel is Hermitian; drop the SVD round-off in the anti-Hermitian part
  rho = 0.5 * (rho + rho.adjoint()).eval();
  SteadyStateResult out{DensityMatrix{L.basis(), rho}, 0.0, 0.0, 0.0, {}};
  out.condition_estimate = s(0) / s(n - 2);
  return out;
}

}  // namespace

SteadyStateResult steady_state(const Liouvillian& L, const SteadyStateOptions& options) {
  if (!(L.params().kappa > 0.0)) {
    throw std::invalid_argument("steady_state: requires kappa > 0");
  }
  SteadyStateResult out = options.method == SteadyStateMethod::kernel
                              ? solve_kernel(L)
                              : solve_constrained(L, options);
  out.residual = (L.matrix() * L.vectorize(out.rho.matrix)).norm();
  if (out.residual > 1e-10) {
    std::ostringstream msg;
    msg << "steady_state: residual ||L rho|| = " << out.residual << " exceeds 1e-10";
    throw std::runtime_error(msg.str());
  }
  out.rho.validate();
  out.top_manifold_population = top_manifold_population(out.rho);
  if (out.top_manifold_population > options.truncation_threshold) {
    std::ostringstream msg;
    msg << "truncation: top manifold (n_exc=" << L.basis().n_exc() << ") holds population "
        << out.top_manifold_population << " > " << options.truncation_threshold
        << "; increase n_exc";
    out.warnings.push_back(msg.str());
  }
  return out;
}

DensityMatrix evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    throw std::invalid_argument("evolve: need dt > 0 and t_max >= 0");
  }
  if (!(rho0.basis == L.basis())) throw std::invalid_argument("evolve: basis mismatch");
  const auto steps = static_cast<long>(std::llround(t_max / dt));
  const auto& M = L.matrix();
  const detail::FlushDenormals ftz;
  CVector y = L.vectorize(rho0.matrix);
  const double norm0 = std::max(y.norm(), 1e-300);
  CVector k1, k2, k3, k4;
  for (long s = 0; s < steps; ++s) {
    k1 = M * y;
    k2 = M * (y + 0.5 * dt * k1);
    k3 = M * (y + 0.5 * dt * k2);
    k4 = M * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y.norm() <= 1e3 * norm0)) {
      std::ostringstream msg;
      msg << "evolve: solution blew up at t = " << (s + 1) * dt << "; use a smaller dt";
      throw std::runtime_error(msg.str());
    }
  }
  return DensityMatrix{L.basis(), L.unvectorize(y)};
}

}  // namespace qdc
