#pragma once

#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "qdc/basis.hpp"
#include "qdc/operators.hpp"

namespace qdc {

using SparseCMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Markovian generator d(rho)/dt = L rho as a d^2 x d^2 sparse matrix.
///
/// Vectorization is row-major: matrix element (i, j) lives at flat index i * d + j.
class Liouvillian {
 public:
  Liouvillian(Basis basis, SystemParams params, SparseCMatrix matrix);

  const Basis& basis() const { return basis_; }
  const SystemParams& params() const { return params_; }
  const SparseCMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return basis_.dimension(); }
  std::size_t dim2() const { return dim() * dim(); }
  std::size_t flat_index(std::size_t i, std::size_t j) const { return i * dim() + j; }

  CVector vectorize(const CMatrix& rho) const;
  CMatrix unvectorize(const CVector& v) const;

  /// Returns L rho as a d x d matrix.
  CMatrix apply(const CMatrix& rho) const;

  /// Writes `row col re im` coordinate triples, one nonzero per line.
  void write_triplets(std::ostream& os) const;

 private:
  Basis basis_;
  SystemParams params_;
  SparseCMatrix matrix_;
};

/// Assembles the Lindblad generator for cavity loss (kappa), spontaneous
/// emission (gamma) and incoherent exciton pumping (pump).
///
/// Pumping uses the truncated sigma^dagger in both the sandwich term and the
/// anticommutator, so at the top manifold both halves vanish together and the
/// trace is annihilated exactly.
Liouvillian build_liouvillian(const SystemParams& p, const Basis& b);

/// Right-hand side of the master equation evaluated element by element from
/// the Kronecker-delta component form. Independent of build_liouvillian.
CMatrix bloch_rhs(const SystemParams& p, const Basis& b, const CMatrix& rho);

/// Basis pairs (row state, column state) whose excitation difference
/// exc(column) - exc(row) equals `offset`.
class SectorMap {
 public:
  SectorMap(const Basis& basis, int offset);

  const Basis& basis() const { return basis_; }
  int offset() const { return offset_; }
  std::size_t size() const { return pairs_.size(); }
  const std::pair<std::size_t, std::size_t>& pair(std::size_t p) const { return pairs_[p]; }
  std::span<const std::pair<std::size_t, std::size_t>> pairs() const { return pairs_; }

  /// Reduced index of the basis pair (row, col), or nullopt when it is not in the sector.
  std::optional<std::size_t> index_of(std::size_t row, std::size_t col) const;
  std::optional<std::size_t> index_of(BareState row, BareState col) const;

  /// Reduced index of a flat (row-major) superoperator index, -1 when outside.
  long from_flat(std::size_t flat) const { return flat_to_pair_[flat]; }

 private:
  Basis basis_;
  int offset_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<long> flat_to_pair_;
};

/// Restriction of L to an invariant excitation-offset sector.
struct ReducedLiouvillian {
  std::shared_ptr<const SectorMap> sector;
  CMatrix dense;
  SparseCMatrix sparse;

  std::size_t size() const { return sector->size(); }
};

/// Restricts L to the sector with the given excitation offset (default +1,
/// the coherences that carry the emission spectrum).
///
/// Throws std::logic_error if any coupling from a sector pair into a
/// non-sector pair exceeds 1e-14, which indicates an assembly bug.
ReducedLiouvillian reduce_to_sector(const Liouvillian& L, int offset = 1);

}  // namespace qdc
