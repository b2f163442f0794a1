#include "qdc/liouvillian.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qdc {

namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

std::vector<Entry> nonzeros(const CMatrix& m) {
  std::vector<Entry> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex{0.0, 0.0}) out.push_back({i, j, m(i, j)});
    }
  }
  return out;
}

// vec(A rho B)_{i d + j} = sum_{k,l} A_ik B_lj rho_kl
void add_sandwich(std::vector<Eigen::Triplet<Complex>>& out, const std::vector<Entry>& a,
                  const std::vector<Entry>& b, Complex coeff, Eigen::Index d) {
  if (coeff == Complex{0.0, 0.0}) return;
  for (const auto& ea : a) {
    for (const auto& eb : b) {
      out.emplace_back(ea.row * d + eb.col, ea.col * d + eb.row, coeff * ea.value * eb.value);
    }
  }
}

void add_dissipator(std::vector<Eigen::Triplet<Complex>>& out, const CMatrix& jump, double rate,
                    const std::vector<Entry>& identity, Eigen::Index d) {
  if (rate == 0.0) return;
  const CMatrix jump_dag = jump.adjoint();
  const CMatrix number = jump_dag * jump;
  const auto nz_jump = nonzeros(jump);
  const auto nz_dag = nonzeros(jump_dag);
  const auto nz_number = nonzeros(number);
  add_sandwich(out, nz_jump, nz_dag, rate, d);
  add_sandwich(out, nz_number, identity, -0.5 * rate, d);
  add_sandwich(out, identity, nz_number, -0.5 * rate, d);
}

}  // namespace

Liouvillian::Liouvillian(Basis basis, SystemParams params, SparseCMatrix matrix)
    : basis_(std::move(basis)), params_(params), matrix_(std::move(matrix)) {}

CVector Liouvillian::vectorize(const CMatrix& rho) const {
  const auto d = static_cast<Eigen::Index>(dim());
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("liouvillian: operator dimension does not match basis");
  }
  CVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  }
  return v;
}

CMatrix Liouvillian::unvectorize(const CVector& v) const {
  const auto d = static_cast<Eigen::Index>(dim());
  if (v.size() != d * d) throw std::invalid_argument("liouvillian: vector length mismatch");
  CMatrix rho(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  }
  return rho;
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  return unvectorize(matrix_ * vectorize(rho));
}

void Liouvillian::write_triplets(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseCMatrix::InnerIterator it(matrix_, r); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag()
         << '\n';
    }
  }
  os.precision(old_precision);
}

Liouvillian build_liouvillian(const SystemParams& p, const Basis& b) {
  p.validate();
  const auto d = static_cast<Eigen::Index>(b.dimension());
  const auto H = hamiltonian(p, b).matrix;
  const auto a = photon_annihilation(b).matrix;
  const auto sigma = exciton_lowering(b).matrix;
  // Truncated sigma^dagger: zero wherever |X,n> would leave the basis.
  const CMatrix sigma_dag = sigma.adjoint();

  std::vector<Entry> identity;
  for (Eigen::Index i = 0; i < d; ++i) identity.push_back({i, i, 1.0});

  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto nz_h = nonzeros(H);
  const Complex I{0.0, 1.0};
  // i [rho, H] = i rho H - i H rho
  add_sandwich(triplets, nz_h, identity, -I, d);
  add_sandwich(triplets, identity, nz_h, I, d);
  add_dissipator(triplets, a, p.kappa, identity, d);
  add_dissipator(triplets, sigma, p.gamma, identity, d);
  add_dissipator(triplets, sigma_dag, p.pump, identity, d);

  SparseCMatrix L(d * d, d * d);
  L.setFromTriplets(triplets.begin(), triplets.end());
  L.prune(Complex{0.0, 0.0});
  L.makeCompressed();
  return Liouvillian(b, p, std::move(L));
}

CMatrix bloch_rhs(const SystemParams& p, const Basis& b, const CMatrix& rho) {
  const auto d = static_cast<Eigen::Index>(b.dimension());
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("bloch_rhs: density matrix is " + std::to_string(rho.rows()) +
                                "x" + std::to_string(rho.cols()) + ", basis dimension is " +
                                std::to_string(d));
  }
  // Element lookup that treats anything outside the truncation as zero.
  auto at = [&](Matter alpha, int n, Matter beta, int m) -> Complex {
    const auto i = b.index_of({alpha, n});
    const auto j = b.index_of({beta, m});
    if (!i || !j) return {0.0, 0.0};
    return rho(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
  };
  auto delta = [](Matter x, Matter y) { return x == y ? 1.0 : 0.0; };
  // Pumping |G,n> -> |X,n> is only kept while |X,n> is inside the basis.
  auto pumpable = [&](int n) { return b.index_of({Matter::X, n}).has_value() ? 1.0 : 0.0; };

  const Complex I{0.0, 1.0};
  const double wx = p.omega_x;
  const double wa = p.omega_a();
  const Matter G = Matter::G;
  const Matter X = Matter::X;

  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Matter alpha = b[i].matter;
      const Matter beta = b[j].matter;
      const int n = b[i].photons;
      const int m = b[j].photons;
      const double sn = std::sqrt(static_cast<double>(n));
      const double sm = std::sqrt(static_cast<double>(m));
      const double sn1 = std::sqrt(static_cast<double>(n + 1));
      const double sm1 = std::sqrt(static_cast<double>(m + 1));

      Complex v = I * (wa * (m - n) * at(alpha, n, beta, m) +
                       wx * (delta(beta, X) * at(alpha, n, X, m) - delta(alpha, X) * at(X, n, beta, m)));
      v += I * p.g *
           ((sm1 * delta(beta, X) * at(alpha, n, G, m + 1) + sm * delta(beta, G) * at(alpha, n, X, m - 1)) -
            (sn * delta(alpha, G) * at(X, n - 1, beta, m) + sn1 * delta(alpha, X) * at(G, n + 1, beta, m)));
      v += 0.5 * p.kappa *
           (2.0 * std::sqrt(static_cast<double>((m + 1) * (n + 1))) * at(alpha, n + 1, beta, m + 1) -
            static_cast<double>(n + m) * at(alpha, n, beta, m));
      v -= 0.5 * p.gamma *
           (delta(alpha, X) * at(X, n, beta, m) - 2.0 * delta(alpha, G) * delta(beta, G) * at(X, n, X, m) +
            delta(beta, X) * at(alpha, n, X, m));
      v += 0.5 * p.pump *
           (2.0 * delta(alpha, X) * delta(beta, X) * at(G, n, G, m) -
            delta(alpha, G) * pumpable(n) * at(G, n, beta, m) -
            delta(beta, G) * pumpable(m) * at(alpha, n, G, m));
      out(i, j) = v;
    }
  }
  return out;
}

SectorMap::SectorMap(const Basis& basis, int offset)
    : basis_(basis), offset_(offset), flat_to_pair_(basis.dimension() * basis.dimension(), -1) {
  const std::size_t d = basis.dimension();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (excitation_number(basis[j]) - excitation_number(basis[i]) == offset) {
        flat_to_pair_[i * d + j] = static_cast<long>(pairs_.size());
        pairs_.emplace_back(i, j);
      }
    }
  }
}

std::optional<std::size_t> SectorMap::index_of(std::size_t row, std::size_t col) const {
  const std::size_t d = basis_.dimension();
  if (row >= d || col >= d) return std::nullopt;
  const long p = flat_to_pair_[row * d + col];
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

std::optional<std::size_t> SectorMap::index_of(BareState row, BareState col) const {
  const auto i = basis_.index_of(row);
  const auto j = basis_.index_of(col);
  if (!i || !j) return std::nullopt;
  return index_of(*i, *j);
}

ReducedLiouvillian reduce_to_sector(const Liouvillian& L, int offset) {
  auto sector = std::make_shared<const SectorMap>(L.basis(), offset);
  const auto n = static_cast<Eigen::Index>(sector->size());
  const auto& M = L.matrix();

  ReducedLiouvillian out{sector, CMatrix::Zero(n, n), SparseCMatrix(n, n)};
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index r = 0; r < M.outerSize(); ++r) {
    const long p = sector->from_flat(static_cast<std::size_t>(r));
    for (SparseCMatrix::InnerIterator it(M, r); it; ++it) {
      const long q = sector->from_flat(static_cast<std::size_t>(it.col()));
      if (q < 0) continue;
      if (p < 0) {
        if (std::abs(it.value()) > 1e-14) {
          throw std::logic_error("reduce_to_sector: offset " + std::to_string(offset) +
                                 " sector is not closed (coupling " +
                                 std::to_string(std::abs(it.value())) + " from flat index " +
                                 std::to_string(it.col()) + " to " + std::to_string(r) + ")");
        }
        continue;
      }
      out.dense(p, q) += it.value();
      triplets.emplace_back(p, q, it.value());
    }
  }
  out.sparse.setFromTriplets(triplets.begin(), triplets.end());
  out.sparse.makeCompressed();
  return out;
}

}  // namespace qdc
