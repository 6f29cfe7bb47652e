#include "redyn/composite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "redyn/error.hpp"

namespace redyn {

namespace {

HermitianOperator hermitian_part(const ComplexMatrix& m) {
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

}  // namespace

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, DensityOperator rho)
    : dim_a_(dim_a), dim_b_(dim_b), rho_(std::move(rho)) {
  if (dim_a_ < 1 || dim_b_ < 1 || rho_.dim() != dim_a_ * dim_b_) {
    throw Error(ErrorCode::DimensionMismatch,
                "bipartite state of dimension " + std::to_string(rho_.dim()) +
                    " does not factor as " + std::to_string(dim_a_) + "*" +
                    std::to_string(dim_b_));
  }
}

DensityOperator BipartiteState::marginal_a() const {
  return DensityOperator(partial_trace_b(matrix(), dim_a_, dim_b_));
}

DensityOperator BipartiteState::marginal_b() const {
  return DensityOperator(partial_trace_a(matrix(), dim_a_, dim_b_));
}

CorrelationOperator::CorrelationOperator(std::size_t dim_a, std::size_t dim_b,
                                         ComplexMatrix m)
    : dim_a_(dim_a), dim_b_(dim_b), m_(std::move(m)) {
  if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != dim_a_ * dim_b_) {
    throw Error(ErrorCode::DimensionMismatch,
                "correlation operator does not match " + std::to_string(dim_a_) + "*" +
                    std::to_string(dim_b_));
  }
  const double scale = m_.norm();
  if (!within(hermiticity_residual(m_), scale, tol::herm)) {
    throw Error(ErrorCode::InvalidArgument, "correlation operator is not Hermitian");
  }
  if (!within(std::abs(m_.trace()), scale, tol::trace)) {
    throw Error(ErrorCode::InvalidArgument, "correlation operator is not traceless");
  }
  if (!within(partial_trace_b(m_, dim_a_, dim_b_).norm(), scale, tol::recon) ||
      !within(partial_trace_a(m_, dim_a_, dim_b_).norm(), scale, tol::recon)) {
    throw Error(ErrorCode::InvalidArgument,
                "correlation operator has a nonvanishing partial trace");
  }
}

CorrelationOperator CorrelationOperator::zero(std::size_t dim_a, std::size_t dim_b) {
  const auto d = static_cast<Eigen::Index>(dim_a * dim_b);
  return CorrelationOperator(dim_a, dim_b, ComplexMatrix::Zero(d, d));
}

CorrelationOperator correlation_operator(const BipartiteState& s) {
  const ComplexMatrix rho_a = partial_trace_b(s.matrix(), s.dim_a(), s.dim_b());
  const ComplexMatrix rho_b = partial_trace_a(s.matrix(), s.dim_a(), s.dim_b());
  return CorrelationOperator(s.dim_a(), s.dim_b(),
                             s.matrix() - tensor_product(rho_a, rho_b));
}

bool is_factorable(const BipartiteState& s, double tolerance) {
  return correlation_operator(s).matrix().norm() < tolerance;
}

ComplexMatrix HamiltonianDecomposition::reassemble() const {
  const ComplexMatrix ia = identity(dim_a);
  const ComplexMatrix ib = identity(dim_b);
  return scalar * identity(dim_a * dim_b) + tensor_product(h_a.matrix(), ib) +
         tensor_product(ia, h_b.matrix()) + v.matrix();
}

HamiltonianDecomposition decompose_hamiltonian(const HermitianOperator& h,
                                               std::size_t dim_a, std::size_t dim_b) {
  if (dim_a < 2 || dim_b < 2 || h.dim() != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "Hamiltonian of dimension " + std::to_string(h.dim()) +
                    " does not factor as " + std::to_string(dim_a) + "*" +
                    std::to_string(dim_b) + " with both factors >= 2");
  }
  return decompose_hamiltonian(h, generators(dim_a), generators(dim_b));
}

HamiltonianDecomposition decompose_hamiltonian(const HermitianOperator& h,
                                               const GeneratorBasis& basis_a,
                                               const GeneratorBasis& basis_b) {
  const BipartiteExpansion e = expand_bipartite(h.matrix(), basis_a, basis_b);
  const std::size_t n = basis_a.n();
  const std::size_t m = basis_b.n();

  ComplexMatrix ha = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                         static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < e.a.size(); ++i) ha += e.a[i].real() * basis_a[i];
  ComplexMatrix hb = ComplexMatrix::Zero(static_cast<Eigen::Index>(m),
                                         static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < e.b.size(); ++j) hb += e.b[j].real() * basis_b[j];

  RealMatrix coeffs = e.c.real();
  ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(n * m),
                                        static_cast<Eigen::Index>(n * m));
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
      if (coeffs(i, j) == 0.0) continue;
      v += coeffs(i, j) * tensor_product(basis_a[static_cast<std::size_t>(i)],
                                         basis_b[static_cast<std::size_t>(j)]);
    }
  }
  return HamiltonianDecomposition{n,
                                  m,
                                  e.c00.real(),
                                  hermitian_part(ha),
                                  hermitian_part(hb),
                                  hermitian_part(v),
                                  std::move(coeffs)};
}

ComplexMatrix CanonicalInteraction::reconstruct() const {
  const std::size_t dim = basis_a.n() * basis_b.n();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += values[k] * tensor_product(basis_a[k], basis_b[k]);
  }
  return out;
}

CanonicalInteraction canonical_interaction(const HamiltonianDecomposition& d,
                                           const GeneratorBasis& basis_a,
                                           const GeneratorBasis& basis_b) {
  const RealSvd svd = svd_real(d.v_coeffs);
  return CanonicalInteraction{std::min(basis_a.n(), basis_b.n()), svd.values,
                              basis_a.rotated(svd.left), basis_b.rotated(svd.right)};
}

CorrelationOperator make_probe_correlation(std::size_t l, std::size_t m,
                                           const GeneratorBasis& basis_a,
                                           const GeneratorBasis& basis_b) {
  if (l >= basis_a.size() || m >= basis_b.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "probe index (" + std::to_string(l) + ", " + std::to_string(m) +
                    ") out of range for " + std::to_string(basis_a.size()) + "x" +
                    std::to_string(basis_b.size()) + " generators");
  }
  return CorrelationOperator(basis_a.n(), basis_b.n(),
                             tensor_product(basis_a[l], basis_b[m]));
}

double auto_probe_epsilon(const DensityOperator& rho_a, const DensityOperator& rho_b,
                          const ComplexMatrix& probe) {
  const double lmin = min_eigenvalue(tensor_product(rho_a.matrix(), rho_b.matrix()));
  return std::max(0.0, lmin) / (spectral_norm(probe) + tol::psd) / 2.0;
}

BipartiteState make_probe_state(std::size_t l, std::size_t m,
                                const DensityOperator& rho_a,
                                const DensityOperator& rho_b,
                                std::optional<double> eps,
                                const GeneratorBasis& basis_a,
                                const GeneratorBasis& basis_b) {
  if (rho_a.dim() != basis_a.n() || rho_b.dim() != basis_b.n()) {
    throw Error(ErrorCode::DimensionMismatch, "marginals do not match generator bases");
  }
  const CorrelationOperator probe = make_probe_correlation(l, m, basis_a, basis_b);
  const ComplexMatrix product = tensor_product(rho_a.matrix(), rho_b.matrix());

  double e = 0.0;
  if (eps) {
    e = *eps;
  } else {
    e = auto_probe_epsilon(rho_a, rho_b, probe.matrix());
    if (e <= 0.0) {
      throw Error(ErrorCode::InvalidState,
                  "rho_A (x) rho_B is singular; no positive probe strength keeps the "
                  "state positive. Use full-rank (e.g. maximally mixed) marginals");
    }
  }
  const ComplexMatrix rho = product + e * probe.matrix();
  if (min_eigenvalue(rho) < -tol::psd) {
    throw Error(ErrorCode::InvalidState,
                "probe strength " + std::to_string(e) +
                    " breaks positivity; reduce epsilon or use maximally mixed marginals");
  }
  return BipartiteState(basis_a.n(), basis_b.n(), DensityOperator(rho));
}

}  // namespace redyn
