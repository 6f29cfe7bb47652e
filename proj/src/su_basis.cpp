#include "redyn/su_basis.hpp"

#include <cmath>
#include <string>

#include "redyn/error.hpp"

namespace redyn {

namespace {

// Trace of a*b without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace

GeneratorBasis GeneratorBasis::gell_mann(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "SU(n) generators need n >= 2, got " + std::to_string(n));
  }
  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<ComplexMatrix> gens;
  gens.reserve(n * n - 1);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      gens.push_back(std::move(s));
    }
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = j + 1; k < dim; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
      s(j, k) = Complex(0.0, -1.0);
      s(k, j) = Complex(0.0, 1.0);
      gens.push_back(std::move(s));
    }
  }
  for (Eigen::Index d = 1; d < dim; ++d) {
    const double f = std::sqrt(2.0 / static_cast<double>(d * (d + 1)));
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < d; ++j) s(j, j) = f;
    s(d, d) = -static_cast<double>(d) * f;
    gens.push_back(std::move(s));
  }
  return GeneratorBasis(n, std::move(gens));
}

GeneratorBasis::GeneratorBasis(std::size_t n, std::vector<ComplexMatrix> generators)
    : n_(n), generators_(std::move(generators)) {
  if (n_ < 2 || generators_.size() != n_ * n_ - 1) {
    throw Error(ErrorCode::InvalidArgument,
                "generator basis for SU(" + std::to_string(n_) + ") needs " +
                    std::to_string(n_ * n_ - 1) + " generators");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const ComplexMatrix& s = generators_[i];
    if (static_cast<std::size_t>(s.rows()) != n_ ||
        static_cast<std::size_t>(s.cols()) != n_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "generator " + std::to_string(i) + " has wrong shape");
    }
    if (hermiticity_residual(s) > tol::herm || std::abs(s.trace()) > tol::trace) {
      throw Error(ErrorCode::InvalidArgument,
                  "generator " + std::to_string(i) + " is not Hermitian and traceless");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = trace_product(s, generators_[j]);
      const double expected = (i == j) ? 2.0 : 0.0;
      if (std::abs(g - expected) > tol::recon) {
        throw Error(ErrorCode::InvalidArgument,
                    "generators " + std::to_string(j) + ", " + std::to_string(i) +
                        " violate tr(s_i s_j) = 2 delta_ij");
      }
    }
  }
}

GeneratorBasis GeneratorBasis::rotated(const RealMatrix& rotation) const {
  const auto d = static_cast<Eigen::Index>(size());
  if (rotation.rows() != d || rotation.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "basis rotation has wrong shape");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (Eigen::Index k = 0; k < d; ++k) {
    ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(n_),
                                          static_cast<Eigen::Index>(n_));
    for (Eigen::Index i = 0; i < d; ++i) {
      s += rotation(i, k) * generators_[static_cast<std::size_t>(i)];
    }
    out.push_back(std::move(s));
  }
  return GeneratorBasis(n_, std::move(out));
}

StructureConstants structure_constants(const GeneratorBasis& basis) {
  const std::size_t d = basis.size();
  std::vector<double> g(d * d * d, 0.0);
  const Complex four_i(0.0, 4.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix c = commutator(basis[i], basis[l]);
      for (std::size_t k = 0; k < d; ++k) {
        const Complex v = trace_product(c, basis[k]) / four_i;
        if (std::abs(v.imag()) > tol::recon) {
          throw Error(ErrorCode::Internal, "structure constant has imaginary residue");
        }
        g[(i * d + l) * d + k] = v.real();
      }
    }
  }
  return StructureConstants(basis.n(), d, std::move(g));
}

ComplexMatrix CoefficientExpansion::reconstruct(const GeneratorBasis& basis) const {
  ComplexMatrix out = scalar * identity(basis.n());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * basis[i];
  return out;
}

CoefficientExpansion expand(const ComplexMatrix& o, const GeneratorBasis& basis) {
  if (o.rows() != o.cols() || static_cast<std::size_t>(o.rows()) != basis.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expand: operator dimension does not match basis n = " +
                    std::to_string(basis.n()));
  }
  CoefficientExpansion out;
  out.scalar = o.trace() / static_cast<double>(basis.n());
  out.coeffs.reserve(basis.size());
  for (const auto& s : basis.generators()) out.coeffs.push_back(trace_product(o, s) / 2.0);
  return out;
}

ComplexMatrix BipartiteExpansion::reconstruct(const GeneratorBasis& basis_a,
                                              const GeneratorBasis& basis_b) const {
  const ComplexMatrix ia = identity(basis_a.n());
  const ComplexMatrix ib = identity(basis_b.n());
  ComplexMatrix out = c00 * tensor_product(ia, ib);
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * tensor_product(basis_a[i], ib);
  for (std::size_t j = 0; j < b.size(); ++j) out += b[j] * tensor_product(ia, basis_b[j]);
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (c(i, j) == Complex{}) continue;
      out += c(i, j) * tensor_product(basis_a[static_cast<std::size_t>(i)],
                                      basis_b[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

BipartiteExpansion expand_bipartite(const ComplexMatrix& o,
                                    const GeneratorBasis& basis_a,
                                    const GeneratorBasis& basis_b) {
  const std::size_t n = basis_a.n();
  const std::size_t m = basis_b.n();
  if (o.rows() != o.cols() || static_cast<std::size_t>(o.rows()) != n * m) {
    throw Error(ErrorCode::DimensionMismatch,
                "expand_bipartite: operator dimension is not " + std::to_string(n) +
                    "*" + std::to_string(m));
  }
  const ComplexMatrix ia = identity(n);
  const ComplexMatrix ib = identity(m);
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);

  BipartiteExpansion out;
  out.c00 = o.trace() / (nd * md);
  for (const auto& s : basis_a.generators()) {
    out.a.push_back(trace_product(o, tensor_product(s, ib)) / (2.0 * md));
  }
  for (const auto& t : basis_b.generators()) {
    out.b.push_back(trace_product(o, tensor_product(ia, t)) / (2.0 * nd));
  }
  out.c.resize(static_cast<Eigen::Index>(basis_a.size()),
               static_cast<Eigen::Index>(basis_b.size()));
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    for (std::size_t j = 0; j < basis_b.size(); ++j) {
      out.c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          trace_product(o, tensor_product(basis_a[i], basis_b[j])) / 4.0;
    }
  }
  return out;
}

}  // namespace redyn
