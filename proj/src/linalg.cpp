#include "redyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "redyn/error.hpp"

namespace redyn {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_bipartite(const ComplexMatrix& m, std::size_t dim_a,
                       std::size_t dim_b, const char* what) {
  require_square(m, what);
  if (dim_a == 0 || dim_b == 0 ||
      static_cast<std::size_t>(m.rows()) != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimension " + std::to_string(m.rows()) +
                    " is not " + std::to_string(dim_a) + "*" +
                    std::to_string(dim_b));
  }
}

}  // namespace

bool within(double residual, double scale, double tolerance) {
  return residual <= tolerance * std::max(1.0, scale);
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double hermiticity_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "HermitianOperator");
  const double r = hermiticity_residual(m_);
  if (!within(r, m_.norm(), tol::herm)) {
    throw Error(ErrorCode::NotHermitian,
                "operator is not Hermitian (||M - M^dag||_F = " +
                    std::to_string(r) + ")");
  }
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "UnitaryOperator");
  const double r = (m_ * m_.adjoint() - identity(dim())).norm();
  if (r > tol::unit) {
    throw Error(ErrorCode::NotUnitary, "operator is not unitary (||UU^dag - I||_F = " +
                                           std::to_string(r) + ")");
  }
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityOperator");
  const double h = hermiticity_residual(m_);
  if (h > tol::herm) {
    throw Error(ErrorCode::InvalidState, "density operator is not Hermitian (residual " +
                                             std::to_string(h) + ")");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::trace) {
    throw Error(ErrorCode::InvalidState,
                "density operator trace is " + std::to_string(tr.real()) + " + " +
                    std::to_string(tr.imag()) + "i, expected 1");
  }
  const double lmin = min_eigenvalue(m_);
  if (lmin < -tol::psd) {
    throw Error(ErrorCode::InvalidState,
                "density operator has negative eigenvalue " + std::to_string(lmin));
  }
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(identity(dim) / static_cast<double>(dim));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b) {
  require_bipartite(m, dim_a, dim_b, "partial_trace_b");
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix out = ComplexMatrix::Zero(na, na);
  for (Eigen::Index a = 0; a < na; ++a) {
    for (Eigen::Index ap = 0; ap < na; ++ap) {
      Complex s{0.0, 0.0};
      for (Eigen::Index b = 0; b < nb; ++b) s += m(a * nb + b, ap * nb + b);
      out(a, ap) = s;
    }
  }
  return out;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b) {
  require_bipartite(m, dim_a, dim_b, "partial_trace_a");
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix out = ComplexMatrix::Zero(nb, nb);
  for (Eigen::Index a = 0; a < na; ++a) {
    out += m.block(a * nb, a * nb, nb, nb);
  }
  return out;
}

HermitianEigen eig_hermitian(const HermitianOperator& h) {
  // Solve on the exactly-Hermitian part so round-off asymmetry is not read
  // from one triangle only.
  const ComplexMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "Hermitian eigensolver did not converge");
  }
  HermitianEigen out;
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  out.vectors = solver.eigenvectors();
  return out;
}

UnitaryOperator unitary_exp(const HermitianOperator& h, double t) {
  if (t == 0.0) return UnitaryOperator(identity(h.dim()));
  const HermitianEigen e = eig_hermitian(h);
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(e.values.size()));
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    phases(static_cast<Eigen::Index>(k)) = std::exp(Complex(0.0, -e.values[k] * t));
  }
  ComplexMatrix u = e.vectors * phases.asDiagonal() * e.vectors.adjoint();
  return UnitaryOperator(std::move(u));
}

RealSvd svd_real(const RealMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "svd_real: empty matrix");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealSvd out;
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double spectral_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix d = a - b;
  const ComplexMatrix sym = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace redyn
