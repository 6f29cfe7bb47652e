#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace redyn {

using Complex = std::complex<double>;

// Dense complex matrix, row-major; operators are square. For bipartite operators the A factor is
// the slow (left) index: entry (a*M + b, a'*M + b').
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double unit = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double recon = 1e-9;
}  // namespace tol

// Frobenius-norm residual test, relative to `scale` once the scale exceeds 1.
bool within(double residual, double scale, double tolerance);

double frobenius(const ComplexMatrix& m);
ComplexMatrix identity(std::size_t dim);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_residual(const ComplexMatrix& m);

class HermitianOperator {
 public:
  // Throws NotHermitian unless m equals its adjoint within tol::herm.
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  ComplexMatrix m_;
};

// Hermitian, unit trace, positive semidefinite.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  static DensityOperator maximally_mixed(std::size_t dim);

 private:
  ComplexMatrix m_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b);
ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, orthonormal
};

HermitianEigen eig_hermitian(const HermitianOperator& h);

// exp(-i h t) through the spectral decomposition of h. t == 0 yields the
// identity exactly.
UnitaryOperator unitary_exp(const HermitianOperator& h, double t);

struct RealSvd {
  RealMatrix left;             // rows x rows, orthogonal
  std::vector<double> values;  // min(rows, cols), descending, nonnegative
  RealMatrix right;            // cols x cols, orthogonal
};

RealSvd svd_real(const RealMatrix& m);

// Smallest eigenvalue of a Hermitian matrix (no validation).
double min_eigenvalue(const ComplexMatrix& m);
// Largest singular value.
double spectral_norm(const ComplexMatrix& m);
// Half the trace norm of a - b, both Hermitian.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace redyn
