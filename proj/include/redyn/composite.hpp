#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "redyn/linalg.hpp"
#include "redyn/su_basis.hpp"

namespace redyn {

class BipartiteState {
 public:
  BipartiteState(std::size_t dim_a, std::size_t dim_b, DensityOperator rho);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const DensityOperator& rho() const noexcept { return rho_; }
  const ComplexMatrix& matrix() const noexcept { return rho_.matrix(); }

  DensityOperator marginal_a() const;
  DensityOperator marginal_b() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  DensityOperator rho_;
};

// Hermitian operator on A(x)B whose partial traces over either factor vanish.
class CorrelationOperator {
 public:
  CorrelationOperator(std::size_t dim_a, std::size_t dim_b, ComplexMatrix m);

  static CorrelationOperator zero(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix m_;
};

// rho_AB - rho_A (x) rho_B
CorrelationOperator correlation_operator(const BipartiteState& s);

bool is_factorable(const BipartiteState& s, double tolerance);

// H_AB = scalar I(x)I + hA(x)I + I(x)hB + V, with hA, hB traceless and V the
// doubly traceless part, V = sum v_coeffs(i, j) s_i (x) t_j.
struct HamiltonianDecomposition {
  std::size_t dim_a;
  std::size_t dim_b;
  double scalar;
  HermitianOperator h_a;
  HermitianOperator h_b;
  HermitianOperator v;
  RealMatrix v_coeffs;

  ComplexMatrix reassemble() const;
};

HamiltonianDecomposition decompose_hamiltonian(const HermitianOperator& h,
                                               std::size_t dim_a, std::size_t dim_b);
HamiltonianDecomposition decompose_hamiltonian(const HermitianOperator& h,
                                               const GeneratorBasis& basis_a,
                                               const GeneratorBasis& basis_b);

// Operator-Schmidt form V = sum_k values[k] s'_k (x) t'_k from the SVD of the
// coefficient matrix. basis_a / basis_b hold the full rotated families; only
// the first values.size() pairs carry weight.
struct CanonicalInteraction {
  std::size_t l;               // min(N, M)
  std::vector<double> values;  // length L^2-1, descending, >= 0
  GeneratorBasis basis_a;
  GeneratorBasis basis_b;

  ComplexMatrix reconstruct() const;
};

CanonicalInteraction canonical_interaction(const HamiltonianDecomposition& d,
                                           const GeneratorBasis& basis_a,
                                           const GeneratorBasis& basis_b);

// Unnormalized direction s_l (x) t_m (indices 0-based).
CorrelationOperator make_probe_correlation(std::size_t l, std::size_t m,
                                           const GeneratorBasis& basis_a,
                                           const GeneratorBasis& basis_b);

// rho_A (x) rho_B + eps s_l (x) t_m. With eps unset, picks
// eps = lambda_min(rho_A (x) rho_B) / (2 (||s_l (x) t_m||_2 + tol::psd)).
BipartiteState make_probe_state(std::size_t l, std::size_t m,
                                const DensityOperator& rho_a,
                                const DensityOperator& rho_b,
                                std::optional<double> eps,
                                const GeneratorBasis& basis_a,
                                const GeneratorBasis& basis_b);

double auto_probe_epsilon(const DensityOperator& rho_a, const DensityOperator& rho_b,
                          const ComplexMatrix& probe);

}  // namespace redyn
