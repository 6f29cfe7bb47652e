#pragma once

#include <cstddef>
#include <vector>

#include "redyn/composite.hpp"
#include "redyn/linalg.hpp"

namespace redyn {

// U rho U^dag with U = exp(-i h t).
BipartiteState evolve(const HermitianOperator& h, const BipartiteState& s, double t);

// Kraus operators M_{mu nu}(t) = sqrt(p_nu) <mu| U(t) |nu>, with |nu> the
// eigenbasis of the initial environment state and <mu| running over the same
// basis. Zero-weight environment levels are kept (their operators vanish).
struct KrausSet {
  std::size_t dim_a;
  std::size_t dim_b;
  std::vector<ComplexMatrix> operators;  // index mu * dim_b + nu
  std::vector<double> env_eigenvalues;
  ComplexMatrix env_eigenvectors;

  const ComplexMatrix& at(std::size_t mu, std::size_t nu) const {
    return operators.at(mu * dim_b + nu);
  }
  // ||sum M^dag M - I||_F
  double completeness_residual() const;
};

KrausSet kraus_operators(const HermitianOperator& h, const DensityOperator& rho_b0,
                         double t);

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho_a0);

// tr_B(U cor U^dag)
ComplexMatrix inhomogeneous_part(const HermitianOperator& h,
                                 const CorrelationOperator& cor0, double t);

struct ReducedMapSplit {
  double time;
  ComplexMatrix reduced;         // exact tr_B(U rho U^dag)
  ComplexMatrix homogeneous;     // Kraus part on rho_A(0)
  ComplexMatrix inhomogeneous;   // delta rho_A(t)
  double split_residual;         // ||reduced - homogeneous - inhomogeneous||_F
  double completeness_residual;  // of the Kraus set used
};

// Computes all three pieces independently and throws Internal if the split
// identity fails beyond tol::recon.
ReducedMapSplit split_reduced_map(const HermitianOperator& h, const BipartiteState& s0,
                                  double t);

bool is_local_unitary(const HermitianOperator& h, std::size_t dim_a, std::size_t dim_b,
                      double tolerance);

}  // namespace redyn
