#include "redyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "redyn/error.hpp"

namespace redyn {

namespace {

void require_dim(const HermitianOperator& h, std::size_t dim, const char* what) {
  if (h.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": Hamiltonian dimension " + std::to_string(h.dim()) +
                    " does not match " + std::to_string(dim));
  }
}

}  // namespace

BipartiteState evolve(const HermitianOperator& h, const BipartiteState& s, double t) {
  require_dim(h, s.dim_a() * s.dim_b(), "evolve");
  const ComplexMatrix u = unitary_exp(h, t).matrix();
  ComplexMatrix rho = u * s.matrix() * u.adjoint();
  return BipartiteState(s.dim_a(), s.dim_b(), DensityOperator(std::move(rho)));
}

double KrausSet::completeness_residual() const {
  ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_a),
                                          static_cast<Eigen::Index>(dim_a));
  for (const auto& m : operators) sum += m.adjoint() * m;
  return (sum - identity(dim_a)).norm();
}

KrausSet kraus_operators(const HermitianOperator& h, const DensityOperator& rho_b0,
                         double t) {
  const std::size_t dim_b = rho_b0.dim();
  if (dim_b == 0 || h.dim() % dim_b != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "kraus_operators: Hamiltonian dimension " + std::to_string(h.dim()) +
                    " is not a multiple of the environment dimension " +
                    std::to_string(dim_b));
  }
  const std::size_t dim_a = h.dim() / dim_b;
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);

  const HermitianEigen env = eig_hermitian(HermitianOperator(rho_b0.matrix()));
  // Joint unitary with the B factor rotated into the environment eigenbasis.
  const ComplexMatrix basis = tensor_product(identity(dim_a), env.vectors);
  const ComplexMatrix u = basis.adjoint() * unitary_exp(h, t).matrix() * basis;

  KrausSet out{dim_a, dim_b, {}, env.values, env.vectors};
  out.operators.reserve(dim_b * dim_b);
  for (Eigen::Index mu = 0; mu < nb; ++mu) {
    for (Eigen::Index nu = 0; nu < nb; ++nu) {
      const double weight =
          std::sqrt(std::max(0.0, env.values[static_cast<std::size_t>(nu)]));
      ComplexMatrix m(na, na);
      for (Eigen::Index a = 0; a < na; ++a) {
        for (Eigen::Index ap = 0; ap < na; ++ap) {
          m(a, ap) = weight * u(a * nb + mu, ap * nb + nu);
        }
      }
      out.operators.push_back(std::move(m));
    }
  }
  return out;
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho_a0) {
  if (rho_a0.rows() != rho_a0.cols() ||
      static_cast<std::size_t>(rho_a0.rows()) != k.dim_a) {
    throw Error(ErrorCode::DimensionMismatch,
                "apply_kraus: state dimension does not match Kraus operators (" +
                    std::to_string(k.dim_a) + ")");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho_a0.rows(), rho_a0.cols());
  for (const auto& m : k.operators) out += m * rho_a0 * m.adjoint();
  return out;
}

ComplexMatrix inhomogeneous_part(const HermitianOperator& h,
                                 const CorrelationOperator& cor0, double t) {
  require_dim(h, cor0.dim_a() * cor0.dim_b(), "inhomogeneous_part");
  const ComplexMatrix u = unitary_exp(h, t).matrix();
  return partial_trace_b(u * cor0.matrix() * u.adjoint(), cor0.dim_a(), cor0.dim_b());
}

ReducedMapSplit split_reduced_map(const HermitianOperator& h, const BipartiteState& s0,
                                  double t) {
  require_dim(h, s0.dim_a() * s0.dim_b(), "split_reduced_map");
  const BipartiteState st = evolve(h, s0, t);
  ComplexMatrix reduced = partial_trace_b(st.matrix(), st.dim_a(), st.dim_b());

  const KrausSet k = kraus_operators(h, s0.marginal_b(), t);
  ComplexMatrix homogeneous =
      apply_kraus(k, partial_trace_b(s0.matrix(), s0.dim_a(), s0.dim_b()));
  ComplexMatrix inhomogeneous = inhomogeneous_part(h, correlation_operator(s0), t);

  const double residual = (reduced - homogeneous - inhomogeneous).norm();
  if (residual > tol::recon) {
    throw Error(ErrorCode::Internal, "reduced-map split identity violated (residual " +
                                         std::to_string(residual) + ")");
  }
  return ReducedMapSplit{t,
                         std::move(reduced),
                         std::move(homogeneous),
                         std::move(inhomogeneous),
                         residual,
                         k.completeness_residual()};
}

bool is_local_unitary(const HermitianOperator& h, std::size_t dim_a, std::size_t dim_b,
                      double tolerance) {
  return decompose_hamiltonian(h, dim_a, dim_b).v_coeffs.norm() < tolerance;
}

}  // namespace redyn
