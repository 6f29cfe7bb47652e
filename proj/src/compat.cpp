#include "redyn/compat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "redyn/dynamics.hpp"
#include "redyn/error.hpp"

namespace redyn {

LemmaCondition lemma_condition(const HermitianOperator& v, const CorrelationOperator& cor,
                               double tolerance) {
  if (v.dim() != cor.dim_a() * cor.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch,
                "lemma_condition: interaction and correlation dimensions differ");
  }
  ComplexMatrix m =
      partial_trace_b(commutator(v.matrix(), cor.matrix()), cor.dim_a(), cor.dim_b());
  const bool zero = m.norm() <= tolerance * std::max(1.0, cor.matrix().norm());
  return LemmaCondition{std::move(m), zero};
}

DerivativeConsistency derivative_consistency(const HermitianOperator& h,
                                             const CorrelationOperator& cor,
                                             double step) {
  const std::size_t na = cor.dim_a();
  const std::size_t nb = cor.dim_b();
  const HamiltonianDecomposition d = decompose_hamiltonian(h, na, nb);

  ComplexMatrix full = partial_trace_b(commutator(h.matrix(), cor.matrix()), na, nb);
  ComplexMatrix inter = lemma_condition(d.v, cor).matrix;

  const ComplexMatrix fd =
      (inhomogeneous_part(h, cor, step) - inhomogeneous_part(h, cor, -step)) /
      (2.0 * step);
  const Complex minus_i(0.0, -1.0);
  const double fd_residual = (fd - minus_i * full).norm();
  const double inter_residual = (full - inter).norm();
  return DerivativeConsistency{std::move(full), std::move(inter), inter_residual,
                               fd_residual};
}

RealMatrix coefficient_condition(const RealMatrix& v_coeffs, const StructureConstants& g,
                                 std::size_t m) {
  const std::size_t d = g.size();
  if (static_cast<std::size_t>(v_coeffs.rows()) != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "coefficient_condition: coefficient rows do not match SU(N) size");
  }
  if (m >= static_cast<std::size_t>(v_coeffs.cols())) {
    throw Error(ErrorCode::InvalidArgument,
                "coefficient_condition: column " + std::to_string(m) + " out of range");
  }
  RealMatrix r = RealMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t n = 0; n < d; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        s += v_coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) *
             g(i, l, n);
      }
      r(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(n)) = s;
    }
  }
  return r;
}

ComplexMatrix coefficient_commutator(const RealMatrix& v_coeffs,
                                     const StructureConstants& g,
                                     const GeneratorBasis& basis_a, std::size_t l,
                                     std::size_t m) {
  if (l >= basis_a.size()) {
    throw Error(ErrorCode::InvalidArgument, "coefficient_commutator: l out of range");
  }
  const RealMatrix r = coefficient_condition(v_coeffs, g, m);
  const auto n = static_cast<Eigen::Index>(basis_a.n());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const Complex four_i(0.0, 4.0);
  for (std::size_t k = 0; k < basis_a.size(); ++k) {
    out += four_i * r(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) *
           basis_a[k];
  }
  return out;
}

bool restricted_form_2xm(const RealMatrix& v_coeffs, std::size_t l, std::size_t m,
                         double tolerance) {
  if (v_coeffs.rows() != 3) {
    throw Error(ErrorCode::InvalidArgument,
                "restricted_form_2xm applies to a qubit system A only (got " +
                    std::to_string(v_coeffs.rows()) + " generator rows)");
  }
  if (l >= 3 || m >= static_cast<std::size_t>(v_coeffs.cols())) {
    throw Error(ErrorCode::InvalidArgument, "restricted_form_2xm: index out of range");
  }
  for (std::size_t p = 0; p < 3; ++p) {
    if (p == l) continue;
    if (std::abs(v_coeffs(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(m))) >
        tolerance) {
      return false;
    }
  }
  return true;
}

std::vector<ProbeIndex> probe_family_2xm(std::size_t dim_b) {
  if (dim_b < 2) {
    throw Error(ErrorCode::InvalidArgument, "probe_family_2xm needs M >= 2");
  }
  std::vector<ProbeIndex> out;
  for (std::size_t m = 0; m + 1 < dim_b * dim_b; ++m) {
    out.push_back({0, m});
    out.push_back({1, m});
  }
  return out;
}

CompatibilityReport verify_theorem(const HermitianOperator& h, std::size_t dim_a,
                                   std::size_t dim_b, double tolerance) {
  const GeneratorBasis basis_a = generators(dim_a);
  const GeneratorBasis basis_b = generators(dim_b);
  const HamiltonianDecomposition d = decompose_hamiltonian(h, basis_a, basis_b);
  const CanonicalInteraction canon = canonical_interaction(d, basis_a, basis_b);

  CompatibilityReport rep;
  rep.dim_a = dim_a;
  rep.dim_b = dim_b;
  rep.tolerance = tolerance;
  rep.interaction_norm = d.v_coeffs.norm();
  rep.canonical_values = canon.values;
  rep.local_unitary = rep.interaction_norm < tolerance;

  // Probe route, in the SVD-aligned bases.
  rep.probes_checked = 0;
  for (std::size_t l = 0; l < canon.basis_a.size(); ++l) {
    for (std::size_t m = 0; m < canon.basis_b.size(); ++m) {
      const CorrelationOperator probe =
          make_probe_correlation(l, m, canon.basis_a, canon.basis_b);
      const LemmaCondition c = lemma_condition(d.v, probe, tolerance);
      ++rep.probes_checked;
      if (!c.is_zero) rep.failing_probes.push_back({l, m, c.matrix.norm()});
    }
  }

  // Coefficient route: v_m g'(m, l, n) = 0 for every canonical mode.
  const StructureConstants g = structure_constants(canon.basis_a);
  const std::size_t da = canon.basis_a.size();
  const std::size_t modes = canon.values.size();
  rep.coefficient_residuals.assign(modes * da * da, 0.0);
  rep.coefficient_condition_holds = true;
  for (std::size_t m = 0; m < modes; ++m) {
    for (std::size_t l = 0; l < da; ++l) {
      double row = 0.0;
      for (std::size_t n = 0; n < da; ++n) {
        const double r = canon.values[m] * g(m, l, n);
        rep.coefficient_residuals[(m * da + l) * da + n] = r;
        row += r * r;
      }
      // Same threshold as the lemma test on probe (l, m): that matrix is
      // 4i sum_n r_n s'_n with ||s'_n||_F = sqrt(2), and ||s'_l (x) t'_m||_F = 2.
      if (4.0 * std::sqrt(2.0 * row) > tolerance * 2.0) {
        rep.coefficient_condition_holds = false;
      }
    }
  }

  const bool probes_pass = rep.failing_probes.empty();
  rep.conclusion = probes_pass ? Conclusion::LocalUnitary
                               : Conclusion::KrausIncompatibleForSomeCorrelation;
  rep.agrees = probes_pass == rep.local_unitary &&
               rep.coefficient_condition_holds == rep.local_unitary;
  return rep;
}

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::LocalUnitary:
      return "LocalUnitary";
    case Conclusion::KrausIncompatibleForSomeCorrelation:
      return "KrausIncompatibleForSomeCorrelation";
  }
  return "unknown";
}

HermitianOperator build_cnot_model() {
  const GeneratorBasis pauli = generators(2);
  const ComplexMatrix i2 = identity(2);
  return HermitianOperator(tensor_product(pauli[0], 0.5 * (i2 - pauli[2])) +
                           tensor_product(i2, 0.5 * (i2 + pauli[2])));
}

CorrelationOperator CnotCorrelation::to_operator() const {
  const GeneratorBasis pauli = generators(2);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      m += gamma(i, j) * tensor_product(pauli[static_cast<std::size_t>(i)],
                                        pauli[static_cast<std::size_t>(j)]);
    }
  }
  return CorrelationOperator(2, 2, std::move(m));
}

CnotCoefficients cnot_inhomogeneity_closed_form(const CnotCorrelation& gamma, double t) {
  const double g23 = gamma.gamma(1, 2);
  const double g33 = gamma.gamma(2, 2);
  const double s = std::sin(t);
  const double c = std::cos(t);
  return CnotCoefficients{2.0 * (g23 * s * s + g33 * s * c),
                          2.0 * (g33 * s * s - g23 * s * c)};
}

}  // namespace redyn
