#pragma once

#include <cstddef>
#include <vector>

#include "redyn/composite.hpp"
#include "redyn/linalg.hpp"
#include "redyn/su_basis.hpp"

namespace redyn {

inline constexpr double kDefaultTolerance = 1e-10;

struct LemmaCondition {
  ComplexMatrix matrix;  // tr_B [V, cor]
  bool is_zero;
};

// Necessary condition for the reduced map to stay Kraus at all times under
// the correlation `cor`: tr_B [V, cor] = 0. The zero test uses
// tolerance * max(1, ||cor||_F) since the condition is linear in cor.
LemmaCondition lemma_condition(const HermitianOperator& v, const CorrelationOperator& cor,
                               double tolerance = kDefaultTolerance);

struct DerivativeConsistency {
  ComplexMatrix full_commutator;  // tr_B [H, cor]
  ComplexMatrix interaction_commutator;  // tr_B [V, cor]
  double interaction_residual;    // ||tr_B[H,cor] - tr_B[V,cor]||_F
  double finite_difference_residual;  // ||d(delta rho)/dt|_0 + i tr_B[H,cor]||_F
};

inline constexpr double kFiniteDifferenceStep = 1e-5;

// d/dt tr_B(U cor U^dag) at t = 0 equals -i tr_B[H, cor]; the local parts of H
// drop out of the partial trace.
DerivativeConsistency derivative_consistency(const HermitianOperator& h,
                                             const CorrelationOperator& cor,
                                             double step = kFiniteDifferenceStep);

// r(l, n) = sum_i v(i, m) g(i, l, n). Vanishes iff probe (l, m) passes the
// lemma condition.
RealMatrix coefficient_condition(const RealMatrix& v_coeffs, const StructureConstants& g,
                                 std::size_t m);

// The matrix sum_n 4i r(l, n) s_n that the coefficient route predicts for
// tr_B [V, s_l (x) t_m].
ComplexMatrix coefficient_commutator(const RealMatrix& v_coeffs,
                                     const StructureConstants& g,
                                     const GeneratorBasis& basis_a, std::size_t l,
                                     std::size_t m);

// Qubit system only (v_coeffs has 3 rows): true iff v(p, m) = 0 for every p != l.
bool restricted_form_2xm(const RealMatrix& v_coeffs, std::size_t l, std::size_t m,
                         double tolerance);

struct ProbeIndex {
  std::size_t l;
  std::size_t m;

  friend bool operator==(const ProbeIndex&, const ProbeIndex&) = default;
};

// {(0, m), (1, m) : m = 0 .. M^2-2}: two distinct qubit directions per
// environment generator.
std::vector<ProbeIndex> probe_family_2xm(std::size_t dim_b);

enum class Conclusion { LocalUnitary, KrausIncompatibleForSomeCorrelation };

struct FailingProbe {
  std::size_t l;
  std::size_t m;
  double residual;
};

struct CompatibilityReport {
  std::size_t dim_a;
  std::size_t dim_b;
  double tolerance;
  double interaction_norm;  // ||v_coeffs||_F
  std::vector<double> canonical_values;
  bool local_unitary;  // interaction_norm < tolerance
  std::vector<FailingProbe> failing_probes;  // primed-basis probes
  std::size_t probes_checked;
  // coefficient_residuals[(m * dA + l) * dA + n] = v_m g'(m, l, n), m over the
  // canonical modes.
  std::vector<double> coefficient_residuals;
  bool coefficient_condition_holds;
  Conclusion conclusion;  // from the probe verdict
  bool agrees;  // probe, coefficient and direct verdicts coincide
};

CompatibilityReport verify_theorem(const HermitianOperator& h, std::size_t dim_a,
                                   std::size_t dim_b,
                                   double tolerance = kDefaultTolerance);

const char* to_string(Conclusion c);

// Worked controlled-NOT example on two qubits.
HermitianOperator build_cnot_model();

// gamma(i, j) multiplies s_i (x) s_j on two qubits (0-based Pauli indices).
struct CnotCorrelation {
  RealMatrix gamma = RealMatrix::Zero(3, 3);

  CorrelationOperator to_operator() const;
};

struct CnotCoefficients {
  double c2;  // on sigma_2
  double c3;  // on sigma_3
};

// Closed-form delta rho_A(t) = c2 sigma_2 + c3 sigma_3 for the CNOT model;
// only the (sigma_2, sigma_3) and (sigma_3, sigma_3) entries contribute.
CnotCoefficients cnot_inhomogeneity_closed_form(const CnotCorrelation& gamma, double t);

}  // namespace redyn
