#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "redyn/compat.hpp"
#include "redyn/composite.hpp"
#include "redyn/linalg.hpp"

namespace redyn {

// Probe correlation request. Indices are 0-based here and 1-based in files.
struct ProbeSpec {
  std::size_t l;
  std::size_t m;
  std::optional<double> epsilon;  // unset means "auto"
};

// JSON model: dimA, dimB, hamiltonian, optional initial_state, optional
// correlation ({"probe": [l, m], "epsilon": x | "auto"} or a dense matrix),
// optional marginals {"rhoA": .., "rhoB": ..}. Complex entries are [re, im].
struct ModelFile {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  ComplexMatrix hamiltonian;
  std::optional<ComplexMatrix> initial_state;
  std::variant<std::monostate, ProbeSpec, ComplexMatrix> correlation;
  std::optional<ComplexMatrix> marginal_a;
  std::optional<ComplexMatrix> marginal_b;
};

// Both throw Error(Parse) with a line number for malformed JSON and a key path
// for schema violations; physical checks (Hermitian H, valid state) run too.
ModelFile parse_model(std::string_view json_text);
ModelFile load_model(const std::filesystem::path& path);

std::string model_to_json(const ModelFile& model);
void save_model(const ModelFile& model, const std::filesystem::path& path);

HermitianOperator model_hamiltonian(const ModelFile& model);
BipartiteState model_initial_state(const ModelFile& model);

struct RunRecord {
  double t;
  double delta_norm;             // ||delta rho_A(t)||_F
  double trace_distance;         // exact rho_A(t) vs Kraus-only prediction
  double completeness_residual;  // ||sum M^dag M - I||_F
  double split_residual;         // ||exact - Kraus - delta||_F
};

struct RunReport {
  std::size_t dim_a;
  std::size_t dim_b;
  double tolerance;
  bool factorable;
  bool local_unitary;
  std::vector<RunRecord> records;  // sorted by t
  CompatibilityReport analysis;
};

// Evaluates the reduced-map split on t_k = t_max * k / steps, k = 0..steps.
RunReport run_evolve(const ModelFile& model, double t_max, std::size_t steps,
                     double tolerance = kDefaultTolerance);

std::string run_records_csv(const RunReport& report);
std::string run_report_json(const RunReport& report);
std::string compatibility_report_json(const CompatibilityReport& report);
std::string basis_json(std::size_t n);

struct CnotComparisonRow {
  double gamma23;
  double gamma33;
  double t;
  double numeric_c2;
  double numeric_c3;
  double closed_c2;
  double closed_c3;
  double residual;  // Frobenius norm of the operator difference
};

struct CnotDemo {
  HamiltonianDecomposition decomposition;
  std::vector<CnotComparisonRow> comparison;
  double max_comparison_residual;
  RealMatrix compatible_gamma;        // gamma with (2,3) = (3,3) = 0
  std::vector<double> compatible_times;
  std::vector<double> compatible_delta_norms;
  double max_compatible_delta_norm;
  double tolerance;
  bool ok;  // comparison < 1e-9 and compatible subclass < tolerance
};

inline constexpr std::size_t kCnotComparisonRows = 50;
inline constexpr std::size_t kCnotCompatibleTimes = 20;

CnotDemo run_cnot_demo(std::uint64_t seed, double tolerance = kDefaultTolerance);
std::string cnot_demo_json(const CnotDemo& demo);
std::string cnot_comparison_csv(const CnotDemo& demo);

// Writes `text` to `path`, throwing Error(Io) on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace redyn
