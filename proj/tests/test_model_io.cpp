#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "redyn/compat.hpp"
#include "redyn/dynamics.hpp"
#include "redyn/error.hpp"
#include "redyn/model_io.hpp"
#include "redyn/su_basis.hpp"
#include "test_util.hpp"

using namespace redyn;
using namespace redyn::testing;
using nlohmann::json;

namespace {

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix cnot_h() {
  return kron(pauli(1), 0.5 * (eye(2) - pauli(3))) + kron(eye(2), 0.5 * (eye(2) + pauli(3)));
}

ComplexMatrix bell() {
  ComplexMatrix psi = ComplexMatrix::Zero(4, 1);
  psi(0, 0) = psi(3, 0) = 1.0 / std::numbers::sqrt2;
  return psi * psi.adjoint();
}

std::optional<ErrorCode> code_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string message_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<std::vector<double>> read_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse_model errors") {
  SUBCASE("malformed JSON reports the line") {
    const std::string text = "{\n  \"dimA\": 2,\n  \"dimB\": 2,\n  oops\n}";
    CHECK(code_of(text) == ErrorCode::Parse);
    CHECK(message_of(text).find("line 4") != std::string::npos);
  }
  SUBCASE("missing key") {
    json j = {{"dimA", 2}, {"hamiltonian", to_json(cnot_h())}};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
    CHECK(message_of(j.dump()).find("dimB") != std::string::npos);
  }
  SUBCASE("bad entry has a key path") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())}};
    j["hamiltonian"][0][1] = 1.0;
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
    CHECK(message_of(j.dump()).find("hamiltonian[0][1]") != std::string::npos);
  }
  SUBCASE("dimension out of range") {
    json j = {{"dimA", 1}, {"dimB", 2}, {"hamiltonian", to_json(eye(2))}};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
  }
  SUBCASE("wrong matrix size") {
    json j = {{"dimA", 2}, {"dimB", 3}, {"hamiltonian", to_json(cnot_h())}};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
  }
  SUBCASE("non-Hermitian Hamiltonian") {
    ComplexMatrix h = cnot_h();
    h(0, 1) = 2.0;
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(h)}};
    CHECK(code_of(j.dump()) == ErrorCode::NotHermitian);
  }
  SUBCASE("invalid initial state") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"initial_state", to_json(2.0 * bell())}};
    CHECK(code_of(j.dump()) == ErrorCode::InvalidState);
  }
  SUBCASE("probe label out of range") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"correlation", {{"probe", {4, 1}}, {"epsilon", 0.1}}}};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
    j["correlation"]["probe"] = {0, 1};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
  }
  SUBCASE("bad epsilon") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"correlation", {{"probe", {2, 3}}, {"epsilon", "big"}}}};
    CHECK(message_of(j.dump()).find("correlation.epsilon") != std::string::npos);
  }
  SUBCASE("initial_state excludes correlation") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"initial_state", to_json(bell())},
              {"correlation", {{"probe", {2, 3}}, {"epsilon", 0.1}}}};
    CHECK(code_of(j.dump()) == ErrorCode::Parse);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), Error);
  }
}

TEST_CASE("model states") {
  SUBCASE("probe with explicit epsilon") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"correlation", {{"probe", {2, 3}}, {"epsilon", 0.1}}}};
    const ModelFile m = parse_model(j.dump());
    const ComplexMatrix expected = eye(4) / 4.0 + 0.1 * kron(pauli(2), pauli(3));
    CHECK((model_initial_state(m).matrix() - expected).norm() < 1e-15);
  }
  SUBCASE("probe with auto epsilon stays positive") {
    json j = {{"dimA", 3}, {"dimB", 2}, {"hamiltonian", to_json(eye(6))},
              {"correlation", {{"probe", {8, 1}}, {"epsilon", "auto"}}}};
    const BipartiteState s = model_initial_state(parse_model(j.dump()));
    CHECK(min_eigenvalue(s.matrix()) > 0.0);
    CHECK_FALSE(is_factorable(s, 1e-10));
  }
  SUBCASE("dense correlation with marginals") {
    std::mt19937_64 rng(kSeed);
    const ComplexMatrix ra = random_density(rng, 2);
    const ComplexMatrix rb = random_density(rng, 3);
    const ComplexMatrix cor = 0.01 * kron(pauli(1), generators(3)[4]);
    json j = {{"dimA", 2}, {"dimB", 3}, {"hamiltonian", to_json(eye(6))},
              {"marginals", {{"rhoA", to_json(ra)}, {"rhoB", to_json(rb)}}},
              {"correlation", to_json(cor)}};
    const BipartiteState s = model_initial_state(parse_model(j.dump()));
    CHECK((s.matrix() - kron(ra, rb) - cor).norm() < 1e-15);
  }
  SUBCASE("default is maximally mixed") {
    json j = {{"dimA", 2}, {"dimB", 3}, {"hamiltonian", to_json(eye(6))}};
    CHECK((model_initial_state(parse_model(j.dump())).matrix() - eye(6) / 6.0).norm() < 1e-16);
  }
}

TEST_CASE("model round trip is bit-identical") {
  std::mt19937_64 rng(kSeed);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const ComplexMatrix ra = random_density(rng, 3);
  json j = {{"dimA", 3}, {"dimB", 2}, {"hamiltonian", to_json(h)},
            {"marginals", {{"rhoA", to_json(ra)}}},
            {"correlation", {{"probe", {5, 2}}, {"epsilon", "auto"}}}};
  const ModelFile a = parse_model(j.dump());
  const auto path = std::filesystem::temp_directory_path() / "redyn_roundtrip_model.json";
  save_model(a, path);
  const ModelFile b = load_model(path);
  std::filesystem::remove(path);
  CHECK(b.dim_a == 3);
  CHECK(b.dim_b == 2);
  CHECK(b.hamiltonian == h);
  REQUIRE(b.marginal_a.has_value());
  CHECK(*b.marginal_a == ra);
  CHECK_FALSE(b.marginal_b.has_value());
  const auto* p = std::get_if<ProbeSpec>(&b.correlation);
  REQUIRE(p != nullptr);
  CHECK(p->l == 4);
  CHECK(p->m == 1);
  CHECK_FALSE(p->epsilon.has_value());
  CHECK(model_to_json(b) == model_to_json(a));
}

TEST_CASE("run_evolve") {
  SUBCASE("CNOT probe (2,3) follows the closed-form envelope") {
    const double eps = 0.1;
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())},
              {"correlation", {{"probe", {2, 3}}, {"epsilon", eps}}}};
    const RunReport r = run_evolve(parse_model(j.dump()), std::numbers::pi, 40);
    REQUIRE(r.records.size() == 41);
    CHECK_FALSE(r.factorable);
    CHECK_FALSE(r.local_unitary);
    CHECK(r.records.back().t == std::numbers::pi);
    for (const auto& rec : r.records) {
      // c2 sigma2 + c3 sigma3 with c2^2 + c3^2 = (2 eps sin t)^2; ||sigma||_F = sqrt 2.
      const double envelope = std::numbers::sqrt2 * 2.0 * eps * std::abs(std::sin(rec.t));
      CHECK(std::abs(rec.delta_norm - envelope) < 1e-12);
      CHECK(rec.trace_distance >= 0.0);
      CHECK(rec.completeness_residual < 1e-12);
      CHECK(rec.split_residual < 1e-10);
    }
  }
  SUBCASE("factorable model") {
    std::mt19937_64 rng(kSeed + 1);
    json j = {{"dimA", 3}, {"dimB", 2}, {"hamiltonian", to_json(random_hermitian(rng, 6))},
              {"marginals", {{"rhoA", to_json(random_density(rng, 3))},
                             {"rhoB", to_json(random_density(rng, 2))}}}};
    const RunReport r = run_evolve(parse_model(j.dump()), 5.0, 25);
    CHECK(r.factorable);
    for (const auto& rec : r.records) {
      CHECK(rec.delta_norm < 1e-10);
      CHECK(rec.trace_distance < 1e-10);
    }
  }
  SUBCASE("local Hamiltonian with Bell state") {
    std::mt19937_64 rng(kSeed + 2);
    json j = {{"dimA", 2}, {"dimB", 2},
              {"hamiltonian", to_json(random_local_hamiltonian(rng, 2, 2))},
              {"initial_state", to_json(bell())}};
    const RunReport r = run_evolve(parse_model(j.dump()), 10.0, 50);
    CHECK_FALSE(r.factorable);
    CHECK(r.local_unitary);
    CHECK(r.analysis.conclusion == Conclusion::LocalUnitary);
    for (const auto& rec : r.records) {
      CHECK(rec.delta_norm < 1e-10);
      CHECK(rec.split_residual < 1e-10);
    }
  }
  SUBCASE("bad grid") {
    json j = {{"dimA", 2}, {"dimB", 2}, {"hamiltonian", to_json(cnot_h())}};
    CHECK_THROWS_AS(run_evolve(parse_model(j.dump()), 1.0, 0), Error);
  }
}

TEST_CASE("CSV rows satisfy the split identity on read-back") {
  std::mt19937_64 rng(kSeed + 3);
  const ComplexMatrix h = random_hermitian(rng, 6);
  const ComplexMatrix rho = random_density(rng, 6);
  json j = {{"dimA", 2}, {"dimB", 3}, {"hamiltonian", to_json(h)},
            {"initial_state", to_json(rho)}};
  const ModelFile model = parse_model(j.dump());
  const std::string csv = run_records_csv(run_evolve(model, 3.0, 12));
  std::string header;
  const auto rows = read_csv(csv, header);
  CHECK(header == "t,delta_norm,trace_distance,kraus_completeness_residual,split_residual");
  REQUIRE(rows.size() == 13);

  const ComplexMatrix ra = partial_trace_b_oracle(rho, 2, 3);
  const ComplexMatrix rb = partial_trace_a_oracle(rho, 2, 3);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 5);
    const double t = row[0];
    const ComplexMatrix u = expm_taylor(h, t);
    const ComplexMatrix exact = partial_trace_b_oracle(u * rho * u.adjoint(), 2, 3);
    const ComplexMatrix kraus = apply_kraus(
        kraus_operators(HermitianOperator(h), DensityOperator(rb), t), ra);
    const ComplexMatrix cor = rho - kron(ra, rb);
    const ComplexMatrix delta = partial_trace_b_oracle(u * cor * u.adjoint(), 2, 3);
    CHECK((exact - kraus - delta).norm() < 1e-9);
    CHECK(std::abs(row[1] - delta.norm()) < 1e-9);
    CHECK(row[4] < 1e-9);
  }
}

TEST_CASE("cnot demo") {
  const CnotDemo d = run_cnot_demo(1729);
  CHECK(d.decomposition.v_coeffs(0, 2) == -0.5);
  CHECK(d.comparison.size() == kCnotComparisonRows);
  CHECK(d.max_comparison_residual < 1e-9);
  CHECK(d.compatible_times.size() == kCnotCompatibleTimes);
  CHECK(d.max_compatible_delta_norm < 1e-10);
  CHECK(d.compatible_gamma(1, 2) == 0.0);
  CHECK(d.compatible_gamma(2, 2) == 0.0);
  CHECK(d.ok);

  const json j = json::parse(cnot_demo_json(d));
  CHECK(j["decomposition"]["v13"].get<double>() == -0.5);
  CHECK(j["decomposition"]["scalar"].get<double>() == 0.5);
  CHECK(j["comparison"]["rows"].size() == kCnotComparisonRows);
  CHECK(j["ok"].get<bool>());

  std::string header;
  const auto rows = read_csv(cnot_comparison_csv(d), header);
  CHECK(rows.size() == kCnotComparisonRows);
  for (const auto& row : rows) CHECK(row[7] < 1e-9);
}

TEST_CASE("basis_json") {
  SUBCASE("N = 2 is Levi-Civita") {
    const json j = json::parse(basis_json(2));
    CHECK(j["generators"].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(std::abs(j["structure_constants"][i][l][k].get<double>() - levi_civita(i, l, k)) <
                1e-12);
        }
      }
    }
  }
  SUBCASE("N = 3 re-validates") {
    const json j = json::parse(basis_json(3));
    REQUIRE(j["generators"].size() == 8);
    std::vector<ComplexMatrix> s;
    for (const auto& g : j["generators"]) {
      ComplexMatrix m(3, 3);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m(r, c) = Complex(g[r][c][0].get<double>(), g[r][c][1].get<double>());
      }
      s.push_back(m);
    }
    std::size_t entries = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t l = 0; l < 8; ++l) {
        ComplexMatrix rebuilt = ComplexMatrix::Zero(3, 3);
        for (std::size_t k = 0; k < 8; ++k) {
          const double g = j["structure_constants"][i][l][k].get<double>();
          CHECK(std::abs(g + j["structure_constants"][l][i][k].get<double>()) < 1e-12);
          CHECK(std::abs(g + j["structure_constants"][i][k][l].get<double>()) < 1e-12);
          rebuilt += Complex(0, 2) * g * s[k];
          ++entries;
        }
        CHECK((s[i] * s[l] - s[l] * s[i] - rebuilt).norm() < 1e-10);
      }
    }
    CHECK(entries == 512);
  }
  SUBCASE("N = 1 rejected") { CHECK_THROWS_AS(basis_json(1), Error); }
}

TEST_CASE("write_text_file") {
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/x.txt", "x"), Error);
}
