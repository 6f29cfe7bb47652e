#include "redyn/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

#include "redyn/dynamics.hpp"
#include "redyn/error.hpp"
#include "redyn/su_basis.hpp"

namespace redyn {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Parse, "model schema error at " + path + ": " + msg);
}

ComplexMatrix read_matrix(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    schema_error(path, "expected an array of " + std::to_string(dim) + " rows");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = j[r];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != dim) {
      schema_error(rpath, "expected " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        schema_error(rpath + "[" + std::to_string(c) + "]",
                     "expected a [re, im] pair of numbers");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json write_matrix(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json write_real_matrix(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t read_dim(const json& j, const char* key) {
  if (!j.contains(key)) schema_error(key, "missing");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 2 || v.get<long long>() > 64) {
    schema_error(key, "expected an integer in [2, 64]");
  }
  return v.get<std::size_t>();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string line_info(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  const std::size_t line =
      1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
  const std::size_t nl = text.rfind('\n', end > 0 ? end - 1 : 0);
  const std::size_t col = (nl == std::string_view::npos || end == 0) ? end + 1 : end - nl;
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ModelFile parse_model(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "model parse error at " + line_info(json_text, e.byte) +
                                      ": " + e.what());
  }
  if (!j.is_object()) schema_error("$", "expected a JSON object");

  ModelFile model;
  model.dim_a = read_dim(j, "dimA");
  model.dim_b = read_dim(j, "dimB");
  const std::size_t dim = model.dim_a * model.dim_b;
  if (!j.contains("hamiltonian")) schema_error("hamiltonian", "missing");
  model.hamiltonian = read_matrix(j.at("hamiltonian"), "hamiltonian", dim);

  if (j.contains("initial_state")) {
    model.initial_state = read_matrix(j.at("initial_state"), "initial_state", dim);
  }
  if (j.contains("marginals")) {
    const json& mj = j.at("marginals");
    if (!mj.is_object()) schema_error("marginals", "expected an object");
    if (mj.contains("rhoA")) {
      model.marginal_a = read_matrix(mj.at("rhoA"), "marginals.rhoA", model.dim_a);
    }
    if (mj.contains("rhoB")) {
      model.marginal_b = read_matrix(mj.at("rhoB"), "marginals.rhoB", model.dim_b);
    }
  }
  if (j.contains("correlation")) {
    const json& cj = j.at("correlation");
    if (cj.is_object()) {
      if (!cj.contains("probe")) schema_error("correlation", "expected a \"probe\" key");
      const json& p = cj.at("probe");
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
          !p[1].is_number_integer() || p[0].get<long long>() < 1 ||
          p[1].get<long long>() < 1) {
        schema_error("correlation.probe", "expected [l, m] with 1-based integer labels");
      }
      ProbeSpec probe{p[0].get<std::size_t>() - 1, p[1].get<std::size_t>() - 1, {}};
      if (probe.l + 1 >= model.dim_a * model.dim_a || probe.m + 1 >= model.dim_b * model.dim_b) {
        schema_error("correlation.probe", "label out of range");
      }
      if (cj.contains("epsilon")) {
        const json& e = cj.at("epsilon");
        if (e.is_number()) {
          probe.epsilon = e.get<double>();
        } else if (!(e.is_string() && e.get<std::string>() == "auto")) {
          schema_error("correlation.epsilon", "expected a number or \"auto\"");
        }
      }
      model.correlation = probe;
    } else if (cj.is_array()) {
      model.correlation = read_matrix(cj, "correlation", dim);
    } else {
      schema_error("correlation", "expected a probe object or a dense matrix");
    }
  }
  if (model.initial_state &&
      (model.marginal_a || model.marginal_b ||
       !std::holds_alternative<std::monostate>(model.correlation))) {
    schema_error("initial_state", "cannot be combined with marginals or correlation");
  }

  // Physical validation.
  model_hamiltonian(model);
  model_initial_state(model);
  return model;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string model_to_json(const ModelFile& model) {
  json j;
  j["dimA"] = model.dim_a;
  j["dimB"] = model.dim_b;
  j["hamiltonian"] = write_matrix(model.hamiltonian);
  if (model.initial_state) j["initial_state"] = write_matrix(*model.initial_state);
  if (model.marginal_a || model.marginal_b) {
    json mj = json::object();
    if (model.marginal_a) mj["rhoA"] = write_matrix(*model.marginal_a);
    if (model.marginal_b) mj["rhoB"] = write_matrix(*model.marginal_b);
    j["marginals"] = std::move(mj);
  }
  if (const auto* p = std::get_if<ProbeSpec>(&model.correlation)) {
    json cj;
    cj["probe"] = json::array({p->l + 1, p->m + 1});
    if (p->epsilon) {
      cj["epsilon"] = *p->epsilon;
    } else {
      cj["epsilon"] = "auto";
    }
    j["correlation"] = std::move(cj);
  } else if (const auto* c = std::get_if<ComplexMatrix>(&model.correlation)) {
    j["correlation"] = write_matrix(*c);
  }
  return j.dump(2);
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model) + "\n");
}

HermitianOperator model_hamiltonian(const ModelFile& model) {
  if (static_cast<std::size_t>(model.hamiltonian.rows()) != model.dim_a * model.dim_b) {
    throw Error(ErrorCode::DimensionMismatch, "model Hamiltonian has wrong dimension");
  }
  return HermitianOperator(model.hamiltonian);
}

BipartiteState model_initial_state(const ModelFile& model) {
  if (model.initial_state) {
    return BipartiteState(model.dim_a, model.dim_b, DensityOperator(*model.initial_state));
  }
  const DensityOperator rho_a = model.marginal_a ? DensityOperator(*model.marginal_a)
                                                 : DensityOperator::maximally_mixed(model.dim_a);
  const DensityOperator rho_b = model.marginal_b ? DensityOperator(*model.marginal_b)
                                                 : DensityOperator::maximally_mixed(model.dim_b);
  if (const auto* p = std::get_if<ProbeSpec>(&model.correlation)) {
    return make_probe_state(p->l, p->m, rho_a, rho_b, p->epsilon, generators(model.dim_a),
                            generators(model.dim_b));
  }
  ComplexMatrix rho = tensor_product(rho_a.matrix(), rho_b.matrix());
  if (const auto* c = std::get_if<ComplexMatrix>(&model.correlation)) {
    rho += CorrelationOperator(model.dim_a, model.dim_b, *c).matrix();
  }
  return BipartiteState(model.dim_a, model.dim_b, DensityOperator(std::move(rho)));
}

RunReport run_evolve(const ModelFile& model, double t_max, std::size_t steps,
                     double tolerance) {
  if (steps == 0 || !std::isfinite(t_max)) {
    throw Error(ErrorCode::InvalidArgument, "evolve needs steps >= 1 and a finite t_max");
  }
  const HermitianOperator h = model_hamiltonian(model);
  const BipartiteState s0 = model_initial_state(model);

  RunReport rep{model.dim_a,
                model.dim_b,
                tolerance,
                is_factorable(s0, tolerance),
                is_local_unitary(h, model.dim_a, model.dim_b, tolerance),
                {},
                verify_theorem(h, model.dim_a, model.dim_b, tolerance)};
  rep.records.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(steps);
    const ReducedMapSplit s = split_reduced_map(h, s0, t);
    rep.records.push_back(RunRecord{t, s.inhomogeneous.norm(),
                                    trace_distance(s.reduced, s.homogeneous),
                                    s.completeness_residual, s.split_residual});
  }
  return rep;
}

std::string run_records_csv(const RunReport& report) {
  std::string out = "t,delta_norm,trace_distance,kraus_completeness_residual,split_residual\n";
  for (const auto& r : report.records) {
    out += format_double(r.t) + "," + format_double(r.delta_norm) + "," +
           format_double(r.trace_distance) + "," + format_double(r.completeness_residual) +
           "," + format_double(r.split_residual) + "\n";
  }
  return out;
}

namespace {

json compatibility_json(const CompatibilityReport& r) {
  json j;
  j["dimA"] = r.dim_a;
  j["dimB"] = r.dim_b;
  j["tolerance"] = r.tolerance;
  j["interaction_norm"] = r.interaction_norm;
  j["canonical_values"] = r.canonical_values;
  j["local_unitary"] = r.local_unitary;
  j["probes_checked"] = r.probes_checked;
  json probes = json::array();
  for (const auto& p : r.failing_probes) {
    probes.push_back({{"l", p.l + 1}, {"m", p.m + 1}, {"residual", p.residual}});
  }
  j["failing_probes"] = std::move(probes);
  const std::size_t da = r.dim_a * r.dim_a - 1;
  const std::size_t modes = r.canonical_values.size();
  // [mode][l][n], 1-based labels implied by position.
  json coeff = json::array();
  for (std::size_t m = 0; m < modes; ++m) {
    json lm = json::array();
    for (std::size_t l = 0; l < da; ++l) {
      json row = json::array();
      for (std::size_t n = 0; n < da; ++n) {
        row.push_back(r.coefficient_residuals[(m * da + l) * da + n]);
      }
      lm.push_back(std::move(row));
    }
    coeff.push_back(std::move(lm));
  }
  j["coefficient_residuals"] = std::move(coeff);
  j["coefficient_condition_holds"] = r.coefficient_condition_holds;
  j["conclusion"] = to_string(r.conclusion);
  j["verdicts_agree"] = r.agrees;
  return j;
}

}  // namespace

std::string compatibility_report_json(const CompatibilityReport& report) {
  return compatibility_json(report).dump(2);
}

std::string run_report_json(const RunReport& report) {
  json j;
  j["dimA"] = report.dim_a;
  j["dimB"] = report.dim_b;
  j["tolerance"] = report.tolerance;
  j["initial_state_factorable"] = report.factorable;
  j["local_unitary"] = report.local_unitary;
  json recs = json::array();
  double max_delta = 0.0, max_split = 0.0, max_complete = 0.0;
  for (const auto& r : report.records) {
    recs.push_back({{"t", r.t},
                    {"delta_norm", r.delta_norm},
                    {"trace_distance", r.trace_distance},
                    {"kraus_completeness_residual", r.completeness_residual},
                    {"split_residual", r.split_residual}});
    max_delta = std::max(max_delta, r.delta_norm);
    max_split = std::max(max_split, r.split_residual);
    max_complete = std::max(max_complete, r.completeness_residual);
  }
  j["records"] = std::move(recs);
  j["max_delta_norm"] = max_delta;
  j["max_split_residual"] = max_split;
  j["max_kraus_completeness_residual"] = max_complete;
  j["analysis"] = compatibility_json(report.analysis);
  return j.dump(2);
}

std::string basis_json(std::size_t n) {
  const GeneratorBasis basis = generators(n);
  const StructureConstants g = structure_constants(basis);
  json j;
  j["n"] = n;
  json gens = json::array();
  for (const auto& s : basis.generators()) gens.push_back(write_matrix(s));
  j["generators"] = std::move(gens);
  json gj = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    json li = json::array();
    for (std::size_t l = 0; l < g.size(); ++l) {
      json row = json::array();
      for (std::size_t k = 0; k < g.size(); ++k) row.push_back(g(i, l, k));
      li.push_back(std::move(row));
    }
    gj.push_back(std::move(li));
  }
  j["structure_constants"] = std::move(gj);
  return j.dump(2);
}

CnotDemo run_cnot_demo(std::uint64_t seed, double tolerance) {
  const HermitianOperator h = build_cnot_model();
  const GeneratorBasis pauli = generators(2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gamma_dist(-0.2, 0.2);
  std::uniform_real_distribution<double> time_dist(0.0, 2.0 * std::numbers::pi);

  CnotDemo demo{decompose_hamiltonian(h, 2, 2), {}, 0.0, RealMatrix::Zero(3, 3),
                {}, {}, 0.0, tolerance, false};

  // Numeric vs closed form. The other seven gamma entries are filled too; they
  // must not change delta rho.
  for (std::size_t k = 0; k < kCnotComparisonRows; ++k) {
    CnotCorrelation gamma;
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) gamma.gamma(i, j) = gamma_dist(rng);
    }
    const double t = time_dist(rng);
    const ComplexMatrix delta = inhomogeneous_part(h, gamma.to_operator(), t);
    const CoefficientExpansion e = expand(delta, pauli);
    const CnotCoefficients closed = cnot_inhomogeneity_closed_form(gamma, t);
    const ComplexMatrix closed_op = closed.c2 * pauli[1] + closed.c3 * pauli[2];
    CnotComparisonRow row{gamma.gamma(1, 2), gamma.gamma(2, 2), t,
                          e.coeffs[1].real(), e.coeffs[2].real(), closed.c2, closed.c3,
                          (delta - closed_op).norm()};
    demo.max_comparison_residual = std::max(demo.max_comparison_residual, row.residual);
    demo.comparison.push_back(row);
  }

  // Kraus-compatible subclass: random gamma with the (2,3) and (3,3) entries
  // zeroed, scaled so I/4 + C stays positive, evolved as a full state.
  CnotCorrelation compatible;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) compatible.gamma(i, j) = gamma_dist(rng);
  }
  compatible.gamma(1, 2) = 0.0;
  compatible.gamma(2, 2) = 0.0;
  const double norm = spectral_norm(compatible.to_operator().matrix());
  if (norm > 0.0) compatible.gamma *= 0.2 / norm;
  demo.compatible_gamma = compatible.gamma;
  const BipartiteState s0(2, 2, DensityOperator(identity(4) / 4.0 +
                                                compatible.to_operator().matrix()));
  for (std::size_t k = 0; k < kCnotCompatibleTimes; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(kCnotCompatibleTimes - 1);
    const ReducedMapSplit s = split_reduced_map(h, s0, t);
    demo.compatible_times.push_back(t);
    demo.compatible_delta_norms.push_back(s.inhomogeneous.norm());
    demo.max_compatible_delta_norm =
        std::max(demo.max_compatible_delta_norm, s.inhomogeneous.norm());
  }
  demo.ok = demo.max_comparison_residual < 1e-9 && demo.max_compatible_delta_norm < tolerance;
  return demo;
}

std::string cnot_demo_json(const CnotDemo& demo) {
  const auto& d = demo.decomposition;
  json j;
  json dj;
  dj["scalar"] = d.scalar;
  const GeneratorBasis pauli = generators(2);
  const CoefficientExpansion ea = expand(d.h_a.matrix(), pauli);
  const CoefficientExpansion eb = expand(d.h_b.matrix(), pauli);
  json a = json::array(), b = json::array();
  for (const auto& c : ea.coeffs) a.push_back(c.real());
  for (const auto& c : eb.coeffs) b.push_back(c.real());
  dj["h_a_coeffs"] = std::move(a);
  dj["h_b_coeffs"] = std::move(b);
  dj["v_coeffs"] = write_real_matrix(d.v_coeffs);
  dj["v13"] = d.v_coeffs(0, 2);
  j["decomposition"] = std::move(dj);

  json rows = json::array();
  for (const auto& r : demo.comparison) {
    rows.push_back({{"gamma23", r.gamma23},
                    {"gamma33", r.gamma33},
                    {"t", r.t},
                    {"numeric_c2", r.numeric_c2},
                    {"numeric_c3", r.numeric_c3},
                    {"closed_c2", r.closed_c2},
                    {"closed_c3", r.closed_c3},
                    {"residual", r.residual}});
  }
  j["comparison"] = {{"rows", std::move(rows)},
                     {"max_residual", demo.max_comparison_residual}};

  json cs;
  cs["gamma"] = write_real_matrix(demo.compatible_gamma);
  cs["times"] = demo.compatible_times;
  cs["delta_norms"] = demo.compatible_delta_norms;
  cs["max_delta_norm"] = demo.max_compatible_delta_norm;
  j["compatible_subclass"] = std::move(cs);
  j["tolerance"] = demo.tolerance;
  j["ok"] = demo.ok;
  return j.dump(2);
}

std::string cnot_comparison_csv(const CnotDemo& demo) {
  std::string out = "gamma23,gamma33,t,numeric_c2,numeric_c3,closed_c2,closed_c3,residual\n";
  for (const auto& r : demo.comparison) {
    out += format_double(r.gamma23) + "," + format_double(r.gamma33) + "," +
           format_double(r.t) + "," + format_double(r.numeric_c2) + "," +
           format_double(r.numeric_c3) + "," + format_double(r.closed_c2) + "," +
           format_double(r.closed_c3) + "," + format_double(r.residual) + "\n";
  }
  return out;
}

}  // namespace redyn
