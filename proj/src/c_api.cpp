#include "redyn/redyn.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>
#include <utility>

#include "redyn/compat.hpp"
#include "redyn/composite.hpp"
#include "redyn/dynamics.hpp"
#include "redyn/error.hpp"
#include "redyn/linalg.hpp"
#include "redyn/model_io.hpp"
#include "redyn/su_basis.hpp"

struct redyn_matrix {
  redyn::ComplexMatrix m;
};

struct redyn_basis {
  redyn::GeneratorBasis basis;
  redyn::StructureConstants g;
};

struct redyn_report {
  redyn::CompatibilityReport r;
};

struct redyn_model {
  redyn::ModelFile model;
};

struct redyn_run {
  redyn::RunReport r;
};

namespace {

thread_local std::string last_error;

redyn_status to_status(redyn::ErrorCode code) {
  using redyn::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return REDYN_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return REDYN_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return REDYN_ERR_NOT_HERMITIAN;
    case ErrorCode::NotUnitary: return REDYN_ERR_NOT_UNITARY;
    case ErrorCode::InvalidState: return REDYN_ERR_INVALID_STATE;
    case ErrorCode::Parse: return REDYN_ERR_PARSE;
    case ErrorCode::Io: return REDYN_ERR_IO;
    case ErrorCode::Internal: return REDYN_ERR_INTERNAL;
  }
  return REDYN_ERR_INTERNAL;
}

template <typename F>
redyn_status guard(F&& f) {
  try {
    std::forward<F>(f)();
    last_error.clear();
    return REDYN_OK;
  } catch (const redyn::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return REDYN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return REDYN_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw redyn::Error(redyn::ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

redyn_matrix* wrap(redyn::ComplexMatrix m) { return new redyn_matrix{std::move(m)}; }

}  // namespace

extern "C" {

const char* redyn_last_error(void) { return last_error.c_str(); }

const char* redyn_status_string(redyn_status status) {
  switch (status) {
    case REDYN_OK: return "ok";
    case REDYN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case REDYN_ERR_DIMENSION: return "dimension mismatch";
    case REDYN_ERR_NOT_HERMITIAN: return "operator not Hermitian";
    case REDYN_ERR_NOT_UNITARY: return "operator not unitary";
    case REDYN_ERR_INVALID_STATE: return "invalid density operator";
    case REDYN_ERR_PARSE: return "parse error";
    case REDYN_ERR_IO: return "I/O error";
    case REDYN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* redyn_version(void) { return "0.1.0"; }

void redyn_string_free(char* s) { delete[] s; }

redyn_status redyn_matrix_zeros(size_t dim, redyn_matrix** out) {
  return guard([&] {
    require(out != nullptr && dim > 0, "redyn_matrix_zeros: need dim > 0 and an output");
    const auto n = static_cast<Eigen::Index>(dim);
    *out = wrap(redyn::ComplexMatrix::Zero(n, n));
  });
}

redyn_status redyn_matrix_from_interleaved(size_t dim, const double* re_im,
                                           redyn_matrix** out) {
  return guard([&] {
    require(out != nullptr && re_im != nullptr && dim > 0,
            "redyn_matrix_from_interleaved: null argument or zero dimension");
    const auto n = static_cast<Eigen::Index>(dim);
    redyn::ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const std::size_t k = 2 * static_cast<std::size_t>(r * n + c);
        m(r, c) = redyn::Complex(re_im[k], re_im[k + 1]);
      }
    }
    *out = wrap(std::move(m));
  });
}

void redyn_matrix_destroy(redyn_matrix* m) { delete m; }

size_t redyn_matrix_dim(const redyn_matrix* m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

redyn_status redyn_matrix_get(const redyn_matrix* m, size_t row, size_t col, double* re,
                              double* im) {
  return guard([&] {
    require(m != nullptr && re != nullptr && im != nullptr, "redyn_matrix_get: null argument");
    require(row < redyn_matrix_dim(m) && col < redyn_matrix_dim(m),
            "redyn_matrix_get: index out of range");
    const auto v = m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    *re = v.real();
    *im = v.imag();
  });
}

redyn_status redyn_matrix_set(redyn_matrix* m, size_t row, size_t col, double re,
                              double im) {
  return guard([&] {
    require(m != nullptr, "redyn_matrix_set: null matrix");
    require(row < redyn_matrix_dim(m) && col < redyn_matrix_dim(m),
            "redyn_matrix_set: index out of range");
    m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        redyn::Complex(re, im);
  });
}

redyn_status redyn_matrix_to_interleaved(const redyn_matrix* m, double* buf, size_t len) {
  return guard([&] {
    require(m != nullptr && buf != nullptr, "redyn_matrix_to_interleaved: null argument");
    const std::size_t n = redyn_matrix_dim(m);
    require(len >= 2 * n * n, "redyn_matrix_to_interleaved: buffer too small");
    const auto* data = m->m.data();  // row-major
    for (std::size_t k = 0; k < n * n; ++k) {
      buf[2 * k] = data[k].real();
      buf[2 * k + 1] = data[k].imag();
    }
  });
}

redyn_status redyn_matrix_frobenius(const redyn_matrix* m, double* out) {
  return guard([&] {
    require(m != nullptr && out != nullptr, "redyn_matrix_frobenius: null argument");
    *out = m->m.norm();
  });
}

redyn_status redyn_tensor_product(const redyn_matrix* a, const redyn_matrix* b,
                                  redyn_matrix** out) {
  return guard([&] {
    require(a && b && out, "redyn_tensor_product: null argument");
    *out = wrap(redyn::tensor_product(a->m, b->m));
  });
}

redyn_status redyn_partial_trace_a(const redyn_matrix* m, size_t dim_a, size_t dim_b,
                                   redyn_matrix** out) {
  return guard([&] {
    require(m && out, "redyn_partial_trace_a: null argument");
    *out = wrap(redyn::partial_trace_a(m->m, dim_a, dim_b));
  });
}

redyn_status redyn_partial_trace_b(const redyn_matrix* m, size_t dim_a, size_t dim_b,
                                   redyn_matrix** out) {
  return guard([&] {
    require(m && out, "redyn_partial_trace_b: null argument");
    *out = wrap(redyn::partial_trace_b(m->m, dim_a, dim_b));
  });
}

redyn_status redyn_unitary_exp(const redyn_matrix* h, double t, redyn_matrix** out) {
  return guard([&] {
    require(h && out, "redyn_unitary_exp: null argument");
    *out = wrap(redyn::unitary_exp(redyn::HermitianOperator(h->m), t).matrix());
  });
}

redyn_status redyn_basis_create(size_t n, redyn_basis** out) {
  return guard([&] {
    require(out != nullptr, "redyn_basis_create: null output");
    redyn::GeneratorBasis basis = redyn::generators(n);
    redyn::StructureConstants g = redyn::structure_constants(basis);
    *out = new redyn_basis{std::move(basis), std::move(g)};
  });
}

void redyn_basis_destroy(redyn_basis* b) { delete b; }

size_t redyn_basis_size(const redyn_basis* b) { return b ? b->basis.size() : 0; }

redyn_status redyn_basis_generator(const redyn_basis* b, size_t i, redyn_matrix** out) {
  return guard([&] {
    require(b && out, "redyn_basis_generator: null argument");
    require(i < b->basis.size(), "redyn_basis_generator: index out of range");
    *out = wrap(b->basis[i]);
  });
}

redyn_status redyn_basis_structure_constant(const redyn_basis* b, size_t i, size_t l,
                                            size_t k, double* out) {
  return guard([&] {
    require(b && out, "redyn_basis_structure_constant: null argument");
    const std::size_t d = b->g.size();
    require(i < d && l < d && k < d, "redyn_basis_structure_constant: index out of range");
    *out = b->g(i, l, k);
  });
}

redyn_status redyn_basis_json(size_t n, char** out) {
  return guard([&] {
    require(out != nullptr, "redyn_basis_json: null output");
    *out = dup_string(redyn::basis_json(n));
  });
}

redyn_status redyn_correlation_operator(const redyn_matrix* rho, size_t dim_a,
                                        size_t dim_b, redyn_matrix** out) {
  return guard([&] {
    require(rho && out, "redyn_correlation_operator: null argument");
    const redyn::BipartiteState s(dim_a, dim_b, redyn::DensityOperator(rho->m));
    *out = wrap(redyn::correlation_operator(s).matrix());
  });
}

redyn_status redyn_interaction_coefficients(const redyn_matrix* h, size_t dim_a,
                                            size_t dim_b, double* buf, size_t len) {
  return guard([&] {
    require(h && buf, "redyn_interaction_coefficients: null argument");
    const auto d =
        redyn::decompose_hamiltonian(redyn::HermitianOperator(h->m), dim_a, dim_b);
    const auto count = static_cast<std::size_t>(d.v_coeffs.size());
    require(len >= count, "redyn_interaction_coefficients: buffer too small");
    std::memcpy(buf, d.v_coeffs.data(), count * sizeof(double));
  });
}

redyn_status redyn_is_local_unitary(const redyn_matrix* h, size_t dim_a, size_t dim_b,
                                    double tol, int* out) {
  return guard([&] {
    require(h && out, "redyn_is_local_unitary: null argument");
    *out = redyn::is_local_unitary(redyn::HermitianOperator(h->m), dim_a, dim_b, tol) ? 1 : 0;
  });
}

redyn_status redyn_inhomogeneous_part(const redyn_matrix* h, const redyn_matrix* cor,
                                      size_t dim_a, size_t dim_b, double t,
                                      redyn_matrix** out) {
  return guard([&] {
    require(h && cor && out, "redyn_inhomogeneous_part: null argument");
    *out = wrap(redyn::inhomogeneous_part(redyn::HermitianOperator(h->m),
                                          redyn::CorrelationOperator(dim_a, dim_b, cor->m),
                                          t));
  });
}

redyn_status redyn_split_reduced_map(const redyn_matrix* h, const redyn_matrix* rho0,
                                     size_t dim_a, size_t dim_b, double t,
                                     redyn_matrix** reduced, redyn_matrix** homogeneous,
                                     redyn_matrix** inhomogeneous) {
  return guard([&] {
    require(h && rho0, "redyn_split_reduced_map: null argument");
    const redyn::BipartiteState s(dim_a, dim_b, redyn::DensityOperator(rho0->m));
    redyn::ReducedMapSplit split =
        redyn::split_reduced_map(redyn::HermitianOperator(h->m), s, t);
    if (reduced) *reduced = wrap(std::move(split.reduced));
    if (homogeneous) *homogeneous = wrap(std::move(split.homogeneous));
    if (inhomogeneous) *inhomogeneous = wrap(std::move(split.inhomogeneous));
  });
}

redyn_status redyn_lemma_condition(const redyn_matrix* h, const redyn_matrix* cor,
                                   size_t dim_a, size_t dim_b, double tol,
                                   redyn_matrix** out, int* is_zero) {
  return guard([&] {
    require(h && cor, "redyn_lemma_condition: null argument");
    const auto d =
        redyn::decompose_hamiltonian(redyn::HermitianOperator(h->m), dim_a, dim_b);
    auto c = redyn::lemma_condition(d.v, redyn::CorrelationOperator(dim_a, dim_b, cor->m),
                                    tol);
    if (is_zero) *is_zero = c.is_zero ? 1 : 0;
    if (out) *out = wrap(std::move(c.matrix));
  });
}

redyn_status redyn_cnot_hamiltonian(redyn_matrix** out) {
  return guard([&] {
    require(out != nullptr, "redyn_cnot_hamiltonian: null output");
    *out = wrap(redyn::build_cnot_model().matrix());
  });
}

redyn_status redyn_verify_theorem(const redyn_matrix* h, size_t dim_a, size_t dim_b,
                                  double tol, redyn_report** out) {
  return guard([&] {
    require(h && out, "redyn_verify_theorem: null argument");
    *out = new redyn_report{
        redyn::verify_theorem(redyn::HermitianOperator(h->m), dim_a, dim_b, tol)};
  });
}

void redyn_report_destroy(redyn_report* r) { delete r; }

redyn_conclusion redyn_report_conclusion(const redyn_report* r) {
  return r && r->r.conclusion == redyn::Conclusion::LocalUnitary ? REDYN_LOCAL_UNITARY
                                                                 : REDYN_KRAUS_INCOMPATIBLE;
}

int redyn_report_verdicts_agree(const redyn_report* r) { return r && r->r.agrees ? 1 : 0; }

size_t redyn_report_failing_probe_count(const redyn_report* r) {
  return r ? r->r.failing_probes.size() : 0;
}

redyn_status redyn_report_failing_probe(const redyn_report* r, size_t index, size_t* l,
                                        size_t* m, double* residual) {
  return guard([&] {
    require(r != nullptr, "redyn_report_failing_probe: null report");
    require(index < r->r.failing_probes.size(), "redyn_report_failing_probe: index out of range");
    const auto& p = r->r.failing_probes[index];
    if (l) *l = p.l;
    if (m) *m = p.m;
    if (residual) *residual = p.residual;
  });
}

redyn_status redyn_report_json(const redyn_report* r, char** out) {
  return guard([&] {
    require(r && out, "redyn_report_json: null argument");
    *out = dup_string(redyn::compatibility_report_json(r->r));
  });
}

redyn_status redyn_model_load(const char* path, redyn_model** out) {
  return guard([&] {
    require(path && out, "redyn_model_load: null argument");
    *out = new redyn_model{redyn::load_model(path)};
  });
}

redyn_status redyn_model_parse(const char* json_text, redyn_model** out) {
  return guard([&] {
    require(json_text && out, "redyn_model_parse: null argument");
    *out = new redyn_model{redyn::parse_model(json_text)};
  });
}

void redyn_model_destroy(redyn_model* m) { delete m; }

redyn_status redyn_model_json(const redyn_model* m, char** out) {
  return guard([&] {
    require(m && out, "redyn_model_json: null argument");
    *out = dup_string(redyn::model_to_json(m->model));
  });
}

redyn_status redyn_model_save(const redyn_model* m, const char* path) {
  return guard([&] {
    require(m && path, "redyn_model_save: null argument");
    redyn::save_model(m->model, path);
  });
}

redyn_status redyn_model_dims(const redyn_model* m, size_t* dim_a, size_t* dim_b) {
  return guard([&] {
    require(m && dim_a && dim_b, "redyn_model_dims: null argument");
    *dim_a = m->model.dim_a;
    *dim_b = m->model.dim_b;
  });
}

redyn_status redyn_model_hamiltonian(const redyn_model* m, redyn_matrix** out) {
  return guard([&] {
    require(m && out, "redyn_model_hamiltonian: null argument");
    *out = wrap(m->model.hamiltonian);
  });
}

redyn_status redyn_model_initial_state(const redyn_model* m, redyn_matrix** out) {
  return guard([&] {
    require(m && out, "redyn_model_initial_state: null argument");
    *out = wrap(redyn::model_initial_state(m->model).matrix());
  });
}

redyn_status redyn_model_analyze(const redyn_model* m, double tol, redyn_report** out) {
  return guard([&] {
    require(m && out, "redyn_model_analyze: null argument");
    *out = new redyn_report{redyn::verify_theorem(redyn::model_hamiltonian(m->model),
                                                  m->model.dim_a, m->model.dim_b, tol)};
  });
}

redyn_status redyn_run_evolve(const redyn_model* m, double t_max, size_t steps, double tol,
                              redyn_run** out) {
  return guard([&] {
    require(m && out, "redyn_run_evolve: null argument");
    *out = new redyn_run{redyn::run_evolve(m->model, t_max, steps, tol)};
  });
}

void redyn_run_destroy(redyn_run* r) { delete r; }

size_t redyn_run_record_count(const redyn_run* r) { return r ? r->r.records.size() : 0; }

redyn_status redyn_run_record(const redyn_run* r, size_t index, double* t,
                              double* delta_norm, double* trace_distance,
                              double* completeness_residual, double* split_residual) {
  return guard([&] {
    require(r != nullptr, "redyn_run_record: null run");
    require(index < r->r.records.size(), "redyn_run_record: index out of range");
    const auto& rec = r->r.records[index];
    if (t) *t = rec.t;
    if (delta_norm) *delta_norm = rec.delta_norm;
    if (trace_distance) *trace_distance = rec.trace_distance;
    if (completeness_residual) *completeness_residual = rec.completeness_residual;
    if (split_residual) *split_residual = rec.split_residual;
  });
}

redyn_status redyn_run_csv(const redyn_run* r, char** out) {
  return guard([&] {
    require(r && out, "redyn_run_csv: null argument");
    *out = dup_string(redyn::run_records_csv(r->r));
  });
}

redyn_status redyn_run_json(const redyn_run* r, char** out) {
  return guard([&] {
    require(r && out, "redyn_run_json: null argument");
    *out = dup_string(redyn::run_report_json(r->r));
  });
}

redyn_status redyn_cnot_demo(const char* out_dir, uint64_t seed, double tol, int* ok) {
  return guard([&] {
    require(out_dir != nullptr, "redyn_cnot_demo: null output directory");
    const redyn::CnotDemo demo = redyn::run_cnot_demo(seed, tol);
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw redyn::Error(redyn::ErrorCode::Io, "cannot create " + dir.string());
    redyn::write_text_file(dir / "cnot_demo.json", redyn::cnot_demo_json(demo) + "\n");
    redyn::write_text_file(dir / "cnot_comparison.csv", redyn::cnot_comparison_csv(demo));
    if (ok) *ok = demo.ok ? 1 : 0;
  });
}

redyn_status redyn_write_file(const char* path, const char* text) {
  return guard([&] {
    require(path && text, "redyn_write_file: null argument");
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
      if (ec) throw redyn::Error(redyn::ErrorCode::Io, "cannot create " + p.parent_path().string());
    }
    redyn::write_text_file(p, text);
  });
}

}  // extern "C"
