#pragma once

#include <cstddef>
#include <vector>

#include "redyn/linalg.hpp"

namespace redyn {

// Orthogonal generators of SU(n): Hermitian, traceless, tr(s_i s_j) = 2 delta_ij.
class GeneratorBasis {
 public:
  // Generalized Gell-Mann family: symmetric off-diagonal pairs, then
  // antisymmetric pairs (both lexicographic in j < k), then the n-1 diagonal
  // generators. For n = 2 these are the Pauli matrices in order.
  static GeneratorBasis gell_mann(std::size_t n);

  // Validates every generator invariant; throws InvalidArgument otherwise.
  GeneratorBasis(std::size_t n, std::vector<ComplexMatrix> generators);

  // New basis s'_k = sum_i rotation(i, k) s_i; rotation must be orthogonal.
  GeneratorBasis rotated(const RealMatrix& rotation) const;

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return generators_.at(i); }
  const std::vector<ComplexMatrix>& generators() const noexcept { return generators_; }

 private:
  std::size_t n_;
  std::vector<ComplexMatrix> generators_;
};

inline GeneratorBasis generators(std::size_t n) { return GeneratorBasis::gell_mann(n); }

// g(i, l, k) with [s_i, s_l] = 2i sum_k g(i, l, k) s_k. Completely antisymmetric.
class StructureConstants {
 public:
  StructureConstants(std::size_t n, std::size_t size, std::vector<double> values)
      : n_(n), size_(size), g_(std::move(values)) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t l, std::size_t k) const {
    return g_[(i * size_ + l) * size_ + k];
  }
  const std::vector<double>& values() const noexcept { return g_; }

 private:
  std::size_t n_;
  std::size_t size_;
  std::vector<double> g_;
};

// g_ilk = tr([s_i, s_l] s_k) / 4i.
StructureConstants structure_constants(const GeneratorBasis& basis);

// o = scalar * I + sum_i coeffs[i] * s_i
struct CoefficientExpansion {
  Complex scalar;
  std::vector<Complex> coeffs;

  ComplexMatrix reconstruct(const GeneratorBasis& basis) const;
};

CoefficientExpansion expand(const ComplexMatrix& o, const GeneratorBasis& basis);

// o = c00 I(x)I + sum a_i s_i(x)I + sum b_j I(x)t_j + sum c_ij s_i(x)t_j
struct BipartiteExpansion {
  Complex c00;
  std::vector<Complex> a;
  std::vector<Complex> b;
  ComplexMatrix c;  // (N^2-1) x (M^2-1), not square

  ComplexMatrix reconstruct(const GeneratorBasis& basis_a,
                            const GeneratorBasis& basis_b) const;
};

BipartiteExpansion expand_bipartite(const ComplexMatrix& o,
                                    const GeneratorBasis& basis_a,
                                    const GeneratorBasis& basis_b);

}  // namespace redyn
