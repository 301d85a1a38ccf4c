// Copyright 2026 The statlen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Square complex matrices acting on representation coordinates, the
// trivial-vs-nontrivial classification of such changes, and seeded random
// unitaries. Dimensions stay small (<= 8), so the kernels are direct.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "statlen/amplitude.hpp"
#include "statlen/rng.hpp"

namespace statlen {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
  }

  static CMatrix identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }
  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }

 private:
  int dim_ = 0;
  std::vector<Complex> a_;
};

inline CVector matvec(const CMatrix& m, const CVector& v) {
  if (static_cast<int>(v.size()) != m.dim())
    throw std::invalid_argument("dimension mismatch");
  CVector out(v.size());
  for (int i = 0; i < m.dim(); ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  CMatrix out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < a.dim(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out(i, j) = m(j, i);
  return out;
}

inline CMatrix adjoint(const CMatrix& m) {
  CMatrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

// Determinant by LU with partial pivoting.
inline Complex det(const CMatrix& m) {
  const int n = m.dim();
  CMatrix lu = m;
  Complex result = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    if (std::abs(lu(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
      result = -result;
    }
    result *= lu(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = lu(r, col) / lu(col, col);
      for (int j = col; j < n; ++j) lu(r, j) -= factor * lu(col, j);
    }
  }
  return result;
}

// Gauss-Jordan inverse with partial pivoting.
inline CMatrix inverse(const CMatrix& m) {
  const int n = m.dim();
  CMatrix a = m;
  CMatrix inv = CMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-300)
      throw std::invalid_argument("not a basis change");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Complex scale = 1.0 / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex factor = a(r, col);
      if (factor == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

// max_ij |(adjoint(m) m - I)_ij|
inline double unitarity_defect(const CMatrix& m) {
  const CMatrix g = matmul(adjoint(m), m);
  double worst = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      const Complex target = (i == j) ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(g(i, j) - target));
    }
  return worst;
}

// Each row scaled to unit 2-norm; zero rows are left untouched.
inline CMatrix row_normalized(const CMatrix& m) {
  CMatrix out = m;
  for (int i = 0; i < m.dim(); ++i) {
    double norm2 = 0.0;
    for (int j = 0; j < m.dim(); ++j) norm2 += std::norm(m(i, j));
    if (norm2 == 0.0) continue;
    const double inv_norm = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < m.dim(); ++j) out(i, j) *= inv_norm;
  }
  return out;
}

inline bool is_invertible(const CMatrix& m) {
  return std::abs(det(row_normalized(m))) > 1e-12;
}

enum class Triviality { identity_like, generalized_permutation, nontrivial };

inline const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::identity_like: return "identity_like";
    case Triviality::generalized_permutation: return "generalized_permutation";
    case Triviality::nontrivial: return "nontrivial";
  }
  return "nontrivial";
}

inline constexpr double kDefaultTrivialityEps = 0.1;

// A change is trivial exactly when, after row normalization, each row and
// each column holds a single entry above eps: a relabeling plus rescaling of
// the same outcomes. Everything else genuinely mixes outcomes. The classifier
// reports the identity pattern as generalized_permutation too; identity_like
// is assigned only by the explicit identity factory below.
inline Triviality classify_triviality(const CMatrix& m,
                                      double eps = kDefaultTrivialityEps) {
  const CMatrix r = row_normalized(m);
  const int n = r.dim();
  std::vector<int> row_hits(n, 0), col_hits(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(r(i, j)) > eps) {
        ++row_hits[i];
        ++col_hits[j];
      }
  for (int k = 0; k < n; ++k)
    if (row_hits[k] != 1 || col_hits[k] != 1) return Triviality::nontrivial;
  return Triviality::generalized_permutation;
}

struct BasisChange {
  int dim = 0;
  CMatrix entries;
  Triviality triviality = Triviality::nontrivial;
};

inline BasisChange make_basis_change(CMatrix m, double eps = kDefaultTrivialityEps) {
  BasisChange b;
  b.dim = m.dim();
  b.triviality = classify_triviality(m, eps);
  b.entries = std::move(m);
  return b;
}

inline BasisChange identity_basis_change(int dim) {
  return {dim, CMatrix::identity(dim), Triviality::identity_like};
}

// Seeded Haar-like unitary: orthonormalize a complex-Gaussian matrix by
// modified Gram-Schmidt with a second orthogonalization pass. The triangular
// factor's diagonal is real positive by construction, which pins the phase
// gauge of each column.
inline BasisChange random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  SplitMix64 rng(derive_stream(seed, stream::kUnitary));
  CMatrix q(dim);
  for (int j = 0; j < dim; ++j) {
    CVector v(dim);
    for (;;) {
      for (int i = 0; i < dim; ++i) v[i] = rng.next_complex_gaussian();
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < j; ++k) {
          Complex proj = 0.0;
          for (int i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * v[i];
          for (int i = 0; i < dim; ++i) v[i] -= proj * q(i, k);
        }
      double norm2 = 0.0;
      for (int i = 0; i < dim; ++i) norm2 += std::norm(v[i]);
      if (norm2 > 1e-12) {  // redraw a (numerically) dependent column
        const double inv_norm = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < dim; ++i) q(i, j) = v[i] * inv_norm;
        break;
      }
    }
  }
  return make_basis_change(std::move(q));
}

inline CVector rep_coordinates(const Representation& rep) {
  CVector v;
  v.reserve(rep.entries().size());
  for (const auto& [label, amp] : rep.entries()) v.push_back(amp.to_complex());
  return v;
}

// Re-develops a representation in the instrument related by m. Labels carry
// over positionally; the basis id records the change.
inline Representation apply(const CMatrix& m, const Representation& rep,
                            const std::string& new_basis_id = "") {
  const CVector image = matvec(m, rep_coordinates(rep));
  std::vector<Representation::Entry> entries;
  entries.reserve(image.size());
  for (size_t k = 0; k < image.size(); ++k)
    entries.emplace_back(rep.label(static_cast<int>(k)),
                         Amplitude::from_complex(image[k]));
  return Representation(
      new_basis_id.empty() ? rep.basis_id() + "'" : new_basis_id, std::move(entries));
}

}  // namespace statlen
