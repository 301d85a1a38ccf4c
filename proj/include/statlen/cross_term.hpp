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
// Exact extraction of the mixing cross-term. For a 2x2 change (a b; c d) and
// exponent p >= 2, the coefficient of (x conj x)^(p-1) (y conj y) in
// |a x + b y|^(2p) + |c x + d y|^(2p), with x, conj x, y, conj y independent,
// has the closed form p^2 (|a|^(2p-2) |b|^2 + |c|^(2p-2) |d|^2). It vanishes
// exactly when ab = 0 = cd, i.e. only for trivial changes. Arithmetic is over
// Gaussian integers so the certificate is exact, and a full brute-force
// multivariate expansion is provided as an independent route.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "statlen/basis_change.hpp"
#include "statlen/functional.hpp"

namespace statlen {

namespace detail {
inline long long narrow_i128(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("magnitude overflow");
  return static_cast<long long>(v);
}
}  // namespace detail

struct GaussInt {
  long long re = 0;
  long long im = 0;

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {detail::narrow_i128(static_cast<__int128>(a.re) + b.re),
            detail::narrow_i128(static_cast<__int128>(a.im) + b.im)};
  }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    const __int128 re = static_cast<__int128>(a.re) * b.re -
                        static_cast<__int128>(a.im) * b.im;
    const __int128 im = static_cast<__int128>(a.re) * b.im +
                        static_cast<__int128>(a.im) * b.re;
    return {detail::narrow_i128(re), detail::narrow_i128(im)};
  }
  GaussInt conj() const { return {re, -im}; }
  long long norm2() const {
    return detail::narrow_i128(static_cast<__int128>(re) * re +
                               static_cast<__int128>(im) * im);
  }
};

struct GaussMatrix2 {
  GaussInt a, b, c, d;
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i);
    result /= i;
  }
  return detail::narrow_i128(result);
}

inline GaussInt gpow(GaussInt z, int e) {
  GaussInt result{1, 0};
  for (int i = 0; i < e; ++i) result = result * z;
  return result;
}

inline long long ipow(long long base, int e) {
  __int128 result = 1;
  for (int i = 0; i < e; ++i) {
    result *= base;
    detail::narrow_i128(result);
  }
  return detail::narrow_i128(result);
}

// Closed form p^2 (|a|^(2p-2) |b|^2 + |c|^(2p-2) |d|^2), exact. The identity
// map contributes nothing to this monomial, so the value is the whole
// obstruction.
inline long long cross_term_coefficient(int p, const GaussMatrix2& u) {
  if (p < 2) throw std::domain_error("cross term arises only for p >= 2");
  const __int128 left = static_cast<__int128>(ipow(u.a.norm2(), p - 1)) * u.b.norm2();
  const __int128 right = static_cast<__int128>(ipow(u.c.norm2(), p - 1)) * u.d.norm2();
  return detail::narrow_i128(static_cast<__int128>(p) * p * (left + right));
}

// Brute-force route: expand both rows of sum_k |(U (x,y))_k|^(2p) into the
// full (p+1) x (p+1) table of monomial coefficients over the independent
// variables (x, y, conj x, conj y), then read off (i, j) = (p-1, p-1). Kept
// deliberately separate from the closed form above.
inline long long cross_term_expand_coefficient(int p, const GaussMatrix2& u) {
  if (p < 2) throw std::domain_error("cross term arises only for p >= 2");
  // coeff[i][j] multiplies x^i y^(p-i) conjx^j conjy^(p-j)
  std::vector<std::vector<GaussInt>> coeff(
      static_cast<size_t>(p) + 1, std::vector<GaussInt>(static_cast<size_t>(p) + 1));
  const std::array<std::pair<GaussInt, GaussInt>, 2> rows = {
      std::pair<GaussInt, GaussInt>{u.a, u.b}, {u.c, u.d}};
  for (const auto& [first, second] : rows) {
    for (int i = 0; i <= p; ++i) {
      const GaussInt holo =
          GaussInt{binomial(p, i), 0} * gpow(first, i) * gpow(second, p - i);
      for (int j = 0; j <= p; ++j) {
        const GaussInt anti = GaussInt{binomial(p, j), 0} *
                              gpow(first.conj(), j) * gpow(second.conj(), p - j);
        coeff[i][j] = coeff[i][j] + holo * anti;
      }
    }
  }
  const GaussInt target = coeff[static_cast<size_t>(p) - 1][static_cast<size_t>(p) - 1];
  if (target.im != 0) throw std::logic_error("cross term must be real");
  return target.re;
}

// Floating-point closed form on an arbitrary 2x2 matrix; used to certify
// optimizer outputs where entries are not integers.
inline double cross_term_coefficient_fp(int p, const CMatrix& u) {
  if (p < 2) throw std::domain_error("cross term arises only for p >= 2");
  if (u.dim() != 2) throw std::invalid_argument("cross term defined for dim 2");
  const double a2 = std::norm(u(0, 0)), b2 = std::norm(u(0, 1));
  const double c2 = std::norm(u(1, 0)), d2 = std::norm(u(1, 1));
  return static_cast<double>(p) * p *
         (pow_int(a2, p - 1) * b2 + pow_int(c2, p - 1) * d2);
}

}  // namespace statlen
