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

#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "statlen/cross_term.hpp"
#include "statlen/rng.hpp"

using namespace statlen;

namespace {

// Test-side oracle, independent of the library's expansion: walks every
// monomial index of |r1 x + r2 y|^(2p) summed over the two rows, accumulating
// the (x conj x)^(p-1) (y conj y) coefficient with __int128 Gaussian
// arithmetic written out longhand.
long long oracle_cross_term(int p, const GaussMatrix2& u) {
  auto choose = [](int n, int k) {
    __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
      c *= (n - k + i);
      c /= i;
    }
    return c;
  };
  __int128 total_re = 0, total_im = 0;
  const GaussInt rows[2][2] = {{u.a, u.b}, {u.c, u.d}};
  for (const auto& row : rows) {
    // holomorphic part: coefficient of x^(p-1) y is C(p,1) r1^(p-1) r2
    __int128 h_re = choose(p, 1), h_im = 0;
    for (int i = 0; i < p - 1; ++i) {
      const __int128 re = h_re * row[0].re - h_im * row[0].im;
      const __int128 im = h_re * row[0].im + h_im * row[0].re;
      h_re = re;
      h_im = im;
    }
    {
      const __int128 re = h_re * row[1].re - h_im * row[1].im;
      const __int128 im = h_re * row[1].im + h_im * row[1].re;
      h_re = re;
      h_im = im;
    }
    // antiholomorphic part is the conjugate of the same coefficient
    const __int128 a_re = h_re, a_im = -h_im;
    total_re += h_re * a_re - h_im * a_im;
    total_im += h_re * a_im + h_im * a_re;
  }
  REQUIRE(total_im == 0);
  REQUIRE(total_re <= INT64_MAX);
  return static_cast<long long>(total_re);
}

GaussInt random_gauss(SplitMix64& rng, int bound) {
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return {static_cast<long long>(rng.next() % span) - bound,
          static_cast<long long>(rng.next() % span) - bound};
}

}  // namespace

TEST_CASE("worked cross-term values", "[cross_term]") {
  const GaussMatrix2 hadamard{{1, 0}, {1, 0}, {1, 0}, {-1, 0}};
  CHECK(cross_term_coefficient(2, hadamard) == 8);
  CHECK(cross_term_expand_coefficient(2, hadamard) == 8);
  CHECK(oracle_cross_term(2, hadamard) == 8);

  CHECK(cross_term_coefficient(3, hadamard) == 18);
  CHECK(cross_term_expand_coefficient(3, hadamard) == 18);
  CHECK(oracle_cross_term(3, hadamard) == 18);

  const GaussMatrix2 diagonal{{3, 0}, {0, 0}, {0, 0}, {5, 0}};
  CHECK(cross_term_coefficient(2, diagonal) == 0);
  CHECK(cross_term_expand_coefficient(2, diagonal) == 0);
}

TEST_CASE("p below 2 is rejected", "[cross_term]") {
  const GaussMatrix2 u{{1, 0}, {1, 0}, {1, 0}, {-1, 0}};
  CHECK_THROWS_WITH(cross_term_coefficient(1, u), "cross term arises only for p >= 2");
  CHECK_THROWS_AS(cross_term_expand_coefficient(0, u), std::domain_error);
}

TEST_CASE("closed form matches both expansions on random integer matrices",
          "[cross_term]") {
  SplitMix64 rng(2024);
  for (int p : {2, 3, 4}) {
    for (int trial = 0; trial < 50; ++trial) {
      const GaussMatrix2 u{random_gauss(rng, 9), random_gauss(rng, 9),
                           random_gauss(rng, 9), random_gauss(rng, 9)};
      const long long closed = cross_term_coefficient(p, u);
      CHECK(closed == cross_term_expand_coefficient(p, u));
      CHECK(closed == oracle_cross_term(p, u));
    }
  }
}

TEST_CASE("coefficient vanishes exactly when ab = 0 = cd", "[cross_term]") {
  SplitMix64 rng(515);
  for (int p : {2, 3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      GaussMatrix2 u{random_gauss(rng, 5), random_gauss(rng, 5), random_gauss(rng, 5),
                     random_gauss(rng, 5)};
      // Sprinkle zero patterns so both sides of the equivalence occur.
      switch (trial % 5) {
        case 0: u.b = {0, 0}; u.c = {0, 0}; break;           // diagonal
        case 1: u.a = {0, 0}; u.d = {0, 0}; break;           // antidiagonal
        case 2: u.b = {0, 0}; u.d = {0, 0}; break;           // one zero per row
        default: break;
      }
      const bool trivial_pattern =
          (u.a * u.b).norm2() == 0 && (u.c * u.d).norm2() == 0;
      CHECK((cross_term_coefficient(p, u) == 0) == trivial_pattern);
    }
  }
}

TEST_CASE("floating closed form agrees on integer input", "[cross_term]") {
  CMatrix m(2);
  m(0, 0) = Complex(1, 2);
  m(0, 1) = Complex(0, 1);
  m(1, 0) = Complex(2, -1);
  m(1, 1) = Complex(3, 0);
  const GaussMatrix2 u{{1, 2}, {0, 1}, {2, -1}, {3, 0}};
  for (int p : {2, 3, 4})
    CHECK(cross_term_coefficient_fp(p, m) ==
          static_cast<double>(cross_term_coefficient(p, u)));
}
