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
#include <cmath>
#include <numbers>

#include "statlen/search.hpp"

using namespace statlen;

namespace {

SearchConfig fast_cfg(std::uint64_t seed = 0) {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.descent_steps = 300;
  cfg.sample_vectors = 32;
  cfg.rng_seed = seed;
  return cfg;
}

std::vector<CVector> basis_and_mixes(int dim) {
  return probe_vectors(dim, 2 * dim * dim, 12345);
}

}  // namespace

TEST_CASE("preservation residual on worked cases", "[search]") {
  const BasisChange u = random_unitary(2, 8);
  CHECK(preservation_residual(1, u.entries, basis_and_mixes(2)) <= 1e-12);

  CMatrix hadamard(2);
  const double h = 1.0 / std::numbers::sqrt2;
  hadamard(0, 0) = h;
  hadamard(0, 1) = h;
  hadamard(1, 0) = h;
  hadamard(1, 1) = -h;
  const std::vector<CVector> axis = {{Complex(1.0), Complex(0.0)}};
  CHECK(preservation_residual(2, hadamard, axis) == Catch::Approx(0.5).margin(1e-14));

  CMatrix perm(3);
  perm(0, 2) = 1.0;
  perm(1, 0) = 1.0;
  perm(2, 1) = 1.0;
  for (int p = 1; p <= 4; ++p)
    CHECK(preservation_residual(p, perm, basis_and_mixes(3)) <= 1e-12);

  // Phased permutations are the trivial preservers at every exponent.
  CMatrix phased(3);
  phased(0, 1) = std::polar(1.0, 0.8);
  phased(1, 2) = std::polar(1.0, -2.1);
  phased(2, 0) = std::polar(1.0, 2.9);
  CHECK(classify_triviality(phased) == Triviality::generalized_permutation);
  for (int p = 1; p <= 4; ++p)
    CHECK(preservation_residual(p, phased, basis_and_mixes(3)) <= 1e-12);
}

TEST_CASE("preservation residual accepts representations", "[search]") {
  const BasisChange u = random_unitary(2, 4);
  const std::vector<Representation> vectors = {
      Representation("A", {{"a", Amplitude(1)}, {"b", Amplitude(0, 2)}})};
  CHECK(preservation_residual(1, u, vectors) <= 1e-12);
  CHECK_THROWS_AS(preservation_residual(0, u, vectors), std::invalid_argument);
}

TEST_CASE("mixing level distinguishes trivial patterns", "[search]") {
  CHECK(mixing_level(CMatrix::identity(4)) == 0.0);
  CMatrix m(2);
  m(0, 0) = 3.0;
  m(0, 1) = 4.0;  // row normalizes to (0.6, 0.8)
  m(1, 1) = 1.0;
  CHECK(mixing_level(m) == Catch::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("nontriviality floor feasibility", "[search]") {
  SearchConfig cfg = fast_cfg();
  cfg.nontriviality_floor = 0.8;  // above 1/sqrt(2)
  CHECK_THROWS_WITH(preserver_search(1, 2, cfg), "nontriviality floor too high");
}

TEST_CASE("search finds a mixing preserver at p = 1", "[search]") {
  const SweepResult result = preserver_search(1, 2, fast_cfg(3));
  CHECK(result.verdict == SearchVerdict::preserver_found);
  CHECK(result.best_residual <= 1e-9);
  CHECK(result.best_matrix.triviality == Triviality::nontrivial);
  CHECK(unitarity_defect(result.best_matrix.entries) <= 1e-6);
  CHECK(mixing_level(result.best_matrix.entries) >= 0.1);
}

TEST_CASE("search finds no preserver at p = 2 and 3", "[search]") {
  for (int p : {2, 3}) {
    const SweepResult result = preserver_search(p, 2, fast_cfg(5));
    CHECK(result.verdict == SearchVerdict::no_preserver);
    CHECK(result.best_residual >= 1e-3);
    REQUIRE(result.cross_term_certificate.has_value());
    CHECK(*result.cross_term_certificate > 0.0);
  }
}

TEST_CASE("dimension 3 block embedding still excludes p = 2", "[search]") {
  SearchConfig cfg = fast_cfg(7);
  cfg.restarts = 4;
  const SweepResult result = preserver_search(2, 3, cfg);
  CHECK(result.verdict == SearchVerdict::no_preserver);
  CHECK(result.best_residual >= 1e-3);
  CHECK_FALSE(result.cross_term_certificate.has_value());
}

TEST_CASE("search is deterministic given the seed", "[search]") {
  const SweepResult a = preserver_search(2, 2, fast_cfg(11));
  const SweepResult b = preserver_search(2, 2, fast_cfg(11));
  CHECK(a.best_residual == b.best_residual);
  bool same_matrix = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      same_matrix =
          same_matrix && a.best_matrix.entries(i, j) == b.best_matrix.entries(i, j);
  CHECK(same_matrix);
}

TEST_CASE("exponent sweep aggregates verdicts", "[search]") {
  CHECK_THROWS_WITH(exponent_sweep({}, 2, fast_cfg()), "empty exponent list");
  const auto results = exponent_sweep({1, 2}, 2, fast_cfg(1));
  REQUIRE(results.size() == 2);
  CHECK(admissible_set(results) == std::vector<int>{1});
}

TEST_CASE("search input validation", "[search]") {
  CHECK_THROWS_AS(preserver_search(0, 2, fast_cfg()), std::invalid_argument);
  CHECK_THROWS_AS(preserver_search(1, 1, fast_cfg()), std::invalid_argument);
  SearchConfig bad = fast_cfg();
  bad.restarts = 0;
  CHECK_THROWS_AS(preserver_search(1, 2, bad), std::invalid_argument);
}

TEST_CASE("unitarity witness accepts unitaries and global phases", "[search]") {
  CHECK(unitarity_witness(random_unitary(3, 21), 18, 0));

  CMatrix phase = CMatrix::identity(2);
  const Complex w = std::polar(1.0, 1.234);
  phase(0, 0) = w;
  phase(1, 1) = w;
  CHECK(unitarity_witness(make_basis_change(phase), 8, 0));
}

TEST_CASE("unitarity witness rejects dilations", "[search]") {
  CMatrix stretch(2);
  stretch(0, 0) = 2.0;
  stretch(1, 1) = 0.5;
  CHECK_FALSE(unitarity_witness(make_basis_change(stretch), 8, 0));

  CMatrix singular(2);
  singular(0, 0) = 1.0;
  singular(1, 0) = 1.0;
  CHECK_THROWS_WITH(unitarity_witness(make_basis_change(singular), 8, 0),
                    "not a basis change");
}

TEST_CASE("unit preservation over enough vectors implies unitarity", "[search]") {
  // Near-unitary perturbations: candidates passing the residual gate must be
  // unitary to 1e-6; candidates far from unitary must fail the gate.
  SplitMix64 rng(88);
  for (int dim = 2; dim <= 4; ++dim) {
    const auto vectors = probe_vectors(dim, 2 * dim * dim, 777);
    for (int trial = 0; trial < 40; ++trial) {
      const BasisChange base = random_unitary(dim, 3000 + trial);
      const double eps = std::pow(10.0, -12.0 + 9.0 * rng.next_double());
      CMatrix perturbed = base.entries;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          perturbed(i, j) += eps * rng.next_complex_gaussian();
      if (preservation_residual(1, perturbed, vectors) <= 1e-10)
        CHECK(unitarity_defect(perturbed) <= 1e-6);
    }
  }
}
