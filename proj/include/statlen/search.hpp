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
// Searches for nontrivial linear maps preserving sum_k |a_k|^(2p). Trivial
// maps (generalized permutations) preserve every such sum, so the search is
// constrained to matrices where at least one row genuinely mixes outcomes;
// the verdict per exponent is whether any such preserver exists. Unitaries
// make p = 1 succeed; the exact cross-term certificate backs the failure of
// every p >= 2 in dimension 2.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "statlen/basis_change.hpp"
#include "statlen/cross_term.hpp"
#include "statlen/functional.hpp"
#include "statlen/rng.hpp"

namespace statlen {

struct SearchConfig {
  int restarts = 200;
  int descent_steps = 500;          // coordinate sweeps per restart
  double nontriviality_floor = 0.1; // delta: required mixing level
  int sample_vectors = 64;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (descent_steps < 1) throw std::invalid_argument("descent_steps must be >= 1");
    if (nontriviality_floor <= 0.0)
      throw std::invalid_argument("nontriviality floor must be positive");
    if (sample_vectors < 1)
      throw std::invalid_argument("sample_vectors must be >= 1");
  }
};

enum class SearchVerdict { preserver_found, no_preserver };

inline const char* to_string(SearchVerdict v) {
  return v == SearchVerdict::preserver_found ? "preserver_found" : "no_preserver";
}

struct SweepResult {
  int p = 0;
  int dim = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  BasisChange best_matrix;
  SearchVerdict verdict = SearchVerdict::no_preserver;
  // Exact-form cross-term value on the (row-normalized) best matrix; only
  // meaningful for dim 2 and p >= 2, where it certifies the numeric floor.
  std::optional<double> cross_term_certificate;
};

inline constexpr double kPreserverPassTol = 1e-9;
inline constexpr double kUnitaryResidualTol = 1e-10;

// max over vectors v of |sum_k |(U v)_k|^(2p) - sum_k |v_k|^(2p)| / max(1, sum_k |v_k|^(2p))
inline double preservation_residual(int p, const CMatrix& u,
                                    const std::vector<CVector>& vectors) {
  if (p < 1) throw std::invalid_argument("exponent must be positive");
  double worst = 0.0;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != u.dim())
      throw std::invalid_argument("dimension mismatch");
    double before = 0.0;
    for (const auto& z : v) before += pow_int(std::norm(z), p);
    const CVector w = matvec(u, v);
    double after = 0.0;
    for (const auto& z : w) after += pow_int(std::norm(z), p);
    worst = std::max(worst, std::abs(after - before) / std::max(1.0, before));
  }
  return worst;
}

inline double preservation_residual(int p, const BasisChange& u,
                                    const std::vector<Representation>& vectors) {
  std::vector<CVector> coords;
  coords.reserve(vectors.size());
  for (const auto& rep : vectors) coords.push_back(rep_coordinates(rep));
  return preservation_residual(p, u.entries, coords);
}

// Unit probe vectors: the basis axes, all real and phased two-axis mixes,
// then seeded random directions. The structured prefix pins down diagonal
// action and every pairwise cross term.
inline std::vector<CVector> probe_vectors(int dim, int count, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (count < 1) throw std::invalid_argument("sample_vectors must be >= 1");
  std::vector<CVector> probes;
  auto axis = [dim](int k) {
    CVector v(dim, 0.0);
    v[k] = 1.0;
    return v;
  };
  for (int k = 0; k < dim && static_cast<int>(probes.size()) < count; ++k)
    probes.push_back(axis(k));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      if (static_cast<int>(probes.size()) + 2 > count) break;
      CVector real_mix(dim, 0.0), phased_mix(dim, 0.0);
      real_mix[i] = inv_sqrt2;
      real_mix[j] = inv_sqrt2;
      phased_mix[i] = inv_sqrt2;
      phased_mix[j] = Complex(0.0, inv_sqrt2);
      probes.push_back(std::move(real_mix));
      probes.push_back(std::move(phased_mix));
    }
  SplitMix64 rng(seed);
  while (static_cast<int>(probes.size()) < count) {
    CVector v(dim);
    double norm2 = 0.0;
    for (auto& z : v) {
      z = rng.next_complex_gaussian();
      norm2 += std::norm(z);
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= inv;
    probes.push_back(std::move(v));
  }
  return probes;
}

// Mixing level: the largest, over rows of the row-normalized matrix, of the
// row's second-largest entry magnitude. A generalized permutation scores ~0;
// the floor demands at least one row with two entries of magnitude >= delta.
inline double mixing_level(const CMatrix& m) {
  const CMatrix r = row_normalized(m);
  double level = 0.0;
  for (int i = 0; i < r.dim(); ++i) {
    double top = 0.0, second = 0.0;
    for (int j = 0; j < r.dim(); ++j) {
      const double mag = std::abs(r(i, j));
      if (mag > top) {
        second = top;
        top = mag;
      } else if (mag > second) {
        second = mag;
      }
    }
    level = std::max(level, second);
  }
  return level;
}

inline bool search_feasible(const CMatrix& m, double floor) {
  return mixing_level(m) >= floor && is_invertible(m);
}

namespace detail {

// A unit row can hold two entries of magnitude at most 1/sqrt(2).
inline void check_floor_feasible(double floor) {
  if (floor >= 1.0 / std::numbers::sqrt2)
    throw std::invalid_argument("nontriviality floor too high");
}

inline CMatrix random_start(int dim, double floor, SplitMix64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = rng.next_complex_gaussian();
    if (search_feasible(m, floor)) return m;
  }
  // Deterministic fallback: identity with one mixing 2x2 rotation block.
  CMatrix m = CMatrix::identity(dim);
  const double c = std::cos(0.25 * std::numbers::pi);
  m(0, 0) = c;
  m(0, 1) = c;
  m(1, 0) = -c;
  m(1, 1) = c;
  return m;
}

}  // namespace detail

// Multi-restart derivative-free descent of the preservation residual over
// the floor-constrained matrices. Each sweep perturbs every entry along the
// four complex axis directions and greedily accepts improvements; proposals
// leaving the feasible set are rejected outright, and the step halves after
// every 50 consecutive rejected probes. Deterministic given
// (rng_seed, p, dim): restart seeds are split from the config seed, and the
// restart loop stops early once a residual <= 1e-12 is in hand.
inline SweepResult preserver_search(int p, int dim, const SearchConfig& cfg) {
  cfg.validate();
  if (p < 1) throw std::invalid_argument("exponent must be positive");
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  detail::check_floor_feasible(cfg.nontriviality_floor);
  const double floor = cfg.nontriviality_floor;

  const auto probes = probe_vectors(dim, cfg.sample_vectors,
                                    derive_stream(cfg.rng_seed, stream::kProbeVectors));
  auto objective = [&](const CMatrix& m) { return preservation_residual(p, m, probes); };

  constexpr double kInitialStep = 0.3;
  constexpr double kMinStep = 1e-13;
  constexpr int kRejectsPerDecay = 50;
  constexpr double kEarlyStopResidual = 1e-12;

  double best_value = std::numeric_limits<double>::infinity();
  CMatrix best_matrix;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    SplitMix64 rng(derive_stream(cfg.rng_seed, stream::kRestartBase + restart));
    CMatrix current = detail::random_start(dim, floor, rng);
    double value = objective(current);
    double step = kInitialStep;
    int rejects = 0;

    for (int sweep = 0; sweep < cfg.descent_steps && step >= kMinStep; ++sweep) {
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          static constexpr Complex kDirections[4] = {
              {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
          for (const Complex& dir : kDirections) {
            CMatrix candidate = current;
            candidate(i, j) += step * dir;
            bool accepted = false;
            if (search_feasible(candidate, floor)) {
              const double candidate_value = objective(candidate);
              if (candidate_value < value) {
                current = std::move(candidate);
                value = candidate_value;
                accepted = true;
              }
            }
            if (accepted) {
              rejects = 0;
            } else if (++rejects >= kRejectsPerDecay) {
              step *= 0.5;
              rejects = 0;
              if (step < kMinStep) break;
            }
          }
          if (step < kMinStep) break;
        }
        if (step < kMinStep) break;
      }
    }

    if (value < best_value) {
      best_value = value;
      best_matrix = current;
    }
    if (best_value <= kEarlyStopResidual) break;
  }

  SweepResult result;
  result.p = p;
  result.dim = dim;
  result.best_residual = best_value;
  result.best_matrix = make_basis_change(best_matrix, floor);
  result.verdict = (best_value <= kPreserverPassTol &&
                    result.best_matrix.triviality == Triviality::nontrivial)
                       ? SearchVerdict::preserver_found
                       : SearchVerdict::no_preserver;
  if (p >= 2 && dim == 2)
    result.cross_term_certificate =
        cross_term_coefficient_fp(p, row_normalized(best_matrix));
  return result;
}

inline std::vector<SweepResult> exponent_sweep(const std::vector<int>& p_list, int dim,
                                               const SearchConfig& cfg) {
  if (p_list.empty()) throw std::invalid_argument("empty exponent list");
  std::vector<SweepResult> results;
  results.reserve(p_list.size());
  for (int p : p_list) results.push_back(preserver_search(p, dim, cfg));
  return results;
}

inline std::vector<int> admissible_set(const std::vector<SweepResult>& results) {
  std::vector<int> admissible;
  for (const auto& r : results)
    if (r.verdict == SearchVerdict::preserver_found) admissible.push_back(r.p);
  std::sort(admissible.begin(), admissible.end());
  return admissible;
}

// True when U preserves the squared-modulus sum on random unit vectors and
// the paired base-vector change (transpose(U))^(-1) composed back with U is
// the identity, i.e. coordinates and base vectors transform consistently.
inline bool unitarity_witness(const BasisChange& u, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!is_invertible(u.entries)) throw std::invalid_argument("not a basis change");
  SplitMix64 rng(derive_stream(seed, stream::kWitness));
  std::vector<CVector> vectors;
  vectors.reserve(static_cast<size_t>(trials));
  while (static_cast<int>(vectors.size()) < trials) {
    CVector v(u.dim);
    double norm2 = 0.0;
    for (auto& z : v) {
      z = rng.next_complex_gaussian();
      norm2 += std::norm(z);
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= inv;
    vectors.push_back(std::move(v));
  }
  if (preservation_residual(1, u.entries, vectors) > kUnitaryResidualTol) return false;

  const CMatrix base_change = inverse(transpose(u.entries));
  const CMatrix composed = matmul(u.entries, transpose(base_change));
  double defect = 0.0;
  for (int i = 0; i < u.dim; ++i)
    for (int j = 0; j < u.dim; ++j) {
      const Complex target = (i == j) ? Complex(1.0) : Complex(0.0);
      defect = std::max(defect, std::abs(composed(i, j) - target));
    }
  return defect <= kUnitaryResidualTol;
}

}  // namespace statlen
