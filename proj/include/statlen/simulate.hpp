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
// Finite click ensembles drawn from a representation. The squared-modulus
// frequencies are the generative model here, so these runs demonstrate
// estimator convergence and device-independence of total rates; they are not
// an independent confirmation of the frequency rule itself.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "statlen/amplitude.hpp"
#include "statlen/basis_change.hpp"
#include "statlen/rng.hpp"
#include "statlen/search.hpp"

namespace statlen {

struct SimulationConfig {
  long long n_events = 1;
  int trials = 1;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (n_events < 1) throw std::invalid_argument("n_events must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  }
};

struct ClickEnsemble {
  std::string basis_id;
  std::vector<std::pair<std::string, long long>> counts;  // representation order
  long long n_total = 0;
  std::uint64_t seed = 0;
};

// nu_k = length_k / sum_j length_j; the infinite ensemble factors cancel in
// the ratio by definition.
inline std::vector<double> frequencies_from_lengths(const std::vector<double>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("empty length list");
  KahanSum total;
  for (double l : lengths) {
    if (!std::isfinite(l) || l < 0.0)
      throw std::invalid_argument("lengths must be finite and nonnegative");
    total.add(l);
  }
  if (total.value() == 0.0) throw std::domain_error("no events");
  std::vector<double> nu;
  nu.reserve(lengths.size());
  for (double l : lengths) nu.push_back(l / total.value());
  return nu;
}

// Inverse-CDF lookup with the fixed tie-break: the first interval wins at a
// boundary (u exactly equal to a cumulative edge selects the earlier
// outcome). The final edge is pinned to 1 so no draw can fall past the end.
inline size_t pick_interval(const std::vector<double>& cumulative, double u) {
  for (size_t k = 0; k + 1 < cumulative.size(); ++k)
    if (u <= cumulative[k]) return k;
  return cumulative.size() - 1;
}

inline std::vector<double> cumulative_frequencies(const std::vector<double>& nu) {
  std::vector<double> cumulative(nu.size());
  double acc = 0.0;
  for (size_t k = 0; k < nu.size(); ++k) {
    acc += nu[k];
    cumulative[k] = acc;
  }
  cumulative.back() = 1.0;
  return cumulative;
}

// n independent categorical draws with the squared-modulus frequencies.
// Frequencies are computed once per run; no per-event renormalization.
inline ClickEnsemble simulate_clicks(const Representation& rep, long long n,
                                     std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n_events must be >= 1");
  const std::vector<double> nu = born_frequencies(rep);  // throws on degenerate rep
  const std::vector<double> cumulative = cumulative_frequencies(nu);

  std::vector<long long> counts(nu.size(), 0);
  SplitMix64 rng(derive_stream(seed, stream::kClicks));
  for (long long event = 0; event < n; ++event)
    ++counts[pick_interval(cumulative, rng.next_double())];

  ClickEnsemble ensemble;
  ensemble.basis_id = rep.basis_id();
  ensemble.n_total = n;
  ensemble.seed = seed;
  ensemble.counts.reserve(counts.size());
  for (size_t k = 0; k < counts.size(); ++k)
    ensemble.counts.emplace_back(rep.label(static_cast<int>(k)), counts[k]);
  return ensemble;
}

inline std::vector<double> estimate_frequencies(const ClickEnsemble& ensemble) {
  if (ensemble.n_total < 1) throw std::invalid_argument("empty ensemble");
  std::vector<double> nu_hat;
  nu_hat.reserve(ensemble.counts.size());
  for (const auto& [label, count] : ensemble.counts)
    nu_hat.push_back(static_cast<double>(count) / static_cast<double>(ensemble.n_total));
  return nu_hat;
}

// Mean over trials of max_k |nu_hat_k - nu_k| at each ensemble size. On a
// nondeterministic channel the curve decays like n^(-1/2).
inline std::vector<std::pair<long long, double>> convergence_curve(
    const Representation& rep, const std::vector<long long>& n_list, int trials,
    std::uint64_t seed) {
  if (n_list.empty()) throw std::invalid_argument("empty size list");
  for (size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1])
      throw std::invalid_argument("ensemble sizes must be increasing");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  const std::vector<double> nu = born_frequencies(rep);
  const std::uint64_t curve_root = derive_stream(seed, stream::kCurve);
  std::vector<std::pair<long long, double>> curve;
  curve.reserve(n_list.size());
  for (size_t idx = 0; idx < n_list.size(); ++idx) {
    const std::uint64_t size_stream = derive_stream(curve_root, idx);
    double total_error = 0.0;
    for (int t = 0; t < trials; ++t) {
      const ClickEnsemble ensemble =
          simulate_clicks(rep, n_list[idx], derive_stream(size_stream, t));
      const std::vector<double> nu_hat = estimate_frequencies(ensemble);
      double worst = 0.0;
      for (size_t k = 0; k < nu.size(); ++k)
        worst = std::max(worst, std::abs(nu_hat[k] - nu[k]));
      total_error += worst;
    }
    curve.emplace_back(n_list[idx], total_error / trials);
  }
  return curve;
}

// Least-squares slope of log(error) against log(n); empty when any error is
// zero (deterministic channel) or fewer than two points remain.
inline std::optional<double> loglog_slope(
    const std::vector<std::pair<long long, double>>& curve) {
  std::vector<std::pair<double, double>> points;
  for (const auto& [n, err] : curve) {
    if (err <= 0.0) return std::nullopt;
    points.emplace_back(std::log10(static_cast<double>(n)), std::log10(err));
  }
  if (points.size() < 2) return std::nullopt;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct TwoInstrumentRun {
  ClickEnsemble instrument_a;
  ClickEnsemble instrument_b;
  double length_gap = 0.0;
};

// Simulates the same preparation at two instruments related by a unitary
// change and reports the gap between the total squared-modulus lengths,
// which unitarity keeps at rounding level.
inline TwoInstrumentRun two_instrument_run(const Representation& rep,
                                           const BasisChange& u, long long n,
                                           std::uint64_t seed) {
  if (u.dim != rep.dim()) throw std::invalid_argument("dimension mismatch");
  const int trials = std::max(8, 2 * u.dim * u.dim);
  if (!unitarity_witness(u, trials, derive_stream(seed, stream::kWitness)))
    throw std::invalid_argument("instruments related by non-unitary change");

  const Representation rep_b = apply(u.entries, rep);
  KahanSum before, after;
  for (const auto& [label, amp] : rep.entries()) before.add(amp.abs2());
  for (const auto& [label, amp] : rep_b.entries()) after.add(amp.abs2());

  TwoInstrumentRun run;
  run.length_gap = std::abs(before.value() - after.value());
  run.instrument_a = simulate_clicks(rep, n, derive_stream(seed, stream::kInstrumentA));
  run.instrument_b = simulate_clicks(rep_b, n, derive_stream(seed, stream::kInstrumentB));
  return run;
}

}  // namespace statlen
