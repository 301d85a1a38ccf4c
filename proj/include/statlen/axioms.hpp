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
// Each statistical-length axiom becomes a numeric residual over seeded
// samples with a pass/fail verdict. Residual checks accept raw callables, so
// hostile probes (non-additive or involution-breaking functionals) can be
// injected to confirm the checks actually discriminate.
//
// Sample sets always start with fixed canonical probes (axis points, phase
// representatives, all-ones representations) ahead of the seeded Gaussian
// draws, so the worked witnesses are deterministic lower bounds of every
// reported maximum.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "statlen/amplitude.hpp"
#include "statlen/basis_change.hpp"
#include "statlen/functional.hpp"
#include "statlen/rng.hpp"

namespace statlen {

enum class Axiom { additivity, scalability, involution, device_independence, cauchy };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::additivity: return "additivity";
    case Axiom::scalability: return "scalability";
    case Axiom::involution: return "involution";
    case Axiom::device_independence: return "device_independence";
    case Axiom::cauchy: return "cauchy";
  }
  return "unknown";
}

struct AxiomConfig {
  double tol_pass = 1e-9;
  int sample_count = 256;
  std::uint64_t rng_seed = 0;
  double amplitude_scale = 1.0;  // samples drawn with |a| <= amplitude_scale

  void validate() const {
    if (tol_pass <= 0.0) throw std::invalid_argument("tol_pass must be positive");
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    if (amplitude_scale <= 0.0)
      throw std::invalid_argument("amplitude_scale must be positive");
  }
};

struct ResidualReport {
  Axiom axiom = Axiom::additivity;
  double max_residual = 0.0;
  nlohmann::json worst_witness;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string tag;  // stable identifier of the derivation step this check exercises

  const char* verdict() const { return pass ? "pass" : "fail"; }
};

using AmplitudeFn = std::function<double(const Amplitude&)>;
using RepresentationFn = std::function<double(const Representation&)>;

inline AmplitudeFn as_amplitude_fn(const SymmetricFunctional& f) {
  return [f](const Amplitude& a) { return evaluate(f, a); };
}

inline RepresentationFn as_representation_fn(const SymmetricFunctional& f) {
  return [f](const Representation& rep) { return evaluate_rep(f, rep); };
}

namespace detail {

inline nlohmann::json amplitude_json(const Amplitude& a) {
  return {{"re", a.re()}, {"im", a.im()}};
}

// Complex Gaussian clipped back to |a| <= scale.
inline Amplitude clipped_gaussian(SplitMix64& rng, double scale) {
  Complex z = rng.next_complex_gaussian() * (scale / std::numbers::sqrt2);
  const double mag = std::abs(z);
  if (mag > scale) z *= scale / mag;
  return Amplitude::from_complex(z);
}

inline std::vector<Amplitude> sample_amplitudes(const AxiomConfig& cfg,
                                                std::uint64_t stream_tag) {
  const double s = cfg.amplitude_scale;
  std::vector<Amplitude> samples = {
      Amplitude(s, 0.0),          Amplitude(0.0, s),
      Amplitude(-s, 0.0),         Amplitude(s / std::numbers::sqrt2, s / std::numbers::sqrt2),
      Amplitude(0.8 * s, -0.6 * s)};
  SplitMix64 rng(derive_stream(cfg.rng_seed, stream_tag));
  while (static_cast<int>(samples.size()) < cfg.sample_count)
    samples.push_back(clipped_gaussian(rng, s));
  samples.resize(static_cast<size_t>(std::max<int>(cfg.sample_count, 5)));
  return samples;
}

// Unit-norm sample representations of the given dimension: the basis axes,
// the uniform mix, then random directions.
inline std::vector<Representation> sample_unit_representations(
    const AxiomConfig& cfg, int dim, std::uint64_t stream_tag) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  SplitMix64 rng(derive_stream(cfg.rng_seed, stream_tag));
  std::vector<Representation> reps;
  auto push = [&reps, dim](const CVector& v) {
    std::vector<Representation::Entry> entries;
    entries.reserve(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k)
      entries.emplace_back("o" + std::to_string(k), Amplitude::from_complex(v[k]));
    reps.emplace_back("sample", std::move(entries));
  };
  for (int k = 0; k < dim; ++k) {
    CVector axis(dim, 0.0);
    axis[k] = 1.0;
    push(axis);
  }
  CVector uniform(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  push(uniform);
  while (static_cast<int>(reps.size()) < cfg.sample_count) {
    CVector v(dim);
    double norm2 = 0.0;
    for (auto& z : v) {
      z = rng.next_complex_gaussian();
      norm2 += std::norm(z);
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= inv;
    push(v);
  }
  return reps;
}

}  // namespace detail

// Residual of the scalability identity for one factor c: a single const(c)
// serves every amplitude exactly when F(c a) F(a') == F(a) F(c a') for all
// pairs, so the residual is the worst symmetrized mismatch
//   |F(ca) F(a') - F(a) F(ca')| / (|F(ca) F(a')| + |F(a) F(ca')|)
// over sampled pairs with F(a) F(a') != 0. The implied const(c) is reported
// as the median of F(c a)/F(a), not assumed from theory.
inline ResidualReport scaling_residual(const AmplitudeFn& f, const Amplitude& c,
                                       const AxiomConfig& cfg) {
  cfg.validate();
  if (c.abs2() == 0.0)
    throw std::invalid_argument("scaling by zero is uninformative");
  const auto samples = detail::sample_amplitudes(cfg, stream::kAxiomSamples);

  std::vector<double> f_a(samples.size()), f_ca(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    f_a[i] = f(samples[i]);
    f_ca[i] = f(c * samples[i]);
  }

  ResidualReport report;
  report.axiom = Axiom::scalability;
  report.seed = cfg.rng_seed;
  report.tag = "eq:scale";
  for (size_t i = 0; i < samples.size(); ++i) {
    if (f_a[i] == 0.0) continue;
    for (size_t j = i + 1; j < samples.size(); ++j) {
      if (f_a[j] == 0.0) continue;
      const double lhs = f_ca[i] * f_a[j];
      const double rhs = f_a[i] * f_ca[j];
      const double denom = std::abs(lhs) + std::abs(rhs);
      const double r = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
      if (r > report.max_residual) {
        report.max_residual = r;
        report.worst_witness = {{"a", detail::amplitude_json(samples[i])},
                                {"a_prime", detail::amplitude_json(samples[j])},
                                {"c", detail::amplitude_json(c)},
                                {"lhs", lhs},
                                {"rhs", rhs}};
      }
    }
  }

  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i)
    if (f_a[i] != 0.0) ratios.push_back(f_ca[i] / f_a[i]);
  if (!ratios.empty()) {
    const size_t mid = ratios.size() / 2;
    std::nth_element(ratios.begin(), ratios.begin() + mid, ratios.end());
    report.worst_witness["const_estimate"] = ratios[mid];
  }
  report.pass = report.max_residual <= cfg.tol_pass;
  return report;
}

inline ResidualReport scaling_residual(const SymmetricFunctional& f, const Amplitude& c,
                                       const AxiomConfig& cfg) {
  if (f.is_zero()) throw std::invalid_argument("zero functional");
  return scaling_residual(as_amplitude_fn(f), c, cfg);
}

// max over samples of |F(star a) - F(a)| + |F(tilde a) - F(a)|.
inline ResidualReport involution_residual(const AmplitudeFn& f, const AxiomConfig& cfg) {
  cfg.validate();
  const auto samples = detail::sample_amplitudes(cfg, stream::kAxiomSamples);
  ResidualReport report;
  report.axiom = Axiom::involution;
  report.seed = cfg.rng_seed;
  report.tag = "eq:ninv";
  for (const auto& a : samples) {
    const double base = f(a);
    const double r = std::abs(f(star(a)) - base) + std::abs(f(tilde(a)) - base);
    if (r > report.max_residual) {
      report.max_residual = r;
      report.worst_witness = {{"a", detail::amplitude_json(a)},
                              {"f_a", base},
                              {"f_star", f(star(a))},
                              {"f_tilde", f(tilde(a))}};
    }
  }
  report.pass = report.max_residual <= cfg.tol_pass;
  return report;
}

inline ResidualReport involution_residual(const SymmetricFunctional& f,
                                          const AxiomConfig& cfg) {
  return involution_residual(as_amplitude_fn(f), cfg);
}

// max over unit-scaled sampled representations v of
//   |sum_k F((U v)_k) - sum_k F(v_k)| / max(1, |sum_k F(v_k)|).
inline ResidualReport device_independence_residual(const AmplitudeFn& f,
                                                   const BasisChange& u,
                                                   const AxiomConfig& cfg) {
  cfg.validate();
  if (!is_invertible(u.entries)) throw std::invalid_argument("not a basis change");
  const auto reps =
      detail::sample_unit_representations(cfg, u.dim, stream::kAxiomSamples);
  auto total = [&f](const Representation& rep) {
    double acc = 0.0;
    for (const auto& [label, amp] : rep.entries()) acc += f(amp);
    return acc;
  };
  ResidualReport report;
  report.axiom = Axiom::device_independence;
  report.seed = cfg.rng_seed;
  report.tag = "eq:star";
  for (const auto& rep : reps) {
    const double before = total(rep);
    const double after = total(apply(u.entries, rep));
    const double r = std::abs(after - before) / std::max(1.0, std::abs(before));
    if (r > report.max_residual) {
      report.max_residual = r;
      nlohmann::json coords = nlohmann::json::array();
      for (const auto& [label, amp] : rep.entries())
        coords.push_back(detail::amplitude_json(amp));
      report.worst_witness = {{"rep", coords}, {"before", before}, {"after", after}};
    }
  }
  report.pass = report.max_residual <= cfg.tol_pass;
  return report;
}

inline ResidualReport device_independence_residual(const SymmetricFunctional& f,
                                                   const BasisChange& u,
                                                   const AxiomConfig& cfg) {
  return device_independence_residual(as_amplitude_fn(f), u, cfg);
}

// max over sampled representations of |F(rep) - sum_j F(single-entry rep_j)|.
// Zero for anything built from a per-entry sum; strictly positive for
// coherent probes such as |sum_j a_j|^2.
inline ResidualReport additivity_contract_check(const RepresentationFn& f,
                                                const AxiomConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(derive_stream(cfg.rng_seed, stream::kAxiomSamples));
  std::vector<Representation> reps;
  // Canonical probes: all-ones representations of small dimension.
  for (int dim : {2, 3}) {
    std::vector<Representation::Entry> entries;
    for (int k = 0; k < dim; ++k)
      entries.emplace_back("o" + std::to_string(k),
                           Amplitude(cfg.amplitude_scale, 0.0));
    reps.emplace_back("sample", std::move(entries));
  }
  const int dims[] = {1, 2, 3, 4, 8};
  int dim_index = 0;
  while (static_cast<int>(reps.size()) < cfg.sample_count) {
    const int dim = dims[dim_index++ % 5];
    std::vector<Representation::Entry> entries;
    for (int k = 0; k < dim; ++k)
      entries.emplace_back("o" + std::to_string(k),
                           detail::clipped_gaussian(rng, cfg.amplitude_scale));
    reps.emplace_back("sample", std::move(entries));
  }

  ResidualReport report;
  report.axiom = Axiom::additivity;
  report.seed = cfg.rng_seed;
  report.tag = "eq:add";
  for (const auto& rep : reps) {
    const double whole = f(rep);
    double parts = 0.0;
    for (const auto& entry : rep.entries())
      parts += f(Representation(rep.basis_id(), {entry}));
    const double r = std::abs(whole - parts);
    if (r > report.max_residual) {
      report.max_residual = r;
      nlohmann::json coords = nlohmann::json::array();
      for (const auto& [label, amp] : rep.entries())
        coords.push_back(detail::amplitude_json(amp));
      report.worst_witness = {{"rep", coords}, {"whole", whole}, {"parts", parts}};
    }
  }
  report.pass = report.max_residual <= cfg.tol_pass;
  return report;
}

inline ResidualReport additivity_contract_check(const SymmetricFunctional& f,
                                                const AxiomConfig& cfg) {
  return additivity_contract_check(as_representation_fn(f), cfg);
}

inline constexpr double kCauchyGridMax = 1.0;
inline constexpr int kCauchyGridSteps = 16;

struct CauchyCheck {
  double residual = 0.0;
  double fitted_slope = 0.0;
  bool linear = false;
};

// Finite-grid check of C(x + y) = C(x) + C(y) on [0, 2 grid_max], plus a
// least-squares slope of C through the origin. Pathological non-measurable
// solutions are out of numeric reach and not the target here; the grid
// residual separates the linear maps from every polynomial of degree >= 2.
inline CauchyCheck cauchy_linearity_check(const std::function<double(double)>& c,
                                          double grid_max = kCauchyGridMax,
                                          int grid_steps = kCauchyGridSteps,
                                          double tol = 1e-12) {
  if (grid_max <= 0.0) throw std::invalid_argument("grid_max must be positive");
  if (grid_steps < 1) throw std::invalid_argument("grid_steps must be >= 1");
  std::vector<double> xs(static_cast<size_t>(grid_steps));
  for (int i = 1; i <= grid_steps; ++i)
    xs[static_cast<size_t>(i) - 1] = grid_max * i / grid_steps;

  CauchyCheck result;
  double sxx = 0.0, sxc = 0.0;
  for (double x : xs) {
    sxx += x * x;
    sxc += x * c(x);
    for (double y : xs)
      result.residual = std::max(result.residual, std::abs(c(x + y) - c(x) - c(y)));
  }
  result.fitted_slope = sxx > 0.0 ? sxc / sxx : 0.0;
  result.linear = result.residual <= tol;
  return result;
}

inline ResidualReport cauchy_report(const std::function<double(double)>& c,
                                    double grid_max = kCauchyGridMax,
                                    int grid_steps = kCauchyGridSteps,
                                    double tol = 1e-12) {
  const CauchyCheck check = cauchy_linearity_check(c, grid_max, grid_steps, tol);
  ResidualReport report;
  report.axiom = Axiom::cauchy;
  report.max_residual = check.residual;
  report.pass = check.linear;
  report.tag = "eq:cx";
  report.worst_witness = {{"fitted_slope", check.fitted_slope},
                          {"grid_max", grid_max},
                          {"grid_steps", grid_steps}};
  return report;
}

}  // namespace statlen
