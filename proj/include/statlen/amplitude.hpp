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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace statlen {

// Kahan compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

// A complex coefficient. Both components must be finite; the constructor is
// the single gate, every operation can then rely on it.
class Amplitude {
 public:
  Amplitude() = default;
  Amplitude(double re, double im = 0.0) : re_(re), im_(im) {
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::invalid_argument("non-finite amplitude");
  }
  static Amplitude from_complex(std::complex<double> z) {
    return Amplitude(z.real(), z.imag());
  }

  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> to_complex() const { return {re_, im_}; }
  double abs2() const { return re_ * re_ + im_ * im_; }
  double abs() const { return std::hypot(re_, im_); }

  friend bool operator==(const Amplitude& a, const Amplitude& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

inline Amplitude operator*(const Amplitude& a, const Amplitude& b) {
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

// Conjugation: (n + i m) -> (n - i m).
inline Amplitude star(const Amplitude& a) { return {a.re(), -a.im()}; }

// Component swap: (n + i m) -> (m + i n). Algebraically equal to i * star(a);
// both maps are involutions.
inline Amplitude tilde(const Amplitude& a) { return {a.im(), a.re()}; }

struct Polar {
  double rho;    // modulus, >= 0
  double kappa;  // phase in (-pi, pi]; fixed to 0 when rho == 0
};

inline Polar to_polar(const Amplitude& a) {
  const double rho = a.abs();
  if (rho == 0.0) return {0.0, 0.0};
  double kappa = std::atan2(a.im(), a.re());
  if (kappa == -std::numbers::pi) kappa = std::numbers::pi;  // -0.0 on the negative real axis
  return {rho, kappa};
}

inline Amplitude from_polar(double rho, double kappa) {
  if (!std::isfinite(rho) || !std::isfinite(kappa))
    throw std::invalid_argument("non-finite polar form");
  if (rho < 0.0) throw std::invalid_argument("negative modulus");
  return {rho * std::cos(kappa), rho * std::sin(kappa)};
}

// An ordered expansion of a state over the distinguishable outcomes of one
// instrument: (outcome label, coefficient) pairs. Labels are opaque and must
// be unique; label inequality is what distinguishability means here.
class Representation {
 public:
  using Entry = std::pair<std::string, Amplitude>;

  Representation(std::string basis_id, std::vector<Entry> entries)
      : basis_id_(std::move(basis_id)), entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("empty representation");
    std::unordered_set<std::string> seen;
    for (const auto& [label, amp] : entries_)
      if (!seen.insert(label).second)
        throw std::invalid_argument("duplicate outcome label: " + label);
  }

  const std::string& basis_id() const { return basis_id_; }
  const std::vector<Entry>& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.size()); }
  const std::string& label(int k) const { return entries_[k].first; }
  const Amplitude& amplitude(int k) const { return entries_[k].second; }

 private:
  std::string basis_id_;
  std::vector<Entry> entries_;
};

inline Representation scale(const Representation& rep, const Amplitude& c) {
  std::vector<Representation::Entry> entries;
  entries.reserve(rep.entries().size());
  for (const auto& [label, amp] : rep.entries()) entries.emplace_back(label, c * amp);
  return Representation(rep.basis_id(), std::move(entries));
}

// nu_k = |a_k|^2 / sum_j |a_j|^2. The denominator is accumulated with
// compensation so the sum-to-one invariant holds at 1e-12 up to dim 1024.
inline std::vector<double> born_frequencies(const Representation& rep) {
  KahanSum denom;
  std::vector<double> q;
  q.reserve(rep.entries().size());
  for (const auto& [label, amp] : rep.entries()) {
    q.push_back(amp.abs2());
    denom.add(q.back());
  }
  const double total = denom.value();
  if (total == 0.0) throw std::domain_error("degenerate representation");
  for (double& v : q) v /= total;
  return q;
}

}  // namespace statlen
