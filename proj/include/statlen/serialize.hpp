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
// Wire formats. JSON schemas:
//   Representation   {"basis": s, "entries": [{"label": s, "re": x, "im": x}]}
//   Functional       {"K": n, "gamma": {"<p>": x, ...}}
//   ResidualReport   {"axiom": s, "max_residual": x, "verdict": "pass"|"fail",
//                     "seed": n, "witness": {...}, "tag": s}
//   SweepResult      {"p": n, "dim": n, "best_residual": x, "verdict": s,
//                     "matrix": [[{"re","im"},...],...],
//                     "certificate": {"cross_term": x|null}}
// Click ensembles go to CSV (header "label,count") with a JSON sidecar
// {"n": n, "seed": n, "basis": s}.

#pragma once

#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "statlen/amplitude.hpp"
#include "statlen/axioms.hpp"
#include "statlen/basis_change.hpp"
#include "statlen/cross_term.hpp"
#include "statlen/functional.hpp"
#include "statlen/search.hpp"
#include "statlen/simulate.hpp"

namespace statlen {

using json = nlohmann::json;

inline json to_json(const Amplitude& a) { return {{"re", a.re()}, {"im", a.im()}}; }

inline Amplitude amplitude_from_json(const json& j) {
  return Amplitude(j.at("re").get<double>(), j.at("im").get<double>());
}

inline json to_json(const Representation& rep) {
  json entries = json::array();
  for (const auto& [label, amp] : rep.entries())
    entries.push_back({{"label", label}, {"re", amp.re()}, {"im", amp.im()}});
  return {{"basis", rep.basis_id()}, {"entries", entries}};
}

inline Representation representation_from_json(const json& j) {
  std::vector<Representation::Entry> entries;
  for (const auto& e : j.at("entries"))
    entries.emplace_back(e.at("label").get<std::string>(),
                         Amplitude(e.at("re").get<double>(), e.at("im").get<double>()));
  return Representation(j.at("basis").get<std::string>(), std::move(entries));
}

inline json to_json(const SymmetricFunctional& f) {
  json gamma = json::object();
  for (const auto& [p, coeff] : f.gammas()) gamma[std::to_string(p)] = coeff;
  return {{"K", f.degree()}, {"gamma", gamma}};
}

inline SymmetricFunctional functional_from_json(const json& j) {
  std::map<int, double> gammas;
  for (const auto& [key, value] : j.at("gamma").items())
    gammas[std::stoi(key)] = value.get<double>();
  return SymmetricFunctional(j.at("K").get<int>(), std::move(gammas));
}

inline json to_json(const ResidualReport& report) {
  return {{"axiom", axiom_name(report.axiom)},
          {"max_residual", report.max_residual},
          {"verdict", report.verdict()},
          {"seed", report.seed},
          {"witness", report.worst_witness},
          {"tag", report.tag}};
}

inline json to_json(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j)
      row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
    rows.push_back(row);
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
  const int dim = static_cast<int>(j.size());
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = j.at(i);
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("matrix must be square");
    for (int col = 0; col < dim; ++col)
      m(i, col) = Complex(row.at(col).at("re").get<double>(),
                          row.at(col).at("im").get<double>());
  }
  return m;
}

inline GaussMatrix2 gauss_matrix_from_json(const json& j) {
  const CMatrix m = matrix_from_json(j);
  if (m.dim() != 2) throw std::invalid_argument("cross term defined for dim 2");
  auto as_gauss = [](const Complex& z) {
    const double re = z.real(), im = z.imag();
    if (re != std::floor(re) || im != std::floor(im))
      throw std::invalid_argument("matrix entries must be integers");
    return GaussInt{static_cast<long long>(re), static_cast<long long>(im)};
  };
  return {as_gauss(m(0, 0)), as_gauss(m(0, 1)), as_gauss(m(1, 0)), as_gauss(m(1, 1))};
}

inline json to_json(const SweepResult& result) {
  json certificate;
  certificate["cross_term"] =
      result.cross_term_certificate ? json(*result.cross_term_certificate) : json(nullptr);
  return {{"p", result.p},
          {"dim", result.dim},
          {"best_residual", result.best_residual},
          {"verdict", to_string(result.verdict)},
          {"matrix", to_json(result.best_matrix.entries)},
          {"triviality", to_string(result.best_matrix.triviality)},
          {"certificate", certificate}};
}

inline void write_ensemble_csv(std::ostream& out, const ClickEnsemble& ensemble) {
  out << "label,count\n";
  for (const auto& [label, count] : ensemble.counts) out << label << "," << count << "\n";
}

inline json ensemble_sidecar(const ClickEnsemble& ensemble) {
  return {{"n", ensemble.n_total}, {"seed", ensemble.seed}, {"basis", ensemble.basis_id}};
}

inline ClickEnsemble read_ensemble_csv(std::istream& in, const json& sidecar) {
  ClickEnsemble ensemble;
  ensemble.n_total = sidecar.at("n").get<long long>();
  ensemble.seed = sidecar.at("seed").get<std::uint64_t>();
  ensemble.basis_id = sidecar.at("basis").get<std::string>();
  std::string line;
  if (!std::getline(in, line) || line != "label,count")
    throw std::invalid_argument("missing ensemble header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed ensemble row");
    ensemble.counts.emplace_back(line.substr(0, comma),
                                 std::stoll(line.substr(comma + 1)));
  }
  return ensemble;
}

}  // namespace statlen
