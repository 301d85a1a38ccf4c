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
// Sweeps the exponents p = 1..3 in dimension 2: only p = 1 admits a
// nontrivial preserver of sum |a_k|^(2p), and the matrix found is unitary.

#include <cstdio>

#include "statlen/search.hpp"

int main() {
  using namespace statlen;
  SearchConfig cfg;
  cfg.restarts = 20;
  cfg.rng_seed = 7;

  for (const SweepResult& result : exponent_sweep({1, 2, 3}, 2, cfg)) {
    std::printf("p = %d: %s (best residual %.3e)\n", result.p,
                to_string(result.verdict), result.best_residual);
    if (result.verdict == SearchVerdict::preserver_found)
      std::printf("        unitarity defect of the preserver: %.3e\n",
                  unitarity_defect(result.best_matrix.entries));
    if (result.cross_term_certificate)
      std::printf("        cross-term certificate: %.3e\n",
                  *result.cross_term_certificate);
  }
  return 0;
}
