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
// Expected vs estimated outcome frequencies for a two-outcome representation,
// at a few ensemble sizes.

#include <cstdio>

#include "statlen/simulate.hpp"

int main() {
  using namespace statlen;
  const Representation rep("demo", {{"up", Amplitude(1.0)}, {"down", Amplitude(0.0, 2.0)}});
  const auto nu = born_frequencies(rep);
  std::printf("expected frequencies: %.4f %.4f\n", nu[0], nu[1]);

  for (long long n : {100LL, 10000LL, 1000000LL}) {
    const auto nu_hat = estimate_frequencies(simulate_clicks(rep, n, 42));
    std::printf("n = %8lld  estimated: %.4f %.4f\n", n, nu_hat[0], nu_hat[1]);
  }
  return 0;
}
