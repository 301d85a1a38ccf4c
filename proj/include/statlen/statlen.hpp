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

#include "statlen/amplitude.hpp"
#include "statlen/axioms.hpp"
#include "statlen/basis_change.hpp"
#include "statlen/cross_term.hpp"
#include "statlen/functional.hpp"
#include "statlen/manifest.hpp"
#include "statlen/rng.hpp"
#include "statlen/search.hpp"
#include "statlen/serialize.hpp"
#include "statlen/simulate.hpp"
#include "statlen/version.hpp"
