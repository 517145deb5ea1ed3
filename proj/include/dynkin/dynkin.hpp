// Copyright 2026 The Dynkin Authors
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


// Umbrella header.

#ifndef DYNKIN_DYNKIN_HPP
#define DYNKIN_DYNKIN_HPP

#include "dynkin/chains.hpp"
#include "dynkin/core.hpp"
#include "dynkin/counterexamples.hpp"
#include "dynkin/error.hpp"
#include "dynkin/io.hpp"
#include "dynkin/jumps.hpp"
#include "dynkin/lp.hpp"
#include "dynkin/mollifier.hpp"
#include "dynkin/monte_carlo.hpp"
#include "dynkin/payoff.hpp"
#include "dynkin/random_horizon.hpp"
#include "dynkin/rational.hpp"
#include "dynkin/reproduce.hpp"
#include "dynkin/scenario.hpp"
#include "dynkin/solver.hpp"

#endif  // DYNKIN_DYNKIN_HPP
