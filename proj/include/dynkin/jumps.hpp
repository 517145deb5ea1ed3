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

// Jump-direction condition: f = f~ + f^ and g = g~ + g^ with pure-jump parts
// f^, g^ that vanish at 0 and do not jump at T. The existence theory covers
// instances where f^ is non-increasing or g^ is non-decreasing.

#ifndef DYNKIN_JUMPS_HPP
#define DYNKIN_JUMPS_HPP

#include <string>
#include <vector>

#include "dynkin/core.hpp"

namespace dynkin {

enum class JumpProcess { kF, kG };

/// A jump of `magnitude` at index k on master atom `atom` (an atom at k).
struct JumpEvent {
  JumpProcess process = JumpProcess::kF;
  int k = 0;
  int atom = 0;
  Rational magnitude;
};

struct JumpDecomposition {
  ProcessTable f_regular;
  ProcessTable f_jump;
  ProcessTable g_regular;
  ProcessTable g_jump;
  std::vector<JumpEvent> events;  // optional; checked against the jump tables when present
};

enum class JumpBranch { kBoth, kFNonIncreasing, kGNonDecreasing, kNeither };

inline const char* to_string(JumpBranch b) {
  switch (b) {
    case JumpBranch::kBoth: return "both";
    case JumpBranch::kFNonIncreasing: return "f_jump_non_increasing";
    case JumpBranch::kGNonDecreasing: return "g_jump_non_decreasing";
    case JumpBranch::kNeither: return "neither";
  }
  return "";
}

struct JumpReport {
  bool boundary_ok = false;   // jump parts vanish at 0 and are flat from K - 1 to K
  bool events_ok = true;      // listed events rebuild the jump tables
  bool f_jump_non_increasing = false;
  bool g_jump_non_decreasing = false;
  JumpBranch branch = JumpBranch::kNeither;
  bool within_hypotheses = false;  // boundary_ok and some branch holds
  std::vector<std::string> notes;
};

namespace detail {

inline bool monotone(const ProcessTable& t, bool increasing) {
  for (const auto& row : t.rows()) {
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (increasing ? row[k] < row[k - 1] : row[k] > row[k - 1]) return false;
    }
  }
  return true;
}

inline ProcessTable rebuild_jumps(const GameInstance& inst, const std::vector<JumpEvent>& events, JumpProcess which) {
  auto t = ProcessTable::filled(inst.num_paths(), inst.grid().size(), Rational(0));
  for (const auto& e : events) {
    if (e.process != which) continue;
    if (e.k < 0 || e.k > inst.terminal() || e.atom < 0 || e.atom >= inst.master().at(e.k).num_atoms()) {
      throw DynkinError(ErrorCode::kInvalid, "jump event outside the master filtration");
    }
    for (int w : inst.master().at(e.k).atom(e.atom)) {
      for (int k = e.k; k <= inst.terminal(); ++k) t(w, k) += e.magnitude;
    }
  }
  return t;
}

}  // namespace detail

inline JumpReport validate_A2prime(const GameInstance& inst, const JumpDecomposition& d) {
  const int n = inst.num_paths();
  const int times = inst.grid().size();
  for (const auto* t : {&d.f_regular, &d.f_jump, &d.g_regular, &d.g_jump}) {
    if (t->num_paths() != n || t->num_times() != times) {
      throw DynkinError(ErrorCode::kInvalid, "decomposition table shape differs from the instance");
    }
  }
  for (int w = 0; w < n; ++w) {
    for (int k = 0; k < times; ++k) {
      if (d.f_regular(w, k) + d.f_jump(w, k) != inst.f()(w, k) ||
          d.g_regular(w, k) + d.g_jump(w, k) != inst.g()(w, k)) {
        throw DynkinError(ErrorCode::kValidation, "decomposition does not sum to the payoff at path " +
                                                      std::to_string(w) + ", index " + std::to_string(k));
      }
    }
  }

  JumpReport r;
  const int K = inst.terminal();
  r.boundary_ok = true;
  for (int w = 0; w < n; ++w) {
    if (d.f_jump(w, 0) != 0 || d.g_jump(w, 0) != 0) r.boundary_ok = false;
    if (d.f_jump(w, K) != d.f_jump(w, K - 1) || d.g_jump(w, K) != d.g_jump(w, K - 1)) r.boundary_ok = false;
  }
  if (!r.boundary_ok) r.notes.push_back("jump parts must vanish at 0 and must not jump at T");

  if (!d.events.empty()) {
    r.events_ok = detail::rebuild_jumps(inst, d.events, JumpProcess::kF) == d.f_jump &&
                  detail::rebuild_jumps(inst, d.events, JumpProcess::kG) == d.g_jump;
    if (!r.events_ok) r.notes.push_back("jump events do not rebuild the jump tables");
  }

  r.f_jump_non_increasing = detail::monotone(d.f_jump, false);
  r.g_jump_non_decreasing = detail::monotone(d.g_jump, true);
  if (r.f_jump_non_increasing && r.g_jump_non_decreasing) {
    r.branch = JumpBranch::kBoth;
  } else if (r.f_jump_non_increasing) {
    r.branch = JumpBranch::kFNonIncreasing;
  } else if (r.g_jump_non_decreasing) {
    r.branch = JumpBranch::kGNonDecreasing;
  } else {
    r.branch = JumpBranch::kNeither;
    r.notes.push_back("outside existence hypotheses: f jumps up and g jumps down");
  }
  r.within_hypotheses = r.boundary_ok && r.events_ok && r.branch != JumpBranch::kNeither;
  return r;
}

/// Decomposition with zero jump parts.
inline JumpDecomposition regular_decomposition(const GameInstance& inst) {
  const auto zero = ProcessTable::filled(inst.num_paths(), inst.grid().size(), Rational(0));
  return {inst.f(), zero, inst.g(), zero, {}};
}

/// Decomposition of the jump counterexample: f^ jumps +2 and g^ jumps -1 at 1/2.
inline JumpDecomposition jump_counterexample_decomposition(const GameInstance& inst) {
  const auto half = inst.grid().index_of(rational(1, 2));
  if (!half) throw DynkinError(ErrorCode::kInvalid, "grid does not contain 1/2");
  JumpDecomposition d;
  for (int a = 0; a < inst.master().at(*half).num_atoms(); ++a) {
    d.events.push_back({JumpProcess::kF, *half, a, Rational(2)});
    d.events.push_back({JumpProcess::kG, *half, a, Rational(-1)});
  }
  d.f_jump = detail::rebuild_jumps(inst, d.events, JumpProcess::kF);
  d.g_jump = detail::rebuild_jumps(inst, d.events, JumpProcess::kG);
  auto fr = inst.f();
  auto gr = inst.g();
  for (int w = 0; w < inst.num_paths(); ++w) {
    for (int k = 0; k <= inst.terminal(); ++k) {
      fr(w, k) -= d.f_jump(w, k);
      gr(w, k) -= d.g_jump(w, k);
    }
  }
  d.f_regular = std::move(fr);
  d.g_regular = std::move(gr);
  return d;
}

}  // namespace dynkin

#endif  // DYNKIN_JUMPS_HPP
