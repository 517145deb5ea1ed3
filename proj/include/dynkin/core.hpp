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

// The discrete game universe: time grids, finite path spaces, filtrations
// given as refining partitions, payoff tables, and the strategy types
// (behavioural CDF processes, pure stopping times, finite mixtures).

#ifndef DYNKIN_CORE_HPP
#define DYNKIN_CORE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dynkin/error.hpp"
#include "dynkin/rational.hpp"

namespace dynkin {

/// Player one stops with tau and minimises; player two stops with sigma and
/// maximises.
enum class Player { kOne = 1, kTwo = 2 };

inline Player opponent(Player p) { return p == Player::kOne ? Player::kTwo : Player::kOne; }
inline int player_number(Player p) { return static_cast<int>(p); }

inline Player player_from_number(int n) {
  if (n == 1) return Player::kOne;
  if (n == 2) return Player::kTwo;
  throw DynkinError(ErrorCode::kMalformed, "player id must be 1 or 2, got " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// TimeGrid

/// t_0 = 0 < t_1 < ... < t_K. Index K is the forced terminal index.
class TimeGrid {
 public:
  TimeGrid() = default;

  explicit TimeGrid(std::vector<Rational> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw DynkinError(ErrorCode::kMalformed, "time grid needs at least 2 points");
    if (times_.front() != 0) throw DynkinError(ErrorCode::kMalformed, "time grid must start at 0");
    for (std::size_t k = 1; k < times_.size(); ++k) {
      if (!(times_[k - 1] < times_[k])) {
        throw DynkinError(ErrorCode::kMalformed, "time grid must be strictly increasing");
      }
    }
  }

  /// Uniform grid k * horizon / steps, k = 0..steps.
  static TimeGrid uniform(int steps, const Rational& horizon = 1) {
    std::vector<Rational> t;
    for (int k = 0; k <= steps; ++k) t.push_back(horizon * Rational(k, steps));
    for (auto& x : t) x.canonicalize();
    return TimeGrid(std::move(t));
  }

  const std::vector<Rational>& times() const { return times_; }
  const Rational& operator[](int k) const { return times_.at(static_cast<std::size_t>(k)); }
  int terminal() const { return static_cast<int>(times_.size()) - 1; }
  int size() const { return static_cast<int>(times_.size()); }
  const Rational& horizon() const { return times_.back(); }

  Rational min_step() const {
    Rational m = times_[1] - times_[0];
    for (std::size_t k = 2; k < times_.size(); ++k) m = std::min<Rational>(m, times_[k] - times_[k - 1]);
    return m;
  }

  /// Index of t on the grid, if present.
  std::optional<int> index_of(const Rational& t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end() || *it != t) return std::nullopt;
    return static_cast<int>(it - times_.begin());
  }

  bool operator==(const TimeGrid& other) const { return times_ == other.times_; }

 private:
  std::vector<Rational> times_;
};

// ---------------------------------------------------------------------------
// Paths

using Labels = std::map<std::string, std::string>;

struct PathSpace {
  std::vector<Rational> probs;
  std::vector<Labels> labels;  // empty or one entry per path

  int size() const { return static_cast<int>(probs.size()); }
};

// ---------------------------------------------------------------------------
// Partitions and filtrations

/// A partition of {0, ..., n-1}. Atoms are stored sorted, and ordered by their
/// smallest element, so equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  Partition(std::vector<std::vector<int>> atoms, int num_paths)
      : atoms_(std::move(atoms)), atom_of_(static_cast<std::size_t>(num_paths), -1) {
    for (auto& a : atoms_) {
      if (a.empty()) throw DynkinError(ErrorCode::kMalformed, "empty atom in partition");
      std::sort(a.begin(), a.end());
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      for (int w : atoms_[i]) {
        if (w < 0 || w >= num_paths) {
          throw DynkinError(ErrorCode::kMalformed, "path index " + std::to_string(w) + " out of range");
        }
        if (atom_of_[static_cast<std::size_t>(w)] != -1) {
          throw DynkinError(ErrorCode::kMalformed, "path " + std::to_string(w) + " appears in two atoms");
        }
        atom_of_[static_cast<std::size_t>(w)] = static_cast<int>(i);
      }
    }
    for (int w = 0; w < num_paths; ++w) {
      if (atom_of_[static_cast<std::size_t>(w)] == -1) {
        throw DynkinError(ErrorCode::kMalformed, "path " + std::to_string(w) + " not covered by partition");
      }
    }
  }

  static Partition trivial(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return Partition({all}, n);
  }

  static Partition discrete(int n) {
    std::vector<std::vector<int>> atoms;
    for (int w = 0; w < n; ++w) atoms.push_back({w});
    return Partition(std::move(atoms), n);
  }

  /// Groups paths by key; paths with equal keys share an atom.
  template <typename Key>
  static Partition by_key(const std::vector<Key>& keys) {
    std::map<Key, std::vector<int>> groups;
    for (std::size_t w = 0; w < keys.size(); ++w) groups[keys[w]].push_back(static_cast<int>(w));
    std::vector<std::vector<int>> atoms;
    for (auto& [key, members] : groups) atoms.push_back(std::move(members));
    return Partition(std::move(atoms), static_cast<int>(keys.size()));
  }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_paths() const { return static_cast<int>(atom_of_.size()); }
  const std::vector<std::vector<int>>& atoms() const { return atoms_; }
  const std::vector<int>& atom(int a) const { return atoms_.at(static_cast<std::size_t>(a)); }
  int atom_of(int path) const { return atom_of_.at(static_cast<std::size_t>(path)); }

  /// True when every atom of *this lies inside a single atom of `coarser`.
  bool refines(const Partition& coarser) const {
    if (coarser.num_paths() != num_paths()) return false;
    for (const auto& a : atoms_) {
      const int target = coarser.atom_of(a.front());
      for (int w : a) {
        if (coarser.atom_of(w) != target) return false;
      }
    }
    return true;
  }

  bool operator==(const Partition& other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<std::vector<int>> atoms_;
  std::vector<int> atom_of_;
};

/// One partition per grid index; refinement over time is a checked property,
/// not a construction invariant, so malformed trees can still be reported on.
class Filtration {
 public:
  Filtration() = default;
  explicit Filtration(std::vector<Partition> partitions) : partitions_(std::move(partitions)) {}

  static Filtration constant(const Partition& p, int num_times) {
    return Filtration(std::vector<Partition>(static_cast<std::size_t>(num_times), p));
  }

  const Partition& at(int k) const { return partitions_.at(static_cast<std::size_t>(k)); }
  int size() const { return static_cast<int>(partitions_.size()); }
  const std::vector<Partition>& partitions() const { return partitions_; }

  bool is_refining() const {
    for (std::size_t k = 1; k < partitions_.size(); ++k) {
      if (!partitions_[k].refines(partitions_[k - 1])) return false;
    }
    return true;
  }

  /// Atoms at k+1 contained in atom `a` at k.
  std::vector<int> children(int k, int a) const {
    std::vector<int> out;
    const auto& next = at(k + 1);
    for (int b = 0; b < next.num_atoms(); ++b) {
      if (at(k).atom_of(next.atom(b).front()) == a) out.push_back(b);
    }
    return out;
  }

  bool operator==(const Filtration& other) const { return partitions_ == other.partitions_; }

 private:
  std::vector<Partition> partitions_;
};

// ---------------------------------------------------------------------------
// Payoff tables

/// One rational per (path, time index).
class ProcessTable {
 public:
  ProcessTable() = default;

  explicit ProcessTable(std::vector<std::vector<Rational>> values) : values_(std::move(values)) {
    for (const auto& row : values_) {
      if (row.size() != values_.front().size()) {
        throw DynkinError(ErrorCode::kMalformed, "ragged process table");
      }
    }
  }

  static ProcessTable filled(int num_paths, int num_times, const Rational& v) {
    return ProcessTable(std::vector<std::vector<Rational>>(
        static_cast<std::size_t>(num_paths), std::vector<Rational>(static_cast<std::size_t>(num_times), v)));
  }

  const Rational& operator()(int path, int k) const {
    return values_[static_cast<std::size_t>(path)][static_cast<std::size_t>(k)];
  }
  Rational& operator()(int path, int k) {
    return values_[static_cast<std::size_t>(path)][static_cast<std::size_t>(k)];
  }

  int num_paths() const { return static_cast<int>(values_.size()); }
  int num_times() const { return values_.empty() ? 0 : static_cast<int>(values_.front().size()); }
  const std::vector<std::vector<Rational>>& rows() const { return values_; }

  /// Constant on every atom of the partition at each time.
  bool adapted_to(const Filtration& filtration) const {
    for (int k = 0; k < num_times(); ++k) {
      for (const auto& atom : filtration.at(k).atoms()) {
        for (int w : atom) {
          if ((*this)(w, k) != (*this)(atom.front(), k)) return false;
        }
      }
    }
    return true;
  }

  ProcessTable negated() const {
    ProcessTable out = *this;
    for (auto& row : out.values_) {
      for (auto& v : row) v = -v;
    }
    return out;
  }

  bool operator==(const ProcessTable& other) const { return values_ == other.values_; }

 private:
  std::vector<std::vector<Rational>> values_;
};

// ---------------------------------------------------------------------------
// GameInstance

class GameInstance {
 public:
  GameInstance() = default;

  GameInstance(TimeGrid grid, PathSpace space, Filtration master, Filtration player1, Filtration player2,
               ProcessTable f, ProcessTable g, ProcessTable h,
               std::optional<Partition> initial_partition = std::nullopt)
      : grid_(std::move(grid)),
        space_(std::move(space)),
        master_(std::move(master)),
        player1_(std::move(player1)),
        player2_(std::move(player2)),
        f_(std::move(f)),
        g_(std::move(g)),
        h_(std::move(h)),
        initial_(std::move(initial_partition)) {
    check_structure();
  }

  const TimeGrid& grid() const { return grid_; }
  const PathSpace& space() const { return space_; }
  int num_paths() const { return space_.size(); }
  int terminal() const { return grid_.terminal(); }
  const Rational& prob(int path) const { return space_.probs[static_cast<std::size_t>(path)]; }

  const Filtration& master() const { return master_; }
  const Filtration& filtration(Player p) const { return p == Player::kOne ? player1_ : player2_; }

  const ProcessTable& f() const { return f_; }
  const ProcessTable& g() const { return g_; }
  const ProcessTable& h() const { return h_; }

  const std::optional<Partition>& initial_partition() const { return initial_; }

  GameInstance with_payoffs(ProcessTable f, ProcessTable g, ProcessTable h) const {
    return GameInstance(grid_, space_, master_, player1_, player2_, std::move(f), std::move(g), std::move(h),
                        initial_);
  }

  GameInstance with_filtration(Player p, Filtration filtration) const {
    return GameInstance(grid_, space_, master_, p == Player::kOne ? std::move(filtration) : player1_,
                        p == Player::kTwo ? std::move(filtration) : player2_, f_, g_, h_, initial_);
  }

  GameInstance with_initial_partition(std::optional<Partition> g0) const {
    return GameInstance(grid_, space_, master_, player1_, player2_, f_, g_, h_, std::move(g0));
  }

  /// Payoffs (f, g, h) -> (-f, -g, -h).
  GameInstance negated() const { return with_payoffs(f_.negated(), g_.negated(), h_.negated()); }

  bool operator==(const GameInstance& o) const {
    return grid_ == o.grid_ && space_.probs == o.space_.probs && space_.labels == o.space_.labels &&
           master_ == o.master_ && player1_ == o.player1_ && player2_ == o.player2_ && f_ == o.f_ &&
           g_ == o.g_ && h_ == o.h_ && initial_ == o.initial_;
  }

 private:
  void check_structure() const {
    const int n = space_.size();
    const int times = grid_.size();
    if (n == 0) throw DynkinError(ErrorCode::kMalformed, "instance has no paths");
    if (!space_.labels.empty() && static_cast<int>(space_.labels.size()) != n) {
      throw DynkinError(ErrorCode::kMalformed, "labels must be given for every path or none");
    }
    for (const Filtration* fl : {&master_, &player1_, &player2_}) {
      if (fl->size() != times) {
        throw DynkinError(ErrorCode::kMalformed, "filtration length differs from grid size");
      }
      for (const auto& p : fl->partitions()) {
        if (p.num_paths() != n) throw DynkinError(ErrorCode::kMalformed, "partition size differs from path count");
      }
    }
    for (const ProcessTable* t : {&f_, &g_, &h_}) {
      if (t->num_paths() != n || t->num_times() != times) {
        throw DynkinError(ErrorCode::kMalformed, "payoff table shape differs from paths x grid");
      }
    }
    if (initial_ && initial_->num_paths() != n) {
      throw DynkinError(ErrorCode::kMalformed, "initial partition size differs from path count");
    }
  }

  TimeGrid grid_;
  PathSpace space_;
  Filtration master_;
  Filtration player1_;
  Filtration player2_;
  ProcessTable f_;
  ProcessTable g_;
  ProcessTable h_;
  std::optional<Partition> initial_;
};

// ---------------------------------------------------------------------------
// Validation

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw DynkinError(ErrorCode::kInvalid, "no check named " + name);
  }

  bool passed(const std::string& name) const { return check(name).passed; }
};

namespace check_names {
inline constexpr const char* kProbPositive = "probability_positive";
inline constexpr const char* kProbNormalized = "probability_normalized";
inline constexpr const char* kMasterRefines = "master_refines";
inline constexpr const char* kPlayer1Refines = "player1_refines";
inline constexpr const char* kPlayer2Refines = "player2_refines";
inline constexpr const char* kPlayer1Sub = "player1_subfiltration";
inline constexpr const char* kPlayer2Sub = "player2_subfiltration";
inline constexpr const char* kFAdapted = "f_adapted";
inline constexpr const char* kGAdapted = "g_adapted";
inline constexpr const char* kHAdapted = "h_adapted";
inline constexpr const char* kIntegrable = "integrable";
inline constexpr const char* kOrdering = "ordering_f_ge_h_ge_g";
inline constexpr const char* kInitialCoarse = "initial_partition_coarse";
}  // namespace check_names

inline ValidationReport validate_instance(const GameInstance& inst) {
  namespace cn = check_names;
  ValidationReport r;
  auto add = [&](const char* name, bool ok, std::string detail = {}) {
    r.checks.push_back({name, ok, ok ? std::string() : std::move(detail)});
  };

  bool positive = true;
  Rational total = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    positive = positive && inst.prob(w) > 0;
    total += inst.prob(w);
  }
  add(cn::kProbPositive, positive, "some path has probability <= 0");
  add(cn::kProbNormalized, total == 1, "path probabilities sum to " + to_string(total));

  add(cn::kMasterRefines, inst.master().is_refining(), "master partitions do not refine over time");
  add(cn::kPlayer1Refines, inst.filtration(Player::kOne).is_refining(), "player 1 partitions do not refine");
  add(cn::kPlayer2Refines, inst.filtration(Player::kTwo).is_refining(), "player 2 partitions do not refine");

  auto sub = [&](Player p) {
    for (int k = 0; k <= inst.terminal(); ++k) {
      if (!inst.master().at(k).refines(inst.filtration(p).at(k))) return false;
    }
    return true;
  };
  add(cn::kPlayer1Sub, sub(Player::kOne), "player 1 sees more than the master filtration");
  add(cn::kPlayer2Sub, sub(Player::kTwo), "player 2 sees more than the master filtration");

  add(cn::kFAdapted, inst.f().adapted_to(inst.master()), "f is not adapted to the master filtration");
  add(cn::kGAdapted, inst.g().adapted_to(inst.master()), "g is not adapted to the master filtration");
  add(cn::kHAdapted, inst.h().adapted_to(inst.master()), "h is not adapted to the master filtration");

  // Finite tables always have finite sup-norm expectation.
  add(cn::kIntegrable, true);

  std::string order_detail;
  bool ordered = true;
  for (int w = 0; w < inst.num_paths() && ordered; ++w) {
    for (int k = 0; k <= inst.terminal(); ++k) {
      if (!(inst.f()(w, k) >= inst.h()(w, k) && inst.h()(w, k) >= inst.g()(w, k))) {
        ordered = false;
        order_detail = "violated at path " + std::to_string(w) + ", index " + std::to_string(k);
        break;
      }
    }
  }
  add(cn::kOrdering, ordered, order_detail);

  bool coarse = true;
  if (inst.initial_partition()) {
    coarse = inst.filtration(Player::kOne).at(0).refines(*inst.initial_partition()) &&
             inst.filtration(Player::kTwo).at(0).refines(*inst.initial_partition());
  }
  add(cn::kInitialCoarse, coarse, "initial partition is not coarser than both players' time-0 partitions");
  return r;
}

/// Throws unless the instance satisfies everything the evaluators rely on.
/// The ordering condition is deliberately not required.
inline void require_playable(const GameInstance& inst) {
  namespace cn = check_names;
  const auto report = validate_instance(inst);
  for (const auto& c : report.checks) {
    if (c.name == cn::kOrdering || c.name == cn::kInitialCoarse) continue;
    if (!c.passed) throw DynkinError(ErrorCode::kValidation, "instance check '" + c.name + "' failed: " + c.detail);
  }
}

// ---------------------------------------------------------------------------
// Strategies

/// Generating process of a randomised stopping time, stored as increments
/// per (time index, atom of the owner's partition at that time). The mass at
/// index k is the probability of stopping at t_k; xi_{0-} = 0 is implicit.
class BehavioralStrategy {
 public:
  BehavioralStrategy() = default;
  BehavioralStrategy(Player owner, std::vector<std::vector<Rational>> increments)
      : owner_(owner), increments_(std::move(increments)) {}

  Player owner() const { return owner_; }
  const std::vector<std::vector<Rational>>& increments() const { return increments_; }
  const Rational& increment(int k, int atom) const {
    return increments_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(atom));
  }
  int num_times() const { return static_cast<int>(increments_.size()); }

  bool operator==(const BehavioralStrategy& o) const {
    return owner_ == o.owner_ && increments_ == o.increments_;
  }

 private:
  Player owner_ = Player::kOne;
  std::vector<std::vector<Rational>> increments_;
};

/// Checks shape, non-negativity and unit total mass along every path.
inline void validate_strategy(const BehavioralStrategy& b, const GameInstance& inst) {
  const auto& fl = inst.filtration(b.owner());
  if (b.num_times() != inst.grid().size()) {
    throw DynkinError(ErrorCode::kInvalid, "strategy has wrong number of time indices");
  }
  for (int k = 0; k < b.num_times(); ++k) {
    if (static_cast<int>(b.increments()[static_cast<std::size_t>(k)].size()) != fl.at(k).num_atoms()) {
      throw DynkinError(ErrorCode::kInvalid,
                        "strategy atom count at index " + std::to_string(k) + " does not match the owner's partition");
    }
    for (const auto& m : b.increments()[static_cast<std::size_t>(k)]) {
      if (m < 0) throw DynkinError(ErrorCode::kInvalid, "negative strategy increment");
    }
  }
  for (int w = 0; w < inst.num_paths(); ++w) {
    Rational total = 0;
    for (int k = 0; k < b.num_times(); ++k) total += b.increment(k, fl.at(k).atom_of(w));
    if (total != 1) {
      throw DynkinError(ErrorCode::kInvalid,
                        "strategy mass along path " + std::to_string(w) + " is " + to_string(total) + ", not 1");
    }
  }
}

/// Pathwise view of a behavioural strategy: mass[w][k] = dxi_k(w), cdf[w][k] = xi_k(w).
struct PathProcess {
  std::vector<std::vector<Rational>> mass;
  std::vector<std::vector<Rational>> cdf;

  /// xi_{k-}, read as xi_{k-1} on the grid and 0 at k = 0.
  Rational left(int w, int k) const {
    return k == 0 ? Rational(0) : cdf[static_cast<std::size_t>(w)][static_cast<std::size_t>(k - 1)];
  }
};

inline PathProcess path_process(const BehavioralStrategy& b, const GameInstance& inst) {
  const auto& fl = inst.filtration(b.owner());
  PathProcess out;
  const auto n = static_cast<std::size_t>(inst.num_paths());
  const auto times = static_cast<std::size_t>(inst.grid().size());
  out.mass.assign(n, std::vector<Rational>(times));
  out.cdf.assign(n, std::vector<Rational>(times));
  for (std::size_t w = 0; w < n; ++w) {
    Rational running = 0;
    for (std::size_t k = 0; k < times; ++k) {
      out.mass[w][k] = b.increment(static_cast<int>(k), fl.at(static_cast<int>(k)).atom_of(static_cast<int>(w)));
      running += out.mass[w][k];
      out.cdf[w][k] = running;
    }
  }
  return out;
}

/// A pure stopping time, stored by its induced index map w -> tau(w).
class PureStoppingTime {
 public:
  PureStoppingTime() = default;

  /// Validates that {tau <= k} is a union of the owner's atoms at k.
  PureStoppingTime(Player owner, std::vector<int> stop_index, const GameInstance& inst)
      : owner_(owner), stop_(std::move(stop_index)) {
    if (static_cast<int>(stop_.size()) != inst.num_paths()) {
      throw DynkinError(ErrorCode::kInvalid, "stopping time has wrong number of paths");
    }
    const int K = inst.terminal();
    for (int s : stop_) {
      if (s < 0 || s > K) throw DynkinError(ErrorCode::kInvalid, "stopping index out of range");
    }
    const auto& fl = inst.filtration(owner);
    for (int k = 0; k <= K; ++k) {
      for (const auto& atom : fl.at(k).atoms()) {
        const bool stopped = stop_[static_cast<std::size_t>(atom.front())] <= k;
        for (int w : atom) {
          if ((stop_[static_cast<std::size_t>(w)] <= k) != stopped) {
            throw DynkinError(ErrorCode::kInvalid, "stopping rule is not adapted to the owner's filtration at index " +
                                                       std::to_string(k));
          }
        }
      }
    }
  }

  static PureStoppingTime constant(Player owner, int k, const GameInstance& inst) {
    return PureStoppingTime(owner, std::vector<int>(static_cast<std::size_t>(inst.num_paths()), k), inst);
  }

  Player owner() const { return owner_; }
  int at(int path) const { return stop_.at(static_cast<std::size_t>(path)); }
  const std::vector<int>& indices() const { return stop_; }

  /// Stop/continue at (k, atom); nullopt when the atom is never reached.
  std::optional<bool> decision(int k, int atom, const GameInstance& inst) const {
    const int w = inst.filtration(owner_).at(k).atom(atom).front();
    if (at(w) < k) return std::nullopt;
    return at(w) == k;
  }

  bool operator==(const PureStoppingTime& o) const { return owner_ == o.owner_ && stop_ == o.stop_; }
  bool operator<(const PureStoppingTime& o) const { return stop_ < o.stop_; }

 private:
  Player owner_ = Player::kOne;
  std::vector<int> stop_;
};

struct WeightedPure {
  PureStoppingTime time;
  Rational weight;
};

/// Finite distribution over pure stopping times sharing one owner.
class MixedStrategy {
 public:
  MixedStrategy() = default;

  MixedStrategy(Player owner, std::vector<WeightedPure> support) : owner_(owner), support_(std::move(support)) {
    if (support_.empty()) throw DynkinError(ErrorCode::kInvalid, "mixed strategy has empty support");
    Rational total = 0;
    for (const auto& s : support_) {
      if (s.time.owner() != owner_) throw DynkinError(ErrorCode::kInvalid, "mixed strategy owner mismatch");
      if (s.weight <= 0) throw DynkinError(ErrorCode::kInvalid, "mixed strategy weight must be positive");
      total += s.weight;
    }
    if (total != 1) throw DynkinError(ErrorCode::kInvalid, "mixed strategy weights sum to " + to_string(total));
  }

  Player owner() const { return owner_; }
  const std::vector<WeightedPure>& support() const { return support_; }

 private:
  Player owner_ = Player::kOne;
  std::vector<WeightedPure> support_;
};

// ---------------------------------------------------------------------------
// Conversions

inline BehavioralStrategy behavioral_from_pure(const PureStoppingTime& tau, const GameInstance& inst) {
  const auto& fl = inst.filtration(tau.owner());
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= inst.terminal(); ++k) {
    std::vector<Rational> row(static_cast<std::size_t>(fl.at(k).num_atoms()), 0);
    for (int a = 0; a < fl.at(k).num_atoms(); ++a) {
      if (tau.at(fl.at(k).atom(a).front()) == k) row[static_cast<std::size_t>(a)] = 1;
    }
    inc.push_back(std::move(row));
  }
  return BehavioralStrategy(tau.owner(), std::move(inc));
}

inline BehavioralStrategy behavioral_from_mixed(const MixedStrategy& m, const GameInstance& inst) {
  const auto& fl = inst.filtration(m.owner());
  for (const auto& s : m.support()) {
    // Re-validates adaptedness against this instance's partitions.
    PureStoppingTime check(m.owner(), s.time.indices(), inst);
    (void)check;
  }
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= inst.terminal(); ++k) {
    std::vector<Rational> row(static_cast<std::size_t>(fl.at(k).num_atoms()), 0);
    for (int a = 0; a < fl.at(k).num_atoms(); ++a) {
      const int w = fl.at(k).atom(a).front();
      for (const auto& s : m.support()) {
        if (s.time.at(w) == k) row[static_cast<std::size_t>(a)] += s.weight;
      }
    }
    inc.push_back(std::move(row));
  }
  return BehavioralStrategy(m.owner(), std::move(inc));
}

/// min{k : xi_k(w) > z}; K when no level exceeds z before the end.
inline int stopping_index(const BehavioralStrategy& b, const GameInstance& inst, int path, const Rational& z) {
  if (z < 0 || z >= 1) throw DynkinError(ErrorCode::kInvalid, "threshold must lie in [0, 1)");
  const auto& fl = inst.filtration(b.owner());
  Rational level = 0;
  for (int k = 0; k < inst.terminal(); ++k) {
    level += b.increment(k, fl.at(k).atom_of(path));
    if (level > z) return k;
  }
  return inst.terminal();
}

/// Threshold decomposition: each gap between consecutive attained CDF levels
/// becomes one pure time tau_z = min{k : xi_k > z} weighted by the gap length.
inline MixedStrategy mixed_from_behavioral(const BehavioralStrategy& b, const GameInstance& inst) {
  validate_strategy(b, inst);
  const auto proc = path_process(b, inst);
  std::vector<Rational> levels{Rational(0), Rational(1)};
  for (const auto& row : proc.cdf) levels.insert(levels.end(), row.begin(), row.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::map<std::vector<int>, Rational> merged;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Rational& z = levels[i];
    std::vector<int> idx(static_cast<std::size_t>(inst.num_paths()));
    for (int w = 0; w < inst.num_paths(); ++w) idx[static_cast<std::size_t>(w)] = stopping_index(b, inst, w, z);
    merged[idx] += levels[i + 1] - z;
  }
  std::vector<WeightedPure> support;
  for (auto& [idx, weight] : merged) support.push_back({PureStoppingTime(b.owner(), idx, inst), weight});
  return MixedStrategy(b.owner(), std::move(support));
}

/// Strategy placing mass[k] at index k on every atom (a deterministic CDF).
inline BehavioralStrategy deterministic_strategy(Player owner, const GameInstance& inst,
                                                 const std::vector<Rational>& mass) {
  if (static_cast<int>(mass.size()) != inst.grid().size()) {
    throw DynkinError(ErrorCode::kInvalid, "mass vector length differs from grid size");
  }
  const auto& fl = inst.filtration(owner);
  std::vector<std::vector<Rational>> inc;
  for (int k = 0; k <= inst.terminal(); ++k) {
    inc.emplace_back(static_cast<std::size_t>(fl.at(k).num_atoms()), mass[static_cast<std::size_t>(k)]);
  }
  BehavioralStrategy b(owner, std::move(inc));
  validate_strategy(b, inst);
  return b;
}

/// Sub-game on the paths of `atom` (a set of path indices), probabilities
/// renormalised. Returned map gives the original index of each new path.
struct RestrictedInstance {
  GameInstance instance;
  std::vector<int> original_path;
};

inline RestrictedInstance restrict_to_paths(const GameInstance& inst, const std::vector<int>& paths) {
  if (paths.empty()) throw DynkinError(ErrorCode::kInvalid, "cannot restrict to an empty path set");
  std::vector<int> local(static_cast<std::size_t>(inst.num_paths()), -1);
  for (std::size_t i = 0; i < paths.size(); ++i) local[static_cast<std::size_t>(paths[i])] = static_cast<int>(i);
  const int n = static_cast<int>(paths.size());

  Rational mass = 0;
  for (int w : paths) mass += inst.prob(w);
  PathSpace space;
  for (int w : paths) {
    space.probs.push_back(inst.prob(w) / mass);
    if (!inst.space().labels.empty()) space.labels.push_back(inst.space().labels[static_cast<std::size_t>(w)]);
  }

  auto restrict_partition = [&](const Partition& p) {
    std::vector<std::vector<int>> atoms;
    for (const auto& a : p.atoms()) {
      std::vector<int> kept;
      for (int w : a) {
        if (local[static_cast<std::size_t>(w)] >= 0) kept.push_back(local[static_cast<std::size_t>(w)]);
      }
      if (!kept.empty()) atoms.push_back(std::move(kept));
    }
    return Partition(std::move(atoms), n);
  };
  auto restrict_filtration = [&](const Filtration& fl) {
    std::vector<Partition> parts;
    for (const auto& p : fl.partitions()) parts.push_back(restrict_partition(p));
    return Filtration(std::move(parts));
  };
  auto restrict_table = [&](const ProcessTable& t) {
    std::vector<std::vector<Rational>> rows;
    for (int w : paths) rows.push_back(t.rows()[static_cast<std::size_t>(w)]);
    return ProcessTable(std::move(rows));
  };
  std::optional<Partition> initial;
  if (inst.initial_partition()) initial = restrict_partition(*inst.initial_partition());

  return {GameInstance(inst.grid(), std::move(space), restrict_filtration(inst.master()),
                       restrict_filtration(inst.filtration(Player::kOne)),
                       restrict_filtration(inst.filtration(Player::kTwo)), restrict_table(inst.f()),
                       restrict_table(inst.g()), restrict_table(inst.h()), std::move(initial)),
          paths};
}

}  // namespace dynkin

#endif  // DYNKIN_CORE_HPP
