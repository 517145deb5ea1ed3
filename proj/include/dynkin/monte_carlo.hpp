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

// Statistical checks of the exact engine. Each sample draws a path and the
// two players' randomisation devices from a counter-based generator, so
// sample i is a pure function of (seed, i) and runs are reproducible
// regardless of thread count.

#ifndef DYNKIN_MONTE_CARLO_HPP
#define DYNKIN_MONTE_CARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "dynkin/core.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {

struct Estimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// An estimate next to the exact value it targets.
struct Comparison {
  Estimate estimate;
  Rational exact;

  double deviation() const { return std::abs(estimate.mean - exact.get_d()); }

  /// |mean - exact| <= k * std_error, with slack for double rounding only.
  bool within(double k) const {
    const double e = exact.get_d();
    return deviation() <= k * estimate.std_error + 1e-12 * std::max(1.0, std::abs(e));
  }
};

struct SimulationOptions {
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Counter-based uniforms

enum class Stream : std::uint64_t { kPath = 1, kTau = 2, kSigma = 3 };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 53-bit integer m; the uniform is m / 2^53 in [0, 1).
inline std::uint64_t uniform_bits(std::uint64_t seed, std::uint64_t index, Stream stream) {
  std::uint64_t x = splitmix64(seed ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  x = splitmix64(x ^ splitmix64(index));
  return x >> 11;
}

namespace detail {

inline constexpr int kUniformBits = 53;

__extension__ typedef __int128 Int128;

/// Exact test q > m / 2^53 for a rational q.
class LevelCompare {
 public:
  explicit LevelCompare(const Rational& q) : exact_(q) {
    if (auto s = small_fraction(q)) {
      small_ = true;
      num_ = s->num;
      den_ = s->den;
    }
  }

  bool exceeds(std::uint64_t m) const {
    if (small_) {
      return static_cast<Int128>(num_) << kUniformBits > static_cast<Int128>(den_) * static_cast<Int128>(m);
    }
    Rational z(mpz_class(static_cast<unsigned long>(m)), 1);
    z /= Rational(mpz_class(1) << kUniformBits);
    return exact_ > z;
  }

 private:
  Rational exact_;
  bool small_ = false;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Precomputed per-path CDF levels of one strategy.
class Sampler {
 public:
  Sampler(const BehavioralStrategy& b, const GameInstance& inst) : K_(inst.terminal()) {
    validate_strategy(b, inst);
    const auto proc = path_process(b, inst);
    for (const auto& row : proc.cdf) {
      std::vector<LevelCompare> levels;
      for (int k = 0; k < K_; ++k) levels.emplace_back(row[static_cast<std::size_t>(k)]);
      levels_.push_back(std::move(levels));
    }
  }

  /// min{k : xi_k(w) > m / 2^53}, or K.
  int index(int w, std::uint64_t m) const {
    const auto& row = levels_[static_cast<std::size_t>(w)];
    for (int k = 0; k < K_; ++k) {
      if (row[static_cast<std::size_t>(k)].exceeds(m)) return k;
    }
    return K_;
  }

 private:
  int K_;
  std::vector<std::vector<LevelCompare>> levels_;
};

class PathSampler {
 public:
  explicit PathSampler(const GameInstance& inst) {
    Rational running = 0;
    for (int w = 0; w < inst.num_paths(); ++w) {
      running += inst.prob(w);
      cumulative_.emplace_back(running);
    }
  }

  /// Smallest w with m / 2^53 < P(path <= w).
  int draw(std::uint64_t m) const {
    for (std::size_t w = 0; w + 1 < cumulative_.size(); ++w) {
      if (cumulative_[w].exceeds(m)) return static_cast<int>(w);
    }
    return static_cast<int>(cumulative_.size()) - 1;
  }

 private:
  std::vector<LevelCompare> cumulative_;
};

struct Moments {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

inline constexpr std::uint64_t kChunk = 8192;

/// Runs `observe(sample_index, out)` over all samples; out receives one value
/// per tracked statistic. Chunks are merged in index order, so results do not
/// depend on the thread count.
inline std::vector<Estimate> run_samples(const SimulationOptions& opt, std::size_t stats,
                                         const std::function<void(std::uint64_t, std::vector<double>&)>& observe) {
  if (opt.n_samples == 0) throw DynkinError(ErrorCode::kInvalid, "n_samples must be positive");
  const std::uint64_t chunks = (opt.n_samples + kChunk - 1) / kChunk;
  std::vector<std::vector<Moments>> partial(chunks, std::vector<Moments>(stats));
  auto work = [&](std::uint64_t first) {
    std::vector<double> out(stats);
    const std::uint64_t step = std::max(1u, opt.threads);
    for (std::uint64_t c = first; c < chunks; c += step) {
      const std::uint64_t end = std::min(opt.n_samples, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        observe(i, out);
        for (std::size_t s = 0; s < stats; ++s) partial[c][s].add(out[s]);
      }
    }
  };
  if (opt.threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < opt.threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<Estimate> out;
  for (std::size_t s = 0; s < stats; ++s) {
    Moments total;
    for (const auto& chunk : partial) total.merge(chunk[s]);
    const double var = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
    out.push_back({total.mean, std::sqrt(var / static_cast<double>(total.n)), total.n, opt.seed});
  }
  return out;
}

inline std::vector<std::vector<double>> as_doubles(const ProcessTable& t) {
  std::vector<std::vector<double>> out;
  for (const auto& row : t.rows()) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.get_d());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Estimates N(xi, zeta) by sampling a path and both devices independently.
inline Comparison sample_game(const GameInstance& inst, const BehavioralStrategy& xi, const BehavioralStrategy& zeta,
                              const SimulationOptions& opt) {
  detail::check_owners(xi, zeta);
  const detail::PathSampler paths(inst);
  const detail::Sampler sx(xi, inst);
  const detail::Sampler sz(zeta, inst);
  const auto f = detail::as_doubles(inst.f());
  const auto g = detail::as_doubles(inst.g());
  const auto h = detail::as_doubles(inst.h());
  auto est = detail::run_samples(opt, 1, [&](std::uint64_t i, std::vector<double>& out) {
    const int w = paths.draw(uniform_bits(opt.seed, i, Stream::kPath));
    const int t = sx.index(w, uniform_bits(opt.seed, i, Stream::kTau));
    const int s = sz.index(w, uniform_bits(opt.seed, i, Stream::kSigma));
    const auto ws = static_cast<std::size_t>(w);
    out[0] = t < s ? f[ws][static_cast<std::size_t>(t)]
                   : (s < t ? g[ws][static_cast<std::size_t>(s)] : h[ws][static_cast<std::size_t>(t)]);
  });
  return {est[0], expected_payoff(inst, xi, zeta)};
}

struct DeviceIdentityCheck {
  Comparison at_or_before;  // P(tau <= kappa) against E[xi_kappa]
  Comparison before;        // P(tau < kappa) against E[xi_{kappa-}]
};

/// Checks P(tau <= kappa) = E[xi_kappa] and P(tau < kappa) = E[xi_{kappa-}]
/// for a per-path index kappa.
inline DeviceIdentityCheck check_device_identity(const GameInstance& inst, const BehavioralStrategy& xi,
                                                 const std::vector<int>& kappa, const SimulationOptions& opt) {
  if (static_cast<int>(kappa.size()) != inst.num_paths()) {
    throw DynkinError(ErrorCode::kInvalid, "kappa must give one index per path");
  }
  for (int k : kappa) {
    if (k < 0 || k > inst.terminal()) throw DynkinError(ErrorCode::kInvalid, "kappa index out of range");
  }
  const detail::PathSampler paths(inst);
  const detail::Sampler sx(xi, inst);
  const Stream device = xi.owner() == Player::kOne ? Stream::kTau : Stream::kSigma;
  auto est = detail::run_samples(opt, 2, [&](std::uint64_t i, std::vector<double>& out) {
    const int w = paths.draw(uniform_bits(opt.seed, i, Stream::kPath));
    const int t = sx.index(w, uniform_bits(opt.seed, i, device));
    const int k = kappa[static_cast<std::size_t>(w)];
    out[0] = t <= k ? 1.0 : 0.0;
    out[1] = t < k ? 1.0 : 0.0;
  });
  const auto proc = path_process(xi, inst);
  Rational le = 0;
  Rational lt = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    const int k = kappa[static_cast<std::size_t>(w)];
    le += inst.prob(w) * proc.cdf[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
    lt += inst.prob(w) * proc.left(w, k);
  }
  return {{est[0], le}, {est[1], lt}};
}

struct SimultaneousCheck {
  Comparison tie_frequency;  // P(tau = sigma) against E[sum_k dxi_k dzeta_k]
  Comparison tie_payoff;     // E[h_tau 1{tau = sigma}] against E[sum_k h_k dxi_k dzeta_k]
};

inline SimultaneousCheck check_simultaneous(const GameInstance& inst, const BehavioralStrategy& xi,
                                            const BehavioralStrategy& zeta, const SimulationOptions& opt) {
  detail::check_owners(xi, zeta);
  const detail::PathSampler paths(inst);
  const detail::Sampler sx(xi, inst);
  const detail::Sampler sz(zeta, inst);
  const auto h = detail::as_doubles(inst.h());
  auto est = detail::run_samples(opt, 2, [&](std::uint64_t i, std::vector<double>& out) {
    const int w = paths.draw(uniform_bits(opt.seed, i, Stream::kPath));
    const int t = sx.index(w, uniform_bits(opt.seed, i, Stream::kTau));
    const int s = sz.index(w, uniform_bits(opt.seed, i, Stream::kSigma));
    out[0] = t == s ? 1.0 : 0.0;
    out[1] = t == s ? h[static_cast<std::size_t>(w)][static_cast<std::size_t>(t)] : 0.0;
  });
  const auto x = path_process(xi, inst);
  const auto z = path_process(zeta, inst);
  Rational freq = 0;
  Rational weighted = 0;
  for (int w = 0; w < inst.num_paths(); ++w) {
    for (int k = 0; k <= inst.terminal(); ++k) {
      const Rational joint = x.mass[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)] *
                             z.mass[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)];
      freq += inst.prob(w) * joint;
      weighted += inst.prob(w) * inst.h()(w, k) * joint;
    }
  }
  return {{est[0], freq}, {est[1], weighted}};
}

}  // namespace dynkin

#endif  // DYNKIN_MONTE_CARLO_HPP
