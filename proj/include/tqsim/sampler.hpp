// Copyright 2026 The tqsim Authors
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "tqsim/common.hpp"
#include "tqsim/rng.hpp"

namespace tqsim {

// Output probabilities of a random circuit follow the Porter-Thomas
// (exponential) law Pr(p) = 2^n exp(-2^n p).  Sorted ascending, the
// population is p(i) = -ln(1 - i/2^n) / 2^n.  Cutting the peak at a
// threshold p_th = t * 2^-n and renormalizing gives the flat-top
// distribution the threshold-rejection sampler draws from.

inline constexpr double kEulerGamma = 0.57721566490153286;

/// Threshold in units of 2^-n over an n-qubit output space.
struct ThresholdConfig {
  double t = 2.4;
  int n = 12;

  double p_th() const { return t * std::ldexp(1.0, -n); }
};

/// Analytic figures of merit for one threshold choice.
struct FidelityEstimate {
  double f_ce = 0;
  double efficiency = 0;
  double amplitudes_per_sample = 0;
};

inline void check_threshold(double t) {
  if (!(t > 0)) throw InvalidArgument("threshold t must be positive");
}

inline void check_rank(std::uint64_t i, int n) {
  require(n >= 1 && n <= 52, "qubit count out of range");
  if (i >= (std::uint64_t{1} << n))
    throw InvalidArgument("rank out of range for 2^n outcomes");
}

/// Ascending sorted Porter-Thomas population p(i) = -ln(1 - i/2^n)/2^n.
inline double sorted_population(std::uint64_t i, int n) {
  check_rank(i, n);
  const double frac =
      static_cast<double>(i) * std::ldexp(1.0, -n);
  return -std::log1p(-frac) * std::ldexp(1.0, -n);
}

/// The cut-peak approximation: p(i) scaled by 1/(1 - e^-t) below the cut
/// rank 2^n (1 - e^-t), the constant p_th/(1 - e^-t) above it.
inline double cut_peak_distribution(std::uint64_t i, const ThresholdConfig& cfg) {
  check_threshold(cfg.t);
  check_rank(i, cfg.n);
  const double norm = -std::expm1(-cfg.t);  // 1 - e^-t
  const double frac = static_cast<double>(i) * std::ldexp(1.0, -cfg.n);
  if (frac < norm) return sorted_population(i, cfg.n) / norm;
  return cfg.p_th() / norm;
}

/// eta(t) = (1 - e^-t)/t: the acceptance ratio of threshold rejection.
inline double sampling_efficiency(double t) {
  check_threshold(t);
  return -std::expm1(-t) / t;
}

/// eta by direct rank summation, sum_i min(p(i), p_th) / (2^n p_th).
inline double sampling_efficiency_by_summation(const ThresholdConfig& cfg) {
  check_threshold(cfg.t);
  const std::uint64_t total = std::uint64_t{1} << cfg.n;
  const double p_th = cfg.p_th();
  double acc = 0;
  for (std::uint64_t i = 0; i < total; ++i)
    acc += std::min(sorted_population(i, cfg.n), p_th);
  return acc / (static_cast<double>(total) * p_th);
}

namespace detail {

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// Cross-entropy fidelity of the cut-peak distribution, continuum form.
///
/// With q = 2^n p exponentially distributed, f_ce reduces to
///   gamma + [ int_0^t q ln q e^-q dq + t int_t^inf ln q e^-q dq ]
///           / (1 - e^-t),
/// which the adaptive Simpson quadrature below evaluates (the upper tail
/// is truncated at t + 60, far below double rounding).  Equals the state
/// fidelity under the global depolarizing noise model.
inline double cross_entropy_fidelity(double t) {
  check_threshold(t);
  auto body = [](double q) { return q <= 0 ? 0.0 : q * std::log(q) * std::exp(-q); };
  auto tail = [](double q) { return std::log(q) * std::exp(-q); };
  const double i1 = detail::integrate(body, 0.0, t);
  const double i2 = detail::integrate(tail, t, t + 60.0);
  return kEulerGamma + (i1 + t * i2) / -std::expm1(-t);
}

/// f_ce by direct rank summation at finite n (cross-check of the
/// continuum form): (ln 2^n + gamma) - sum_i ptilde(i) ln(1/p(i)).
inline double cross_entropy_fidelity_by_summation(const ThresholdConfig& cfg) {
  check_threshold(cfg.t);
  const std::uint64_t total = std::uint64_t{1} << cfg.n;
  double acc = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const double p = sorted_population(i, cfg.n);
    acc += cut_peak_distribution(i, cfg) * std::log(1.0 / p);
  }
  return (cfg.n * std::log(2.0) + kEulerGamma) - acc;
}

inline FidelityEstimate sweet_spot_estimate(double t) {
  FidelityEstimate est;
  est.efficiency = sampling_efficiency(t);
  est.f_ce = cross_entropy_fidelity(t);
  est.amplitudes_per_sample = 1.0 / est.efficiency;
  return est;
}

/// Outcome probabilities, indexed by basis state.
using ProbabilitySource = std::function<double(std::uint64_t)>;

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;

  double acceptance_ratio() const {
    return proposals ? static_cast<double>(accepted) / proposals : 0.0;
  }
};

/// Threshold-rejection sampling: propose uniform outcomes, accept with
/// probability min(p(i)/p_th, 1) until `count` samples are in hand.
/// Proposal and acceptance draws come from independent streams.
inline std::vector<std::uint64_t> threshold_reject_sample(
    const ProbabilitySource& prob, const ThresholdConfig& cfg,
    Xoshiro256& proposal_rng, Xoshiro256& acceptance_rng, std::uint64_t count,
    std::uint64_t max_proposals, RejectionStats* stats = nullptr) {
  check_threshold(cfg.t);
  require(count >= 1, "sample count must be at least 1");
  const double p_th = cfg.p_th();
  const std::uint64_t space = std::uint64_t{1} << cfg.n;
  std::vector<std::uint64_t> samples;
  samples.reserve(count);
  RejectionStats local;
  while (samples.size() < count) {
    if (local.proposals >= max_proposals)
      throw BudgetExceeded("rejection sampler exhausted " +
                           std::to_string(max_proposals) + " proposals");
    ++local.proposals;
    const std::uint64_t outcome = proposal_rng.next_below(space);
    const double ratio = prob(outcome) / p_th;
    if (ratio >= 1.0 || acceptance_rng.next_double() < ratio) {
      samples.push_back(outcome);
      ++local.accepted;
    }
  }
  if (stats) *stats = local;
  return samples;
}

/// Sample-based cross-entropy fidelity: (ln 2^n + gamma) minus the mean
/// log-inverse-probability of the drawn outcomes.
inline double empirical_cross_entropy(const std::vector<double>& sample_probs,
                                      int n) {
  require(!sample_probs.empty(), "need at least one sample");
  double acc = 0;
  for (double p : sample_probs) {
    if (!(p > 0))
      throw UndefinedLogarithm("sampled outcome has zero probability");
    acc += std::log(1.0 / p);
  }
  return (n * std::log(2.0) + kEulerGamma) -
         acc / static_cast<double>(sample_probs.size());
}

/// Kolmogorov-Smirnov distance between the empirical law of 2^n * p and
/// Exp(1).  Small for genuine random-circuit populations.
inline double porter_thomas_check(std::vector<double> probs, int n) {
  require(!probs.empty(), "need a population");
  const double scale = std::ldexp(1.0, n);
  for (double& p : probs) p *= scale;
  std::sort(probs.begin(), probs.end());
  const double count = static_cast<double>(probs.size());
  double ks = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double cdf = -std::expm1(-probs[i]);
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / count));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / count - cdf));
  }
  return ks;
}

// ---- CSV emission (trade-off scan and cut-peak curves) ----

inline void write_tradeoff_csv(const std::string& path,
                               const std::vector<double>& ts) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "t,eta,f_ce\n";
  char line[128];
  for (double t : ts) {
    std::snprintf(line, sizeof line, "%.6g,%.9g,%.9g\n", t,
                  sampling_efficiency(t), cross_entropy_fidelity(t));
    out << line;
  }
}

/// Scaled population curves: rank fraction, 2^n p(i), 2^n ptilde(i).
/// In these units both curves are independent of n.
inline void write_cutpeak_csv(const std::string& path, double t, int points) {
  check_threshold(t);
  require(points >= 2, "need at least two sample points");
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "rank_fraction,p_times_2n,ptilde_times_2n\n";
  const double norm = -std::expm1(-t);
  char line[160];
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / points;
    const double p = -std::log1p(-f);
    const double pt = f < norm ? p / norm : t / norm;
    std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g\n", f, p, pt);
    out << line;
  }
}

}  // namespace tqsim
