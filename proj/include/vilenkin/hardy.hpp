#pragma once

// p-atoms, the dyadic martingale maximal function, L_p / H_p quasinorms,
// the atom estimate for the log^2-weighted maximal Fejer operator, and the
// counterexample family f = D_{M_{2n+1}} - D_{M_{2n}} with its divergence
// ratio.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/means.hpp"
#include "vilenkin/parallel.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

struct Atom {
  GroupFunction function;
  Coset support;
  double p = 1.0;
};

struct AtomViolation {
  char condition;  // 'a' mean zero, 'b' sup bound, 'c' support
  double amount;   // how far past the allowed value
};

struct AtomCheck {
  std::optional<Atom> atom;
  std::vector<AtomViolation> violations;

  bool valid() const noexcept { return atom.has_value(); }
  bool violates(char condition) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const AtomViolation& v) { return v.condition == condition; });
  }
};

inline double atom_sup_bound(const GroupSpec& spec, const Coset& support, double p) {
  return std::pow(static_cast<double>(spec.order(support.depth)), 1.0 / p);
}

inline AtomCheck validate_atom(const GroupFunction& a, const Coset& support, double p,
                               double tolerance = 1e-12) {
  if (!(p > 0 && p <= 1)) throw Error(ErrorKind::invalid_argument, "atom exponent must lie in (0, 1]");
  detail::check_point(a.spec, support.base);
  if (support.depth < 0 || support.depth > a.spec.resolution()) {
    throw Error(ErrorKind::out_of_range, "support depth");
  }
  AtomCheck check;
  const double bound = atom_sup_bound(a.spec, support, p);
  const double mu = 1.0 / static_cast<double>(a.spec.order(support.depth));

  Complex mean = 0;
  double sup = 0;
  double outside = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    sup = std::max(sup, std::abs(a[x]));
    if (support.contains_encoded(a.spec, x)) {
      mean += a[x];
    } else {
      outside = std::max(outside, std::abs(a[x]));
    }
  }
  mean /= static_cast<double>(a.size());

  const double mean_tol = tolerance * std::max(1.0, bound * mu);
  if (std::abs(mean) > mean_tol) check.violations.push_back({'a', std::abs(mean)});
  if (sup > bound * (1.0 + tolerance)) check.violations.push_back({'b', sup - bound});
  if (outside > tolerance) check.violations.push_back({'c', outside});
  if (check.violations.empty()) check.atom = Atom{a, support, p};
  return check;
}

/// Uniform values on the points of I_depth(0), centered, then rescaled
/// into the sup bound when centering pushed them past it.
inline Atom random_atom(const GroupSpec& spec, int depth, double p, std::mt19937_64& rng) {
  if (depth < 0 || depth > spec.resolution()) throw Error(ErrorKind::out_of_range, "atom depth");
  const Coset support = origin_coset(spec, depth);
  const double bound = atom_sup_bound(spec, support, p);
  const auto MN = static_cast<std::size_t>(spec.order(depth));
  GroupFunction a(spec);
  double sum = 0;
  for (std::size_t x = 0; x < a.size(); x += MN) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    a[x] = (2.0 * u - 1.0) * bound;
    sum += a[x].real();
  }
  const double mean = sum / static_cast<double>(a.size() / MN);
  double sup = 0;
  for (std::size_t x = 0; x < a.size(); x += MN) {
    a[x] -= mean;
    sup = std::max(sup, std::abs(a[x]));
  }
  if (sup > bound) a *= bound / sup;
  return Atom{std::move(a), support, p};
}

/// f* = max_{0<=n<=N} |S_{M_n} f|; exact for I_N-measurable f.
inline GroupFunction martingale_maximal(const GroupFunction& f) {
  GroupFunction out(f.spec);
  for (int n = 0; n <= f.spec.resolution(); ++n) {
    const GroupFunction e = conditional_expectation(f, n);
    for (std::size_t x = 0; x < f.size(); ++x) {
      out[x] = std::max(out[x].real(), std::abs(e[x]));
    }
  }
  return out;
}

/// (int |f|^p dmu)^{1/p}
inline double lp_quasinorm(const GroupFunction& f, double p) {
  if (!(p > 0)) throw Error(ErrorKind::invalid_argument, "p must be positive");
  double s = 0;
  for (const auto& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

inline double hp_quasinorm(const GroupFunction& f, double p) {
  return lp_quasinorm(martingale_maximal(f), p);
}

/// Zeroes entries with |v| <= rel * max|v|.  Fractional powers turn 1e-16
/// noise on exact zeros into 1e-8 contributions.
inline GroupFunction flush_roundoff(GroupFunction f, double rel = 1e-12) {
  const double floor = rel * f.max_abs();
  for (auto& v : f.values) {
    if (std::abs(v) <= floor) v = 0;
  }
  return f;
}

/// int_{complement of I_N} (sup_n |sigma_n a| / phi(n))^{1/2} dmu.
/// `value` uses the truncated maximal field (n <= M_{N'}); `upper` adds the
/// tail bound pointwise and so brackets the untruncated integral.
struct AtomIntegral {
  double value = 0;
  double upper = 0;
};

inline AtomIntegral theorem1_atom_integral(const Atom& atom,
                                           const WeightFunction& weight = WeightFunction::log_squared()) {
  const GroupSpec& spec = atom.function.spec;
  const int N = atom.support.depth;
  if (std::abs(atom.p - 0.5) > 1e-15) throw Error(ErrorKind::invalid_argument, "the atom estimate is for 1/2-atoms");
  if (N >= spec.resolution()) {
    throw Error(ErrorKind::insufficient_resolution, "atom needs an embedding resolution N' > N");
  }
  const AtomCheck check = validate_atom(atom.function, atom.support, atom.p);
  if (!check.valid()) throw Error(ErrorKind::invalid_argument, "not a valid 1/2-atom");

  // operators commute with translation, so move the support to I_N(0)
  const GroupFunction a = translate(atom.function, sub_encoded(spec, 0, encode(spec, atom.support.base)));
  const MaximalField field = maximal(a, weight, spec.size());
  const auto MN = static_cast<std::size_t>(spec.order(N));
  AtomIntegral out;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (x % MN == 0) continue;  // x in I_N
    out.value += std::sqrt(field.values[x]);
    out.upper += std::sqrt(field.values[x] + field.tail_bound);
  }
  out.value /= static_cast<double>(a.size());
  out.upper /= static_cast<double>(a.size());
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample f_{n} = D_{M_{2n+1}} - D_{M_{2n}}

struct CounterexampleSpec {
  int nk = 0;
  GroupSpec spec;
  std::uint64_t q = 0;  // q_{nk}
  GroupFunction f;
  /// max |f^(i) - 1_{[M_{2nk}, M_{2nk+1})}(i)|
  double spectrum_defect = 0;
  /// max deviation of S_i f from its three-branch formula on the sampled i
  double partial_sum_defect = 0;
};

inline CounterexampleSpec build_counterexample(int nk, const GroupSpec& spec) {
  if (nk < 1) throw Error(ErrorKind::invalid_argument, "n_k must be positive");
  if (spec.resolution() < 2 * nk + 1) {
    throw Error(ErrorKind::insufficient_resolution, "counterexample needs N >= 2 n_k + 1");
  }
  CounterexampleSpec cs;
  cs.nk = nk;
  cs.spec = spec;
  cs.q = q_number(nk, spec);
  const std::uint64_t lo = spec.order(2 * nk);
  const std::uint64_t hi = spec.order(2 * nk + 1);
  const GroupFunction d_lo = dirichlet(lo, spec);
  cs.f = dirichlet(hi, spec) - d_lo;

  const Spectrum s = forward(cs.f);
  for (std::uint64_t i = 0; i < s.size(); ++i) {
    const double expected = (i >= lo && i < hi) ? 1.0 : 0.0;
    cs.spectrum_defect = std::max(cs.spectrum_defect, std::abs(s[i] - expected));
  }

  std::vector<std::uint64_t> samples = {0, 1, lo - 1, lo, lo + (hi - lo) / 2, hi - 1, hi, spec.size()};
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  for (std::uint64_t i : samples) {
    if (i > spec.size()) continue;
    const GroupFunction si = partial_sum(cs.f, i);
    GroupFunction expected(spec);
    if (i >= lo && i < hi) {
      expected = dirichlet(i, spec) - d_lo;
    } else if (i >= hi) {
      expected = cs.f;
    }
    cs.partial_sum_defect = std::max(cs.partial_sum_defect, max_abs_diff(si, expected));
  }
  return cs;
}

struct DivergenceResult {
  int nk = 0;
  std::uint64_t q = 0;
  double h12_norm = 0;      // ||f||_{H_{1/2}}
  double l12_integral = 0;  // int |sigma_q f / phi(q)|^{1/2} dmu
  double ratio = 0;         // l12_integral^2 / h12_norm
  /// max_x | |sigma_q f| - (q_{nk-1}/q) |K_{q_{nk-1}}| |
  double route_defect = 0;
};

inline DivergenceResult divergence_ratio(const CounterexampleSpec& cs, const WeightFunction& weight) {
  const GroupSpec& spec = cs.spec;
  DivergenceResult r;
  r.nk = cs.nk;
  r.q = cs.q;
  const GroupFunction sigma = flush_roundoff(fejer_mean_by_kernel(cs.f, cs.q));

  const std::uint64_t q_prev = q_number(cs.nk - 1, spec);
  const GroupFunction k_prev = fejer(q_prev, spec);
  const double shrink = static_cast<double>(q_prev) / static_cast<double>(cs.q);
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    r.route_defect = std::max(r.route_defect, std::abs(std::abs(sigma[x]) - shrink * std::abs(k_prev[x])));
  }

  const double phi = weight(cs.q);
  double acc = 0;
  for (const auto& v : sigma.values) acc += std::sqrt(std::abs(v) / phi);
  r.l12_integral = acc / static_cast<double>(sigma.size());
  r.h12_norm = lp_quasinorm(flush_roundoff(martingale_maximal(cs.f)), 0.5);
  r.ratio = r.l12_integral * r.l12_integral / r.h12_norm;
  return r;
}

/// One row per n_k in [from, to]; each uses resolution 2 n_k + 1 of `radices`.
inline std::vector<DivergenceResult> divergence_sweep(const std::vector<int>& radices, int from, int to,
                                                      const WeightFunction& weight,
                                                      unsigned threads = default_thread_count()) {
  if (from < 1 || to < from) throw Error(ErrorKind::invalid_argument, "n_k range");
  if (radices.size() < static_cast<std::size_t>(2 * to + 1)) {
    throw Error(ErrorKind::insufficient_resolution,
                "n_k = " + std::to_string(to) + " needs " + std::to_string(2 * to + 1) + " radices");
  }
  std::vector<DivergenceResult> rows(static_cast<std::size_t>(to - from + 1));
  parallel_for(
      rows.size(),
      [&](std::size_t i) {
        const int nk = from + static_cast<int>(i);
        const GroupSpec spec(radices, 2 * nk + 1);
        rows[i] = divergence_ratio(build_counterexample(nk, spec), weight);
      },
      threads);
  return rows;
}

/// `samples` seeded random 1/2-atoms on I_depth(0) at the resolution of
/// `fine`.  Sample i draws from its own stream seeded by (seed, i).
inline std::vector<AtomIntegral> atom_sweep(const GroupSpec& fine, int depth, std::size_t samples,
                                            std::uint64_t seed,
                                            const WeightFunction& weight = WeightFunction::log_squared(),
                                            unsigned threads = default_thread_count()) {
  std::vector<AtomIntegral> out(samples);
  parallel_for(
      samples,
      [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        out[i] = theorem1_atom_integral(random_atom(fine, depth, 0.5, rng), weight);
      },
      threads);
  return out;
}

}  // namespace vilenkin
