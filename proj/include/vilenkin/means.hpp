#pragma once

// Partial sums S_n f, Fejer means sigma_n f and the truncated maximal
// operators sup_n |sigma_n f| / phi(n).
//
// An I_N-measurable f has S_k f = f for every k >= M_N, so for n > M_N
//
//   sigma_n f = (M_N / n) sigma_{M_N} f + (1 - M_N / n) f
//
// exactly.  The maximal operator uses this to evaluate any finite range of
// n and to bound everything beyond it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

enum class LogBase { binary, natural };

class WeightFunction {
 public:
  enum class Kind { log_squared, constant_one, log_power, table };

  static WeightFunction log_squared(LogBase base = LogBase::binary) {
    WeightFunction w(Kind::log_squared);
    w.base_ = base;
    w.exponent_ = 2.0;
    return w;
  }

  static WeightFunction one() { return WeightFunction(Kind::constant_one); }

  /// log2(n+1)^gamma.
  static WeightFunction log_power(double gamma) {
    if (!(gamma >= 0) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::invalid_argument, "log_power needs a finite gamma >= 0");
    }
    WeightFunction w(Kind::log_power);
    w.exponent_ = gamma;
    return w;
  }

  /// phi(n) = values[n-1] for n <= size; the last value beyond.
  static WeightFunction table(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorKind::invalid_argument, "empty weight table");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] >= 1.0)) throw Error(ErrorKind::invalid_argument, "weight table entry below 1");
      if (i > 0 && values[i] < values[i - 1]) {
        throw Error(ErrorKind::invalid_argument, "weight table is not nondecreasing");
      }
    }
    WeightFunction w(Kind::table);
    w.table_ = std::move(values);
    return w;
  }

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  LogBase base() const noexcept { return base_; }

  double operator()(std::uint64_t n) const {
    if (n == 0) throw Error(ErrorKind::out_of_range, "weights are defined for n >= 1");
    switch (kind_) {
      case Kind::constant_one:
        return 1.0;
      case Kind::log_squared:
      case Kind::log_power: {
        const double x = static_cast<double>(n) + 1.0;
        const double lg = base_ == LogBase::binary ? std::log2(x) : std::log(x);
        return std::pow(lg, exponent_);
      }
      case Kind::table:
        return n <= table_.size() ? table_[n - 1] : table_.back();
    }
    return 1.0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::constant_one: return "one";
      case Kind::log_squared: return base_ == LogBase::binary ? "log2sq" : "lnsq";
      case Kind::log_power: return "logpow:" + std::to_string(exponent_);
      case Kind::table: return "table";
    }
    return "?";
  }

 private:
  explicit WeightFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  LogBase base_ = LogBase::binary;
  double exponent_ = 0.0;
  std::vector<double> table_;
};

/// "log2sq" | "lnsq" | "one" | "logpow:<gamma>"
inline WeightFunction parse_weight(std::string_view text) {
  if (text == "log2sq") return WeightFunction::log_squared(LogBase::binary);
  if (text == "lnsq") return WeightFunction::log_squared(LogBase::natural);
  if (text == "one") return WeightFunction::one();
  if (text.rfind("logpow:", 0) == 0) {
    const std::string g(text.substr(7));
    std::size_t used = 0;
    double gamma = 0;
    try {
      gamma = std::stod(g, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != g.size()) throw Error(ErrorKind::invalid_argument, "bad logpow exponent '" + g + "'");
    return WeightFunction::log_power(gamma);
  }
  throw Error(ErrorKind::invalid_argument, "unknown weight '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

/// S_n f by spectral truncation.
inline GroupFunction partial_sum(const GroupFunction& f, std::uint64_t n) {
  if (n > f.spec.size()) throw Error(ErrorKind::out_of_range, "S_n needs n <= M_N");
  const TransformPlan plan(f.spec);
  Spectrum s = plan.forward(f);
  for (std::size_t k = n; k < s.size(); ++k) s[k] = 0;
  return plan.inverse(s);
}

/// S_n f = f * D_n.
inline GroupFunction partial_sum_by_kernel(const GroupFunction& f, std::uint64_t n) {
  return convolve(f, dirichlet(n, f.spec));
}

/// S_{M_n} f: the average of f over each coset I_n(x).
inline GroupFunction conditional_expectation(const GroupFunction& f, int n) {
  const GroupSpec& spec = f.spec;
  if (n < 0 || n > spec.resolution()) throw Error(ErrorKind::out_of_range, "conditional expectation depth");
  const auto Mn = static_cast<std::size_t>(spec.order(n));
  std::vector<Complex> avg(Mn, Complex{});
  for (std::size_t x = 0; x < f.size(); ++x) avg[x % Mn] += f[x];
  const double scale = static_cast<double>(Mn) / static_cast<double>(f.size());
  GroupFunction out(spec);
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = avg[x % Mn] * scale;
  return out;
}

/// sigma_n f for any n >= 1.
inline GroupFunction fejer_mean(const GroupFunction& f, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::undefined_kernel, "sigma_0 is undefined");
  const std::uint64_t MN = f.spec.size();
  if (n <= MN) {
    const TransformPlan plan(f.spec);
    Spectrum s = plan.forward(f);
    for (std::size_t j = 0; j < s.size(); ++j) {
      s[j] *= j + 1 < n ? static_cast<double>(n - 1 - j) / static_cast<double>(n) : 0.0;
    }
    return plan.inverse(s);
  }
  const GroupFunction top = fejer_mean(f, MN);
  const double w = static_cast<double>(MN) / static_cast<double>(n);
  GroupFunction out(f.spec);
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = w * top[x] + (1.0 - w) * f[x];
  return out;
}

/// sigma_n f = f * K_n, n <= M_N.
inline GroupFunction fejer_mean_by_kernel(const GroupFunction& f, std::uint64_t n) {
  return convolve(f, fejer(n, f.spec));
}

struct MaximalField {
  GroupSpec spec;
  std::vector<double> values;
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 0;
  /// Dominates |sigma_n f(x)| / phi(n) for every n > n_max and every x.
  double tail_bound = 0;
};

/// Pointwise sup_{1 <= n <= n_max} |sigma_n f(x)| / phi(n).  Needs
/// n_max >= M_N so that the tail bound is sound.
inline MaximalField maximal(const GroupFunction& f, const WeightFunction& weight, std::uint64_t n_max) {
  const GroupSpec& spec = f.spec;
  const std::uint64_t MN = spec.size();
  if (n_max < MN) {
    throw Error(ErrorKind::truncation_unsound,
                "n_max = " + std::to_string(n_max) + " is below M_N = " + std::to_string(MN));
  }
  MaximalField field{spec, std::vector<double>(f.size(), 0.0), 1, n_max, 0.0};

  const CharacterTable table(spec);
  const Spectrum coeffs = forward(f);
  std::vector<Complex> partial(f.size(), Complex{});  // S_{n-1} f
  std::vector<Complex> running(f.size(), Complex{});  // sum_{k<n} S_k f
  for (std::uint64_t n = 1; n <= MN; ++n) {
    for (std::size_t x = 0; x < f.size(); ++x) running[x] += partial[x];
    const double scale = 1.0 / (static_cast<double>(n) * weight(n));
    for (std::size_t x = 0; x < f.size(); ++x) {
      field.values[x] = std::max(field.values[x], std::abs(running[x]) * scale);
    }
    const Complex c = coeffs[n - 1];
    if (c != Complex{}) {
      const auto row = table.exponent_row(n - 1);
      for (std::size_t x = 0; x < f.size(); ++x) partial[x] += c * table.root(row[x]);
    }
  }
  // running now holds M_N sigma_{M_N} f
  std::vector<Complex> top(f.size());
  double top_max = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    top[x] = running[x] / static_cast<double>(MN);
    top_max = std::max(top_max, std::abs(top[x]));
  }
  for (std::uint64_t n = MN + 1; n <= n_max; ++n) {
    const double w = static_cast<double>(MN) / static_cast<double>(n);
    const double inv_phi = 1.0 / weight(n);
    for (std::size_t x = 0; x < f.size(); ++x) {
      field.values[x] = std::max(field.values[x], std::abs(w * top[x] + (1.0 - w) * f[x]) * inv_phi);
    }
  }
  field.tail_bound = std::max(top_max, f.max_abs()) / weight(n_max + 1);
  return field;
}

inline MaximalField maximal(const GroupFunction& f, const WeightFunction& weight) {
  return maximal(f, weight, f.spec.size());
}

}  // namespace vilenkin
