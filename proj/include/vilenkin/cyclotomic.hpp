#pragma once

// Exact arithmetic in the ring Z[zeta_L] of cyclotomic integers.  Every
// Vilenkin character takes values in the L-th roots of unity with
// L = lcm(m_0, ..., m_{N-1}), so integer combinations of characters
// (Dirichlet kernels, n * K_n) are represented here without rounding.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace detail {

using IntPoly = std::vector<std::int64_t>;  // coefficient of X^i at slot i

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Exact quotient of a by a monic divisor b; throws if the remainder is nonzero.
inline IntPoly exact_div(IntPoly a, const IntPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db) return {0};
  IntPoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw Error(ErrorKind::invalid_argument, "inexact cyclotomic division");
  }
  trim(q);
  return q;
}

inline IntPoly cyclotomic_polynomial(int L) {
  // Phi_L = (X^L - 1) / prod_{d | L, d < L} Phi_d
  IntPoly p(static_cast<std::size_t>(L) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(L)] = 1;
  for (int d = 1; d < L; ++d) {
    if (L % d == 0) p = exact_div(p, cyclotomic_polynomial(d));
  }
  return p;
}

}  // namespace detail

/// The ring Z[zeta_L] together with its minimal polynomial Phi_L.
class CyclotomicField {
 public:
  explicit CyclotomicField(int order) : order_(order) {
    if (order < 1) throw Error(ErrorKind::invalid_argument, "cyclotomic order must be >= 1");
    minimal_ = detail::cyclotomic_polynomial(order);
    roots_.resize(static_cast<std::size_t>(order));
    for (int e = 0; e < order; ++e) {
      const double angle = 2.0 * std::numbers::pi * e / order;
      roots_[static_cast<std::size_t>(e)] = {std::cos(angle), std::sin(angle)};
    }
  }

  int order() const noexcept { return order_; }
  int degree() const noexcept { return static_cast<int>(minimal_.size()) - 1; }
  const std::vector<std::int64_t>& minimal_polynomial() const noexcept { return minimal_; }
  std::complex<double> root(int e) const { return roots_[static_cast<std::size_t>(e)]; }

  /// Canonical representative of sum_e counts[e] zeta^e: the remainder
  /// modulo Phi_L, of length degree().
  std::vector<std::int64_t> reduce(const std::vector<std::int64_t>& counts) const {
    std::vector<std::int64_t> r = counts;
    const std::size_t d = minimal_.size() - 1;
    for (std::size_t i = r.size(); i-- > d;) {
      const std::int64_t c = r[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j) r[i - d + j] -= c * minimal_[j];
    }
    r.resize(d);
    return r;
  }

 private:
  int order_;
  std::vector<std::int64_t> minimal_;
  std::vector<std::complex<double>> roots_;
};

/// An element sum_e counts[e] zeta_L^e.  The count vector is not canonical;
/// comparisons reduce modulo Phi_L first.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(std::shared_ptr<const CyclotomicField> field)
      : field_(std::move(field)), counts_(static_cast<std::size_t>(field_->order()), 0) {}

  static CyclotomicInt integer(std::shared_ptr<const CyclotomicField> field, std::int64_t value) {
    CyclotomicInt z(std::move(field));
    z.counts_[0] = value;
    return z;
  }

  const CyclotomicField& field() const noexcept { return *field_; }

  /// += coeff * zeta^exponent
  void add_root(int exponent, std::int64_t coeff = 1) {
    const int L = field_->order();
    counts_[static_cast<std::size_t>(((exponent % L) + L) % L)] += coeff;
  }

  /// Multiplication by the unit zeta^exponent.
  CyclotomicInt rotated(int exponent) const {
    const int L = field_->order();
    CyclotomicInt out(field_);
    for (int e = 0; e < L; ++e) {
      out.counts_[static_cast<std::size_t>(((e + exponent) % L + L) % L)] = counts_[static_cast<std::size_t>(e)];
    }
    return out;
  }

  CyclotomicInt& operator+=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t e = 0; e < counts_.size(); ++e) counts_[e] += o.counts_[e];
    return *this;
  }
  CyclotomicInt& operator-=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t e = 0; e < counts_.size(); ++e) counts_[e] -= o.counts_[e];
    return *this;
  }
  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }

  CyclotomicInt operator*(const CyclotomicInt& o) const {
    check_same(o);
    const int L = field_->order();
    CyclotomicInt out(field_);
    for (int a = 0; a < L; ++a) {
      if (counts_[static_cast<std::size_t>(a)] == 0) continue;
      for (int b = 0; b < L; ++b) {
        out.counts_[static_cast<std::size_t>((a + b) % L)] +=
            counts_[static_cast<std::size_t>(a)] * o.counts_[static_cast<std::size_t>(b)];
      }
    }
    return out;
  }

  std::vector<std::int64_t> canonical() const { return field_->reduce(counts_); }

  bool is_zero() const {
    for (auto c : canonical()) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return (a - b).is_zero();
  }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    for (int e = 0; e < field_->order(); ++e) {
      z += static_cast<double>(counts_[static_cast<std::size_t>(e)]) * field_->root(e);
    }
    return z;
  }

 private:
  void check_same(const CyclotomicInt& o) const {
    if (field_->order() != o.field_->order()) {
      throw Error(ErrorKind::spec_mismatch, "cyclotomic orders differ");
    }
  }

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<std::int64_t> counts_;
};

}  // namespace vilenkin
