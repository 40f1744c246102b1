#pragma once

// The Vilenkin character system psi_n on the M_N-point quotient and the
// fast transform that diagonalizes group convolution.
//
// psi_n(x) = prod_k r_k(x)^{n_k},  r_k(x) = exp(2 pi i x_k / m_k).
//
// Because psi_n factors over coordinates, the transform is a tensor
// product of small DFTs: stage k applies an m_k-point DFT along digit k
// (stride M_k).  Cost is O(M_N * sum_k m_k).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <memory>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vilenkin/cyclotomic.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

using Complex = std::complex<double>;

/// A complex-valued function on the quotient; values[i] is the value at the
/// point with encoding i.
struct GroupFunction {
  GroupSpec spec;
  std::vector<Complex> values;

  GroupFunction() = default;
  explicit GroupFunction(GroupSpec s) : spec(std::move(s)), values(spec.size(), Complex{}) {}
  GroupFunction(GroupSpec s, std::vector<Complex> v) : spec(std::move(s)), values(std::move(v)) {
    if (values.size() != spec.size()) {
      throw Error(ErrorKind::spec_mismatch, "function length " + std::to_string(values.size()) +
                                                " differs from M_N = " + std::to_string(spec.size()));
    }
  }

  std::size_t size() const noexcept { return values.size(); }
  Complex& operator[](std::size_t i) { return values[i]; }
  const Complex& operator[](std::size_t i) const { return values[i]; }
  Complex at(const Point& x) const { return values[encode(spec, x)]; }

  /// Integral against normalized Haar measure.
  Complex integral() const {
    Complex s = 0;
    for (const auto& v : values) s += v;
    return s / static_cast<double>(values.size());
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  GroupFunction& operator+=(const GroupFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  GroupFunction& operator-=(const GroupFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  GroupFunction& operator*=(Complex s) {
    for (auto& v : values) v *= s;
    return *this;
  }
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
  friend GroupFunction operator*(Complex s, GroupFunction a) { return a *= s; }

  void check_same(const GroupFunction& o) const {
    if (!(spec == o.spec)) throw Error(ErrorKind::spec_mismatch, spec.id() + " vs " + o.spec.id());
  }
};

inline double max_abs_diff(const GroupFunction& a, const GroupFunction& b) {
  a.check_same(b);
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// The M_N Vilenkin-Fourier coefficients; coeffs[k] = f^(k).
struct Spectrum {
  GroupSpec spec;
  std::vector<Complex> coeffs;

  Spectrum() = default;
  explicit Spectrum(GroupSpec s) : spec(std::move(s)), coeffs(spec.size(), Complex{}) {}
  Spectrum(GroupSpec s, std::vector<Complex> c) : spec(std::move(s)), coeffs(std::move(c)) {
    if (coeffs.size() != spec.size()) throw Error(ErrorKind::spec_mismatch, "spectrum length");
  }

  std::size_t size() const noexcept { return coeffs.size(); }
  Complex& operator[](std::size_t i) { return coeffs[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs[i]; }
};

inline double max_abs_diff(const Spectrum& a, const Spectrum& b) {
  if (!(a.spec == b.spec)) throw Error(ErrorKind::spec_mismatch, "spectra over different specs");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Characters

inline Complex rademacher(int k, const Point& x, const GroupSpec& spec) {
  if (k < 0 || k >= spec.resolution()) throw Error(ErrorKind::out_of_range, "rademacher coordinate");
  detail::check_point(spec, x);
  const double angle = 2.0 * std::numbers::pi * x.digits[k] / spec.radix(k);
  return {std::cos(angle), std::sin(angle)};
}

/// Character values as exponents of zeta_L, L = lcm(m_k): psi_n(x) =
/// zeta_L^{sum_j n_j x_j L/m_j}.  Exponents are integers, so Walsh and
/// cyclotomic-exact computations share this table.
class CharacterTable {
 public:
  explicit CharacterTable(GroupSpec spec) : spec_(std::move(spec)) {
    int L = 1;
    for (int m : spec_.radices()) L = std::lcm(L, m);
    field_ = std::make_shared<const CyclotomicField>(L);
    for (int m : spec_.radices()) weights_.push_back(L / m);
  }

  const GroupSpec& spec() const noexcept { return spec_; }
  int root_order() const noexcept { return field_->order(); }
  const std::shared_ptr<const CyclotomicField>& field() const noexcept { return field_; }
  Complex root(int e) const { return field_->root(e); }

  int exponent(const Index& n, const Point& x) const {
    const int L = root_order();
    long long e = 0;
    for (int j = 0; j < spec_.resolution(); ++j) {
      e += static_cast<long long>(n.digits[j]) * x.digits[j] * weights_[j];
    }
    return static_cast<int>(e % L);
  }

  Complex value(const Index& n, const Point& x) const { return root(exponent(n, x)); }

  /// Exponents of psi_n at every point, in encoding order.
  std::vector<int> exponent_row(std::uint64_t n) const {
    const Index idx = index_digits(n, spec_);
    const int L = root_order();
    const int N = spec_.resolution();
    std::vector<int> step(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) step[j] = (idx.digits[j] * weights_[j]) % L;
    std::vector<int> row(spec_.size());
    std::vector<int> digit(static_cast<std::size_t>(N), 0);
    int e = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = e;
      for (int j = 0; j < N; ++j) {
        if (++digit[j] < spec_.radix(j)) {
          e = (e + step[j]) % L;
          break;
        }
        digit[j] = 0;
        // undo (m_j - 1) steps on wrap
        e = static_cast<int>((e - static_cast<long long>(spec_.radix(j) - 1) * step[j] % L + L) % L);
      }
    }
    return row;
  }

  /// psi_n as a dense function.
  GroupFunction row(std::uint64_t n) const {
    GroupFunction f(spec_);
    const auto ex = exponent_row(n);
    for (std::size_t i = 0; i < ex.size(); ++i) f[i] = root(ex[i]);
    return f;
  }

 private:
  GroupSpec spec_;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<int> weights_;
};

inline Complex character(std::uint64_t n, const Point& x, const GroupSpec& spec) {
  detail::check_point(spec, x);
  const Index idx = index_digits(n, spec);
  Complex v = 1;
  for (int k = 0; k < spec.resolution(); ++k) {
    if (idx.digits[k] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * (static_cast<long long>(idx.digits[k]) * x.digits[k] %
                                                   spec.radix(k)) / spec.radix(k);
    v *= Complex{std::cos(angle), std::sin(angle)};
  }
  return v;
}

inline GroupFunction character_function(std::uint64_t n, const GroupSpec& spec) {
  return CharacterTable(spec).row(n);
}

// ---------------------------------------------------------------------------
// Fast transform

/// Per-spec twiddle tables, evaluated once from exact rational angles.
class TransformPlan {
 public:
  explicit TransformPlan(GroupSpec spec) : spec_(std::move(spec)) {
    for (int k = 0; k < spec_.resolution(); ++k) {
      const int m = spec_.radix(k);
      std::vector<Complex> w(static_cast<std::size_t>(m));
      for (int e = 0; e < m; ++e) {
        const double angle = 2.0 * std::numbers::pi * e / m;
        w[static_cast<std::size_t>(e)] = {std::cos(angle), std::sin(angle)};
      }
      twiddles_.push_back(std::move(w));
    }
  }

  const GroupSpec& spec() const noexcept { return spec_; }

  /// f^(k) = (1/M_N) sum_x f(x) conj(psi_k(x)).
  Spectrum forward(const GroupFunction& f) const {
    check(f.spec);
    std::vector<Complex> data = f.values;
    apply(data, /*conjugate=*/true);
    const double scale = 1.0 / static_cast<double>(spec_.size());
    for (auto& v : data) v *= scale;
    return Spectrum(spec_, std::move(data));
  }

  /// f(x) = sum_k c_k psi_k(x).
  GroupFunction inverse(const Spectrum& s) const {
    check(s.spec);
    std::vector<Complex> data = s.coeffs;
    apply(data, /*conjugate=*/false);
    return GroupFunction(spec_, std::move(data));
  }

 private:
  void check(const GroupSpec& other) const {
    if (!(other == spec_)) throw Error(ErrorKind::spec_mismatch, "transform plan spec differs");
  }

  void apply(std::vector<Complex>& data, bool conjugate) const {
    std::vector<Complex> in;
    std::vector<Complex> out;
    for (int k = 0; k < spec_.resolution(); ++k) {
      const auto m = static_cast<std::size_t>(spec_.radix(k));
      const auto stride = static_cast<std::size_t>(spec_.order(k));
      const std::size_t block = stride * m;
      const auto& w = twiddles_[static_cast<std::size_t>(k)];
      if (m == 2) {
        for (std::size_t b = 0; b < data.size(); b += block) {
          for (std::size_t r = 0; r < stride; ++r) {
            Complex& a = data[b + r];
            Complex& c = data[b + r + stride];
            const Complex t = a;
            a = t + c;
            c = t - c;
          }
        }
        continue;
      }
      in.resize(m);
      out.resize(m);
      for (std::size_t b = 0; b < data.size(); b += block) {
        for (std::size_t r = 0; r < stride; ++r) {
          for (std::size_t d = 0; d < m; ++d) in[d] = data[b + r + d * stride];
          for (std::size_t j = 0; j < m; ++j) {
            Complex acc = 0;
            for (std::size_t d = 0; d < m; ++d) {
              const Complex& t = w[(j * d) % m];
              acc += in[d] * (conjugate ? std::conj(t) : t);
            }
            out[j] = acc;
          }
          for (std::size_t j = 0; j < m; ++j) data[b + r + j * stride] = out[j];
        }
      }
    }
  }

  GroupSpec spec_;
  std::vector<std::vector<Complex>> twiddles_;
};

inline Spectrum forward(const GroupFunction& f) { return TransformPlan(f.spec).forward(f); }
inline GroupFunction inverse(const Spectrum& s) { return TransformPlan(s.spec).inverse(s); }

/// Direct O(M_N^2) evaluation of the coefficient integral; the oracle for
/// the fast path.
inline Spectrum naive_forward(const GroupFunction& f) {
  const CharacterTable table(f.spec);
  Spectrum s(f.spec);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (std::uint64_t k = 0; k < f.spec.size(); ++k) {
    const auto row = table.exponent_row(k);
    Complex acc = 0;
    for (std::size_t x = 0; x < f.size(); ++x) acc += f[x] * std::conj(table.root(row[x]));
    s[k] = acc * scale;
  }
  return s;
}

/// (f * g)(x) = integral f(t) g(x - t) dmu(t), through the spectral product.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& g) {
  f.check_same(g);
  const TransformPlan plan(f.spec);
  Spectrum a = plan.forward(f);
  const Spectrum b = plan.forward(g);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  return plan.inverse(a);
}

/// Direct double-loop convolution.
inline GroupFunction convolve_direct(const GroupFunction& f, const GroupFunction& g) {
  f.check_same(g);
  GroupFunction out(f.spec);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    Complex acc = 0;
    for (std::size_t t = 0; t < f.size(); ++t) acc += f[t] * g[sub_encoded(f.spec, x, t)];
    out[x] = acc * scale;
  }
  return out;
}

/// Translate: (tau_y f)(x) = f(x - y).
inline GroupFunction translate(const GroupFunction& f, std::size_t y) {
  GroupFunction out(f.spec);
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[sub_encoded(f.spec, x, y)];
  return out;
}

// ---------------------------------------------------------------------------
// CSV: "point_encoding,re,im" / "index,re,im"

namespace detail {

inline void write_complex_csv(std::ostream& os, const char* key, const std::vector<Complex>& v) {
  os << key << ",re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, v[i].real(), v[i].imag());
    os << buf;
  }
}

inline std::vector<Complex> read_complex_csv(std::istream& is, const char* key, std::size_t expected) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::invalid_argument, "empty CSV");
  if (line.rfind(key, 0) != 0) {
    throw Error(ErrorKind::invalid_argument, std::string("CSV header must start with '") + key + "'");
  }
  std::vector<Complex> v(expected, Complex{});
  std::vector<bool> seen(expected, false);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw Error(ErrorKind::invalid_argument, "malformed CSV row: " + line);
    }
    std::size_t i = 0;
    Complex value;
    try {
      i = std::stoull(a);
      value = {std::stod(b), std::stod(c)};
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::invalid_argument, "non-numeric CSV row: " + line);
    }
    if (i >= expected) throw Error(ErrorKind::out_of_range, "CSV row index " + a);
    v[i] = value;
    seen[i] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::invalid_argument, "CSV does not cover every point");
  }
  return v;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const GroupFunction& f) {
  detail::write_complex_csv(os, "point_encoding", f.values);
}
inline void write_csv(std::ostream& os, const Spectrum& s) {
  detail::write_complex_csv(os, "index", s.coeffs);
}
inline GroupFunction read_function_csv(std::istream& is, const GroupSpec& spec) {
  return GroupFunction(spec, detail::read_complex_csv(is, "point_encoding", spec.size()));
}
inline Spectrum read_spectrum_csv(std::istream& is, const GroupSpec& spec) {
  return Spectrum(spec, detail::read_complex_csv(is, "index", spec.size()));
}

}  // namespace vilenkin
