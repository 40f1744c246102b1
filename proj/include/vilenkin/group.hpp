#pragma once

// Mixed-radix arithmetic on the resolution-N quotient of a bounded Vilenkin
// group G_m = prod_k Z_{m_k}.  Points and indices are both encoded
// least-significant-digit first: digit k carries weight M_k.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "vilenkin/error.hpp"

namespace vilenkin {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 22;

class GroupSpec {
 public:
  GroupSpec() = default;

  /// Keeps the first `resolution` radices of `radices`.  Throws
  /// invalid-spec for a radix below 2 or a short sequence, and
  /// resolution-too-large when M_N exceeds `size_cap`.
  GroupSpec(const std::vector<int>& radices, int resolution,
            std::uint64_t size_cap = kDefaultSizeCap) {
    if (resolution < 0) throw Error(ErrorKind::invalid_spec, "negative resolution");
    if (radices.size() < static_cast<std::size_t>(resolution)) {
      throw Error(ErrorKind::invalid_spec, "radix sequence shorter than resolution " +
                                               std::to_string(resolution));
    }
    radices_.assign(radices.begin(), radices.begin() + resolution);
    orders_.assign(1, 1);
    for (int k = 0; k < resolution; ++k) {
      const int m = radices_[k];
      if (m < 2) {
        throw Error(ErrorKind::invalid_spec,
                    "radix m_" + std::to_string(k) + " = " + std::to_string(m) + " is below 2");
      }
      const std::uint64_t prev = orders_.back();
      if (prev > size_cap / static_cast<std::uint64_t>(m)) {
        throw Error(ErrorKind::resolution_too_large,
                    "M_" + std::to_string(k + 1) + " exceeds the size cap " + std::to_string(size_cap));
      }
      orders_.push_back(prev * static_cast<std::uint64_t>(m));
    }
  }

  explicit GroupSpec(const std::vector<int>& radices)
      : GroupSpec(radices, static_cast<int>(radices.size())) {}

  int resolution() const noexcept { return static_cast<int>(radices_.size()); }
  int radix(int k) const { return radices_.at(static_cast<std::size_t>(k)); }
  /// M_k for 0 <= k <= N.
  std::uint64_t order(int k) const { return orders_.at(static_cast<std::size_t>(k)); }
  /// M_N, the number of points of the quotient.
  std::uint64_t size() const noexcept { return orders_.empty() ? 1 : orders_.back(); }
  const std::vector<int>& radices() const noexcept { return radices_; }
  const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }

  GroupSpec truncated(int resolution) const {
    if (resolution > this->resolution()) {
      throw Error(ErrorKind::insufficient_resolution, "cannot refine a spec by truncation");
    }
    return GroupSpec(radices_, resolution);
  }

  bool is_walsh() const noexcept {
    for (int m : radices_) {
      if (m != 2) return false;
    }
    return true;
  }

  std::string id() const {
    std::ostringstream os;
    os << "m=";
    for (std::size_t k = 0; k < radices_.size(); ++k) os << (k ? "," : "") << radices_[k];
    os << ";N=" << radices_.size();
    return os.str();
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.radices_ == b.radices_; }

 private:
  std::vector<int> radices_;
  std::vector<std::uint64_t> orders_{1};
};

inline GroupSpec build_spec(const std::vector<int>& radices, int resolution,
                            std::uint64_t size_cap = kDefaultSizeCap) {
  return GroupSpec(radices, resolution, size_cap);
}

/// Parses "2,2,2,2", "3,2,4" or shorthand tokens "a^k" (k copies of a),
/// so "2^12" is the Walsh group at resolution 12.
inline std::vector<int> parse_radices(std::string_view text) {
  std::vector<int> out;
  auto parse_int = [&](std::string_view tok) {
    if (tok.empty()) throw Error(ErrorKind::invalid_spec, "empty radix token");
    long long v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') {
        throw Error(ErrorKind::invalid_spec, "bad radix token '" + std::string(tok) + "'");
      }
      v = v * 10 + (c - '0');
      if (v > std::numeric_limits<int>::max()) throw Error(ErrorKind::invalid_spec, "radix too large");
    }
    return static_cast<int>(v);
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      const int value = parse_int(tok.substr(0, caret));
      const int count = parse_int(tok.substr(caret + 1));
      out.insert(out.end(), static_cast<std::size_t>(count), value);
    } else {
      out.push_back(parse_int(tok));
    }
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Points

struct Point {
  std::vector<int> digits;

  friend bool operator==(const Point&, const Point&) = default;
};

namespace detail {
inline void check_point(const GroupSpec& spec, const Point& x) {
  if (x.digits.size() != static_cast<std::size_t>(spec.resolution())) {
    throw Error(ErrorKind::spec_mismatch, "point has " + std::to_string(x.digits.size()) +
                                              " digits, spec resolution is " +
                                              std::to_string(spec.resolution()));
  }
  for (int k = 0; k < spec.resolution(); ++k) {
    if (x.digits[k] < 0 || x.digits[k] >= spec.radix(k)) {
      throw Error(ErrorKind::spec_mismatch, "digit " + std::to_string(k) + " out of range");
    }
  }
}
}  // namespace detail

inline Point zero_point(const GroupSpec& spec) {
  return Point{std::vector<int>(static_cast<std::size_t>(spec.resolution()), 0)};
}

/// e_n: 1 in coordinate n, 0 elsewhere.
inline Point unit_point(const GroupSpec& spec, int n) {
  if (n < 0 || n >= spec.resolution()) throw Error(ErrorKind::out_of_range, "unit point coordinate");
  Point p = zero_point(spec);
  p.digits[static_cast<std::size_t>(n)] = 1;
  return p;
}

inline std::size_t encode(const GroupSpec& spec, const Point& x) {
  detail::check_point(spec, x);
  std::size_t code = 0;
  for (int k = spec.resolution() - 1; k >= 0; --k) {
    code = code * static_cast<std::size_t>(spec.radix(k)) + static_cast<std::size_t>(x.digits[k]);
  }
  return code;
}

inline Point decode(const GroupSpec& spec, std::size_t code) {
  if (code >= spec.size()) throw Error(ErrorKind::out_of_range, "point encoding " + std::to_string(code));
  Point p = zero_point(spec);
  for (int k = 0; k < spec.resolution(); ++k) {
    const auto m = static_cast<std::size_t>(spec.radix(k));
    p.digits[k] = static_cast<int>(code % m);
    code /= m;
  }
  return p;
}

inline Point add(const GroupSpec& spec, const Point& x, const Point& y) {
  detail::check_point(spec, x);
  detail::check_point(spec, y);
  Point r = x;
  for (int k = 0; k < spec.resolution(); ++k) r.digits[k] = (x.digits[k] + y.digits[k]) % spec.radix(k);
  return r;
}

inline Point neg(const GroupSpec& spec, const Point& x) {
  detail::check_point(spec, x);
  Point r = x;
  for (int k = 0; k < spec.resolution(); ++k) r.digits[k] = (spec.radix(k) - x.digits[k]) % spec.radix(k);
  return r;
}

inline Point sub(const GroupSpec& spec, const Point& x, const Point& y) {
  return add(spec, x, neg(spec, y));
}

/// Encoding of x - y without materializing digit vectors.
inline std::size_t sub_encoded(const GroupSpec& spec, std::size_t x, std::size_t y) {
  std::size_t out = 0;
  std::size_t weight = 1;
  for (int k = 0; k < spec.resolution(); ++k) {
    const auto m = static_cast<std::size_t>(spec.radix(k));
    const std::size_t xd = x % m;
    const std::size_t yd = y % m;
    out += ((xd + m - yd) % m) * weight;
    weight *= m;
    x /= m;
    y /= m;
  }
  return out;
}

inline std::size_t add_encoded(const GroupSpec& spec, std::size_t x, std::size_t y) {
  std::size_t out = 0;
  std::size_t weight = 1;
  for (int k = 0; k < spec.resolution(); ++k) {
    const auto m = static_cast<std::size_t>(spec.radix(k));
    out += ((x % m + y % m) % m) * weight;
    weight *= m;
    x /= m;
    y /= m;
  }
  return out;
}

/// All M_N points in encoding order.
inline std::vector<Point> enumerate_points(const GroupSpec& spec) {
  std::vector<Point> out;
  out.reserve(spec.size());
  Point p = zero_point(spec);
  for (std::uint64_t i = 0; i < spec.size(); ++i) {
    out.push_back(p);
    for (int k = 0; k < spec.resolution(); ++k) {
      if (++p.digits[k] < spec.radix(k)) break;
      p.digits[k] = 0;
    }
  }
  return out;
}

/// Index of the first nonzero coordinate, or N when x is the zero point.
/// For x != 0 this is the t with x in I_t \ I_{t+1}.
inline int first_nonzero(const Point& x) {
  for (std::size_t k = 0; k < x.digits.size(); ++k) {
    if (x.digits[k] != 0) return static_cast<int>(k);
  }
  return static_cast<int>(x.digits.size());
}

// ---------------------------------------------------------------------------
// Indices n = sum_j n_j M_j

struct Index {
  std::uint64_t value = 0;
  std::vector<int> digits;
  /// |n| = max{j : n_j != 0}; 0 for n = 0 by convention.
  int order = 0;
};

inline Index index_digits(std::uint64_t n, const GroupSpec& spec) {
  if (n >= spec.size()) {
    throw Error(ErrorKind::out_of_range, "index " + std::to_string(n) + " >= M_N = " +
                                             std::to_string(spec.size()));
  }
  Index idx;
  idx.value = n;
  idx.digits.resize(static_cast<std::size_t>(spec.resolution()));
  for (int j = 0; j < spec.resolution(); ++j) {
    const auto m = static_cast<std::uint64_t>(spec.radix(j));
    idx.digits[j] = static_cast<int>(n % m);
    if (idx.digits[j] != 0) idx.order = j;
    n /= m;
  }
  return idx;
}

inline std::uint64_t from_digits(const std::vector<int>& digits, const GroupSpec& spec) {
  if (digits.size() != static_cast<std::size_t>(spec.resolution())) {
    throw Error(ErrorKind::spec_mismatch, "digit vector length differs from resolution");
  }
  std::uint64_t n = 0;
  for (int j = spec.resolution() - 1; j >= 0; --j) {
    if (digits[j] < 0 || digits[j] >= spec.radix(j)) throw Error(ErrorKind::out_of_range, "index digit");
    n = n * static_cast<std::uint64_t>(spec.radix(j)) + static_cast<std::uint64_t>(digits[j]);
  }
  return n;
}

/// |n|, valid for any n >= 0 expressible with the spec's radices.  Indices
/// up to M_N inclusive are accepted since kernel code asks for |M_N| = N.
inline int order_of(std::uint64_t n, const GroupSpec& spec) {
  if (n > spec.size()) throw Error(ErrorKind::out_of_range, "order_of index");
  int order = 0;
  for (int j = 0; j <= spec.resolution() && n > 0; ++j) {
    if (j == spec.resolution()) return j;  // n == M_N
    const auto m = static_cast<std::uint64_t>(spec.radix(j));
    if (n % m != 0) order = j;
    n /= m;
  }
  return order;
}

/// q_A = M_{2A} + M_{2A-2} + ... + M_2 + M_0.
inline std::uint64_t q_number(int A, const GroupSpec& spec) {
  if (A < 0 || 2 * A >= spec.resolution()) {
    throw Error(ErrorKind::out_of_range, "q_" + std::to_string(A) + " needs 2A < N = " +
                                             std::to_string(spec.resolution()));
  }
  std::uint64_t q = 0;
  for (int j = 0; j <= A; ++j) q += spec.order(2 * j);
  return q;
}

// ---------------------------------------------------------------------------
// Cosets I_n(x)

struct Coset {
  Point base;
  int depth = 0;

  Rational measure(const GroupSpec& spec) const {
    return Rational(1, static_cast<std::int64_t>(spec.order(depth)));
  }

  bool contains(const Point& y) const {
    for (int k = 0; k < depth; ++k) {
      if (y.digits.at(static_cast<std::size_t>(k)) != base.digits.at(static_cast<std::size_t>(k))) {
        return false;
      }
    }
    return true;
  }

  /// Encodings agree on the first `depth` digits iff they agree mod M_depth.
  bool contains_encoded(const GroupSpec& spec, std::size_t y) const {
    const auto md = static_cast<std::size_t>(spec.order(depth));
    return y % md == encode(spec, base) % md;
  }
};

/// I_n = I_n(0).
inline Coset origin_coset(const GroupSpec& spec, int depth) {
  if (depth < 0 || depth > spec.resolution()) throw Error(ErrorKind::out_of_range, "coset depth");
  return Coset{zero_point(spec), depth};
}

/// I_N^{k,l} (and I_N^{k,alpha,l,beta} when alpha/beta are set).  Only the
/// first `depth` coordinates of a point are inspected, so members can be
/// tested at any resolution >= depth.
struct CosetFamily {
  int depth = 0;
  int k = 0;
  int l = 0;
  std::optional<int> alpha;
  std::optional<int> beta;

  CosetFamily(int depth_, int k_, int l_, std::optional<int> alpha_ = std::nullopt,
              std::optional<int> beta_ = std::nullopt)
      : depth(depth_), k(k_), l(l_), alpha(alpha_), beta(beta_) {
    if (!(0 <= k && k < l && l <= depth)) {
      throw Error(ErrorKind::invalid_argument, "coset family needs 0 <= k < l <= N, got k=" +
                                                   std::to_string(k) + " l=" + std::to_string(l) +
                                                   " N=" + std::to_string(depth));
    }
    if (beta && l == depth) {
      throw Error(ErrorKind::invalid_argument, "beta is only defined for l < N");
    }
  }

  bool contains(const Point& x) const {
    if (x.digits.size() < static_cast<std::size_t>(depth)) {
      throw Error(ErrorKind::insufficient_resolution, "point coarser than family depth");
    }
    for (int j = 0; j < k; ++j) {
      if (x.digits[j] != 0) return false;
    }
    if (x.digits[k] == 0) return false;
    if (alpha && x.digits[k] != *alpha) return false;
    if (l == depth) {
      for (int j = k + 1; j < depth; ++j) {
        if (x.digits[j] != 0) return false;
      }
      return true;
    }
    for (int j = k + 1; j < l; ++j) {
      if (x.digits[j] != 0) return false;
    }
    if (x.digits[l] == 0) return false;
    if (beta && x.digits[l] != *beta) return false;
    return true;
  }
};

}  // namespace vilenkin
