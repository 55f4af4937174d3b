#pragma once

// Truncated Taylor arithmetic. `Taylor<double>` propagates k-jets through
// smooth kernels; `Taylor<Taylor<double>>` nests a first-order direction
// inside a jet so that Jacobians of jet-valued maps stay exact.

#include <array>
#include <cassert>
#include <cmath>
#include <numbers>
#include <ostream>
#include <type_traits>

#include <Eigen/Core>

namespace geodisc {

inline constexpr int kMaxTaylorOrder = 4;

template <class S>
class Taylor;

template <class T>
struct is_taylor : std::false_type {};
template <class S>
struct is_taylor<Taylor<S>> : std::true_type {};
template <class T>
inline constexpr bool is_taylor_v = is_taylor<T>::value;

inline double primal(double x) { return x; }

/// Polynomial sum_r c[r] t^r with normalized coefficients c[r] = f^(r)(0) / r!.
///
/// Constants are order 0 and promote to the order of whatever they are
/// combined with. Coefficients above `order()` are kept at zero.
template <class S>
class Taylor {
 public:
  using value_type = S;

  Taylor() = default;
  Taylor(double constant) { c_[0] = S(constant); }  // NOLINT(google-explicit-constructor)
  Taylor(int constant) : Taylor(static_cast<double>(constant)) {}  // NOLINT
  template <class U = S>
    requires(!std::is_same_v<U, double>)
  Taylor(const S& constant) {  // NOLINT(google-explicit-constructor)
    c_[0] = constant;
  }

  /// The identity curve t -> value + t, truncated at `order`.
  static Taylor variable(const S& value, int order) {
    assert(order >= 0 && order <= kMaxTaylorOrder);
    Taylor x;
    x.order_ = order;
    x.c_[0] = value;
    if (order >= 1) x.c_[1] = S(1.0);
    return x;
  }

  /// Zero series of a given order (useful as an accumulator).
  static Taylor zero(int order) {
    Taylor x;
    x.order_ = order;
    return x;
  }

  int order() const { return order_; }
  const S& value() const { return c_[0]; }

  const S& operator[](int r) const { return c_[static_cast<std::size_t>(r)]; }
  S& operator[](int r) { return c_[static_cast<std::size_t>(r)]; }

  /// Raise the truncation order without changing coefficients.
  void set_order(int order) {
    assert(order >= 0 && order <= kMaxTaylorOrder);
    for (int r = order + 1; r <= order_; ++r) c_[static_cast<std::size_t>(r)] = S(0.0);
    order_ = order;
  }

  Taylor& operator+=(const Taylor& o) {
    order_ = std::max(order_, o.order_);
    for (int r = 0; r <= o.order_; ++r) (*this)[r] += o[r];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    order_ = std::max(order_, o.order_);
    for (int r = 0; r <= o.order_; ++r) (*this)[r] -= o[r];
    return *this;
  }
  Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
  Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator-(Taylor a) {
    for (int r = 0; r <= a.order_; ++r) a[r] = -a[r];
    return a;
  }
  friend Taylor operator+(const Taylor& a) { return a; }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor out = zero(std::max(a.order_, b.order_));
    for (int r = 0; r <= out.order_; ++r) {
      S acc = S(0.0);
      for (int j = 0; j <= r; ++j) {
        if (j <= a.order_ && r - j <= b.order_) acc += a[j] * b[r - j];
      }
      out[r] = acc;
    }
    return out;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    Taylor out = zero(std::max(a.order_, b.order_));
    for (int r = 0; r <= out.order_; ++r) {
      S acc = a[r];
      for (int j = 1; j <= r; ++j) acc -= b[j] * out[r - j];
      out[r] = acc / b[0];
    }
    return out;
  }

  friend bool operator==(const Taylor& a, const Taylor& b) {
    const int order = std::max(a.order_, b.order_);
    for (int r = 0; r <= order; ++r) {
      if (!(a[r] == b[r])) return false;
    }
    return true;
  }
  friend bool operator<(const Taylor& a, const Taylor& b) { return primal(a) < primal(b); }
  friend bool operator>(const Taylor& a, const Taylor& b) { return primal(a) > primal(b); }
  friend bool operator<=(const Taylor& a, const Taylor& b) { return primal(a) <= primal(b); }
  friend bool operator>=(const Taylor& a, const Taylor& b) { return primal(a) >= primal(b); }

  friend std::ostream& operator<<(std::ostream& os, const Taylor& a) {
    os << "[";
    for (int r = 0; r <= a.order_; ++r) os << (r ? ", " : "") << a[r];
    return os << "]";
  }

 private:
  int order_ = 0;
  std::array<S, kMaxTaylorOrder + 1> c_{};
};

using Series = Taylor<double>;
using Series2 = Taylor<Series>;

template <class S>
double primal(const Taylor<S>& x) {
  return primal(x.value());
}

// Elementary functions. Each uses the standard linear recurrence for the
// coefficients of f(a(t)) given f's ODE in terms of a.

template <class S>
Taylor<S> sqrt(const Taylor<S>& a) {
  using std::sqrt;
  Taylor<S> out = Taylor<S>::zero(a.order());
  out[0] = sqrt(a[0]);
  for (int r = 1; r <= a.order(); ++r) {
    S acc = a[r];
    for (int j = 1; j < r; ++j) acc -= out[j] * out[r - j];
    out[r] = acc / (2.0 * out[0]);
  }
  return out;
}

template <class S>
Taylor<S> exp(const Taylor<S>& a) {
  using std::exp;
  Taylor<S> out = Taylor<S>::zero(a.order());
  out[0] = exp(a[0]);
  for (int r = 1; r <= a.order(); ++r) {
    S acc = S(0.0);
    for (int j = 1; j <= r; ++j) acc += static_cast<double>(j) * a[j] * out[r - j];
    out[r] = acc / static_cast<double>(r);
  }
  return out;
}

template <class S>
Taylor<S> log(const Taylor<S>& a) {
  using std::log;
  Taylor<S> out = Taylor<S>::zero(a.order());
  out[0] = log(a[0]);
  for (int r = 1; r <= a.order(); ++r) {
    S acc = a[r];
    for (int j = 1; j < r; ++j) {
      acc -= (static_cast<double>(j) / static_cast<double>(r)) * out[j] * a[r - j];
    }
    out[r] = acc / a[0];
  }
  return out;
}

/// sin and cos together; they share one coupled recurrence.
template <class S>
void sincos(const Taylor<S>& a, Taylor<S>& s, Taylor<S>& c) {
  using std::cos;
  using std::sin;
  s = Taylor<S>::zero(a.order());
  c = Taylor<S>::zero(a.order());
  s[0] = sin(a[0]);
  c[0] = cos(a[0]);
  for (int r = 1; r <= a.order(); ++r) {
    S ds = S(0.0);
    S dc = S(0.0);
    for (int j = 1; j <= r; ++j) {
      ds += static_cast<double>(j) * a[j] * c[r - j];
      dc -= static_cast<double>(j) * a[j] * s[r - j];
    }
    s[r] = ds / static_cast<double>(r);
    c[r] = dc / static_cast<double>(r);
  }
}

template <class S>
Taylor<S> sin(const Taylor<S>& a) {
  Taylor<S> s, c;
  sincos(a, s, c);
  return s;
}

template <class S>
Taylor<S> cos(const Taylor<S>& a) {
  Taylor<S> s, c;
  sincos(a, s, c);
  return c;
}

namespace detail {
// f(a) where f(a0) = value and f'(a(t)) is the series `derivative`.
template <class S>
Taylor<S> integrate_chain(const S& value, const Taylor<S>& derivative, const Taylor<S>& a) {
  Taylor<S> out = Taylor<S>::zero(a.order());
  out[0] = value;
  for (int r = 1; r <= a.order(); ++r) {
    S acc = S(0.0);
    for (int j = 1; j <= r; ++j) acc += static_cast<double>(j) * a[j] * derivative[r - j];
    out[r] = acc / static_cast<double>(r);
  }
  return out;
}
}  // namespace detail

template <class S>
Taylor<S> asin(const Taylor<S>& a) {
  using std::asin;
  const Taylor<S> derivative = Taylor<S>(1.0) / sqrt(Taylor<S>(1.0) - a * a);
  return detail::integrate_chain(S(asin(a[0])), derivative, a);
}

template <class S>
Taylor<S> acos(const Taylor<S>& a) {
  return Taylor<S>(std::numbers::pi / 2.0) - asin(a);
}

template <class S>
Taylor<S> atan(const Taylor<S>& a) {
  using std::atan;
  const Taylor<S> derivative = Taylor<S>(1.0) / (Taylor<S>(1.0) + a * a);
  return detail::integrate_chain(S(atan(a[0])), derivative, a);
}

template <class S>
Taylor<S> pow(const Taylor<S>& a, int exponent) {
  if (exponent < 0) return Taylor<S>(1.0) / pow(a, -exponent);
  Taylor<S> out(1.0);
  for (int i = 0; i < exponent; ++i) out = out * a;
  return out;
}

}  // namespace geodisc

namespace Eigen {

template <class S>
struct NumTraits<geodisc::Taylor<S>> : GenericNumTraits<geodisc::Taylor<S>> {
  using Real = geodisc::Taylor<S>;
  using NonInteger = geodisc::Taylor<S>;
  using Nested = geodisc::Taylor<S>;
  using Literal = geodisc::Taylor<S>;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };

  static inline Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static inline Real dummy_precision() { return Real(1e-12); }
  static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
  static inline Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static inline int digits10() { return std::numeric_limits<double>::digits10; }
};

template <class S, typename BinaryOp>
struct ScalarBinaryOpTraits<geodisc::Taylor<S>, double, BinaryOp> {
  using ReturnType = geodisc::Taylor<S>;
};

template <class S, typename BinaryOp>
struct ScalarBinaryOpTraits<double, geodisc::Taylor<S>, BinaryOp> {
  using ReturnType = geodisc::Taylor<S>;
};

}  // namespace Eigen
