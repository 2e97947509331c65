#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace trizone {

/// Truncated Taylor series c[0] + c[1] e + ... + c[N-1] e^(N-1) around a point.
/// Exact derivative propagation through arithmetic and the elementary
/// functions used by the basis functions.
template <std::size_t N>
struct Jet {
  std::array<double, N> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }  // NOLINT: implicit promotion of constants

  static Jet variable(double x) {
    Jet j(x);
    if constexpr (N > 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  /// k-th derivative.
  double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c[k] * f;
  }

  Jet operator-() const {
    Jet r;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = -c[i];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
};

template <std::size_t N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <std::size_t N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <std::size_t N>
Jet<N> operator+(Jet<N> a, double b) { a.c[0] += b; return a; }
template <std::size_t N>
Jet<N> operator+(double b, Jet<N> a) { a.c[0] += b; return a; }
template <std::size_t N>
Jet<N> operator-(Jet<N> a, double b) { a.c[0] -= b; return a; }
template <std::size_t N>
Jet<N> operator-(double b, const Jet<N>& a) { return -a + b; }

template <std::size_t N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
  return r;
}
template <std::size_t N>
Jet<N> operator*(Jet<N> a, double s) {
  for (auto& v : a.c) v *= s;
  return a;
}
template <std::size_t N>
Jet<N> operator*(double s, Jet<N> a) { return a * s; }

template <std::size_t N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k < N; ++k) {
    double s = a.c[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
    r.c[k] = s / b.c[0];
  }
  return r;
}
template <std::size_t N>
Jet<N> operator/(Jet<N> a, double s) {
  for (auto& v : a.c) v /= s;
  return a;
}
template <std::size_t N>
Jet<N> operator/(double s, const Jet<N>& b) { return Jet<N>(s) / b; }

namespace detail {
// f = phi(u) with f0 given and phi'(u) expanded as the jet g.
template <std::size_t N>
Jet<N> integrate_chain(const Jet<N>& u, const Jet<N>& g, double f0) {
  Jet<N> f(f0);
  for (std::size_t k = 1; k < N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * u.c[j] * g.c[k - j];
    f.c[k] = s / static_cast<double>(k);
  }
  return f;
}
}  // namespace detail

template <std::size_t N>
Jet<N> atan(const Jet<N>& u) {
  return detail::integrate_chain(u, 1.0 / (1.0 + u * u), std::atan(u.c[0]));
}
template <std::size_t N>
Jet<N> atanh(const Jet<N>& u) {
  return detail::integrate_chain(u, 1.0 / (1.0 - u * u), std::atanh(u.c[0]));
}
template <std::size_t N>
Jet<N> log(const Jet<N>& u) {
  return detail::integrate_chain(u, 1.0 / u, std::log(u.c[0]));
}

/// atan2(y, x) for a jet ordinate and a constant abscissa.
template <std::size_t N>
Jet<N> atan2(const Jet<N>& y, double x) {
  Jet<N> r = std::abs(x) >= std::abs(y.c[0]) ? atan(y / x) : -atan(x / y);
  r.c[0] = std::atan2(y.c[0], x);
  return r;
}

inline double atan2(double y, double x) { return std::atan2(y, x); }

}  // namespace trizone
