#pragma once

// Zeros of p on the torus T^2: the zeros the graph guarantees, the Moebius
// transfer between p and p^t, and a numeric scan for the rest.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "stabgraph/construct.hpp"

namespace stabgraph {

using Complex = std::complex<double>;

inline Complex to_complex(const GaussianRational& z) { return {z.re().get_d(), z.im().get_d()}; }

inline Complex evaluate_numeric(const UniPoly& p, Complex at) {
  return evaluate_as<Complex>(p, at, [](const GaussianRational& c) { return to_complex(c); });
}

inline Complex evaluate_numeric(const BiLinPoly& p, Complex z1, Complex z2) {
  return evaluate_numeric(p.a(), z1) + z2 * evaluate_numeric(p.b(), z1);
}

struct BoundaryPoint {
  Complex tau1;
  Complex tau2;
  /// Set when both coordinates are known exactly in Q(i).
  std::optional<std::pair<GaussianRational, GaussianRational>> exact;
};

// ---------------------------------------------------------------------------
// Guaranteed zeros

struct GuaranteedZeroReport {
  std::pair<int, int> target;
  bool predicted = false;
  bool actual = false;
  bool agree = false;
};

/// p(-1, 1) = 0 for t = 0 and p(-1, -1) = 0 for t > 0 exactly when v1 and vn
/// are joined by a path.
inline GuaranteedZeroReport guaranteed_zero_check(const ColoredGraph& g, const StablePair& s) {
  GuaranteedZeroReport r;
  r.target = sgn(g.t()) == 0 ? std::pair{-1, 1} : std::pair{-1, -1};
  r.predicted = is_connected_1n(g) == Connectivity::Connected1n;
  r.actual = evaluate(s.p, r.target.first, r.target.second).is_zero();
  r.agree = r.predicted == r.actual;
  return r;
}

// ---------------------------------------------------------------------------
// t-transfer

namespace detail {

inline bool is_minus_one(const GaussianRational& z) { return z == GaussianRational(-1); }
template <class T>
bool is_minus_one(const T& z) {
  using std::abs;
  return abs(z + T(1)) < 1e-12;
}

}  // namespace detail

/// Sends a boundary zero (tau1, tau2) of p to the zero (lambda1, lambda2) of
/// p^t: lambda1 = tau1, lambda2 = beta((beta^-1(tau2) - t beta^-1(tau1))/(1-t)).
template <class T>
std::pair<T, T> t_transfer(const T& tau1, const T& tau2, const T& t) {
  if (detail::is_minus_one(tau1) || detail::is_minus_one(tau2))
    throw Error(Errc::MinusOneInput, "t-transfer is undefined at coordinates equal to -1");
  const T w = (cayley_beta_inv(tau2) - t * cayley_beta_inv(tau1)) / (T(1) - t);
  return {tau1, cayley_beta(w)};
}

/// Inverse of `t_transfer`: tau2 = beta(t beta^-1(lambda1) + (1-t) beta^-1(lambda2)).
template <class T>
std::pair<T, T> t_transfer_inverse(const T& lambda1, const T& lambda2, const T& t) {
  if (detail::is_minus_one(lambda1) || detail::is_minus_one(lambda2))
    throw Error(Errc::MinusOneInput, "t-transfer is undefined at coordinates equal to -1");
  return {lambda1, cayley_beta(t * cayley_beta_inv(lambda1) + (T(1) - t) * cayley_beta_inv(lambda2))};
}

inline std::pair<GaussianRational, GaussianRational> t_transfer(const GaussianRational& tau1,
                                                                 const GaussianRational& tau2, const Rational& t) {
  return t_transfer(tau1, tau2, GaussianRational(t));
}
inline std::pair<GaussianRational, GaussianRational> t_transfer_inverse(const GaussianRational& l1,
                                                                         const GaussianRational& l2, const Rational& t) {
  return t_transfer_inverse(l1, l2, GaussianRational(t));
}
inline std::pair<Complex, Complex> t_transfer(Complex tau1, Complex tau2, const Rational& t) {
  return t_transfer(tau1, tau2, Complex(t.get_d()));
}
inline std::pair<Complex, Complex> t_transfer_inverse(Complex l1, Complex l2, const Rational& t) {
  return t_transfer_inverse(l1, l2, Complex(t.get_d()));
}

// ---------------------------------------------------------------------------
// Numeric scan of the torus

inline constexpr double kCircleTolerance = 1e-9;
inline constexpr double kUnimodularTolerance = 1e-8;

namespace detail {

/// Roots of a polynomial with simple roots: companion eigenvalues, then
/// Newton steps on the exact coefficients.
inline std::vector<Complex> simple_roots(const UniPoly& sqf, const std::vector<Complex>& extra_starts) {
  std::vector<Complex> roots;
  if (!sqf.degree() || *sqf.degree() == 0) return roots;
  const std::size_t d = *sqf.degree();
  const UniPoly m = monic(sqf);
  const UniPoly dm = derivative(m);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    companion(0, static_cast<Eigen::Index>(k)) = -to_complex(m.coefficient(d - 1 - k));
    if (k + 1 < d) companion(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  auto polish = [&](Complex z) {
    for (int it = 0; it < 60; ++it) {
      const Complex fz = evaluate_numeric(m, z);
      const Complex dz = evaluate_numeric(dm, z);
      if (dz == Complex(0)) break;
      const Complex step = fz / dz;
      z -= step;
      if (std::abs(step) < 1e-17 * std::max(1.0, std::abs(z))) break;
    }
    return z;
  };
  auto add = [&](Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
    if (std::abs(evaluate_numeric(m, z)) > 1e-6 * std::max(1.0, std::pow(std::abs(z), static_cast<double>(d)))) return;
    for (const auto& r : roots)
      if (std::abs(r - z) < 1e-7) return;
    roots.push_back(z);
  };
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) add(polish(solver.eigenvalues()(k)));
  for (const auto& z : extra_starts) {
    if (roots.size() >= d) break;
    add(polish(z));
  }
  return roots;
}

inline std::optional<GaussianRational> exact_unit_point(Complex z) {
  for (const GaussianRational& c : {GaussianRational(1), GaussianRational(-1), GaussianRational::i(), -GaussianRational::i()})
    if (std::abs(z - to_complex(c)) < 1e-7) return c;
  return std::nullopt;
}

inline double arg_key(Complex z) {
  double a = std::arg(z);
  return a <= -std::numbers::pi + 1e-15 ? std::numbers::pi : a;
}

}  // namespace detail

/// |a(z1)|^2 - |b(z1)|^2 on the unit circle, as z1^m times it: the polynomial
/// a * rev_m(conj a) - b * rev_m(conj b).
inline UniPoly circle_modulus_polynomial(const BiLinPoly& p) {
  const auto m = p.bidegree().first;
  return p.a() * reverse_to(conj_coeffs(p.a()), m) - p.b() * reverse_to(conj_coeffs(p.b()), m);
}

/// All (tau1, tau2) on T^2 with p(tau1, tau2) = 0, sorted by the angle of
/// tau1. `resolution` circle points seed extra Newton starts.
inline std::vector<BoundaryPoint> circle_scan(const StablePair& s, std::size_t resolution = 256) {
  const BiLinPoly& p = s.p;
  if (!p.depends_on_z2()) throw Error(Errc::ZeroB, "p does not depend on z2");
  const UniPoly f = circle_modulus_polynomial(p);
  std::vector<Complex> candidates;
  std::vector<Complex> starts;
  for (std::size_t k = 0; k < resolution; ++k)
    starts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution)));
  if (f.is_zero()) {
    // |a| = |b| on the whole circle: every tau1 carries a zero.
    candidates = starts;
  } else {
    for (const auto& z : detail::simple_roots(squarefree_part(f), starts))
      if (std::abs(std::abs(z) - 1.0) < kCircleTolerance) candidates.push_back(z / std::abs(z));
  }

  std::vector<BoundaryPoint> out;
  for (Complex tau1 : candidates) {
    if (auto e = detail::exact_unit_point(tau1); e && (f.is_zero() || evaluate(f, *e).is_zero())) {
      const GaussianRational b = evaluate(p.b(), *e);
      if (b.is_zero()) continue;
      const GaussianRational tau2 = -evaluate(p.a(), *e) / b;
      if (tau2.norm() != 1) continue;
      out.push_back({to_complex(*e), to_complex(tau2), std::pair{*e, tau2}});
      continue;
    }
    const Complex b = evaluate_numeric(p.b(), tau1);
    if (std::abs(b) < 1e-12) continue;
    const Complex tau2 = -evaluate_numeric(p.a(), tau1) / b;
    if (std::abs(std::abs(tau2) - 1.0) > kUnimodularTolerance) continue;
    out.push_back({tau1, tau2 / std::abs(tau2), std::nullopt});
  }
  std::sort(out.begin(), out.end(), [](const BoundaryPoint& x, const BoundaryPoint& y) {
    const double ax = detail::arg_key(x.tau1);
    const double ay = detail::arg_key(y.tau1);
    if (ax != ay) return ax < ay;
    return detail::arg_key(x.tau2) < detail::arg_key(y.tau2);
  });
  return out;
}

struct StabilityReport {
  double min_modulus = std::numeric_limits<double>::infinity();
  Complex z1;
  Complex z2;
};

/// Smallest |p| over a polar grid of the closed polydisc of radius 0.99.
inline StabilityReport stability_scan(const StablePair& s, std::size_t grid = 50) {
  StabilityReport r;
  const std::vector<double> radii{0.0, 0.33, 0.66, 0.99};
  const std::size_t steps = std::max<std::size_t>(grid, 1);
  std::vector<Complex> pts;
  for (double rad : radii)
    for (std::size_t k = 0; k < (rad == 0.0 ? 1 : steps); ++k)
      pts.push_back(std::polar(rad, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps)));
  for (Complex z1 : pts) {
    const Complex a = evaluate_numeric(s.p.a(), z1);
    const Complex b = evaluate_numeric(s.p.b(), z1);
    for (Complex z2 : pts) {
      const double v = std::abs(a + z2 * b);
      if (v < r.min_modulus) r = {v, z1, z2};
    }
  }
  return r;
}

}  // namespace stabgraph
