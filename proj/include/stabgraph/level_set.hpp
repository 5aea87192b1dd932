#pragma once

// Numeric estimate of the contact order from level sets q = eta * p. Two
// generic level sets through a boundary zero separate like |z1 - tau1|^K.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "stabgraph/boundary.hpp"
#include "stabgraph/contact.hpp"

namespace stabgraph {

namespace mp = boost::multiprecision;

/// 300 significant digits: separations near |z1 - tau1|^16 with
/// |z1 - tau1| ~ 1e-8 must stay far above rounding.
using BigReal = mp::number<mp::cpp_bin_float<300>>;
using BigComplex = mp::cpp_complex<300>;

inline BigReal to_big(const Rational& q) {
  return BigReal(q.get_num().get_str()) / BigReal(q.get_den().get_str());
}
inline BigComplex to_big(const GaussianRational& z) { return {to_big(z.re()), to_big(z.im())}; }

inline BigComplex evaluate_big(const UniPoly& p, const BigComplex& at) {
  return evaluate_as<BigComplex>(p, at, [](const GaussianRational& c) { return to_big(c); });
}

struct OracleOptions {
  double theta0 = 1e-2;
  std::size_t rungs = 20;
  std::size_t fit_rungs = 10;
  double tolerance = 0.2;
  std::size_t max_attempts = 8;
  std::uint64_t seed = 1;
};

struct OracleResult {
  std::size_t K = 0;
  double slope = 0.0;
  std::size_t attempts = 0;
};

/// Least-squares slope of log|g_eta1 - g_eta2| against log|z1 - tau1| over
/// the last `fit_rungs` points of the ladder z1 = tau1 * exp(i theta0 2^-j).
inline double level_set_slope(const StablePair& s, const BigComplex& tau1, const BigComplex& eta1,
                              const BigComplex& eta2, const OracleOptions& opt = {}) {
  auto level = [&](const BigComplex& z1, const BigComplex& eta) {
    const BigComplex num = evaluate_big(s.q.a(), z1) - eta * evaluate_big(s.p.a(), z1);
    const BigComplex den = evaluate_big(s.q.b(), z1) - eta * evaluate_big(s.p.b(), z1);
    return BigComplex(-num / den);
  };
  std::vector<double> xs;
  std::vector<double> ys;
  BigReal theta = BigReal(opt.theta0);
  for (std::size_t j = 1; j <= opt.rungs; ++j) {
    theta /= 2;
    const BigComplex z1 = tau1 * BigComplex(mp::cos(theta), mp::sin(theta));
    if (j + opt.fit_rungs <= opt.rungs) continue;
    const BigReal gap = mp::abs(BigComplex(level(z1, eta1) - level(z1, eta2)));
    const BigReal step = mp::abs(BigComplex(z1 - tau1));
    if (gap == 0) return std::numeric_limits<double>::infinity();
    xs.push_back(static_cast<double>(mp::log(step)));
    ys.push_back(static_cast<double>(mp::log(gap)));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Retries with fresh random unimodular eta until the slope is within
/// `tolerance` of an even integer.
inline OracleResult level_set_oracle(const StablePair& s, const BigComplex& tau1, const OracleOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double last = 0.0;
  for (std::size_t attempt = 1; attempt <= opt.max_attempts; ++attempt) {
    const double a1 = angle(rng);
    const double a2 = angle(rng);
    const BigComplex eta1(mp::cos(BigReal(a1)), mp::sin(BigReal(a1)));
    const BigComplex eta2(mp::cos(BigReal(a2)), mp::sin(BigReal(a2)));
    last = level_set_slope(s, tau1, eta1, eta2, opt);
    if (!std::isfinite(last)) continue;
    const double even = 2.0 * std::round(last / 2.0);
    if (even >= 2.0 && std::abs(last - even) < opt.tolerance)
      return {static_cast<std::size_t>(even), last, attempt};
  }
  throw Error(Errc::FitUnstable, "level-set slope did not settle near an even integer (last " + std::to_string(last) + ")");
}

/// Exact first coordinate of the boundary zero.
inline OracleResult level_set_oracle(const StablePair& s, const GaussianRational& tau1, const OracleOptions& opt = {}) {
  return level_set_oracle(s, to_big(tau1), opt);
}

/// Numeric first coordinate; refined by Newton steps on the squarefree part
/// of the circle modulus polynomial before the ladder is run.
inline OracleResult level_set_oracle(const StablePair& s, Complex tau1, const OracleOptions& opt = {}) {
  const UniPoly f = squarefree_part(circle_modulus_polynomial(s.p));
  const UniPoly df = derivative(f);
  BigComplex z(BigReal(tau1.real()), BigReal(tau1.imag()));
  for (int it = 0; it < 40; ++it) {
    const BigComplex step = evaluate_big(f, z) / evaluate_big(df, z);
    z -= step;
    if (mp::abs(step) < BigReal("1e-280")) break;
  }
  return level_set_oracle(s, z, opt);
}

inline OracleResult level_set_oracle(const ColoredGraph& g, Target target, const OracleOptions& opt = {}) {
  const StablePair s = construct(g);
  if (!evaluate(s.p, target.tau1, target.tau2).is_zero())
    throw Error(Errc::NoBoundaryZero, "p does not vanish at (" + to_string(target) + ")");
  return level_set_oracle(s, GaussianRational(target.tau1), opt);
}

}  // namespace stabgraph
