#include "bouncer/airy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bouncer/error.hpp"

namespace bouncer {
namespace {

using Real = long double;

constexpr Real kAi0 = 0.355028053887817239260063186004183176L;
constexpr Real kAip0 = -0.258819403792806798405183560189203963L;
constexpr Real kEps = 1e-21L;
constexpr Real kPi = std::numbers::pi_v<long double>;

constexpr Real kSeriesLower = -8.0L;
constexpr Real kSeriesUpper = 5.0L;
constexpr Real kAnchor = 8.0L;

struct Pair {
  Real ai;
  Real aip;
};

// y'' = x y  =>  a_{k+3} = a_k / ((k + 2)(k + 3)). Every third coefficient
// vanishes, so convergence is judged once per group of three terms.
Pair maclaurin(Real x) {
  Real a[3] = {kAi0, kAip0, 0.0L};
  Real xk = 1.0L;    // x^k
  Real xkm1 = 0.0L;  // x^(k-1)
  Real ai = 0.0L;
  Real aip = 0.0L;
  Real group_max = 0.0L;
  for (int k = 0; k < 600; ++k) {
    const Real ak = a[k % 3];
    const Real term = ak * xk;
    const Real dterm = static_cast<Real>(k) * ak * xkm1;
    ai += term;
    aip += dterm;
    group_max = std::fmax(group_max, std::fmax(std::fabs(term), std::fabs(dterm)));
    if (k % 3 == 2) {
      if (k > 12 && group_max < 1e-26L) break;
      group_max = 0.0L;
    }
    a[k % 3] = ak / (static_cast<Real>(k + 2) * static_cast<Real>(k + 3));
    xkm1 = xk;
    xk *= x;
  }
  return {ai, aip};
}

// Coefficients u_k of the large-argument expansions.
Real next_u(Real u_prev, int k) {
  const Real kk = static_cast<Real>(k);
  return u_prev * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
}

Real v_from_u(Real u, int k) {
  if (k == 0) return 1.0L;
  const Real kk = static_cast<Real>(k);
  return -(6 * kk + 1) / (6 * kk - 1) * u;
}

Pair decaying_asymptotic(Real x) {
  const Real zeta = 2.0L / 3.0L * x * std::sqrt(x);
  Real su = 0.0L;
  Real sv = 0.0L;
  Real u = 1.0L;
  Real zinv_k = 1.0L;
  Real last = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      u = next_u(u, k);
      zinv_k /= zeta;
    }
    const Real sign = (k % 2 == 0) ? 1.0L : -1.0L;
    const Real tu = sign * u * zinv_k;
    const Real tv = sign * v_from_u(u, k) * zinv_k;
    if (std::fabs(tu) > last) break;
    su += tu;
    sv += tv;
    last = std::fabs(tu);
    if (last < kEps) break;
  }
  const Real pref = std::exp(-zeta) / (2.0L * std::sqrt(kPi));
  const Real x14 = std::pow(x, 0.25L);
  return {pref / x14 * su, -pref * x14 * sv};
}

Pair oscillatory_asymptotic(Real x) {
  const Real z = -x;
  const Real zeta = 2.0L / 3.0L * z * std::sqrt(z);
  // Even and odd parts of the u and v series.
  Real ue = 0.0L, uo = 0.0L, ve = 0.0L, vo = 0.0L;
  Real u = 1.0L;
  Real zinv_k = 1.0L;
  Real last = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      u = next_u(u, k);
      zinv_k /= zeta;
    }
    const Real mag = u * zinv_k;
    if (mag > last) break;
    last = mag;
    const int half = k / 2;
    const Real sign = (half % 2 == 0) ? 1.0L : -1.0L;
    const Real v = v_from_u(u, k);
    if (k % 2 == 0) {
      ue += sign * u * zinv_k;
      ve += sign * v * zinv_k;
    } else {
      uo += sign * u * zinv_k;
      vo += sign * v * zinv_k;
    }
    if (mag < kEps) break;
  }
  const Real phase = zeta - kPi / 4.0L;
  const Real c = std::cos(phase);
  const Real s = std::sin(phase);
  const Real z14 = std::pow(z, 0.25L);
  const Real rsp = 1.0L / std::sqrt(kPi);
  return {rsp / z14 * (c * ue + s * uo), rsp * z14 * (s * ve - c * vo)};
}

// Taylor continuation of y'' = x y from (x0, y0, y0') to x0 + h.
Pair taylor_continue(Real x0, Pair start, Real h) {
  // t_k = y^(k)(x0) / k!,  (k+2)(k+1) t_{k+2} = x0 t_k + t_{k-1}
  Real tkm1 = 0.0L;
  Real tk = start.ai;
  Real tk1 = start.aip;
  Real hk = 1.0L;    // h^k
  Real hkm1 = 0.0L;  // h^(k-1)
  Real y = 0.0L;
  Real yp = 0.0L;
  for (int k = 0; k < 300; ++k) {
    const Real term = tk * hk;
    const Real dterm = static_cast<Real>(k) * tk * hkm1;
    y += term;
    yp += dterm;
    if (k > 8 && std::fabs(term) < kEps * std::fabs(y) &&
        std::fabs(dterm) < kEps * std::fabs(yp)) {
      break;
    }
    const Real tk2 = (x0 * tk + tkm1) / (static_cast<Real>(k + 2) * static_cast<Real>(k + 1));
    tkm1 = tk;
    tk = tk1;
    tk1 = tk2;
    hkm1 = hk;
    hk *= h;
  }
  return {y, yp};
}

}  // namespace

AiryPoint airy_eval(double x) {
  if (!std::isfinite(x) || std::fabs(x) > kAiryMaxArgument) {
    throw RangeError("airy_eval: argument " + std::to_string(x) +
                     " outside supported range [-100, 100]");
  }
  const Real xr = x;
  Pair r{};
  if (xr <= kSeriesLower) {
    r = oscillatory_asymptotic(xr);
  } else if (xr <= kSeriesUpper) {
    r = maclaurin(xr);
  } else if (xr < kAnchor) {
    static const Pair anchor = decaying_asymptotic(kAnchor);
    r = taylor_continue(kAnchor, anchor, xr - kAnchor);
  } else {
    r = decaying_asymptotic(xr);
  }
  return {static_cast<double>(r.ai), static_cast<double>(r.aip)};
}

double airy_zero(int n) {
  if (n < 1) throw InvalidInput("airy_zero: index must be >= 1, got " + std::to_string(n));
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
  const double seed = -std::pow(t, 2.0 / 3.0);
  if (-seed > kAiryMaxArgument - 1.0) {
    throw RangeError("airy_zero: zero " + std::to_string(n) + " beyond supported range");
  }
  // Local half-period of the oscillation is ~ pi / sqrt(|x|); zeros sit within a
  // small fraction of it from the leading-order seed.
  const double half = 0.3 * std::numbers::pi / std::sqrt(-seed);
  double lo = seed - half;
  double hi = seed + half;
  double flo = airy_eval(lo).ai;
  double fhi = airy_eval(hi).ai;
  if (flo * fhi > 0.0) {
    throw InternalError("airy_zero: failed to bracket zero " + std::to_string(n));
  }
  double x = seed;
  for (int it = 0; it < 100; ++it) {
    const AiryPoint p = airy_eval(x);
    if (p.ai == 0.0) return x;
    if ((p.ai > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = p.ai;
    } else {
      hi = x;
    }
    double next = x - p.ai / p.ai_prime;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-16 * std::fabs(x)) return next;
    x = next;
  }
  throw InternalError("airy_zero: Newton iteration did not converge for zero " +
                      std::to_string(n));
}

}  // namespace bouncer
