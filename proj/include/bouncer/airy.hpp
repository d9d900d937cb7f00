#pragma once

namespace bouncer {

struct AiryPoint {
  double ai = 0.0;
  double ai_prime = 0.0;
};

inline constexpr double kAiryMaxArgument = 100.0;

/// Ai(x) and Ai'(x) for real |x| <= 100.
///
/// Evaluation regions (all arithmetic in long double):
///   x <= -8       oscillatory asymptotic expansion, truncated at the smallest term
///   -8 < x <= 5   Maclaurin series from the exact Ai(0), Ai'(0)
///   5 < x < 8     Taylor series of the Airy equation about x0 = 8, anchored on
///                 the asymptotic value there (backward continuation is stable
///                 for the recessive solution)
///   x >= 8        exponentially decaying asymptotic expansion
///
/// Accuracy budget: relative error below 1e-12 on x >= 0; on x < 0 the error is
/// below 1e-12 of the local envelope pi^{-1/2}|x|^{-1/4} (resp. |x|^{+1/4} for
/// Ai'), which is the meaningful scale near the zeros.
///
/// Throws RangeError for |x| > 100 or non-finite x.
AiryPoint airy_eval(double x);

/// The n-th zero (n >= 1) of Ai, found by safeguarded Newton iteration inside a
/// bracket seeded from -(3 pi (4n - 1) / 8)^{2/3}. Throws InternalError naming n
/// if no sign change can be bracketed, RangeError if the zero lies beyond
/// kAiryMaxArgument.
double airy_zero(int n);

}  // namespace bouncer
