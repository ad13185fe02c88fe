#pragma once

#include <complex>
#include <vector>

#include "fibspec/errors.hpp"

namespace fibspec {

using Complex = std::complex<double>;

enum class PolyFamily {
    FibonacciP,  // p_{n+1}(z) = z^{n+1} - z^n - 1
    FibLikeQ,    // q_{n+1}(z) = z^{n+1} - 2 z^n + z^{n-1} - rho
};

/// Characteristic polynomial of F_n (family p) or G_n (family q).
/// Degree is n+1 for both families.
struct CharPolynomial {
    PolyFamily family;
    int n;             // operator index, n >= 1
    double rho = 0.0;  // growth parameter, FibLikeQ only

    static CharPolynomial fibonacci(int n);
    static CharPolynomial fib_like(int n, double rho);

    int degree() const { return n + 1; }
    /// Monomial coefficients, constant term first, length degree()+1.
    std::vector<double> coefficients() const;
};

// Default tolerances. The dominant-root Newton stops on step size, which
// stays accurate even near the rho -> 0 double-root collapse of q.
inline constexpr double kDominantRootTol = 1e-12;
inline constexpr double kRootResidualTol = 1e-10;
inline constexpr double kRegimeTol = 1e-9;

/// Residual scale (1+|z|)^degree used by every "is this a root" test.
double residual_scale(const CharPolynomial& poly, Complex z);

Complex eval(const CharPolynomial& poly, Complex z);
/// Real axis path; uses the factored form z^{n-1}(z-1)^2 - rho for
/// FibLikeQ at z >= 0, which is better conditioned near z = 1.
double eval(const CharPolynomial& poly, double z);
Complex eval_derivative(const CharPolynomial& poly, Complex z);

/// All roots, dominant one split out.
struct RootSet {
    double dominant;              // lambda_max, the unique real root > 1
    std::vector<Complex> others;  // degree-1 roots, all |z| < dominant
    double residual_bound;        // max over roots of |p(z)| / (1+|z|)^degree
};

struct SpectrumPoint {
    Complex value;
    bool near_unit_circle;  // | |z| - 1 | <= tol
};

struct RootCountReport {
    enum class Regime { NoInteriorRoots, OneDoubleRoot, TwoInteriorRoots };
    double rho0;     // 4 lambda1^{n-1} / (n+1)^2
    double lambda1;  // (n-1)/(n+1)
    Regime regime;
    std::vector<double> interior_roots;  // real roots in (0, lambda_max)
};

/// The unique real root > 1. Bracketed bisection to localize, then
/// safeguarded Newton; stops when the step drops below tol*lambda.
double dominant_root(const CharPolynomial& poly, double tol = kDominantRootTol);

/// Aberth-Ehrlich simultaneous iteration seeded with the dominant root and
/// the remaining points on a circle of radius max(1, lambda_max).
RootSet all_roots(const CharPolynomial& poly, double tol = kRootResidualTol);

/// Roots with |z| > 1 (strict); near-unit-circle hits are flagged, not dropped.
std::vector<SpectrumPoint> point_spectrum(const CharPolynomial& poly,
                                          double tol = kRootResidualTol);

/// Classifies the real roots of q_{n+1} inside (0, lambda_max) by comparing
/// rho against rho_0 = 4 lambda1^{n-1}/(n+1)^2. Requires FibLikeQ, n >= 2.
RootCountReport root_count_report(const CharPolynomial& poly, double tol = kRegimeTol);

const char* to_string(RootCountReport::Regime regime);

}  // namespace fibspec
