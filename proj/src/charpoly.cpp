#include "fibspec/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace fibspec {

namespace {

void validate(const CharPolynomial& poly) {
    if (poly.n < 1) throw DomainError("CharPolynomial: n must be >= 1");
    if (poly.family == PolyFamily::FibLikeQ && !(poly.rho > 0.0))
        throw DomainError("CharPolynomial: rho must be > 0 for FibLikeQ");
}

// z^k by repeated multiplication; k is small (degree <= ~50).
Complex pow_int(Complex z, int k) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

double pow_int(double z, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

CharPolynomial CharPolynomial::fibonacci(int n) {
    CharPolynomial p{PolyFamily::FibonacciP, n, 0.0};
    validate(p);
    return p;
}

CharPolynomial CharPolynomial::fib_like(int n, double rho) {
    CharPolynomial p{PolyFamily::FibLikeQ, n, rho};
    validate(p);
    return p;
}

std::vector<double> CharPolynomial::coefficients() const {
    std::vector<double> c(static_cast<size_t>(n) + 2, 0.0);
    if (family == PolyFamily::FibonacciP) {
        c[0] = -1.0;
        c[n] = -1.0;
        c[n + 1] = 1.0;
    } else {
        c[0] = -rho;
        c[n - 1] += 1.0;  // += so n=1 folds z^0 terms: q_2 = z^2 - 2z + (1 - rho)
        c[n] = -2.0;
        c[n + 1] = 1.0;
    }
    return c;
}

double residual_scale(const CharPolynomial& poly, Complex z) {
    return pow_int(1.0 + std::abs(z), poly.degree());
}

Complex eval(const CharPolynomial& poly, Complex z) {
    validate(poly);
    if (poly.family == PolyFamily::FibonacciP) {
        const Complex zn = pow_int(z, poly.n);
        return zn * z - zn - 1.0;
    }
    const Complex znm1 = pow_int(z, poly.n - 1);
    return znm1 * z * z - 2.0 * znm1 * z + znm1 - poly.rho;
}

double eval(const CharPolynomial& poly, double z) {
    validate(poly);
    if (poly.family == PolyFamily::FibonacciP) {
        const double zn = pow_int(z, poly.n);
        return zn * z - zn - 1.0;
    }
    if (z >= 0.0) {
        const double d = z - 1.0;
        return pow_int(z, poly.n - 1) * d * d - poly.rho;
    }
    const double znm1 = pow_int(z, poly.n - 1);
    return znm1 * z * z - 2.0 * znm1 * z + znm1 - poly.rho;
}

Complex eval_derivative(const CharPolynomial& poly, Complex z) {
    validate(poly);
    const int n = poly.n;
    if (poly.family == PolyFamily::FibonacciP) {
        const Complex znm1 = pow_int(z, n - 1);
        return znm1 * (static_cast<double>(n + 1) * z - static_cast<double>(n));
    }
    // q' = (n+1) z^n - 2n z^{n-1} + (n-1) z^{n-2}; the last term vanishes at n=1.
    const Complex znm1 = pow_int(z, n - 1);
    Complex d = static_cast<double>(n + 1) * znm1 * z - 2.0 * static_cast<double>(n) * znm1;
    if (n >= 2) d += static_cast<double>(n - 1) * pow_int(z, n - 2);
    return d;
}

double dominant_root(const CharPolynomial& poly, double tol) {
    validate(poly);
    if (!(tol > 0.0)) throw DomainError("dominant_root: tol must be > 0");

    // p(1) = -1, q(1) = -rho: both negative, both strictly increasing on
    // (1, inf), so [1, b] brackets the unique root > 1 once eval(b) > 0.
    double lo = 1.0, hi = 2.0;
    int guard = 0;
    while (eval(poly, hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 1100) throw NonConvergence("dominant_root: bracket expansion failed");
    }
    // A few bisection steps give Newton a start inside the bracket.
    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (eval(poly, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = eval(poly, x);
        const double df = eval_derivative(poly, Complex{x, 0.0}).real();
        double step;
        if (df > 0.0 && std::isfinite(f / df)) {
            step = f / df;
            double next = x - step;
            if (next <= lo || next >= hi) {  // fall back to bisection inside the bracket
                next = (f > 0.0) ? 0.5 * (lo + x) : 0.5 * (x + hi);
                step = x - next;
            }
            if (f > 0.0)
                hi = x;
            else
                lo = x;
            x = next;
        } else {
            step = 0.5 * (hi - lo);
            x = 0.5 * (lo + hi);
            if (eval(poly, x) < 0.0)
                lo = x;
            else
                hi = x;
        }
        if (std::abs(step) <= tol * std::max(1.0, x)) return x;
    }
    throw NonConvergence("dominant_root: Newton did not reach tolerance");
}

RootSet all_roots(const CharPolynomial& poly, double tol) {
    validate(poly);
    if (!(tol > 0.0)) throw DomainError("all_roots: tol must be > 0");

    const int deg = poly.degree();
    const double lam_max = dominant_root(poly);
    const std::vector<double> coeff = poly.coefficients();

    // Horner evaluation of value and derivative from the coefficient vector.
    const auto horner = [&coeff, deg](Complex z) {
        Complex v = coeff[static_cast<size_t>(deg)];
        Complex d{0.0, 0.0};
        for (int i = deg - 1; i >= 0; --i) {
            d = d * z + v;
            v = v * z + coeff[static_cast<size_t>(i)];
        }
        return std::pair<Complex, Complex>{v, d};
    };

    std::vector<Complex> z(static_cast<size_t>(deg));
    z[0] = Complex{lam_max, 0.0};
    const double radius = std::max(1.0, lam_max);
    for (int i = 1; i < deg; ++i) {
        // Offset angle keeps seeds off the real axis and off each other.
        const double theta = 2.0 * std::numbers::pi * (i + 0.37) / deg;
        z[static_cast<size_t>(i)] = radius * Complex{std::cos(theta), std::sin(theta)};
    }

    bool converged = false;
    for (int iter = 0; iter < 500 && !converged; ++iter) {
        bool steps_small = true;
        for (int i = 0; i < deg; ++i) {
            auto [v, d] = horner(z[static_cast<size_t>(i)]);
            if (v == Complex{0.0, 0.0}) continue;
            const Complex newton = v / d;
            Complex repulse{0.0, 0.0};
            for (int j = 0; j < deg; ++j)
                if (j != i) repulse += 1.0 / (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
            const Complex w = newton / (1.0 - newton * repulse);
            z[static_cast<size_t>(i)] -= w;
            if (std::abs(w) > 1e-14 * (1.0 + std::abs(z[static_cast<size_t>(i)]))) steps_small = false;
        }
        converged = steps_small;
        if (!converged) {
            // Near ill-conditioned clusters the corrections bounce at the
            // evaluation-noise level without the roots moving; the residual
            // contract is what actually matters, so accept on it directly.
            converged = true;
            for (int i = 0; i < deg && converged; ++i) {
                const Complex zi = z[static_cast<size_t>(i)];
                if (std::abs(horner(zi).first) > 0.5 * tol * residual_scale(poly, zi))
                    converged = false;
            }
        }
    }
    if (!converged) throw NonConvergence("all_roots: Aberth iteration did not settle");

    // One polishing Newton step per root.
    for (auto& zi : z) {
        auto [v, d] = horner(zi);
        if (d != Complex{0.0, 0.0}) {
            const Complex w = v / d;
            if (std::abs(w) < 1e-8 * (1.0 + std::abs(zi))) zi -= w;
        }
    }

    // Split out the root matching lambda_max; the Newton value is the
    // better-conditioned one, so keep it as the dominant entry.
    size_t dom_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < z.size(); ++i) {
        const double dist = std::abs(z[i] - lam_max);
        if (dist < best) {
            best = dist;
            dom_idx = i;
        }
    }

    RootSet out;
    out.dominant = lam_max;
    out.residual_bound = 0.0;
    for (size_t i = 0; i < z.size(); ++i)
        if (i != dom_idx) out.others.push_back(z[i]);
    std::sort(out.others.begin(), out.others.end(), [](Complex a, Complex b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });

    const auto norm_residual = [&](Complex root) {
        return std::abs(eval(poly, root)) / residual_scale(poly, root);
    };
    out.residual_bound = norm_residual(Complex{out.dominant, 0.0});
    for (const Complex& r : out.others)
        out.residual_bound = std::max(out.residual_bound, norm_residual(r));
    if (out.residual_bound > tol)
        throw NonConvergence("all_roots: residual bound above tolerance");
    return out;
}

std::vector<SpectrumPoint> point_spectrum(const CharPolynomial& poly, double tol) {
    const RootSet roots = all_roots(poly, tol);
    std::vector<SpectrumPoint> pts;
    const auto consider = [&](Complex z) {
        const double m = std::abs(z);
        if (m > 1.0) pts.push_back({z, std::abs(m - 1.0) <= tol});
    };
    consider(Complex{roots.dominant, 0.0});
    for (const Complex& z : roots.others) consider(z);
    return pts;
}

RootCountReport root_count_report(const CharPolynomial& poly, double tol) {
    validate(poly);
    if (poly.family != PolyFamily::FibLikeQ)
        throw DomainError("root_count_report: requires FibLikeQ");
    if (poly.n < 2) throw DomainError("root_count_report: requires n >= 2");

    const int n = poly.n;
    RootCountReport rep;
    rep.lambda1 = static_cast<double>(n - 1) / static_cast<double>(n + 1);
    rep.rho0 = 4.0 * pow_int(rep.lambda1, n - 1) / (static_cast<double>(n + 1) * (n + 1));

    const auto bisect = [&poly](double lo, double hi) {
        // q(lo) and q(hi) have opposite signs on entry.
        double flo = eval(poly, lo);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = eval(poly, mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
            if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
        }
        return 0.5 * (lo + hi);
    };

    if (poly.rho > rep.rho0 * (1.0 + tol)) {
        rep.regime = RootCountReport::Regime::NoInteriorRoots;
    } else if (poly.rho >= rep.rho0 * (1.0 - tol)) {
        rep.regime = RootCountReport::Regime::OneDoubleRoot;
        rep.interior_roots = {rep.lambda1};
    } else {
        rep.regime = RootCountReport::Regime::TwoInteriorRoots;
        // q(0) = -rho < 0 < q(lambda1) = rho0 - rho > 0 > q(1) = -rho.
        rep.interior_roots = {bisect(0.0, rep.lambda1), bisect(rep.lambda1, 1.0)};
    }
    return rep;
}

const char* to_string(RootCountReport::Regime regime) {
    switch (regime) {
        case RootCountReport::Regime::NoInteriorRoots: return "no_interior_roots";
        case RootCountReport::Regime::OneDoubleRoot: return "one_double_root";
        case RootCountReport::Regime::TwoInteriorRoots: return "two_interior_roots";
    }
    return "unknown";
}

}  // namespace fibspec
