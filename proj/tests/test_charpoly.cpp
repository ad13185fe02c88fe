#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "fibspec/charpoly.hpp"
#include "oracles.hpp"

using namespace fibspec;
using doctest::Approx;

namespace {
constexpr double kPhi = 1.6180339887498948482;          // (1+sqrt(5))/2
constexpr double kSupergolden = 1.4655712318767680267;  // root of l^3-l^2-1
}  // namespace

TEST_CASE("eval matches the defining forms at pinned points") {
    CHECK(eval(CharPolynomial::fibonacci(1), 1.0) == Approx(-1.0));  // p(1) = -1
    CHECK(eval(CharPolynomial::fibonacci(3), 0.0) == Approx(-1.0));  // constant term
    CHECK(eval(CharPolynomial::fib_like(5, 1.0), 1.0) == Approx(-1.0));  // q(1) = -rho
    CHECK(eval(CharPolynomial::fib_like(5, 0.75), 1.0) == Approx(-0.75));
}

TEST_CASE("factored and monomial q agree on the real overlap") {
    for (int n : {1, 2, 4, 8}) {
        for (double rho : {1e-3, 0.25, 1.0, 42.0}) {
            const CharPolynomial q = CharPolynomial::fib_like(n, rho);
            for (double x = 0.0; x <= 4.0; x += 0.173) {
                const double factored = eval(q, x);
                const double monomial = eval(q, Complex{x, 0.0}).real();
                const double scale = std::max({1.0, std::pow(1.0 + x, n + 1), rho});
                CHECK(std::abs(factored - monomial) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("eval is strictly increasing on the real axis beyond 1") {
    for (int n : {1, 2, 5, 9}) {
        for (double x : {1.0, 1.3, 2.0, 5.0}) {
            CHECK(eval_derivative(CharPolynomial::fibonacci(n), Complex{x, 0.0}).real() > 0.0);
            CHECK(eval_derivative(CharPolynomial::fib_like(n, 0.7), Complex{x, 0.0}).real() > 0.0);
        }
    }
}

TEST_CASE("dominant_root: golden ratio and the q_2 factorization") {
    CHECK(dominant_root(CharPolynomial::fibonacci(1)) == Approx(kPhi).epsilon(1e-14));
    // roots of q_2 are 1 +- sqrt(rho)
    CHECK(dominant_root(CharPolynomial::fib_like(1, 0.25)) == Approx(1.5).epsilon(1e-14));
    CHECK(dominant_root(CharPolynomial::fib_like(1, 4.0)) == Approx(3.0).epsilon(1e-14));
}

TEST_CASE("dominant_root matches a plain bisection oracle") {
    const CharPolynomial p3 = CharPolynomial::fibonacci(2);
    const double expected =
        oracles::bisect([&p3](double x) { return eval(p3, x); }, 1.0, 2.0);
    CHECK(expected == Approx(kSupergolden).epsilon(1e-14));  // oracle self-check
    CHECK(dominant_root(p3) == Approx(expected).epsilon(1e-14));

    for (double rho : {1e-6, 1e-2, 1.0, 1e3}) {
        const CharPolynomial q = CharPolynomial::fib_like(5, rho);
        double hi = 2.0;
        while (eval(q, hi) <= 0.0) hi *= 2.0;
        const double ref = oracles::bisect([&q](double x) { return eval(q, x); }, 1.0, hi);
        CHECK(dominant_root(q) == Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("all_roots: golden pair and q_2 across rho") {
    const RootSet golden = all_roots(CharPolynomial::fibonacci(1));
    REQUIRE(golden.others.size() == 1);
    CHECK(golden.dominant == Approx(kPhi).epsilon(1e-12));
    // product of the two roots of l^2 - l - 1 is -1
    CHECK(golden.others[0].real() == Approx(-1.0 / kPhi).epsilon(1e-12));
    CHECK(golden.others[0].imag() == Approx(0.0));

    const RootSet q2 = all_roots(CharPolynomial::fib_like(1, 4.0));
    REQUIRE(q2.others.size() == 1);
    CHECK(q2.dominant == Approx(3.0).epsilon(1e-12));
    CHECK(q2.others[0].real() == Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("all_roots agrees with the companion-matrix oracle") {
    for (const CharPolynomial& poly :
         {CharPolynomial::fibonacci(4), CharPolynomial::fibonacci(7),
          CharPolynomial::fib_like(5, 1.0), CharPolynomial::fib_like(6, 0.01)}) {
        const RootSet rs = all_roots(poly);
        std::vector<Complex> mine;
        mine.push_back(Complex{rs.dominant, 0.0});
        mine.insert(mine.end(), rs.others.begin(), rs.others.end());
        std::vector<Complex> ref = oracles::companion_roots(poly.coefficients());
        REQUIRE(mine.size() == ref.size());
        // greedy matching: every reference root has a nearby computed root
        for (const Complex& r : ref) {
            double best = 1e300;
            for (const Complex& z : mine) best = std::min(best, std::abs(z - r));
            CHECK(best <= 1e-8 * (1.0 + std::abs(r)));
        }
    }
}

TEST_CASE("all_roots: degree, dominance, residual bound") {
    const RootSet rs = all_roots(CharPolynomial::fibonacci(4));
    CHECK(rs.others.size() == 4);  // degree 5
    int strictly_dominant = 0;
    for (const Complex& z : rs.others) {
        CHECK(std::abs(z) < rs.dominant);
        if (std::abs(z) > rs.dominant - 1e-6) ++strictly_dominant;
    }
    CHECK(strictly_dominant == 0);
    CHECK(rs.residual_bound <= kRootResidualTol);
}

TEST_CASE("dominance holds across both families") {
    for (int n = 1; n <= 12; ++n) {
        const RootSet rs = all_roots(CharPolynomial::fibonacci(n));
        for (const Complex& z : rs.others) CHECK(std::abs(z) <= rs.dominant - 1e-8);
    }
    for (int n = 1; n <= 8; ++n) {
        for (double rho : {1e-6, 1e-3, 0.1, 1.0, 10.0, 1e3, 1e6}) {
            const RootSet rs = all_roots(CharPolynomial::fib_like(n, rho));
            for (const Complex& z : rs.others) CHECK(std::abs(z) <= rs.dominant - 1e-8);
        }
    }
}

TEST_CASE("root residuals stay below the documented scale") {
    for (const CharPolynomial& poly :
         {CharPolynomial::fibonacci(9), CharPolynomial::fib_like(7, 1e5)}) {
        const RootSet rs = all_roots(poly);
        const auto check_root = [&poly](Complex z) {
            CHECK(std::abs(eval(poly, z)) <= 1e-9 * residual_scale(poly, z));
        };
        check_root(Complex{rs.dominant, 0.0});
        for (const Complex& z : rs.others) check_root(z);
    }
}

TEST_CASE("odd-n q has exactly one negative real root") {
    for (int n : {3, 5, 7}) {
        for (double rho : {0.3, 1.0, 5.0}) {
            const RootSet rs = all_roots(CharPolynomial::fib_like(n, rho));
            int negative_real = 0;
            for (const Complex& z : rs.others)
                if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z)) && z.real() < 0.0)
                    ++negative_real;
            CHECK(negative_real == 1);
        }
    }
}

TEST_CASE("point_spectrum filters on strict modulus") {
    const auto golden = point_spectrum(CharPolynomial::fibonacci(1));
    REQUIRE(golden.size() == 1);  // the 0.618 root is excluded
    CHECK(golden[0].value.real() == Approx(kPhi).epsilon(1e-12));

    const auto q2 = point_spectrum(CharPolynomial::fib_like(1, 0.25));
    REQUIRE(q2.size() == 1);  // 1.5 in, 0.5 out
    CHECK(q2[0].value.real() == Approx(1.5).epsilon(1e-12));

    // n = 6: compare against the oracle roots filtered the same way
    const auto pts = point_spectrum(CharPolynomial::fibonacci(6));
    const auto ref = oracles::companion_roots(CharPolynomial::fibonacci(6).coefficients());
    std::size_t expected = 0;
    for (const Complex& z : ref)
        if (std::abs(z) > 1.0) ++expected;
    CHECK(pts.size() == expected);
    for (const auto& pt : pts) CHECK(std::abs(pt.value) > 1.0);
}

TEST_CASE("p_5 has unit-circle roots that stay out of the point spectrum") {
    // l^5 - l^4 - 1 = (l^2 - l + 1)(l^3 - l - 1); the quadratic factor's
    // roots e^{+-i pi/3} sit exactly on the unit circle.
    const auto pts = point_spectrum(CharPolynomial::fibonacci(4));
    for (const auto& pt : pts) CHECK(std::abs(pt.value) > 1.0);
    const RootSet rs = all_roots(CharPolynomial::fibonacci(4));
    int on_circle = 0;
    for (const Complex& z : rs.others)
        if (std::abs(std::abs(z) - 1.0) <= 1e-9) ++on_circle;
    CHECK(on_circle == 2);
    // the remaining pair sits inside the circle, so only the dominant root is left
    CHECK(pts.size() == 1);
}

TEST_CASE("root_count_report reproduces the interior-root regimes") {
    const RootCountReport none = root_count_report(CharPolynomial::fib_like(2, 0.5));
    CHECK(none.rho0 == Approx(4.0 / 27.0).epsilon(1e-14));
    CHECK(none.lambda1 == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(none.regime == RootCountReport::Regime::NoInteriorRoots);
    CHECK(none.interior_roots.empty());

    const RootCountReport dbl = root_count_report(CharPolynomial::fib_like(2, 4.0 / 27.0));
    CHECK(dbl.regime == RootCountReport::Regime::OneDoubleRoot);
    REQUIRE(dbl.interior_roots.size() == 1);
    CHECK(dbl.interior_roots[0] == Approx(1.0 / 3.0).epsilon(1e-12));

    const RootCountReport two = root_count_report(CharPolynomial::fib_like(2, 0.05));
    CHECK(two.regime == RootCountReport::Regime::TwoInteriorRoots);
    REQUIRE(two.interior_roots.size() == 2);
    // frozen from an independent bisection of l (l-1)^2 = 0.05
    CHECK(two.interior_roots[0] == Approx(0.0561227535287544).epsilon(1e-12));
    CHECK(two.interior_roots[1] == Approx(0.7400756660151617).epsilon(1e-12));
    CHECK(two.interior_roots[0] < two.lambda1);
    CHECK(two.interior_roots[1] > two.lambda1);

    // regime boundaries across n, plus a sign-scan cross-check
    for (int n : {2, 3, 4, 5}) {
        const double lambda1 = static_cast<double>(n - 1) / (n + 1);
        const double rho0 = 4.0 * std::pow(lambda1, n - 1) / ((n + 1.0) * (n + 1.0));
        CHECK(root_count_report(CharPolynomial::fib_like(n, 2.0 * rho0)).regime ==
              RootCountReport::Regime::NoInteriorRoots);
        CHECK(root_count_report(CharPolynomial::fib_like(n, rho0)).regime ==
              RootCountReport::Regime::OneDoubleRoot);
        const RootCountReport low = root_count_report(CharPolynomial::fib_like(n, rho0 / 2.0));
        CHECK(low.regime == RootCountReport::Regime::TwoInteriorRoots);
        for (double r : low.interior_roots) {
            CHECK(r > 0.0);
            CHECK(r < 1.0);
            CHECK(std::abs(eval(CharPolynomial::fib_like(n, rho0 / 2.0), r)) <= 1e-12);
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(CharPolynomial::fibonacci(0), DomainError);
    CHECK_THROWS_AS(CharPolynomial::fib_like(2, -1.0), DomainError);
    CHECK_THROWS_AS(root_count_report(CharPolynomial::fib_like(1, 0.5)), DomainError);
    CHECK_THROWS_AS(root_count_report(CharPolynomial::fibonacci(3)), DomainError);
    CHECK_THROWS_AS(dominant_root(CharPolynomial::fibonacci(1), -1.0), DomainError);
}
