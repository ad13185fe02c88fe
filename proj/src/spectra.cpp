#include "fibspec/spectra.hpp"

#include <cmath>
#include <limits>

namespace fibspec {

namespace {

Complex pow_int(Complex z, int k) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

bool is_root(const CharPolynomial& poly, Complex lambda, double tol) {
    return std::abs(eval(poly, lambda)) <= tol * residual_scale(poly, lambda);
}

// sum_{j>=m} j t^j for |t| < 1 (differentiated geometric series).
Complex weighted_geom_tail(Complex t, int m) {
    const Complex one{1.0, 0.0};
    return pow_int(t, m) * (static_cast<double>(m) * (one - t) + t) / ((one - t) * (one - t));
}

// G's subdiagonal weight at column k: entry (k+1, k).
double g_weight(int n, double rho, int k) {
    if (k < n) return 1.0;
    if (k == n) return rho;
    return static_cast<double>(k - n + 1) / static_cast<double>(k - n);
}

}  // namespace

CharPolynomial char_polynomial(const OperatorSpec& spec) {
    if (spec.kind == OperatorKind::F) return CharPolynomial::fibonacci(spec.n);
    return CharPolynomial::fib_like(spec.n, spec.rho);
}

const char* to_string(SpectralPart part) {
    switch (part) {
        case SpectralPart::Resolvent: return "resolvent";
        case SpectralPart::Point: return "point";
        case SpectralPart::Residual: return "residual";
        case SpectralPart::Continuous: return "continuous";
    }
    return "unknown";
}

SpectrumVerdict classify(const OperatorSpec& spec, Complex lambda, double tol) {
    if (spec.kind == OperatorKind::Gamma)
        throw DomainError("classify: Gamma_n has an empty resolvent set; classify F or G");
    const CharPolynomial poly = char_polynomial(spec);
    const double modulus = std::abs(lambda);

    SpectrumVerdict v;
    v.lambda = lambda;
    v.resolvent_residual = std::numeric_limits<double>::quiet_NaN();
    v.boundary_flag = std::abs(modulus - 1.0) <= tol || is_root(poly, lambda, tol);

    if (std::abs(lambda - Complex{1.0, 0.0}) <= tol) {
        v.part = SpectralPart::Continuous;
    } else if (modulus <= 1.0) {
        v.part = SpectralPart::Residual;
    } else if (is_root(poly, lambda, tol)) {
        v.part = SpectralPart::Point;
        v.eigenvector_head = eigenvector(spec, lambda, 8, tol).head;
    } else {
        v.part = SpectralPart::Resolvent;
        // Probe witness: the G_1 resolvent formula is out of scope (n >= 2),
        // so that one case carries no residual.
        if (spec.kind == OperatorKind::F)
            v.resolvent_residual = resolvent_apply_F(spec.n, lambda, SeqVector::unit(1), 64, tol).residual;
        else if (spec.n >= 2)
            v.resolvent_residual =
                resolvent_apply_G(spec.n, spec.rho, lambda, SeqVector::unit(1), 64, tol).residual;
    }
    return v;
}

Eigenvector eigenvector(const OperatorSpec& spec, Complex lambda, int K, double tol) {
    if (spec.kind == OperatorKind::Gamma)
        throw DomainError("eigenvector: construct through G (same point spectrum)");
    if (K < 1) throw DomainError("eigenvector: K must be >= 1");
    const CharPolynomial poly = char_polynomial(spec);
    const double modulus = std::abs(lambda);
    if (modulus <= 1.0)
        throw NotAnEigenvalue("eigenvector: |lambda| <= 1 gives no l^1 eigenvector");
    if (!is_root(poly, lambda, tol))
        throw NotAnEigenvalue("eigenvector: charpoly(lambda) != 0 within tolerance");

    const int n = spec.n;
    Eigenvector v;
    v.lambda = lambda;
    v.head.resize(static_cast<std::size_t>(K));
    if (spec.kind == OperatorKind::F) {
        // x_{k+1} = x_k / lambda, so x = x_1 (1, 1/lambda, 1/lambda^2, ...).
        for (int k = 1; k <= K; ++k) v.head[static_cast<std::size_t>(k) - 1] = pow_int(1.0 / lambda, k - 1);
        v.tail_rule = "x[k] = x[1] / lambda^(k-1)";
        v.norm1 = modulus / (modulus - 1.0);
    } else {
        // x_k = x_1/lambda^{k-1} up to k = n, then rho (k-n) x_1 / lambda^{k-1}.
        for (int k = 1; k <= K; ++k) {
            Complex c = pow_int(1.0 / lambda, k - 1);
            if (k > n) c *= spec.rho * static_cast<double>(k - n);
            v.head[static_cast<std::size_t>(k) - 1] = c;
        }
        v.tail_rule = "x[k] = x[1]/lambda^(k-1) for k <= n; x[k] = rho*(k-n)*x[1]/lambda^(k-1) for k > n";
        double mn = 1.0;  // |lambda|^n
        for (int i = 0; i < n; ++i) mn *= modulus;
        const double head_part = (mn - 1.0) / (mn / modulus * (modulus - 1.0));
        const double tail_part =
            spec.rho / mn * (modulus * modulus) / ((modulus - 1.0) * (modulus - 1.0));
        v.norm1 = head_part + tail_part;
    }
    return v;
}

double eigenvector_residual(const OperatorSpec& spec, const Eigenvector& v) {
    const int n = spec.n;
    const Complex lambda = v.lambda;
    const int K = static_cast<int>(v.head.size());
    const Complex x1 = v.head.front();

    // First row: lambda x_1 - sum_{k>n} x_k, tail summed in closed form.
    Complex head_sum;
    if (spec.kind == OperatorKind::F) {
        // sum_{k>n} lambda^{1-k} = lambda^{1-n} / (lambda - 1)
        head_sum = pow_int(1.0 / lambda, n - 1) / (lambda - 1.0) * x1;
    } else {
        // sum_j rho j lambda^{1-n-j} = rho lambda^{1-n} * t/(1-t)^2, t = 1/lambda
        const Complex t = 1.0 / lambda;
        head_sum = spec.rho * pow_int(t, n - 1) * t / ((1.0 - t) * (1.0 - t)) * x1;
    }
    double residual = std::abs(lambda * x1 - head_sum);

    // Remaining rows: lambda x_{k+1} - w_k x_k over the head window.
    for (int k = 1; k < K; ++k) {
        const double w = (spec.kind == OperatorKind::F) ? 1.0 : g_weight(n, spec.rho, k);
        residual += std::abs(lambda * v.head[static_cast<std::size_t>(k)] -
                             w * v.head[static_cast<std::size_t>(k) - 1]);
    }
    return residual;
}

ResolventResult resolvent_apply_F(int n, Complex lambda, const SeqVector& y, int K, double tol) {
    if (n < 1) throw DomainError("resolvent_apply_F: n must be >= 1");
    const CharPolynomial poly = CharPolynomial::fibonacci(n);
    if (std::abs(lambda) <= 1.0)
        throw OutsideResolventSet("resolvent_apply_F: |lambda| <= 1 is in the spectrum");
    const Complex p = eval(poly, lambda);
    if (std::abs(p) <= tol * residual_scale(poly, lambda))
        throw SingularResolvent("resolvent_apply_F: lambda is a point-spectrum root");
    const std::size_t support = y.support_end();
    if (K < static_cast<int>(support) + 1)
        throw DomainError("resolvent_apply_F: K must cover support(y) + 1");

    // x_1 = [lambda^{n-1}(lambda-1) y_1 + y_2 + lambda y_3 + ... +
    //        lambda^{n-2} y_n + lambda^{n-1} v] / p(lambda),  v = sum_{k>n} y_k.
    Complex v{0.0, 0.0};
    for (std::size_t k = static_cast<std::size_t>(n) + 1; k <= support; ++k)
        v += y.coord(k);
    Complex num = pow_int(lambda, n - 1) * (lambda - 1.0) * y.coord(1);
    for (int j = 2; j <= n; ++j) num += pow_int(lambda, j - 2) * y.coord(static_cast<std::size_t>(j));
    num += pow_int(lambda, n - 1) * v;

    // Keep going past K far enough that the pure-geometric tail regime is
    // reached; T is where the closed tail takes over.
    const int T = std::max<int>(static_cast<int>(support), n + 1);
    const int len = std::max(K, T);
    std::vector<Complex> x(static_cast<std::size_t>(len));
    x[0] = num / p;
    for (int k = 1; k < len; ++k)
        x[static_cast<std::size_t>(k)] =
            (x[static_cast<std::size_t>(k) - 1] + y.coord(static_cast<std::size_t>(k) + 1)) / lambda;

    // Residual with exact tails: sum_{k>n} x_k = head + x_T * lambda/(lambda-1).
    Complex sum{0.0, 0.0};
    for (int k = n + 1; k < T; ++k) sum += x[static_cast<std::size_t>(k) - 1];
    sum += x[static_cast<std::size_t>(T) - 1] * lambda / (lambda - 1.0);
    double residual = std::abs(lambda * x[0] - sum - y.coord(1));
    for (int k = 1; k < len; ++k)
        residual += std::abs(lambda * x[static_cast<std::size_t>(k)] -
                             x[static_cast<std::size_t>(k) - 1] - y.coord(static_cast<std::size_t>(k) + 1));

    ResolventResult out;
    out.coords.assign(x.begin(), x.begin() + K);
    out.tail_rule = "x[k+1] = x[k]/lambda beyond the support of y";
    out.residual = residual;
    return out;
}

ResolventResult resolvent_apply_G(int n, double rho, Complex lambda, const SeqVector& y,
                                  int K, double tol) {
    if (n < 2) throw DomainError("resolvent_apply_G: x_1 closed form needs n >= 2");
    if (!(rho > 0.0)) throw DomainError("resolvent_apply_G: rho must be > 0");
    const CharPolynomial poly = CharPolynomial::fib_like(n, rho);
    if (std::abs(lambda) <= 1.0)
        throw OutsideResolventSet("resolvent_apply_G: |lambda| <= 1 is in the spectrum");
    const Complex q = eval(poly, lambda);
    if (std::abs(q) <= tol * residual_scale(poly, lambda))
        throw SingularResolvent("resolvent_apply_G: lambda is a point-spectrum root");
    const std::size_t support = y.support_end();
    if (K < static_cast<int>(support) + 1)
        throw DomainError("resolvent_apply_G: K must cover support(y) + 1");

    // x_1 = [lambda^{n-2}(lambda-1)^2 y_1 + rho y_2 + rho lambda y_3 + ... +
    //        rho lambda^{n-2} y_n + lambda^{n-1} y_{n+1} +
    //        sum_{k>=2} abar_{n+k} y_{n+k}] / q(lambda),
    // abar_{n+k} = lambda^{n-2}(lambda-1)^2 * [1/(lambda-1) + 1/(k (lambda-1)^2)],
    // the closed form of the alpha series. Finite support makes the sum finite.
    const Complex lead = pow_int(lambda, n - 2) * (lambda - 1.0) * (lambda - 1.0);
    Complex num = lead * y.coord(1);
    for (int j = 2; j <= n; ++j)
        num += rho * pow_int(lambda, j - 2) * y.coord(static_cast<std::size_t>(j));
    num += pow_int(lambda, n - 1) * y.coord(static_cast<std::size_t>(n) + 1);
    for (int k = 2; static_cast<std::size_t>(n + k) <= support; ++k) {
        const Complex alpha = 1.0 / (lambda - 1.0) +
                              1.0 / (static_cast<double>(k) * (lambda - 1.0) * (lambda - 1.0));
        num += lead * alpha * y.coord(static_cast<std::size_t>(n + k));
    }

    const int T = std::max<int>(static_cast<int>(support) + 1, n + 2);
    const int len = std::max(K, T);
    std::vector<Complex> x(static_cast<std::size_t>(len));
    x[0] = num / q;
    for (int k = 1; k < len; ++k) {
        // (s2g): x_{k+1} = (w_k x_k + y_{k+1}) / lambda with G's weights.
        const double w = g_weight(n, rho, k);
        x[static_cast<std::size_t>(k)] =
            (w * x[static_cast<std::size_t>(k) - 1] + y.coord(static_cast<std::size_t>(k) + 1)) / lambda;
    }

    // Tail: past max(support, n+1) the recurrence is pure, so
    // x_{n+j} = c j t^j with t = 1/lambda; anchor c at index T.
    const Complex t = 1.0 / lambda;
    const int jT = T - n;
    const Complex c = x[static_cast<std::size_t>(T) - 1] / (static_cast<double>(jT) * pow_int(t, jT));
    Complex sum{0.0, 0.0};
    for (int k = n + 1; k <= T; ++k) sum += x[static_cast<std::size_t>(k) - 1];
    sum += c * weighted_geom_tail(t, jT + 1);

    double residual = std::abs(lambda * x[0] - sum - y.coord(1));
    for (int k = 1; k < len; ++k) {
        const double w = g_weight(n, rho, k);
        residual += std::abs(lambda * x[static_cast<std::size_t>(k)] -
                             w * x[static_cast<std::size_t>(k) - 1] -
                             y.coord(static_cast<std::size_t>(k) + 1));
    }

    ResolventResult out;
    out.coords.assign(x.begin(), x.begin() + K);
    out.tail_rule = "x[n+j] = c * j / lambda^j beyond the support of y";
    out.residual = residual;
    return out;
}

std::vector<Complex> transpose_eigvec_coords(const OperatorSpec& spec, Complex lambda, int K) {
    if (spec.kind == OperatorKind::Gamma)
        throw DomainError("transpose_eigvec_coords: F or G only");
    if (K < 1) throw DomainError("transpose_eigvec_coords: K must be >= 1");
    const int n = spec.n;
    std::vector<Complex> x(static_cast<std::size_t>(K));
    x[0] = Complex{1.0, 0.0};
    for (int k = 1; k < K; ++k) {
        Complex next = lambda * x[static_cast<std::size_t>(k) - 1];
        if (k >= n + 1) next -= x[0];
        if (spec.kind == OperatorKind::G) next /= g_weight(n, spec.rho, k);
        x[static_cast<std::size_t>(k)] = next;
    }
    return x;
}

double transpose_eigvec_bound(const OperatorSpec& spec, Complex lambda, int K, double tol) {
    if (std::abs(lambda) > 1.0 + tol)
        throw DomainError("transpose_eigvec_bound: needs |lambda| <= 1");
    if (std::abs(lambda - Complex{1.0, 0.0}) <= tol)
        throw DomainError("transpose_eigvec_bound: lambda = 1 is the unbounded case");
    double best = 0.0;
    for (const Complex& c : transpose_eigvec_coords(spec, lambda, K))
        best = std::max(best, std::abs(c));
    return best;
}

double transpose_bound_formula(const OperatorSpec& spec, Complex lambda) {
    const double gap = std::abs(lambda - Complex{1.0, 0.0});
    if (spec.kind == OperatorKind::F) return 1.0 + 2.0 / gap;
    return 1.0 / (2.0 * spec.rho) + 2.0 / (gap * gap);
}

double transpose_eigvec_divergence(const OperatorSpec& spec, int K) {
    if (K < spec.n + 3) throw DomainError("transpose_eigvec_divergence: K must be >= n+3");
    double best = 0.0;
    for (const Complex& c : transpose_eigvec_coords(spec, Complex{1.0, 0.0}, K))
        best = std::max(best, std::abs(c));
    return best;
}

}  // namespace fibspec
