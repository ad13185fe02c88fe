#include "fibspec/operators.hpp"

#include <cmath>
#include <string>

namespace fibspec {

namespace {

void validate(const OperatorSpec& spec) {
    if (spec.n < 1) throw DomainError("OperatorSpec: n must be >= 1");
    if (spec.kind != OperatorKind::F && !(spec.rho > 0.0))
        throw DomainError("OperatorSpec: rho must be > 0 for G and Gamma");
}

}  // namespace

OperatorSpec OperatorSpec::f(int n) {
    OperatorSpec s{OperatorKind::F, n, 0.0};
    validate(s);
    return s;
}

OperatorSpec OperatorSpec::g(int n, double rho) {
    OperatorSpec s{OperatorKind::G, n, rho};
    validate(s);
    return s;
}

OperatorSpec OperatorSpec::gamma(int n, double rho) {
    OperatorSpec s{OperatorKind::Gamma, n, rho};
    validate(s);
    return s;
}

SeqVector SeqVector::unit(std::size_t k) {
    if (k < 1) throw DomainError("SeqVector::unit: k must be >= 1");
    SeqVector v;
    v.coords.assign(k, 0.0);
    v.coords[k - 1] = 1.0;
    return v;
}

std::size_t SeqVector::support_end() const {
    for (std::size_t i = coords.size(); i > 0; --i)
        if (coords[i - 1] != 0.0) return i;
    return 0;
}

double SeqVector::norm1() const {
    double s = 0.0;
    for (double c : coords) s += std::abs(c);
    return s;
}

TruncatedOperator::TruncatedOperator(const OperatorSpec& spec, int size)
    : spec_(spec), size_(size) {
    validate(spec);
    if (size < spec.n + 2)
        throw DomainError("TruncatedOperator: size must be >= n+2 to contain the pattern");
}

double TruncatedOperator::first_row(int col) const {
    if (col <= spec_.n) return 0.0;
    switch (spec_.kind) {
        case OperatorKind::F:
        case OperatorKind::G: return 1.0;
        case OperatorKind::Gamma: return spec_.rho * (col - spec_.n);
    }
    return 0.0;
}

double TruncatedOperator::subdiagonal(int col) const {
    if (spec_.kind != OperatorKind::G) return 1.0;
    if (col < spec_.n) return 1.0;
    if (col == spec_.n) return spec_.rho;
    // (k+1, k) = (k-n+1)/(k-n) for k > n: 2, 3/2, 4/3, ...
    return static_cast<double>(col - spec_.n + 1) / static_cast<double>(col - spec_.n);
}

double TruncatedOperator::entry(int row, int col) const {
    if (row < 1 || row > size_ || col < 1 || col > size_)
        throw DomainError("entry: index out of range");
    if (row == 1) return first_row(col);
    if (row == col + 1) return subdiagonal(col);
    return 0.0;
}

SeqVector TruncatedOperator::apply(const SeqVector& x) const {
    const std::size_t support = x.support_end();
    if (support >= static_cast<std::size_t>(size_))
        throw TruncationError("apply: support touches the truncation boundary (index " +
                              std::to_string(support) + " of " + std::to_string(size_) + ")");
    SeqVector y;
    y.coords.assign(support + 1, 0.0);
    double head = 0.0;
    for (std::size_t k = static_cast<std::size_t>(spec_.n) + 1; k <= support; ++k)
        head += first_row(static_cast<int>(k)) * x.coords[k - 1];
    y.coords[0] = head;
    for (std::size_t k = 1; k <= support; ++k)
        y.coords[k] = subdiagonal(static_cast<int>(k)) * x.coords[k - 1];
    return y;
}

std::vector<double> TruncatedOperator::apply_finite_section(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(size_))
        throw DomainError("apply_finite_section: dimension mismatch");
    std::vector<double> y(x.size(), 0.0);
    for (int k = spec_.n + 1; k <= size_; ++k)
        y[0] += first_row(k) * x[static_cast<std::size_t>(k) - 1];
    for (int k = 1; k < size_; ++k)
        y[static_cast<std::size_t>(k)] = subdiagonal(k) * x[static_cast<std::size_t>(k) - 1];
    return y;
}

TruncatedOperator build_truncation(const OperatorSpec& spec, int size) {
    return TruncatedOperator(spec, size);
}

BigInt exact_power_norm(const OperatorSpec& spec, int k, int size) {
    validate(spec);
    if (spec.kind != OperatorKind::F)
        throw DomainError("exact_power_norm: exact integer powers exist for kind F only");
    if (k < 1) throw DomainError("exact_power_norm: k must be >= 1");
    if (size < k + spec.n + 2)
        throw DomainError("exact_power_norm: size must be >= k+n+2 for truncation-free columns");

    const std::size_t N = static_cast<std::size_t>(size);
    const int n = spec.n;

    // Column-major power. Right-multiplying by F_n combines columns:
    // column j of M*F is M[:,j+1] plus (j > n ? M[:,1] : 0), because F's
    // column j has its ones at row j+1 and (for j > n) row 1.
    std::vector<std::vector<BigInt>> cols(N, std::vector<BigInt>(N, BigInt(0)));
    for (std::size_t j = 0; j < N; ++j) cols[j][j] = 1;  // identity
    for (int step = 0; step < k; ++step) {
        std::vector<std::vector<BigInt>> next(N, std::vector<BigInt>(N, BigInt(0)));
        for (std::size_t j = 0; j < N; ++j) {
            if (j + 1 < N) next[j] = cols[j + 1];
            if (static_cast<int>(j) + 1 > n)
                for (std::size_t i = 0; i < N; ++i) next[j][i] += cols[0][i];
        }
        cols.swap(next);
    }

    BigInt best = 0;
    const std::size_t interior = N - static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < interior; ++j) {
        BigInt sum = 0;
        for (const BigInt& v : cols[j]) sum += v;  // entries are nonnegative
        if (sum > best) best = sum;
    }
    return best;
}

double power_iteration_radius(const TruncatedOperator& op, int iters, double tol) {
    if (iters < 1) throw DomainError("power_iteration_radius: iters must be >= 1");
    if (!(tol > 0.0)) throw DomainError("power_iteration_radius: tol must be > 0");

    const std::size_t N = static_cast<std::size_t>(op.size());
    std::vector<double> x(N, 1.0 / static_cast<double>(N));  // strictly positive, ||x||_1 = 1
    double estimate = 0.0, previous = 0.0;
    for (int it = 1; it <= iters; ++it) {
        std::vector<double> y = op.apply_finite_section(x);
        double norm = 0.0;
        for (double v : y) norm += std::abs(v);
        if (!(norm > 0.0)) throw NonConvergence("power_iteration_radius: iterate collapsed to 0");
        estimate = norm;  // ||Hx||_1 with ||x||_1 = 1
        for (double& v : y) v /= norm;
        x.swap(y);
        if (it >= 2 && std::abs(estimate - previous) <= tol) return estimate;
        previous = estimate;
    }
    if (iters == 1) return estimate;
    throw NonConvergence("power_iteration_radius: estimates still moving after iteration cap");
}

NonClosednessReport nonclosedness_demo(int n, double rho, int m_max) {
    if (m_max < 2) throw DomainError("nonclosedness_demo: m_max must be >= 2");
    const OperatorSpec spec = OperatorSpec::gamma(n, rho);
    const TruncatedOperator op(spec, m_max + n + 2);

    NonClosednessReport rep{n, rho, {}, 0.0, 0.0};
    for (int m = 1; m <= m_max; ++m) {
        SeqVector x = SeqVector::unit(static_cast<std::size_t>(m + n));
        x.coords[static_cast<std::size_t>(m + n) - 1] = 1.0 / static_cast<double>(m);
        SeqVector image = op.apply(x);
        image.coords[0] -= rho;  // distance to the limit candidate rho * e_1
        rep.rows.push_back({m, x.norm1(), image.norm1()});
    }
    rep.final_preimage_norm = rep.rows.back().preimage_norm;
    rep.final_image_gap = rep.rows.back().image_gap;
    return rep;
}

}  // namespace fibspec
