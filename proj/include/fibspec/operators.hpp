#pragma once

#include <cstddef>
#include <vector>

#include "fibspec/errors.hpp"
#include "fibspec/sequences.hpp"

namespace fibspec {

enum class OperatorKind {
    F,      // x -> (sum_{k>n} x_k, x_1, x_2, ...)
    G,      // D_n Gamma_n D_n^{-1}, bounded similarity transform
    Gamma,  // x -> (rho sum_{k>n} (k-n) x_k, x_1, x_2, ...), not closed
};

struct OperatorSpec {
    OperatorKind kind;
    int n;
    double rho = 0.0;  // required for G and Gamma, ignored for F

    static OperatorSpec f(int n);
    static OperatorSpec g(int n, double rho);
    static OperatorSpec gamma(int n, double rho);
};

/// Finitely supported l^1 vector; coords[i] holds x_{i+1}.
struct SeqVector {
    std::vector<double> coords;

    static SeqVector unit(std::size_t k);  // e_k, 1-based

    double coord(std::size_t k) const {  // 1-based, 0 beyond stored range
        return (k >= 1 && k <= coords.size()) ? coords[k - 1] : 0.0;
    }
    std::size_t support_end() const;  // last index with a nonzero coord, 0 if none
    double norm1() const;
};

/// Top-left N x N finite section in the standard basis. Entries are exact
/// for kind F (zeros and ones); G carries the rational subdiagonal
/// (k-n+1)/(k-n) in double precision.
class TruncatedOperator {
public:
    TruncatedOperator(const OperatorSpec& spec, int size);

    const OperatorSpec& spec() const { return spec_; }
    int size() const { return size_; }
    double entry(int row, int col) const;  // 1-based

    /// Action of the *infinite* operator on x, exact for finitely supported
    /// x whose support stays strictly inside the window. Throws
    /// TruncationError when the support touches the boundary (the result
    /// would silently miss mass).
    SeqVector apply(const SeqVector& x) const;

    /// Plain finite-section mat-vec, no exactness claim. This is the
    /// object power iteration studies.
    std::vector<double> apply_finite_section(const std::vector<double>& x) const;

private:
    OperatorSpec spec_;
    int size_;
    double first_row(int col) const;
    double subdiagonal(int col) const;  // entry (col+1, col)
};

TruncatedOperator build_truncation(const OperatorSpec& spec, int size);

/// ||F_n^k||_1 from the truncation, in exact integers: max column sum of
/// the N x N power over the truncation-free columns j <= N-k.
/// Requires N >= k+n+2. Valid for every k >= 1 (this is the oracle the
/// k <= n cases of the norm identity fall back to).
BigInt exact_power_norm(const OperatorSpec& spec, int k, int size);

/// Dominant-eigenvalue estimate of the finite section via l^1-normalized
/// power iteration from a strictly positive start vector. Stops early once
/// successive estimates agree to tol; throws NonConvergence if they still
/// disagree after `iters` iterations (with iters == 1 the single estimate
/// is returned as a smoke value).
double power_iteration_radius(const TruncatedOperator& op, int iters, double tol);

/// Example-1 data: x^(m) = (1/m) e_{m+n} tends to 0 while
/// Gamma_n x^(m) = rho e_1 + (1/m) e_{m+n+1} tends to rho e_1 != 0.
struct NonClosednessRow {
    int m;
    double preimage_norm;  // ||x^(m)||_1 = 1/m
    double image_gap;      // ||Gamma_n x^(m) - rho e_1||_1 = 1/m
};

struct NonClosednessReport {
    int n;
    double rho;
    std::vector<NonClosednessRow> rows;  // m = 1 .. m_max
    double final_preimage_norm;          // gap of x^(m) to 0 at m = m_max
    double final_image_gap;              // gap of the image to rho e_1 at m = m_max
};

NonClosednessReport nonclosedness_demo(int n, double rho, int m_max);

}  // namespace fibspec
