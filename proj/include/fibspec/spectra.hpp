#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fibspec/charpoly.hpp"
#include "fibspec/operators.hpp"

namespace fibspec {

/// Characteristic polynomial of an operator family: p_{n+1} for F,
/// q_{n+1} for G and Gamma (Gamma shares G's point spectrum).
CharPolynomial char_polynomial(const OperatorSpec& spec);

enum class SpectralPart { Resolvent, Point, Residual, Continuous };

const char* to_string(SpectralPart part);

/// Classification of one complex number against sigma(F_n) or sigma(G_n):
///   continuous  iff lambda = 1 (within tol),
///   residual    iff |lambda| <= 1 and lambda != 1,
///   point       iff |lambda| > 1 and charpoly(lambda) = 0 (within scale*tol),
///   resolvent   iff |lambda| > 1 and charpoly(lambda) != 0.
/// boundary_flag marks lambda within tol of the unit circle or of a root,
/// where the strict case split is tolerance-sensitive.
struct SpectrumVerdict {
    Complex lambda;
    SpectralPart part;
    bool boundary_flag;
    std::vector<Complex> eigenvector_head;  // witness when part == Point
    double resolvent_residual;              // witness when part == Resolvent, else NaN
};

inline constexpr double kClassifyTol = 1e-9;

/// F or G only; the resolvent set of Gamma_n is empty, so the four-way
/// split does not apply to it.
SpectrumVerdict classify(const OperatorSpec& spec, Complex lambda, double tol = kClassifyTol);

/// Point-spectrum eigenvector, x_1 = 1. head holds the first K coordinates;
/// the tail follows tail_rule exactly, and norm1 is the closed-form l^1 norm.
struct Eigenvector {
    Complex lambda;
    std::vector<Complex> head;
    std::string tail_rule;
    double norm1;
};

Eigenvector eigenvector(const OperatorSpec& spec, Complex lambda, int K,
                        double tol = kClassifyTol);

/// ||(lambda I - H)x||_1 over the head window, with the first-row infinite
/// sum evaluated through the closed-form tail.
double eigenvector_residual(const OperatorSpec& spec, const Eigenvector& v);

/// Resolvent image x = (lambda I - H)^{-1} y for finitely supported y.
/// The closed-form x_1 plus forward substitution, never a materialized
/// inverse. residual is ||(lambda I - H)x - y||_1 computed with exact tails.
struct ResolventResult {
    std::vector<Complex> coords;  // x_1 .. x_K
    std::string tail_rule;
    double residual;
};

ResolventResult resolvent_apply_F(int n, Complex lambda, const SeqVector& y, int K,
                                  double tol = kClassifyTol);

/// Needs n >= 2 (the x_1 closed form carries lambda^{n-2}).
ResolventResult resolvent_apply_G(int n, double rho, Complex lambda, const SeqVector& y,
                                  int K, double tol = kClassifyTol);

/// Candidate eigenvector of the transposed operator on l^infinity,
/// x_1 = 1, built from the transpose recurrences.
std::vector<Complex> transpose_eigvec_coords(const OperatorSpec& spec, Complex lambda, int K);

/// max_{k<=K} |x_k| for |lambda| <= 1, lambda != 1; stays bounded in K.
double transpose_eigvec_bound(const OperatorSpec& spec, Complex lambda, int K,
                              double tol = kClassifyTol);

/// Paper's explicit sup bound for the tail coordinates:
/// 1 + 2/|lambda-1| for F, 1/(2 rho) + 2/|lambda-1|^2 for G (k >= n+2).
double transpose_bound_formula(const OperatorSpec& spec, Complex lambda);

/// max_{k<=K} |x_k| at lambda = 1; grows without bound (linearly for F,
/// like k/2 for G), which is what places 1 in the continuous spectrum.
double transpose_eigvec_divergence(const OperatorSpec& spec, int K);

}  // namespace fibspec
