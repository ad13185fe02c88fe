#pragma once

#include <utility>
#include <vector>

#include "fibspec/errors.hpp"

namespace fibspec {

enum class KernelFamily { Gaussian, Laplace, Custom };

/// rho(s) = constant * M(s) with M the dispersal kernel's moment-generating
/// function: exp(sigma^2 s^2 / 2) for the Gaussian kernel (defined for all
/// s > 0), 1/(1 - sigma^2 s^2) for the Laplace kernel (defined up to
/// s_hat = 1/sigma). Custom kernels are a tabulated (s, M) grid evaluated
/// with monotone cubic interpolation.
class InvasionModel {
public:
    static InvasionModel gaussian(double sigma, double constant);
    static InvasionModel laplace(double sigma, double constant);
    static InvasionModel custom(std::vector<double> s, std::vector<double> m, double constant);

    KernelFamily kernel() const { return kernel_; }
    double sigma() const { return sigma_; }
    double constant() const { return constant_; }
    /// Domain limit s_hat; +infinity for the Gaussian kernel.
    double s_hat() const { return s_hat_; }
    double s_min() const { return s_min_; }  // 0 except for tabulated kernels

    double mgf(double s) const;
    double rho(double s) const { return constant_ * mgf(s); }

private:
    InvasionModel() = default;
    KernelFamily kernel_ = KernelFamily::Gaussian;
    double sigma_ = 0.0;
    double constant_ = 1.0;
    double s_hat_ = 0.0;
    double s_min_ = 0.0;
    // tabulated kernel: nodes plus Fritsch-Carlson tangents
    std::vector<double> grid_s_, grid_m_, tangents_;
};

/// lambda_max(Gamma_5) in closed form: the dominant root of
/// q_6(lambda) = lambda^4 (lambda-1)^2 - rho, through the positive branch
/// cubic lambda^3 - lambda^2 = sqrt(rho). Real arithmetic only; the cube
/// root radicand 2 + 27 sqrt(rho) + sqrt(108 sqrt(rho) + 729 rho) is
/// positive for every rho > 0.
double lambda_max_gamma5_closed(double rho);

/// (1/s) ln lambda_max(Gamma_5(rho(s))) on (0, s_hat).
double speed_objective(const InvasionModel& model, double s);

struct SpeedResult {
    double v_star;
    double s_star;
    double lambda_at_s;  // lambda_max(Gamma_5(rho(s_star)))
    int iterations;      // golden-section iterations
    std::pair<double, double> bracket;
    bool grid_consistent;  // false if a probe beat v_star after re-bracketing
};

/// Bracket expansion from s_0 = min(1, s_hat/2), golden-section refinement
/// to bracket width tol, then a 64-point global probe. A probe that wins at
/// the domain edge throws NoInteriorMinimum; an interior win triggers one
/// re-bracket, and a persistent disagreement is reported through
/// grid_consistent rather than silently dropped.
SpeedResult minimize_speed(const InvasionModel& model, double tol = 1e-8);

}  // namespace fibspec
