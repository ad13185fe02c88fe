#include "fibspec/invasion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fibspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...

struct Bracket {
    double a, b, c;  // a < b < c, f(b) <= f(a), f(b) <= f(c)
};

}  // namespace

InvasionModel InvasionModel::gaussian(double sigma, double constant) {
    if (!(sigma > 0.0)) throw DomainError("InvasionModel: sigma must be > 0");
    if (!(constant > 0.0)) throw DomainError("InvasionModel: constant must be > 0");
    InvasionModel m;
    m.kernel_ = KernelFamily::Gaussian;
    m.sigma_ = sigma;
    m.constant_ = constant;
    m.s_hat_ = kInf;
    return m;
}

InvasionModel InvasionModel::laplace(double sigma, double constant) {
    if (!(sigma > 0.0)) throw DomainError("InvasionModel: sigma must be > 0");
    if (!(constant > 0.0)) throw DomainError("InvasionModel: constant must be > 0");
    InvasionModel m;
    m.kernel_ = KernelFamily::Laplace;
    m.sigma_ = sigma;
    m.constant_ = constant;
    m.s_hat_ = 1.0 / sigma;
    return m;
}

InvasionModel InvasionModel::custom(std::vector<double> s, std::vector<double> mvals,
                                    double constant) {
    if (!(constant > 0.0)) throw DomainError("InvasionModel: constant must be > 0");
    if (s.size() != mvals.size() || s.size() < 2)
        throw DomainError("InvasionModel: tabulated kernel needs >= 2 matching samples");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && !(s[i] > s[i - 1]))
            throw DomainError("InvasionModel: kernel grid s must be strictly increasing");
        if (!(mvals[i] > 0.0)) throw DomainError("InvasionModel: M(s) must be > 0");
        if (!(s[i] >= 0.0)) throw DomainError("InvasionModel: kernel grid s must be >= 0");
    }

    InvasionModel m;
    m.kernel_ = KernelFamily::Custom;
    m.constant_ = constant;
    m.s_min_ = s.front();
    m.s_hat_ = s.back();

    // Fritsch-Carlson tangents keep the interpolant monotone between nodes.
    const std::size_t nseg = s.size() - 1;
    std::vector<double> slope(nseg);
    for (std::size_t i = 0; i < nseg; ++i) slope[i] = (mvals[i + 1] - mvals[i]) / (s[i + 1] - s[i]);
    std::vector<double> tan(s.size());
    tan.front() = slope.front();
    tan.back() = slope.back();
    for (std::size_t i = 1; i < nseg; ++i)
        tan[i] = (slope[i - 1] * slope[i] <= 0.0) ? 0.0 : 0.5 * (slope[i - 1] + slope[i]);
    for (std::size_t i = 0; i < nseg; ++i) {
        if (slope[i] == 0.0) {
            tan[i] = tan[i + 1] = 0.0;
            continue;
        }
        const double a = tan[i] / slope[i];
        const double b = tan[i + 1] / slope[i];
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double scale = 3.0 / std::sqrt(r2);
            tan[i] = scale * a * slope[i];
            tan[i + 1] = scale * b * slope[i];
        }
    }
    m.grid_s_ = std::move(s);
    m.grid_m_ = std::move(mvals);
    m.tangents_ = std::move(tan);
    return m;
}

double InvasionModel::mgf(double s) const {
    switch (kernel_) {
        case KernelFamily::Gaussian:
            return std::exp(0.5 * sigma_ * sigma_ * s * s);
        case KernelFamily::Laplace: {
            const double d = 1.0 - sigma_ * sigma_ * s * s;
            if (!(d > 0.0)) throw DomainError("mgf: Laplace kernel undefined at s >= 1/sigma");
            return 1.0 / d;
        }
        case KernelFamily::Custom: {
            if (s < grid_s_.front() || s > grid_s_.back())
                throw DomainError("mgf: s outside the tabulated kernel grid");
            const auto it = std::upper_bound(grid_s_.begin(), grid_s_.end(), s);
            const std::size_t i =
                std::min(grid_s_.size() - 2,
                         static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - grid_s_.begin() - 1)));
            const double h = grid_s_[i + 1] - grid_s_[i];
            const double t = (s - grid_s_[i]) / h;
            const double t2 = t * t, t3 = t2 * t;
            return (2 * t3 - 3 * t2 + 1) * grid_m_[i] + (t3 - 2 * t2 + t) * h * tangents_[i] +
                   (-2 * t3 + 3 * t2) * grid_m_[i + 1] + (t3 - t2) * h * tangents_[i + 1];
        }
    }
    throw DomainError("mgf: unknown kernel");
}

double lambda_max_gamma5_closed(double rho) {
    if (!(rho > 0.0)) throw DomainError("lambda_max_gamma5_closed: rho must be > 0");
    const double r = std::sqrt(rho);
    const double c = 2.0 + 27.0 * r + std::sqrt(108.0 * r + 729.0 * rho);
    const double c3 = std::cbrt(c);
    const double two3 = std::cbrt(2.0);
    return 1.0 / 3.0 + two3 / (3.0 * c3) + c3 / (3.0 * two3);
}

double speed_objective(const InvasionModel& model, double s) {
    if (!(s > model.s_min()) || !(s < model.s_hat()))
        throw DomainError("speed_objective: s outside (s_min, s_hat)");
    return std::log(lambda_max_gamma5_closed(model.rho(s))) / s;
}

SpeedResult minimize_speed(const InvasionModel& model, double tol) {
    if (!(tol > 0.0)) throw DomainError("minimize_speed: tol must be > 0");
    const double lo_edge = model.s_min();
    const double hi_edge = model.s_hat();
    const auto f = [&model](double s) { return speed_objective(model, s); };

    // Expansion steps move geometrically toward an edge without reaching it.
    const auto toward_lo = [&](double s) { return lo_edge + (s - lo_edge) * 0.5; };
    const auto toward_hi = [&](double s) {
        return std::isinf(hi_edge) ? 2.0 * s : hi_edge - (hi_edge - s) * 0.5;
    };

    const auto expand_from = [&](double s0) -> Bracket {
        Bracket br{toward_lo(s0), s0, toward_hi(s0)};
        double fa = f(br.a), fb = f(br.b), fc = f(br.c);
        for (int step = 0; step < 400; ++step) {
            if (fb <= fa && fb <= fc) return br;
            if (fa < fb) {
                br.c = br.b;
                fc = fb;
                br.b = br.a;
                fb = fa;
                br.a = toward_lo(br.a);
                fa = f(br.a);
            } else {
                br.a = br.b;
                fa = fb;
                br.b = br.c;
                fb = fc;
                br.c = toward_hi(br.c);
                fc = f(br.c);
            }
        }
        // The window ran off toward an edge without turning around.
        const bool low_side = f(br.a) < f(br.c);
        throw NoInteriorMinimum("minimize_speed: bracket expansion ran into the domain edge",
                                low_side ? br.a : br.c, low_side ? f(br.a) : f(br.c));
    };

    double s0 = std::isinf(hi_edge) ? 1.0 : std::min(1.0, 0.5 * hi_edge);
    if (s0 <= lo_edge) s0 = 0.5 * (lo_edge + hi_edge);
    Bracket br = expand_from(s0);

    int iterations = 0;
    const auto golden = [&](Bracket b) {
        double x1 = b.c - kGolden * (b.c - b.a);
        double x2 = b.a + kGolden * (b.c - b.a);
        double f1 = f(x1), f2 = f(x2);
        while (b.c - b.a > tol) {
            if (f1 < f2) {
                b.c = x2;
                x2 = x1;
                f2 = f1;
                x1 = b.c - kGolden * (b.c - b.a);
                f1 = f(x1);
            } else {
                b.a = x1;
                x1 = x2;
                f1 = f2;
                x2 = b.a + kGolden * (b.c - b.a);
                f2 = f(x2);
            }
            if (++iterations > 500) break;
        }
        const double s = (f1 < f2) ? x1 : x2;
        return std::pair<double, Bracket>{s, b};
    };

    std::pair<double, Bracket> refined = golden(br);
    double s_star = refined.first;
    Bracket final_br = refined.second;
    double v_star = f(s_star);

    // Coarse global probe; unimodality is not assumed, it is checked.
    const auto probe_points = [&](double center) {
        std::vector<double> pts;
        const double lo = std::max(lo_edge + (center - lo_edge) * 1e-3, lo_edge * 1.000001);
        const double hi = std::isinf(hi_edge) ? 64.0 * center : hi_edge - (hi_edge - center) * 1e-3;
        const double ratio = std::pow(hi / std::max(lo, 1e-300), 1.0 / 63.0);
        double s = lo;
        for (int i = 0; i < 64; ++i, s *= ratio) pts.push_back(std::min(s, hi));
        return pts;
    };

    bool grid_consistent = true;
    for (int attempt = 0; attempt < 2; ++attempt) {
        double best_probe = v_star;
        double best_s = s_star;
        bool at_edge = false;
        const std::vector<double> pts = probe_points(s_star);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double val = f(pts[i]);
            if (val < best_probe - 1e-9 * std::max(1.0, std::abs(v_star))) {
                best_probe = val;
                best_s = pts[i];
                at_edge = (i == 0 || i + 1 == pts.size());
            }
        }
        if (best_s == s_star) break;
        if (at_edge)
            throw NoInteriorMinimum("minimize_speed: grid probe found a lower value at the domain edge",
                                    best_s, best_probe);
        if (attempt == 1) {
            grid_consistent = false;
            break;
        }
        // One re-bracket around the better probe point, then re-validate.
        refined = golden(expand_from(best_s));
        s_star = refined.first;
        final_br = refined.second;
        v_star = f(s_star);
    }

    SpeedResult out;
    out.v_star = v_star;
    out.s_star = s_star;
    out.lambda_at_s = lambda_max_gamma5_closed(model.rho(s_star));
    out.iterations = iterations;
    out.bracket = {final_br.a, final_br.c};
    out.grid_consistent = grid_consistent;
    return out;
}

}  // namespace fibspec
