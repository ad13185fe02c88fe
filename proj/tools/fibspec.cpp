// fibspec command-line tool: spectra of the generalized Fibonacci operators
// F_n and the Fibonacci-like operators G_n / Gamma_n on l^1, the exact
// Fibonacci norm identities, and the Gamma_5 invasion-speed model.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibspec/charpoly.hpp"
#include "fibspec/invasion.hpp"
#include "fibspec/jsonio.hpp"
#include "fibspec/operators.hpp"
#include "fibspec/sequences.hpp"
#include "fibspec/spectra.hpp"
#include "fibspec/version.hpp"

namespace {

using nlohmann::json;
using namespace fibspec;

void emit(const json& j) { std::cout << dump_deterministic(j) << "\n"; }

json make_record(const std::string& command, json inputs, json results, json tolerances) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"metadata", json{{"tolerances", std::move(tolerances)}, {"version", kVersion}}},
                {"results", std::move(results)}};
}

int emit_error(const std::string& type, const std::string& message) {
    emit(json{{"error", json{{"message", message}, {"type", type}}}});
    return 2;
}

// Deterministic uniforms straight from the engine bits; the standard
// distributions are implementation-defined and would break byte-identical
// output across library versions.
struct DetRng {
    explicit DetRng(std::uint64_t seed) : eng(seed) {}
    std::mt19937_64 eng;

    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    std::uint64_t integer(std::uint64_t span) { return eng() % span; }  // span tiny, bias irrelevant
    // Exact binary fraction in [-32, 32] on a 2^-10 grid; keeps the exact
    // identity checks free of representation error.
    double dyadic() {
        const std::int64_t q = static_cast<std::int64_t>(integer(65536)) - 32768;
        return static_cast<double>(q) * 0x1.0p-10;
    }
};

json complex_pair(const Complex& z) { return complex_to_json(z); }

// ---------------------------------------------------------------------------
// spectrum

int run_spectrum(const std::string& family, int n, double rho, const std::string& lambda_text,
                 double tol) {
    const Complex lambda = parse_complex(lambda_text);
    const OperatorSpec spec =
        (family == "F") ? OperatorSpec::f(n) : OperatorSpec::g(n, rho);
    const SpectrumVerdict v = classify(spec, lambda, tol);

    json witness;
    if (v.part == SpectralPart::Point) {
        json head = json::array();
        for (const Complex& c : v.eigenvector_head) head.push_back(complex_pair(c));
        witness = json{{"eigenvector_head", head}};
    } else if (v.part == SpectralPart::Resolvent && std::isfinite(v.resolvent_residual)) {
        witness = json{{"resolvent_residual", v.resolvent_residual}};
    }

    json inputs{{"family", family}, {"lambda", complex_pair(lambda)}, {"n", n}};
    if (family == "G") inputs["rho"] = rho;
    json results{{"boundary_flag", v.boundary_flag}, {"part", to_string(v.part)}};
    if (!witness.is_null()) results["witness"] = witness;
    emit(make_record("spectrum", inputs, results, json{{"classify", tol}}));
    return 0;
}

// ---------------------------------------------------------------------------
// roots

int run_roots(const std::string& family, int n, double rho, const std::string& format,
              double tol) {
    const CharPolynomial poly = (family == "F") ? CharPolynomial::fibonacci(n)
                                                : CharPolynomial::fib_like(n, rho);
    const RootSet roots = all_roots(poly, tol);

    std::vector<Complex> ordered;
    ordered.push_back(Complex{roots.dominant, 0.0});
    ordered.insert(ordered.end(), roots.others.begin(), roots.others.end());

    if (format == "csv") {
        std::cout << "re,im,modulus,in_point_spectrum\n";
        for (const Complex& z : ordered)
            std::cout << format_double(z.real()) << "," << format_double(z.imag()) << ","
                      << format_double(std::abs(z)) << ","
                      << (std::abs(z) > 1.0 ? "true" : "false") << "\n";
        return 0;
    }

    json rows = json::array();
    for (const Complex& z : ordered)
        rows.push_back(json{{"im", z.imag()},
                            {"in_point_spectrum", std::abs(z) > 1.0},
                            {"modulus", std::abs(z)},
                            {"re", z.real()}});
    json results{{"dominant", roots.dominant},
                 {"residual_bound", roots.residual_bound},
                 {"roots", rows}};
    if (family == "G" && n >= 2) {
        const RootCountReport rep = root_count_report(poly);
        json interior = json::array();
        for (double r : rep.interior_roots) interior.push_back(r);
        results["root_count"] = json{{"interior_roots", interior},
                                     {"lambda1", rep.lambda1},
                                     {"regime", to_string(rep.regime)},
                                     {"rho0", rep.rho0}};
    }
    json inputs{{"family", family}, {"n", n}};
    if (family == "G") inputs["rho"] = rho;
    emit(make_record("roots", inputs, results, json{{"root_residual", tol}}));
    return 0;
}

// ---------------------------------------------------------------------------
// fib

int run_fib(int n, int k, bool check) {
    GenFibSequence seq(n);
    const BigInt value = seq.term(static_cast<std::size_t>(k));

    json results{{"value", value.str()}};
    bool ok = true;
    if (check) {
        const auto [sum, rhs] = seq.prefix_sum_identity(static_cast<std::size_t>(k));
        const bool prefix_ok = (sum == rhs);
        ok = ok && prefix_ok;
        json checks{{"prefix_sum_identity",
                     json{{"pass", prefix_ok}, {"rhs", rhs.str()}, {"sum", sum.str()}}}};
        if (k > n) {
            const BigInt from_seq = seq.norm_of_power(static_cast<std::size_t>(k));
            const BigInt from_truncation =
                exact_power_norm(OperatorSpec::f(n), k, k + n + 10);
            const bool norm_ok = (from_seq == from_truncation);
            ok = ok && norm_ok;
            checks["norm_of_power"] = json{{"pass", norm_ok},
                                           {"sequence", from_seq.str()},
                                           {"truncation", from_truncation.str()}};
        }
        checks["pass"] = ok;
        results["checks"] = checks;
    }
    emit(make_record("fib", json{{"check", check}, {"k", k}, {"n", n}}, results, json::object()));
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// invasion

InvasionModel load_kernel_file(const std::string& path, double constant) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open kernel file '" + path + "'");
    std::vector<double> s, m;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
            if (first) { first = false; continue; }  // tolerate a header row
            throw DomainError("kernel file: expected two comma-separated columns");
        }
        try {
            const double sv = std::stod(a);
            const double mv = std::stod(b);
            s.push_back(sv);
            m.push_back(mv);
        } catch (const std::exception&) {
            if (first) { first = false; continue; }
            throw DomainError("kernel file: non-numeric row '" + line + "'");
        }
        first = false;
    }
    return InvasionModel::custom(std::move(s), std::move(m), constant);
}

int run_invasion(const std::string& kernel, double sigma, double constant, double tol,
                 const std::string& kernel_file) {
    InvasionModel model = !kernel_file.empty() ? load_kernel_file(kernel_file, constant)
                          : (kernel == "gaussian") ? InvasionModel::gaussian(sigma, constant)
                                                   : InvasionModel::laplace(sigma, constant);

    json inputs{{"const", constant}, {"kernel", kernel_file.empty() ? kernel : "custom"}};
    if (kernel_file.empty()) inputs["sigma"] = sigma;
    else inputs["kernel_file"] = kernel_file;

    try {
        const SpeedResult r = minimize_speed(model, tol);
        json results{{"bracket", json::array({r.bracket.first, r.bracket.second})},
                     {"grid_scan", json{{"consistent", r.grid_consistent}}},
                     {"iterations", r.iterations},
                     {"lambda_at_s", r.lambda_at_s},
                     {"s_star", r.s_star},
                     {"v_star", r.v_star}};
        emit(make_record("invasion", inputs, results, json{{"bracket_width", tol}}));
        return 0;
    } catch (const NoInteriorMinimum& e) {
        json results{{"warning", json{{"edge_s", e.edge_s},
                                      {"edge_value", e.edge_value},
                                      {"message", e.what()},
                                      {"type", "no_interior_minimum"}}}};
        emit(make_record("invasion", inputs, results, json{{"bracket_width", tol}}));
        return 0;
    }
}

// ---------------------------------------------------------------------------
// verify suites

json suite_identities(std::uint64_t seed, int budget, bool& ok) {
    DetRng rng(seed ^ 0x1d3717135ULL);
    int cases = 0, failures = 0;

    // Exact prefix-sum identity, pure integers.
    const std::size_t kmax = static_cast<std::size_t>(std::min(budget, 500));
    for (int n = 1; n <= 8; ++n) {
        GenFibSequence seq(n);
        for (std::size_t k = 1; k <= kmax; ++k) {
            ++cases;
            const auto [sum, rhs] = seq.prefix_sum_identity(k);
            if (sum != rhs) ++failures;
        }
    }

    // Norm identity against the exact truncated power.
    for (int n = 1; n <= 4; ++n) {
        GenFibSequence seq(n);
        for (int k = n + 1; k <= n + 10; ++k) {
            ++cases;
            if (seq.norm_of_power(static_cast<std::size_t>(k)) !=
                exact_power_norm(OperatorSpec::f(n), k, k + n + 10))
                ++failures;
        }
    }

    // Factored vs monomial evaluation of q on [0, 4].
    double worst_form_gap = 0.0;
    for (int c = 0; c < 64; ++c) {
        ++cases;
        const int n = 1 + static_cast<int>(rng.integer(8));
        const double rho = rng.log_uniform(1e-3, 1e3);
        const double x = rng.uniform(0.0, 4.0);
        const CharPolynomial q = CharPolynomial::fib_like(n, rho);
        const double factored = eval(q, x);
        const double monomial = eval(q, Complex{x, 0.0}).real();
        const double scale = std::max({1.0, std::pow(1.0 + x, n + 1), rho});
        const double gap = std::abs(factored - monomial) / scale;
        worst_form_gap = std::max(worst_form_gap, gap);
        if (gap > 1e-12) ++failures;
    }

    // apply linearity: byte-exact for F on dyadic data, 1e-14 for G/Gamma.
    double worst_linearity = 0.0;
    for (int c = 0; c < 32; ++c) {
        ++cases;
        const int pick = static_cast<int>(rng.integer(3));
        const int n = 1 + static_cast<int>(rng.integer(5));
        const double rho = (pick == 0) ? 0.0 : rng.log_uniform(0.25, 4.0);
        const OperatorSpec spec = (pick == 0)   ? OperatorSpec::f(n)
                                  : (pick == 1) ? OperatorSpec::g(n, rho)
                                                : OperatorSpec::gamma(n, rho);
        const TruncatedOperator op(spec, 48);
        SeqVector x, y;
        x.coords.assign(20, 0.0);
        y.coords.assign(20, 0.0);
        for (auto& v : x.coords) v = rng.dyadic();
        for (auto& v : y.coords) v = rng.dyadic();
        const double a = rng.dyadic(), b = rng.dyadic();
        SeqVector mix;
        mix.coords.assign(20, 0.0);
        for (std::size_t i = 0; i < 20; ++i) mix.coords[i] = a * x.coords[i] + b * y.coords[i];
        const SeqVector lhs = op.apply(mix);
        const SeqVector fx = op.apply(x), fy = op.apply(y);
        double gap = 0.0;
        for (std::size_t i = 1; i <= 21; ++i)
            gap = std::max(gap, std::abs(lhs.coord(i) - (a * fx.coord(i) + b * fy.coord(i))));
        worst_linearity = std::max(worst_linearity, gap);
        if (pick == 0 ? (gap != 0.0) : (gap > 1e-12)) ++failures;
    }

    // Similarity D_n (Gamma_n x) = G_n (D_n x).
    double worst_similarity = 0.0;
    for (int c = 0; c < 32; ++c) {
        ++cases;
        const int n = 1 + static_cast<int>(rng.integer(5));
        const double rho = rng.log_uniform(0.25, 4.0);
        const TruncatedOperator gamma(OperatorSpec::gamma(n, rho), 48);
        const TruncatedOperator g(OperatorSpec::g(n, rho), 48);
        const auto dweight = [n, rho](std::size_t k) {
            return k <= static_cast<std::size_t>(n) ? 1.0
                                                    : rho * static_cast<double>(k - static_cast<std::size_t>(n));
        };
        SeqVector x;
        x.coords.assign(20, 0.0);
        for (auto& v : x.coords) v = rng.dyadic();
        SeqVector dx = x;
        for (std::size_t i = 0; i < dx.coords.size(); ++i) dx.coords[i] *= dweight(i + 1);
        const SeqVector left = gamma.apply(x);   // then scale by D
        const SeqVector right = g.apply(dx);
        double gap = 0.0;
        for (std::size_t i = 1; i <= 21; ++i)
            gap = std::max(gap, std::abs(left.coord(i) * dweight(i) - right.coord(i)));
        worst_similarity = std::max(worst_similarity, gap);
        if (gap > 1e-12) ++failures;
    }

    ok = ok && failures == 0;
    return json{{"cases", cases},
                {"failures", failures},
                {"worst_form_gap", worst_form_gap},
                {"worst_linearity_gap", worst_linearity},
                {"worst_similarity_gap", worst_similarity}};
}

json suite_resolvent(std::uint64_t seed, int budget, bool& ok) {
    DetRng rng(seed ^ 0x5eed0f2e50ULL);
    int cases = 0, failures = 0;
    double worst = 0.0;

    const auto random_y = [&rng]() {
        SeqVector y;
        y.coords.assign(12, 0.0);
        const int nonzero = 2 + static_cast<int>(rng.integer(5));
        for (int i = 0; i < nonzero; ++i) {
            double v = rng.dyadic();
            if (v == 0.0) v = 1.0;
            y.coords[rng.integer(12)] = v;
        }
        if (y.support_end() == 0) y.coords[0] = 1.0;
        return y;
    };

    for (int family = 0; family < 2; ++family) {
        for (int c = 0; c < budget; ++c) {
            ++cases;
            const int n = family == 0 ? 1 + static_cast<int>(rng.integer(6))
                                      : 2 + static_cast<int>(rng.integer(5));
            const double rho = rng.log_uniform(0.25, 4.0);
            const SeqVector y = random_y();
            double modulus = rng.uniform(1.2, 4.0);
            const double arg = rng.uniform(0.0, 2.0 * 3.141592653589793);
            double residual = -1.0;
            for (int attempt = 0; attempt < 5 && residual < 0.0; ++attempt) {
                const Complex lambda = modulus * Complex{std::cos(arg), std::sin(arg)};
                try {
                    residual = (family == 0)
                                   ? resolvent_apply_F(n, lambda, y, 200).residual
                                   : resolvent_apply_G(n, rho, lambda, y, 200).residual;
                } catch (const SingularResolvent&) {
                    modulus *= 1.013;  // nudge off the root and retry
                }
            }
            if (residual < 0.0 || residual > 1e-9 * y.norm1()) ++failures;
            worst = std::max(worst, residual / std::max(y.norm1(), 1e-300));
        }
    }

    ok = ok && failures == 0;
    return json{{"cases", cases}, {"failures", failures}, {"worst_relative_residual", worst}};
}

json suite_nonclosed(bool& ok) {
    const int n = 5;
    const double rho = 2.0;
    const NonClosednessReport rep = nonclosedness_demo(n, rho, 20);
    int failures = 0;
    json rows = json::array();
    for (const NonClosednessRow& row : rep.rows) {
        const double expected = 1.0 / static_cast<double>(row.m);
        const bool pass = (row.preimage_norm == expected) && (row.image_gap == expected);
        if (!pass) ++failures;
        rows.push_back(json{{"image_gap", row.image_gap},
                            {"m", row.m},
                            {"pass", pass},
                            {"preimage_norm", row.preimage_norm}});
    }
    ok = ok && failures == 0;
    return json{{"cases", static_cast<int>(rep.rows.size())},
                {"failures", failures},
                {"limit", json{{"image_gap_to_rho_e1", rep.final_image_gap},
                               {"preimage_norm", rep.final_preimage_norm}}},
                {"n", n},
                {"rho", rho},
                {"rows", rows}};
}

int run_verify(const std::string& suite, std::uint64_t seed, int budget) {
    bool ok = true;
    json suites;
    if (suite == "identities" || suite == "all") suites["identities"] = suite_identities(seed, budget, ok);
    if (suite == "resolvent" || suite == "all") suites["resolvent"] = suite_resolvent(seed, budget, ok);
    if (suite == "nonclosed" || suite == "all") suites["nonclosed"] = suite_nonclosed(ok);

    emit(make_record("verify",
                     json{{"budget", budget}, {"seed", seed}, {"suite", suite}},
                     json{{"pass", ok}, {"suites", suites}},
                     json{{"resolvent_relative", 1e-9}}));
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fibspec: spectra of generalized Fibonacci operators on l^1"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // spectrum
    std::string sp_family, sp_lambda;
    int sp_n = 1;
    double sp_rho = 1.0, sp_tol = kClassifyTol;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Classify a complex number against sigma(F_n) or sigma(G_n)");
    spectrum->add_option("--family", sp_family, "Operator family")
        ->required()
        ->check(CLI::IsMember({"F", "G"}));
    spectrum->add_option("--n", sp_n, "Operator index n >= 1")->required()
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--rho", sp_rho, "Growth parameter (required for family G)");
    spectrum->add_option("--lambda", sp_lambda,
                         "Complex number: a, bi, a+bi, or a-bi (e.g. 0.3-0.4i)")
        ->required();
    spectrum->add_option("--tol", sp_tol, "Classification tolerance");

    // roots
    std::string rt_family, rt_format = "json";
    int rt_n = 1;
    double rt_rho = 1.0, rt_tol = kRootResidualTol;
    CLI::App* roots_cmd =
        app.add_subcommand("roots", "All characteristic roots (Fig.-1-style scatter data)");
    roots_cmd->add_option("--family", rt_family, "Operator family")
        ->required()
        ->check(CLI::IsMember({"F", "G"}));
    roots_cmd->add_option("--n", rt_n, "Operator index n >= 1")->required()
        ->check(CLI::PositiveNumber);
    roots_cmd->add_option("--rho", rt_rho, "Growth parameter (required for family G)");
    roots_cmd->add_option("--format", rt_format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    roots_cmd->add_option("--tol", rt_tol, "Root residual tolerance");

    // fib
    int fb_n = 1, fb_k = 1;
    bool fb_check = false;
    CLI::App* fib_cmd = app.add_subcommand("fib", "Exact generalized Fibonacci terms");
    fib_cmd->add_option("--n", fb_n, "Sequence order n >= 1")->required()
        ->check(CLI::PositiveNumber);
    fib_cmd->add_option("--k", fb_k, "Term index k >= 1")->required()
        ->check(CLI::PositiveNumber);
    fib_cmd->add_flag("--check", fb_check,
                      "Also verify the prefix-sum and operator-norm identities");

    // invasion
    std::string iv_kernel = "gaussian", iv_file;
    double iv_sigma = 1.0, iv_const = 1.0, iv_tol = 1e-8;
    CLI::App* invasion_cmd =
        app.add_subcommand("invasion", "Invasion-speed bound v* from the Gamma_5 model");
    invasion_cmd->add_option("--kernel", iv_kernel, "Dispersal kernel")
        ->check(CLI::IsMember({"gaussian", "laplace"}));
    invasion_cmd->add_option("--sigma", iv_sigma, "Kernel scale sigma > 0");
    invasion_cmd->add_option("--const", iv_const,
                             "Multiplicative constant in rho(s) = const * M(s); the model "
                             "does not fix it, so review the default of 1");
    invasion_cmd->add_option("--tol", iv_tol, "Golden-section bracket width");
    invasion_cmd->add_option("--kernel-file", iv_file,
                             "Tabulated kernel: CSV rows `s,M`, strictly increasing s, "
                             "header optional (overrides --kernel/--sigma)");

    // verify
    std::string vf_suite;
    std::uint64_t vf_seed = 0;
    int vf_budget = 100;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run a property suite");
    verify_cmd->add_option("--suite", vf_suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"identities", "resolvent", "nonclosed", "all"}));
    verify_cmd->add_option("--seed", vf_seed, "RNG seed (env FIBSPEC_SEED overrides)");
    verify_cmd->add_option("--budget", vf_budget, "Case budget per suite")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) {
            if (sp_family == "G" && spectrum->count("--rho") == 0)
                return emit_error("usage", "--rho is required for family G");
            return run_spectrum(sp_family, sp_n, sp_rho, sp_lambda, sp_tol);
        }
        if (roots_cmd->parsed()) {
            if (rt_family == "G" && roots_cmd->count("--rho") == 0)
                return emit_error("usage", "--rho is required for family G");
            return run_roots(rt_family, rt_n, rt_rho, rt_format, rt_tol);
        }
        if (fib_cmd->parsed()) return run_fib(fb_n, fb_k, fb_check);
        if (invasion_cmd->parsed()) return run_invasion(iv_kernel, iv_sigma, iv_const, iv_tol, iv_file);
        if (verify_cmd->parsed()) {
            if (const char* env = std::getenv("FIBSPEC_SEED")) {
                try {
                    vf_seed = std::stoull(env);
                } catch (const std::exception&) {
                    return emit_error("usage", std::string("FIBSPEC_SEED is not an integer: ") + env);
                }
            }
            return run_verify(vf_suite, vf_seed, vf_budget);
        }
    } catch (const DomainError& e) {
        return emit_error("domain_error", e.what());
    } catch (const TruncationError& e) {
        return emit_error("truncation_error", e.what());
    } catch (const SingularResolvent& e) {
        return emit_error("singular_resolvent", e.what());
    } catch (const OutsideResolventSet& e) {
        return emit_error("outside_resolvent_set", e.what());
    } catch (const NotAnEigenvalue& e) {
        return emit_error("not_an_eigenvalue", e.what());
    } catch (const NonConvergence& e) {
        return emit_error("non_convergence", e.what());
    } catch (const std::invalid_argument& e) {
        return emit_error("usage", e.what());
    }
    return 2;
}
