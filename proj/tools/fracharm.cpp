#include "fracharm/coefficients.hpp"
#include "fracharm/eigsolve1d.hpp"
#include "fracharm/harness.hpp"
#include "fracharm/kernel.hpp"
#include "fracharm/montecarlo.hpp"
#include "fracharm/report.hpp"
#include "fracharm/subordinator.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fracharm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Flags shared by every subcommand. Values are only applied when the flag
/// was given, so config-file values survive otherwise.
struct CommonFlags {
    double alpha = 0.0;
    int m = 0;
    std::vector<double> interval;
    int n = 0;
    double tol = 0.0;
    double split = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
    std::string config_file;

    CLI::Option* alpha_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* interval_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* split_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* format_opt = nullptr;

    void attach(CLI::App* app) {
        alpha_opt = app->add_option("--alpha", alpha, "stability index in (0,2]");
        m_opt = app->add_option("--m", m, "alpha = 2/m (theorem mode when m > 2)");
        alpha_opt->excludes(m_opt);
        m_opt->excludes(alpha_opt);
        interval_opt = app->add_option("--interval", interval, "domain endpoints A B")
                           ->expected(2)
                           ->allow_extra_args(false);
        n_opt = app->add_option("--n", n, "interior grid nodes (finest grid)");
        tol_opt = app->add_option("--tol", tol, "tolerance (quadrature or eigen iteration)");
        split_opt = app->add_option("--M", split, "split multiplier M of the s-integral");
        seed_opt = app->add_option("--seed", seed, "master random seed");
        out_opt = app->add_option("--out", out, "output directory (default $FRACHARM_OUT)");
        format_opt = app->add_option("--format", format, "stdout format")
                         ->check(CLI::IsMember({"text", "csv", "json"}));
        app->add_option("--config", config_file, "JSON config; flags take precedence")
            ->check(CLI::ExistingFile);
    }

    void overlay(json& cfg) const {
        if (*alpha_opt) {
            cfg["alpha"] = alpha;
            cfg.erase("m");
        }
        if (*m_opt) {
            cfg["m"] = m;
            cfg.erase("alpha");
        }
        if (*interval_opt) cfg["interval"] = interval;
        if (*n_opt) cfg["n"] = n;
        if (*tol_opt) cfg["tol"] = tol;
        if (*split_opt) cfg["M"] = split;
        if (*seed_opt) cfg["seed"] = seed;
        if (*out_opt) cfg["out"] = out;
        if (*format_opt) cfg["format"] = format;
    }
};

/// Defaults <- config file <- flags. Unknown keys in the file are usage errors.
json resolve(json defaults, const CommonFlags& common,
             const std::vector<std::tuple<std::string, CLI::Option*, json>>& extra) {
    if (!common.config_file.empty()) {
        std::ifstream in(common.config_file);
        json file;
        try {
            file = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("cannot parse config file: " + std::string(e.what()));
        }
        if (!file.is_object()) throw UsageError("config file must hold a JSON object");
        if (file.contains("alpha") && file.contains("m"))
            throw UsageError("config file sets both alpha and m");
        for (auto it = file.begin(); it != file.end(); ++it) {
            if (it.key() == "version" || it.key() == "config_hash" || it.key() == "command")
                continue;
            if (it.key() == "alpha" || it.key() == "m") {
                defaults.erase("alpha");
                defaults.erase("m");
            } else if (!defaults.contains(it.key())) {
                throw UsageError("unknown config key: " + it.key());
            }
            defaults[it.key()] = it.value();
        }
    }
    common.overlay(defaults);
    for (const auto& [key, opt, value] : extra) {
        if (*opt) defaults[key] = value;
    }
    if (defaults["out"].get<std::string>().empty()) {
        const char* env = std::getenv("FRACHARM_OUT");
        defaults["out"] = env != nullptr && *env != '\0' ? env : "fracharm_out";
    }
    return defaults;
}

StableIndex index_from(const json& cfg) {
    if (cfg.contains("m")) return StableIndex::from_m(cfg["m"].get<int>());
    if (cfg.contains("alpha")) return StableIndex::from_alpha(cfg["alpha"].get<double>());
    throw UsageError("one of --alpha or --m is required");
}

/// Like index_from but admits alpha = 2 (Brownian motion) for the eigen
/// solver and the Monte Carlo clock.
double alpha_from(const json& cfg) {
    if (cfg.contains("alpha") && cfg["alpha"].get<double>() == 2.0) return 2.0;
    return index_from(cfg).alpha();
}

std::pair<double, double> interval_from(const json& cfg) {
    const auto v = cfg["interval"].get<std::vector<double>>();
    if (v.size() != 2 || !(v[0] < v[1])) throw UsageError("--interval needs A < B");
    return {v[0], v[1]};
}

QuadratureSpec quad_from(const json& cfg) {
    QuadratureSpec quad{1e-15, cfg["tol"].get<double>(), 4096, cfg["M"].get<double>()};
    try {
        quad.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return quad;
}

/// Output directory writer; echoes the resolved config as config.json and
/// stamps every file with the version and config hash.
class Output {
public:
    Output(std::string command, const json& cfg) : command_(std::move(command)), cfg_(cfg) {
        cfg_.erase("out");
        cfg_.erase("format");
        hash_ = config_hash(cfg_);
        dir_ = cfg["out"].get<std::string>();
        format_ = cfg["format"].get<std::string>();
        fs::create_directories(dir_);
        json echo;
        echo["version"] = std::string(kVersion);
        echo["command"] = command_;
        echo["config_hash"] = hash_;
        for (auto it = cfg.begin(); it != cfg.end(); ++it) echo[it.key()] = it.value();
        write("config.json", echo.dump(2) + "\n");
    }

    const std::string& format() const { return format_; }

    void write(const std::string& name, const std::string& text) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << text;
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    }

    void write_json(const std::string& name, json body) const {
        json out;
        out["version"] = std::string(kVersion);
        out["command"] = command_;
        out["config_hash"] = hash_;
        for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
        write(name, out.dump(2) + "\n");
    }

    std::string csv_header(const std::string& columns) const {
        return "# fracharm " + std::string(kVersion) + " " + command_ + " config_hash=" + hash_ +
               "\n" + columns + "\n";
    }

private:
    std::string command_;
    json cfg_;
    std::string hash_;
    fs::path dir_;
    std::string format_;
};

json base_defaults() {
    json d;
    d["interval"] = std::vector<double>{-1.0, 1.0};
    d["n"] = 1279;
    d["tol"] = 1e-10;
    d["M"] = 10.0;
    d["seed"] = 20240101;
    d["out"] = "";
    d["format"] = "text";
    return d;
}

// ---------------------------------------------------------------- coeffs

int run_coeffs(const json& cfg) {
    const StableIndex idx = index_from(cfg);
    const int q = cfg["q"].get<int>();
    if (q < 0 || q > 40) throw UsageError("--q must be in [0, 40]");
    Output out("coeffs", cfg);

    json body;
    body["alpha"] = idx.alpha();
    if (idx.m()) body["m"] = *idx.m();
    body["q"] = q;
    const auto a = a_coefficients(q, idx);
    body["a"] = a;
    std::vector<double> gamma;
    for (int k = 0; k <= q; ++k) gamma.push_back(gamma_coefficient(k, idx));
    body["gamma"] = gamma;

    std::ostringstream csv;
    csv << out.csv_header("j,a_j,gamma_j");
    for (int j = 0; j <= q; ++j) csv << j << ',' << num(a[j]) << ',' << num(gamma[j]) << '\n';
    out.write("coeffs.csv", csv.str());

    bool ok = true;
    json checks = json::array();
    for (int k = 0; k <= q; ++k) {
        json c;
        c["k"] = k;
        if (idx.m()) {
            const Rational sum = rising_identity_sum_exact(q, k, *idx.m());
            Rational expected = 0;
            if (k == q) expected = Rational(static_cast<long long>(std::tgamma(q + 1.0)));
            c["exact_sum"] = sum.str();
            c["expected"] = expected.str();
            c["pass"] = sum == expected;
            ok = ok && sum == expected;
        } else {
            const double sum =
                static_cast<double>(rising_identity_sum<WideFloat>(q, k, WideFloat(idx.alpha())));
            double target = 0.0;
            if (k == q) target = std::tgamma(q + 1.0);
            const double defect = std::abs(sum - target) / std::tgamma(q + 1.0);
            c["float_defect"] = defect;
            c["pass"] = defect <= 1e-10;
            ok = ok && defect <= 1e-10;
        }
        checks.push_back(c);
    }
    body["rising_factorial_identity"] = checks;
    if (idx.m()) {
        json ledger = json::array();
        for (const auto& e : sign_ledger(*idx.m()))
            ledger.push_back({{"q", e.q}, {"gamma_q", e.gamma_q}, {"sign", e.sign}});
        body["sign_ledger"] = ledger;
    }
    body["pass"] = ok;
    out.write_json("coeffs.json", body);

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else if (out.format() == "csv") {
        std::cout << csv.str();
    } else {
        std::printf("%s  q=%d\n  j  a_j(q)                    gamma_j\n", idx.describe().c_str(), q);
        for (int j = 0; j <= q; ++j) std::printf("%3d  %-24.15g  %.15g\n", j, a[j], gamma[j]);
        std::printf("rising factorial identity (k = 0..%d): %s\n", q, ok ? "PASS" : "FAIL");
    }
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------- density

int run_density(const json& cfg) {
    const StableIndex idx = index_from(cfg);
    if (idx.alpha() > 1.0) throw UsageError("density: alpha must be <= 1");
    const double t = cfg["t"].get<double>();
    if (!(t > 0.0)) throw UsageError("--t must be positive");
    std::vector<double> s_values;
    if (cfg["s"].is_null()) {
        for (int i = -20; i <= 20; ++i) s_values.push_back(std::pow(10.0, i / 10.0));
    } else {
        s_values.push_back(cfg["s"].get<double>());
        if (!(s_values[0] > 0.0)) throw UsageError("--s must be positive");
    }
    const QuadratureSpec quad = quad_from(cfg);
    Output out("density", cfg);
    const SubordinatorDensity density(idx);

    std::ostringstream csv;
    csv << out.csv_header("s,f_t,terms_used,tail_estimate,route");
    std::vector<double> values;
    for (double s : s_values) {
        const double x = s * std::pow(t, -idx.inv());
        DensityEval e = density.series_f1(x);
        double f1 = e.value;
        std::string route = "series";
        if (x < density.threshold()) {
            f1 = density.f1(x);
            route = "integral";
            e.terms_used = 0;
            e.tail_estimate = 0.0;
        }
        const double scale = std::pow(t, -idx.inv());
        values.push_back(scale * f1);
        csv << num(s) << ',' << num(scale * f1) << ',' << e.terms_used << ','
            << num(scale * e.tail_estimate) << ',' << route << '\n';
    }
    out.write("density.csv", csv.str());

    std::ostringstream lap;
    lap << out.csv_header("lambda,t,residual");
    double worst = 0.0;
    for (double lambda : {0.1, 0.3, 1.0, 3.0, 10.0}) {
        for (double tt : {0.25, 1.0, 4.0}) {
            const QuadValue v = laplace_transform(lambda, tt, density, quad);
            const double res = std::abs(v.value - std::exp(-tt * std::pow(lambda, idx.beta())));
            worst = std::max(worst, res);
            lap << num(lambda) << ',' << num(tt) << ',' << num(res) << '\n';
        }
    }
    out.write("laplace.csv", lap.str());

    const bool ok = worst <= 1e-8;
    json body;
    body["alpha"] = idx.alpha();
    body["t"] = t;
    body["series_threshold"] = density.threshold();
    body["max_laplace_residual"] = worst;
    body["laplace_tolerance"] = 1e-8;
    body["pass"] = ok;
    if (s_values.size() == 1) body["value"] = values[0];
    out.write_json("density.json", body);

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else if (out.format() == "csv") {
        std::cout << csv.str();
    } else if (s_values.size() == 1) {
        std::printf("%.10f\n", values[0]);
    } else {
        for (std::size_t i = 0; i < s_values.size(); ++i)
            std::printf("%-14.6g %.12g\n", s_values[i], values[i]);
        std::printf("max Laplace residual %.3g\n", worst);
    }
    if (!ok) std::fprintf(stderr, "laplace certificate failed: residual %.3g > 1e-8\n", worst);
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------- kernel

int run_kernel(const json& cfg) {
    const StableIndex idx = index_from(cfg);
    if (idx.alpha() > 1.0) throw UsageError("kernel: alpha must be <= 1");
    const auto t_list = cfg["t"].get<std::vector<double>>();
    const auto r_list = cfg["r"].get<std::vector<double>>();
    for (double t : t_list)
        if (!(t > 0.0)) throw UsageError("--t values must be positive");
    for (double r : r_list)
        if (!(r >= 0.0)) throw UsageError("--r values must be nonnegative");
    const QuadratureSpec quad = quad_from(cfg);
    Output out("kernel", cfg);
    const SubordinatorDensity density(idx);

    std::ostringstream csv;
    csv << out.csv_header("t,r,p_subordination,p_fourier,abs_diff");
    double worst = 0.0;
    for (double t : t_list) {
        for (double r : r_list) {
            const double p = transition_density(t, Point{0.0}, Point{r}, density, quad).value;
            const double f = transition_density_fourier_1d(t, r, idx, quad).value;
            worst = std::max(worst, std::abs(p - f));
            csv << num(t) << ',' << num(r) << ',' << num(p) << ',' << num(f) << ','
                << num(std::abs(p - f)) << '\n';
        }
    }
    out.write("kernel.csv", csv.str());
    const bool ok = worst <= 1e-6;
    json body;
    body["alpha"] = idx.alpha();
    body["max_abs_difference"] = worst;
    body["tolerance"] = 1e-6;
    body["pass"] = ok;
    out.write_json("kernel.json", body);

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else {
        std::cout << csv.str();
    }
    if (!ok) std::fprintf(stderr, "kernel oracle mismatch %.3g > 1e-6\n", worst);
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------- eig

std::vector<int> grid_sequence(int finest) {
    if (finest < 64 || finest > 4096) throw UsageError("--n must be in [64, 4096]");
    return {finest / 4, finest / 2, finest};
}

int run_eig(const json& cfg) {
    const double alpha = alpha_from(cfg);
    const auto [a, b] = interval_from(cfg);
    const double tol = cfg["tol"].get<double>();
    if (!(tol > 0.0 && tol < 1e-3)) throw UsageError("eig: --tol must be in (0, 1e-3)");
    const auto n_seq = grid_sequence(cfg["n"].get<int>());
    Output out("eig", cfg);

    const RefinementResult ref = refine_extrapolate(a, b, n_seq, alpha, tol);
    const Grid1D grid(a, b, n_seq.back());
    const EigenPair pair = smallest_eigenpair(assemble(grid, alpha), tol);

    json body;
    body["alpha"] = alpha;
    body["interval"] = {a, b};
    body["n_sequence"] = ref.n_sequence;
    body["lambda_per_grid"] = ref.lambda_per_grid;
    body["order_estimate"] = ref.extrapolation.order;
    body["lambda_extrapolated"] = ref.extrapolation.value;
    body["extrapolation_ok"] = ref.extrapolation.ok;
    if (!ref.extrapolation.ok) body["warning"] = ref.extrapolation.warning;
    body["residual"] = pair.residual;
    body["converged"] = pair.converged;
    out.write_json("eig.json", body);

    std::ostringstream csv;
    csv << out.csv_header("x,phi1");
    csv << num(a) << ",0\n";
    for (int i = 1; i <= grid.n(); ++i)
        csv << num(grid.node(i)) << ',' << num(pair.phi1[static_cast<std::size_t>(i - 1)]) << '\n';
    csv << num(b) << ",0\n";
    out.write("eigenfunction.csv", csv.str());

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else if (out.format() == "csv") {
        std::cout << csv.str();
    } else {
        std::printf("alpha=%.17g on (%g, %g)\n", alpha, a, b);
        for (std::size_t i = 0; i < ref.n_sequence.size(); ++i)
            std::printf("  n=%-5d lambda=%.12g\n", ref.n_sequence[i], ref.lambda_per_grid[i]);
        std::printf("extrapolated lambda_1 = %.10g (order %.3f)\n", ref.extrapolation.value,
                    ref.extrapolation.order);
    }
    const bool ok = pair.converged && ref.extrapolation.ok;
    if (!ok) std::fprintf(stderr, "eigen solve: %s\n", ref.extrapolation.warning.c_str());
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------- verify

int run_verify(const json& cfg) {
    const StableIndex idx = index_from(cfg);
    const auto [a, b] = interval_from(cfg);
    const bool concavity_path = !cfg.contains("m") && idx.alpha() == 1.0;
    if (!concavity_path) {
        if (!idx.m()) throw UsageError("verify: use --m (m > 2) or --alpha 1");
        try {
            idx.require_theorem_mode();
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    const int n = cfg["n"].get<int>();
    const auto n_seq = grid_sequence(n);
    const QuadratureSpec quad = quad_from(cfg);
    Output out("verify", cfg);

    VerificationReport report;
    if (concavity_path) {
        report = VerificationReport("concavity verification, alpha=1");
        report.add(concavity_check(a, b, n, 1e-12));
    } else {
        VerifyConfig vc;
        vc.a = a;
        vc.b = b;
        vc.quad = quad;
        vc.seed = cfg["seed"].get<std::uint64_t>();
        vc.superharmonic.n_sequence = n_seq;
        report = run_full_verification(idx, vc);
    }
    json body;
    body["report"] = report.to_json();
    out.write_json("report.json", body);
    const std::string text = report.to_text();
    out.write("report.txt", text);

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else {
        std::cout << text;
    }
    if (!report.overall_pass()) {
        for (const auto& r : report.records())
            if (!r.pass && r.mandatory) std::fprintf(stderr, "failed: %s\n", r.name.c_str());
    }
    return report.overall_pass() ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------- mc

int run_mc(const json& cfg) {
    const auto [a, b] = interval_from(cfg);
    McConfig mc;
    mc.a = a;
    mc.b = b;
    mc.dt = cfg["dt"].get<double>();
    mc.t_max = cfg["t_max"].get<double>();
    mc.n_paths = cfg["n_paths"].get<long>();
    mc.seed = cfg["seed"].get<std::uint64_t>();
    mc.uniform_start = cfg["uniform_start"].get<bool>();
    if (!cfg["x0"].is_null()) mc.x0 = cfg["x0"].get<double>();
    mc.record_every = std::max(1, static_cast<int>(std::lround(0.05 / mc.dt)));
    try {
        mc.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const double alpha = alpha_from(cfg);
    const SubordinatorClock clock = alpha == 2.0
                                        ? SubordinatorClock::deterministic()
                                        : SubordinatorClock::stable(index_from(cfg));
    Output out("mc", cfg);

    const SurvivalCurve curve = survival_curve(mc, clock);
    const LambdaEstimate est = estimate_lambda1(curve);

    std::ostringstream csv;
    csv << out.csv_header("t,survival,stderr");
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i)
        csv << num(curve.t_grid[i]) << ',' << num(curve.survival[i]) << ','
            << num(curve.standard_errors[i]) << '\n';
    out.write("survival.csv", csv.str());

    json body;
    body["alpha"] = alpha;
    body["lambda_hat"] = est.lambda_hat;
    body["stderr"] = est.stderr_;
    body["window"] = {est.t_lo, est.t_hi};
    body["r_squared"] = est.r_squared;
    body["ok"] = est.ok;
    if (!est.ok) body["warning"] = est.warning;
    out.write_json("mc.json", body);

    if (out.format() == "json") {
        std::cout << body.dump(2) << '\n';
    } else if (out.format() == "csv") {
        std::cout << csv.str();
    } else {
        std::printf("lambda_hat = %.6g +- %.2g  window [%g, %g]  R^2 = %.5f\n", est.lambda_hat,
                    est.stderr_, est.t_lo, est.t_hi, est.r_squared);
    }
    if (!est.ok) std::fprintf(stderr, "lambda fit: %s\n", est.warning.c_str());
    return est.ok ? kExitOk : kExitTolerance;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracharm: numerical checks for superharmonicity of the first Dirichlet "
                 "eigenfunction of the fractional Laplacian"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonFlags coeffs_flags, density_flags, kernel_flags, eig_flags, verify_flags, mc_flags;

    auto* coeffs = app.add_subcommand("coeffs", "a_j(q), gamma_k and the rising-factorial identity");
    coeffs_flags.attach(coeffs);
    int q = 0;
    auto* q_opt = coeffs->add_option("--q", q, "derivative order");

    auto* density = app.add_subcommand("density", "subordinator density f_t(s)");
    density_flags.attach(density);
    double s = 0.0, t_single = 1.0;
    auto* s_opt = density->add_option("--s", s, "single evaluation point");
    auto* t_single_opt = density->add_option("--t", t_single, "time");

    auto* kernel = app.add_subcommand("kernel", "transition density: subordination vs Fourier");
    kernel_flags.attach(kernel);
    std::vector<double> t_list, r_list;
    auto* t_list_opt = kernel->add_option("--t", t_list, "times");
    auto* r_list_opt = kernel->add_option("--r", r_list, "distances");

    auto* eig = app.add_subcommand("eig", "first Dirichlet eigenpair with extrapolation");
    eig_flags.attach(eig);

    auto* verify = app.add_subcommand("verify", "full verification report");
    verify_flags.attach(verify);

    auto* mc = app.add_subcommand("mc", "Monte Carlo exit times and lambda_1 estimate");
    mc_flags.attach(mc);
    long n_paths = 0;
    double dt = 0.0, t_max = 0.0, x0 = 0.0;
    bool uniform = false;
    auto* paths_opt = mc->add_option("--n-paths", n_paths, "number of paths");
    auto* dt_opt = mc->add_option("--dt", dt, "time step");
    auto* tmax_opt = mc->add_option("--t-max", t_max, "censoring time");
    auto* x0_opt = mc->add_option("--x0", x0, "start point");
    auto* uniform_opt = mc->add_flag("--uniform-start", uniform, "start uniformly in the interval");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        json cfg = base_defaults();
        if (*coeffs) {
            cfg["q"] = 5;
            cfg = resolve(cfg, coeffs_flags, {{"q", q_opt, q}});
            return run_coeffs(cfg);
        }
        if (*density) {
            cfg["s"] = nullptr;
            cfg["t"] = 1.0;
            cfg = resolve(cfg, density_flags, {{"s", s_opt, s}, {"t", t_single_opt, t_single}});
            return run_density(cfg);
        }
        if (*kernel) {
            cfg["t"] = std::vector<double>{0.25, 1.0, 4.0};
            cfg["r"] = std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0};
            cfg = resolve(cfg, kernel_flags, {{"t", t_list_opt, t_list}, {"r", r_list_opt, r_list}});
            return run_kernel(cfg);
        }
        if (*eig) {
            cfg["tol"] = 1e-12;
            cfg = resolve(cfg, eig_flags, {});
            return run_eig(cfg);
        }
        if (*verify) {
            cfg["n"] = 2048;
            cfg = resolve(cfg, verify_flags, {});
            return run_verify(cfg);
        }
        if (*mc) {
            cfg["n_paths"] = 100000;
            cfg["dt"] = 1e-3;
            cfg["t_max"] = 8.0;
            cfg["x0"] = nullptr;
            cfg["uniform_start"] = false;
            cfg = resolve(cfg, mc_flags,
                          {{"n_paths", paths_opt, n_paths},
                           {"dt", dt_opt, dt},
                           {"t_max", tmax_opt, t_max},
                           {"x0", x0_opt, x0},
                           {"uniform_start", uniform_opt, uniform}});
            return run_mc(cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: bad config value: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitTolerance;
    }
    return kExitUsage;
}
