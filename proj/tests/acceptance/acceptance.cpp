// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "fracharm/coefficients.hpp"
#include "fracharm/eigsolve1d.hpp"
#include "fracharm/harness.hpp"
#include "fracharm/kernel.hpp"
#include "fracharm/montecarlo.hpp"
#include "fracharm/subordinator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef FRACHARM_CLI
#error "FRACHARM_CLI must name the fracharm executable"
#endif

using namespace fracharm;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds,
               const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < limit_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", number,
                title.c_str(), out.detail.c_str(), seconds, limit_seconds,
                in_time ? "" : " TOO SLOW");
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const QuadratureSpec kQuad{1e-15, 1e-10, 4096, 10.0};

double measured(const CheckRecord& r, const std::string& key) {
    for (const auto& m : r.measured)
        if (m.name == key) return m.value;
    return std::nan("");
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.compare(0, prefix.size(), prefix) == 0;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main() {
    criterion(1, "rising factorial identity, exact and floating point", 1.0, [] {
        long exact_cases = 0;
        for (int m = 3; m <= 6; ++m) {
            for (int q = 0; q <= 8; ++q) {
                for (int k = 0; k <= q; ++k) {
                    Rational expected = 0;
                    if (k == q) expected = Rational(static_cast<long long>(std::tgamma(q + 1.0)));
                    if (rising_identity_sum_exact(q, k, m) != expected)
                        return Outcome{false, "exact defect at q=" + std::to_string(q)};
                    ++exact_cases;
                }
            }
        }
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            double alpha = 0.0;
            while (alpha <= 0.0) alpha = u(rng);
            for (int q = 0; q <= 8; ++q) {
                for (int k = 0; k <= q; ++k) {
                    const double fact = std::tgamma(q + 1.0);
                    const double sum =
                        static_cast<double>(rising_identity_sum<WideFloat>(q, k, WideFloat(alpha)));
                    worst = std::max(worst, std::abs(sum - (k == q ? fact : 0.0)) / fact);
                }
            }
        }
        return Outcome{worst <= 1e-10, std::to_string(exact_cases) + " exact cases with zero defect; "
                                           "float max defect " + fmt("%.2e", worst) + " <= 1e-10"};
    });

    criterion(2, "subordinator generator identity, termwise", 1.0, [] {
        double worst = 0.0;
        for (int m : {3, 4, 5})
            for (int k = 0; k <= 20; ++k) worst = std::max(worst, pde_coefficient_residual(k, m));
        return Outcome{worst <= 1e-12, "max relative defect " + fmt("%.2e", worst) + " <= 1e-12"};
    });

    criterion(3, "subordinator Laplace certificate and Levy closed form", 10.0, [] {
        double worst = 0.0;
        for (int m : {3, 4, 5}) {
            const auto idx = StableIndex::from_m(m);
            for (double lambda : {0.1, 0.3, 1.0, 3.0, 10.0})
                for (double t : {0.25, 1.0, 4.0})
                    worst = std::max(worst, laplace_residual(lambda, t, idx, kQuad));
        }
        const SubordinatorDensity levy(StableIndex::from_alpha(1.0));
        double worst_levy = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double s = 0.2 * std::pow(250.0, i / 400.0);
            const double exact = std::exp(-0.25 / s) / (2.0 * std::sqrt(M_PI) * std::pow(s, 1.5));
            worst_levy = std::max(worst_levy, std::abs(levy.f1(s) - exact) / exact);
        }
        return Outcome{worst <= 1e-8 && worst_levy <= 1e-10,
                       "Laplace residual " + fmt("%.2e", worst) + " <= 1e-8; Levy relative error " +
                           fmt("%.2e", worst_levy) + " <= 1e-10"};
    });

    criterion(4, "kernel oracle equivalence, unit mass, Cauchy anchor", 30.0, [] {
        double worst = 0.0;
        for (double alpha : {1.0, 2.0 / 3.0, 0.5, 0.4}) {
            const auto idx = StableIndex::from_alpha(alpha);
            const SubordinatorDensity density(idx);
            for (double t : {0.25, 1.0, 4.0}) {
                for (double r : {0.0, 0.5, 1.0, 2.0, 5.0}) {
                    const double p = transition_density(t, Point{0.0}, Point{r}, density, kQuad).value;
                    const double f = transition_density_fourier_1d(t, r, idx, kQuad).value;
                    worst = std::max(worst, std::abs(p - f));
                }
            }
        }
        double worst_mass = 0.0;
        for (double alpha : {2.0 / 3.0, 0.4}) {
            const SubordinatorDensity density(StableIndex::from_alpha(alpha));
            const QuadValue mass = integrate_exp_sinh(
                [&](double r) {
                    return 2.0 * transition_density(1.0, Point{0.0}, Point{r}, density, kQuad).value;
                },
                0.0, QuadratureSpec{1e-12, 1e-9, 4096, 10.0});
            worst_mass = std::max(worst_mass, std::abs(mass.value - 1.0));
        }
        const double cauchy =
            transition_density(1.0, Point{0.0}, Point{0.0}, StableIndex::from_alpha(1.0), kQuad).value;
        const double cauchy_err = std::abs(cauchy - 1.0 / M_PI);
        return Outcome{worst <= 1e-6 && worst_mass <= 1e-6 && cauchy_err <= 1e-8,
                       "max |subordination - Fourier| " + fmt("%.2e", worst) + " <= 1e-6; |mass - 1| " +
                           fmt("%.2e", worst_mass) + " <= 1e-6; |p(1,0,0) - 1/pi| " +
                           fmt("%.2e", cauchy_err) + " <= 1e-8"};
    });

    criterion(5, "eigensolver anchors and Monte Carlo cross-check", 300.0, [] {
        const auto bm = refine_extrapolate(-1, 1, {319, 639, 1279}, 2.0);
        const double bm_err = std::abs(bm.extrapolation.value - M_PI * M_PI / 4);
        double scaling_err = 0.0;
        double asym = 0.0;
        bool positive = true;
        for (double alpha : {2.0 / 3.0, 0.5, 1.0}) {
            const EigenPair small = smallest_eigenpair(assemble(Grid1D(-1, 1, 511), alpha));
            const EigenPair large = smallest_eigenpair(assemble(Grid1D(-2, 2, 511), alpha));
            scaling_err = std::max(scaling_err,
                                   std::abs(large.lambda1 / small.lambda1 - std::pow(2.0, -alpha)));
            for (std::size_t i = 0; i < small.phi1.size(); ++i) {
                positive = positive && small.phi1[i] > 0.0;
                asym = std::max(asym, std::abs(small.phi1[i] - small.phi1[small.phi1.size() - 1 - i]));
            }
        }
        std::string mc_detail;
        double worst_mc = 0.0;
        bool mc_ok = true;
        for (double alpha : {1.0, 2.0 / 3.0, 0.5}) {
            const double solver = refine_extrapolate(-1, 1, {319, 639, 1279}, alpha).extrapolation.value;
            McConfig mc;
            mc.n_paths = 100000;
            mc.dt = 1e-3;
            mc.seed = 20240101;
            const LambdaEstimate e =
                estimate_lambda1(survival_curve(mc, SubordinatorClock::stable(StableIndex::from_alpha(alpha))));
            mc_ok = mc_ok && e.ok;
            const double rel = std::abs(e.lambda_hat / solver - 1.0);
            worst_mc = std::max(worst_mc, rel);
            mc_detail += fmt(" alpha=%.3g:", alpha) + fmt(" %.4f", e.lambda_hat) + fmt(" vs %.4f", solver);
        }
        const bool pass = bm_err <= 1e-4 && scaling_err <= 1e-12 && positive && asym <= 1e-10 &&
                          mc_ok && worst_mc <= 0.05;
        return Outcome{pass, "|lambda - pi^2/4| " + fmt("%.2e", bm_err) + " <= 1e-4; scaling " +
                                 fmt("%.2e", scaling_err) + " <= 1e-12; phi > 0 " +
                                 (positive ? "yes" : "no") + ", asymmetry " + fmt("%.2e", asym) +
                                 " <= 1e-10; MC" + mc_detail + ", worst " + fmt("%.2f%%", 100 * worst_mc) +
                                 " <= 5%"};
    });

    std::map<int, VerificationReport> reports;
    criterion(6, "t -> 0 limits of the semigroup derivatives and tail diagnostic (alpha = 2/3)", 300.0, [&] {
        reports.emplace(3, run_full_verification(StableIndex::from_m(3), VerifyConfig{}));
        double worst = 0.0;
        int limits = 0, tails = 0;
        bool pass = true;
        for (const auto& r : reports.at(3).records()) {
            if (starts_with(r.name, "limit_q=")) {
                ++limits;
                pass = pass && r.pass;
                worst = std::max(worst, measured(r, "relative_error"));
            } else if (starts_with(r.name, "tail_diagnostic")) {
                ++tails;
                pass = pass && r.pass;
            }
        }
        pass = pass && limits == 15 && tails == 2;
        return Outcome{pass, std::to_string(limits) + " limit checks, worst relative error " +
                                 fmt("%.2e", worst) + " <= 1e-2; " + std::to_string(tails) +
                                 " tail diagnostics decreasing in M"};
    });

    criterion(7, "superharmonicity verdict for alpha in {2/3, 1/2, 2/5}, concavity at alpha = 1", 300.0, [&] {
        for (int m : {4, 5}) reports.emplace(m, run_full_verification(StableIndex::from_m(m), VerifyConfig{}));
        bool pass = true;
        double worst_gap = 0.0, max_rhs = -INFINITY, max_d2 = -INFINITY;
        int identities = 0;
        for (int m : {3, 4, 5}) {
            for (const auto& r : reports.at(m).records()) {
                if (starts_with(r.name, "identity_x=")) {
                    ++identities;
                    pass = pass && r.pass;
                    worst_gap = std::max(worst_gap, measured(r, "relative_gap"));
                    for (const auto& v : r.measured)
                        if (starts_with(v.name, "rhs_")) max_rhs = std::max(max_rhs, v.value);
                } else if (r.name == "superharmonicity") {
                    pass = pass && r.pass;
                    max_d2 = std::max(max_d2, measured(r, "max_d2_n2048"));
                }
            }
        }
        const CheckRecord concave = concavity_check(-1, 1, 2048);
        pass = pass && concave.pass && identities == 15 && max_rhs <= 0.0 && max_d2 <= 1e-2;
        return Outcome{pass, std::to_string(identities) + " identity points, max RHS " +
                                 fmt("%.3f", max_rhs) + " <= 0, worst gap " +
                                 fmt("%.2f%%", 100 * worst_gap) + " <= 5%; max second difference at n=2048 " +
                                 fmt("%.3f", max_d2) + " <= 1e-2 and decreasing; alpha=1 concave " +
                                 (concave.pass ? "yes" : "no")};
    });

    criterion(8, "determinism of verify reports", 120.0, [] {
        namespace fs = std::filesystem;
        const fs::path base = fs::temp_directory_path() / "fracharm_acceptance_determinism";
        fs::remove_all(base);
        fs::create_directories(base);
        std::vector<std::string> texts, jsons;
        for (const char* run : {"run1", "run2"}) {
            const std::string cmd = std::string("\"") + FRACHARM_CLI + "\" verify --m 3 --seed 7 --out \"" +
                                    (base / run).string() + "\" > \"" + (base / run).string() +
                                    ".stdout\" 2>&1";
            if (std::system(cmd.c_str()) != 0) return Outcome{false, "verify run failed: " + cmd};
            jsons.push_back(slurp(base / run / "report.json"));
            texts.push_back(slurp(base / run / "report.txt"));
        }
        const bool same = !jsons[0].empty() && jsons[0] == jsons[1] && texts[0] == texts[1];
        return Outcome{same, "two runs: report.json " + std::to_string(jsons[0].size()) + " bytes, " +
                                 (same ? "byte-identical" : "different")};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
