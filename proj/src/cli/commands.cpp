#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "exle/cli.hpp"
#include "exle/diagnostics.hpp"
#include "exle/errors.hpp"
#include "exle/solver.hpp"
#include "internal.hpp"

namespace exle::cli {

namespace {

std::string bool_text(bool b) { return b ? "pass" : "FAIL"; }

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    if (!(is >> g.min >> c1 >> g.max >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
        !(is >> std::ws).eof()) {
        throw DomainError("grid must be \"pmin:pmax:step\", got \"" + text + "\"");
    }
    if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.min < g.max)) {
        throw DomainError("grid needs pmin < pmax");
    }
    if (!(g.step > 0.0) || !std::isfinite(g.step)) throw DomainError("grid step must be positive");
    return g;
}

std::vector<double> GridSpec::values() const {
    const double span = (max - min) / step;
    if (span > 1e6) throw DomainError("grid has more than 10^6 values per axis");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = min + static_cast<double>(i) * step;
    return out;
}

int default_worker_count() {
    if (const char* env = std::getenv("EXLE_NUM_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 1024L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int cmd_roots(const RootsOptions& opts, std::ostream& out, std::ostream& err) {
    const ExponentPair e(opts.p, opts.theta);
    detail::note_canonical_order(opts.p, opts.theta, err);
    const auto r = threshold_report(e, opts.tol);
    out << "p,theta,t0,s0,x0,n_cowan,n_new,improvement\n";
    out << csv_row({format_number(r.p), format_number(r.theta), format_number(r.t0),
                    format_number(r.s0), format_number(r.x0), format_number(r.n_cowan),
                    format_number(r.n_new), format_number(r.improvement)})
        << '\n';
    return kSuccess;
}

int cmd_thresholds(const ThresholdsOptions& opts, std::ostream& out, std::ostream& err) {
    const auto axis = opts.grid.values();
    std::vector<std::pair<double, double>> cells;
    int skipped = 0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = i; j < axis.size(); ++j) {
            if (axis[i] < 1.0 || axis[i] * axis[j] <= 1.0) {
                ++skipped;
                continue;
            }
            cells.emplace_back(axis[i], axis[j]);
        }
    }
    if (skipped > 0) err << "note: skipped " << skipped << " grid cells outside p, theta >= 1, p*theta > 1\n";

    std::vector<ThresholdReport> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            try {
                rows[k] = threshold_report(ExponentPair(cells[k].first, cells[k].second), opts.tol);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int workers = std::max(1, std::min<int>(opts.workers > 0 ? opts.workers : default_worker_count(),
                                                  static_cast<int>(cells.size())));
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);

    std::sort(rows.begin(), rows.end(), [](const ThresholdReport& a, const ThresholdReport& b) {
        return a.p != b.p ? a.p < b.p : a.theta < b.theta;
    });

    std::string text = "p,theta,t0,s0,x0,n_cowan,n_new,improvement\n";
    for (const auto& r : rows) {
        text += csv_row({format_number(r.p), format_number(r.theta), format_number(r.t0),
                         format_number(r.s0), format_number(r.x0), format_number(r.n_cowan),
                         format_number(r.n_new), format_number(r.improvement)});
        text += '\n';
    }
    if (opts.out.empty()) {
        out << text;
    } else {
        detail::write_file(opts.out, text);
    }
    return kSuccess;
}

int cmd_continue(const ContinueOptions& opts, std::ostream& out, std::ostream& err) {
    const ExponentPair e(opts.p, opts.theta);
    detail::note_canonical_order(opts.p, opts.theta, err);
    if (!(opts.sigma > 0.0) || !std::isfinite(opts.sigma)) throw DomainError("sigma must be positive");
    if (!(opts.tol > 0.0) || !(opts.bracket_tol > 0.0)) throw DomainError("tolerances must be positive");
    if (opts.max_steps < 1) throw DomainError("max-steps must be at least 1");
    const RadialGrid grid(opts.dim, opts.nodes);
    const double s = opts.s ? *opts.s : default_energy_exponent(e);
    if (!(s > e.canonical().p() + 1.0)) throw DomainError("energy exponent s must exceed p + 1");

    ContinuationConfig config;
    config.bracket_tol = opts.bracket_tol;
    config.max_steps = opts.max_steps;
    config.solver.tol = opts.tol;

    Branch branch;
    bool budget_exhausted = false;
    try {
        branch = continue_ray(e, opts.sigma, grid, config);
    } catch (const BudgetError& ex) {
        branch = ex.partial();
        budget_exhausted = true;
        err << "error: " << ex.what() << '\n';
    }

    std::string csv = "lambda,gamma,sup_u,sup_v,mu1,souplet_margin,energy_J2,iterations\n";
    double min_mu1 = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    double max_slack = 0.0;
    double observed_cs = 0.0;
    std::vector<double> j2;
    int mu1_increases = 0;
    for (std::size_t i = 0; i < branch.points.size(); ++i) {
        const auto& pt = branch.points[i];
        const auto soup = souplet_check(e, pt.state, pt.lambda, pt.gamma);
        const auto energy = energy_report(e, pt.state, s, grid);
        min_mu1 = std::min(min_mu1, pt.mu1);
        min_margin = std::min(min_margin, soup.margin_min);
        max_slack = std::max(max_slack, souplet_slack(grid, soup));
        observed_cs = std::max(observed_cs, energy.energy_J2);
        j2.push_back(energy.energy_J2);
        if (i > 0 && pt.mu1 > branch.points[i - 1].mu1 * (1.0 + 1e-9)) ++mu1_increases;
        csv += csv_row({format_number(pt.lambda), format_number(pt.gamma), format_number(pt.sup_u),
                        format_number(pt.sup_v), format_number(pt.mu1),
                        format_number(soup.margin_min), format_number(energy.energy_J2),
                        std::to_string(pt.iterations)});
        csv += '\n';
    }

    GrowthFlag flag = GrowthFlag::indeterminate;
    double growth = std::numeric_limits<double>::quiet_NaN();
    double growth_threshold = std::numeric_limits<double>::quiet_NaN();
    int coarse_nodes = 0;
    if (!budget_exhausted && opts.refine_check && opts.nodes / 2 >= kMinIntervals) {
        coarse_nodes = opts.nodes / 2;
        try {
            const RadialGrid coarse_grid(opts.dim, coarse_nodes);
            const std::vector<Branch> pair{continue_ray(e, opts.sigma, coarse_grid, config), branch};
            const auto diag = extremal_extrapolate(pair, e, opts.dim);
            flag = diag.flag;
            growth = diag.growth;
            growth_threshold = diag.growth_threshold;
        } catch (const BudgetError& ex) {
            err << "note: coarse refinement run incomplete (" << ex.what() << ")\n";
        } catch (const DiagnosticError& ex) {
            err << "note: boundedness flag unavailable (" << ex.what() << ")\n";
        }
    }

    auto number_or_null = [](double x) {
        return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
    };
    const auto report = threshold_report(e);
    nlohmann::ordered_json summary;
    summary["p"] = opts.p;
    summary["theta"] = opts.theta;
    summary["sigma"] = opts.sigma;
    summary["dim"] = opts.dim;
    summary["nodes"] = opts.nodes;
    summary["status"] = budget_exhausted ? "budget_exhausted" : "ok";
    summary["steps"] = branch.steps;
    summary["points"] = branch.points.size();
    summary["lambda_lo"] = branch.lambda_lo;
    summary["lambda_hi"] = number_or_null(branch.bracketed() ? branch.lambda_hi : NAN);
    summary["bracket_relative_width"] = number_or_null(branch.relative_width());
    summary["s"] = s;
    summary["observed_C_s"] = observed_cs;
    summary["energy_J2_last_change"] =
        number_or_null(j2.size() >= 2 ? std::abs(j2.back() - j2[j2.size() - 2]) / j2.back() : NAN);
    summary["min_mu1"] = number_or_null(min_mu1);
    summary["mu1_increases"] = mu1_increases;
    summary["min_souplet_margin"] = number_or_null(min_margin);
    summary["souplet_slack"] = max_slack;
    summary["boundedness"] = to_string(flag);
    summary["refinement_nodes"] = coarse_nodes;
    summary["growth"] = number_or_null(growth);
    summary["growth_threshold"] = number_or_null(growth_threshold);
    summary["n_new"] = report.n_new;
    summary["threshold_predicts_bounded"] = opts.dim < report.n_new;
    summary["canonical_order_swapped"] = opts.p > opts.theta;
    const std::string summary_text = summary.dump(2) + '\n';

    if (opts.out.empty()) {
        out << csv;
    } else {
        detail::write_file(opts.out, csv);
    }
    if (!opts.summary.empty()) {
        detail::write_file(opts.summary, summary_text);
    } else if (!opts.out.empty()) {
        detail::write_file(opts.out + ".summary.json", summary_text);
    } else {
        err << summary_text;
    }
    return budget_exhausted ? kBudgetExhausted : kSuccess;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.samples < 1) throw DomainError("samples must be at least 1");
    const ExponentPair e(opts.p, opts.theta);
    detail::note_canonical_order(opts.p, opts.theta, err);

    const double tamper = opts.tamper_l;
    const QuarticEvaluator l_eval = [tamper](const ExponentPair& pair, double s) {
        return eval_L(pair, s) + tamper * s;
    };

    IdentityReport report = check_polynomial_identities(e, opts.samples, opts.seed, l_eval);

    const auto scan = scan_stability_equivalence(e, std::max(opts.samples, 1000), 1e-6, l_eval);
    report.entries.push_back({"stability_equivalence_disagreements",
                              static_cast<double>(scan.disagreements), 0.0, scan.disagreements == 0});

    const auto se = scaling_exponents(e);
    const double alpha_res = std::abs(e.p() * se.beta - se.alpha - 2.0) / (1.0 + se.alpha);
    const double beta_res = std::abs(e.theta() * se.alpha - se.beta - 2.0) / (1.0 + se.beta);
    report.entries.push_back({"scaling_alpha", alpha_res, kIdentityTol, alpha_res <= kIdentityTol});
    report.entries.push_back({"scaling_beta", beta_res, kIdentityTol, beta_res <= kIdentityTol});

    const double s0 = largest_root_L(e).root;
    const double prod_res = std::abs(stability_product(e, s0) - 1.0);
    report.entries.push_back({"stability_product_at_s0", prod_res, 1e-8, prod_res <= 1e-8});

    out << "check,value,tolerance,status\n";
    for (const auto& r : report.entries) {
        out << csv_row({r.name, format_number(r.value), format_number(r.tolerance), bool_text(r.passed)})
            << '\n';
    }
    if (report.all_passed()) return kSuccess;
    const auto& worst = report.worst();
    err << "verification failed; worst residual " << worst.name << " = " << format_number(worst.value)
        << " (tolerance " << format_number(worst.tolerance) << ")\n";
    return kVerificationFailure;
}

int cmd_partial(const PartialOptions& opts, std::ostream& out, std::ostream& err) {
    const ExponentPair e(opts.p, opts.theta);
    detail::note_canonical_order(opts.p, opts.theta, err);
    if (opts.dim < 1) throw DomainError("dimension must be at least 1");
    const auto report = threshold_report(e, opts.tol);
    const double bound = hausdorff_bound(e, opts.dim, opts.tol);
    const auto proof = hausdorff_bound_proof_form(e, opts.dim, opts.tol);
    out << "p,theta,N,n_new,theorem_bound,proof-form\n";
    out << csv_row({format_number(opts.p), format_number(opts.theta), std::to_string(opts.dim),
                    format_number(report.n_new), format_number(bound),
                    proof ? format_number(*proof) : std::string("n/a")})
        << '\n';
    return kSuccess;
}

}  // namespace exle::cli
