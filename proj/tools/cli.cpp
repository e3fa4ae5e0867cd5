#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "erdoslab/barriers.hpp"
#include "erdoslab/consecutive.hpp"
#include "erdoslab/correlation.hpp"
#include "erdoslab/ctau.hpp"
#include "erdoslab/errors.hpp"
#include "erdoslab/llt.hpp"
#include "erdoslab/prime_constants.hpp"
#include "erdoslab/scan.hpp"
#include "erdoslab/smooth.hpp"

namespace erdoslab::cli {
namespace {

using json = nlohmann::ordered_json;

// Largest x any sweep accepts; beyond this the uint32 divisor-count storage
// and the run time are both out of scope.
constexpr std::uint64_t kMaxX = 4'000'000'000;
constexpr std::uint64_t kMaxPmax = 2'000'000'000;
constexpr std::uint64_t kMaxSamples = 10'000'000'000;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::int64_t v) { return std::to_string(v); }

void require_budget(const char* what, std::uint64_t value, std::uint64_t budget) {
    if (value > budget) {
        throw BudgetError(std::string(what) + " exceeds the supported budget", value, budget);
    }
}

// Flag values shared by the subcommands; defaults reproduce the reference runs.
struct Options {
    std::uint64_t xmax = 10'000'000;
    std::uint64_t pmax = 10'000'000;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 12345;
    std::string f = "omega";
    std::vector<double> u{1.5, 2.0, 3.0};
    std::vector<double> v{1.5, 2.0, 3.0};
    double w = 2;
    double z = 1e6;
    std::string variant = "bigomega";
    std::string scale = "variance";
    std::string out = "-";
    std::string json_path;
    unsigned threads = 0;
    // corr
    std::string g1 = "liouville";
    std::string g2 = "liouville";
    std::uint64_t n = 1'000'000;
    std::uint64_t W = 1;
    std::uint64_t b = 1;
    std::int64_t h1 = 0;
    std::int64_t h2 = 1;
    double delta = 0;
    std::uint64_t qmax = 10;
    // barriers
    std::uint64_t K = 20;
    std::string definition = "all";
};

// A subcommand fills the CSV stream and an optional JSON summary, and
// records the parameters it actually used.
struct Context {
    std::ostream& csv;
    json params = json::object();
    json summary = json::object();
    std::optional<std::uint64_t> seed;
};

unsigned resolve_threads(unsigned flag) {
    if (const char* env = std::getenv("ERDOSLAB_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v == 0) throw std::invalid_argument("ERDOSLAB_THREADS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    if (flag > 0) return flag;
    return std::max(1u, std::thread::hardware_concurrency());
}

ArithFn parse_fn(const std::string& s) {
    const auto f = parse_arith_fn(s);
    if (!f) throw std::invalid_argument("unknown function '" + s + "' (expected omega, bigomega or tau)");
    return *f;
}

std::vector<ArithFn> parse_fns(const std::string& s) {
    if (s == "all") return {ArithFn::OMEGA, ArithFn::BIG_OMEGA, ArithFn::TAU};
    return {parse_fn(s)};
}

BpVariant parse_variant(const std::string& s) {
    if (s == "bigomega") return BpVariant::BIG_OMEGA;
    if (s == "omega") return BpVariant::SMALL_OMEGA;
    throw std::invalid_argument("unknown variant '" + s + "' (expected bigomega or omega)");
}

void cmd_constants(const Options& o, Context& c) {
    require_budget("--pmax", o.pmax, kMaxPmax);
    c.params["pmax"] = o.pmax;
    c.csv << "kind,value,p_max,tail_bound\n";
    for (const auto& r : all_constants(o.pmax)) {
        c.csv << to_string(r.kind) << ',' << num(r.value) << ',' << r.p_max << ',' << num(r.tail_bound) << '\n';
        c.summary[std::string(to_string(r.kind))] = r.value;
    }
    for (const auto& r : {ctau_lower_c1(o.pmax), ctau_lower_c3(o.pmax)}) {
        c.csv << to_string(r.kind) << ',' << num(r.value) << ',' << r.p_max << ',' << num(r.tail_bound) << '\n';
        c.summary[std::string(to_string(r.kind))] = r.value;
    }
    // Series rows carry the number of terms in the p_max column.
    for (const auto k : {SeriesKind::OMEGA_HALVES, SeriesKind::ERDOS_BORWEIN, SeriesKind::BIG_OMEGA_HALVES}) {
        const auto s = series(k, 200);
        c.csv << to_string(k) << ',' << num(s.value) << ',' << s.n_terms << ',' << num(s.tail_bound) << '\n';
        c.summary[std::string(to_string(k))] = s.value;
    }
    c.summary["series_identity_60"] = check_series_identity(60);
}

void cmd_scan(const Options& o, Context& c) {
    require_budget("--xmax", o.xmax, kMaxX);
    const auto fns = parse_fns(o.f);
    c.params["xmax"] = o.xmax;
    c.params["f"] = o.f;
    const auto grid = scan_grid(o.xmax);
    c.csv << "x,f,density,normalized,imputed_B,B_shift,c\n";
    for (const auto f : fns) {
        const auto rows = density_scan(f, grid, default_normalization(f));
        for (const auto& r : rows) {
            c.csv << r.x << ',' << to_string(f) << ',' << num(r.density) << ','
                  << (r.normalized ? num(*r.normalized) : std::string("undefined")) << ','
                  << (std::isnan(r.imputed_B) ? std::string("undefined") : num(r.imputed_B)) << ','
                  << num(r.b_shift) << ',' << num(r.c) << '\n';
        }
        if (!rows.empty()) {
            const auto& last = rows.back();
            c.summary[std::string(to_string(f))] = {{"x", last.x}, {"density", last.density},
                                                    {"imputed_B", last.imputed_B}};
        }
    }
}

void cmd_hist(const Options& o, Context& c) {
    require_budget("--xmax", o.xmax, kMaxX);
    const auto fns = parse_fns(o.f);
    c.params["xmax"] = o.xmax;
    c.params["f"] = o.f;
    c.csv << "f,x,m,count,gaussian_pred\n";
    for (const auto f : fns) {
        const auto norm = default_normalization(f);
        const auto h = diff_histogram(f, o.xmax);
        const auto name = to_string(f);
        for (const auto& [m, count] : h.counts) {
            c.csv << name << ',' << o.xmax << ',' << m << ',' << count << ','
                  << num(predicted_count(f, o.xmax, m, norm)) << '\n';
        }
        // Summary rows: empirical moment in `count`, model moment in `gaussian_pred`.
        const double pred_var = 2 * (loglog(static_cast<double>(o.xmax)) + norm.b_shift);
        c.csv << name << ',' << o.xmax << ",mean," << num(h.mean()) << ',' << num(0.0) << '\n';
        c.csv << name << ',' << o.xmax << ",var," << num(h.variance()) << ',' << num(pred_var) << '\n';
        c.summary[std::string(name)] = {
            {"total", h.total()}, {"mean", h.mean()}, {"variance", h.variance()}, {"predicted_variance", pred_var}};
    }
}

void cmd_ctau(const Options& o, Context& c, unsigned threads) {
    require_budget("--xmax", o.xmax, kMaxX);
    require_budget("--pmax", o.pmax, kMaxPmax);
    require_budget("--samples", o.samples, kMaxSamples);
    c.params["xmax"] = o.xmax;
    c.params["pmax"] = o.pmax;
    c.params["samples"] = o.samples;
    c.params["threads"] = threads;
    c.csv << "x_or_pmax,method,estimate,stderr,tail_bound,seed\n";

    const auto grid = scan_grid(o.xmax);
    for (const auto& r : tau_pair_scan(grid)) {
        const double x = static_cast<double>(r.x);
        const std::pair<const char*, std::uint64_t> series[] = {
            {"empirical_pow2_ratio", r.pow2_ratio}, {"nu3_match", r.nu3},
            {"nu35_match", r.nu35},                 {"nu357_match", r.nu357},
            {"both_pow2", r.both_pow2},             {"both_pow2_or_3pow2", r.both_pow2_or_3pow2}};
        for (const auto& [name, count] : series) {
            c.csv << r.x << ',' << name << ',' << num(static_cast<double>(count) / x) << ",,,\n";
        }
        if (r.x == grid.back()) c.summary["empirical_pow2_ratio"] = static_cast<double>(r.pow2_ratio) / x;
    }

    const auto c1 = ctau_lower_c1(o.pmax);
    const auto c3 = ctau_lower_c3(o.pmax);
    c.csv << o.pmax << ",lower_c1," << num(c1.value) << ",," << num(c1.tail_bound) << ",\n";
    c.csv << o.pmax << ",lower_c1_plus_c3," << num(c1.value + c3.value) << ",,"
          << num(c1.tail_bound + c3.tail_bound) << ",\n";
    c.summary["lower_c1"] = c1.value;
    c.summary["lower_c3"] = c3.value;

    if (o.samples > 0) {
        c.params["seed"] = o.seed;
        c.seed = o.seed;
        const auto ev = ctau_monte_carlo_events(o.pmax, o.samples, o.seed, threads);
        const std::pair<const char*, const CtauEstimate*> rows[] = {
            {"monte_carlo", &ev.pow2}, {"model_nu3_match", &ev.nu3},
            {"model_nu35_match", &ev.nu35}, {"model_nu357_match", &ev.nu357}};
        for (const auto& [name, e] : rows) {
            c.csv << o.pmax << ',' << name << ',' << num(e->point) << ',' << num(e->mc_stderr) << ','
                  << num(e->tail_bound) << ',' << e->seed << '\n';
        }
        c.summary["monte_carlo"] = {{"estimate", ev.pow2.point}, {"stderr", ev.pow2.mc_stderr},
                                    {"tail_bound", ev.pow2.tail_bound}};
    }
}

void cmd_llt(const Options& o, Context& c) {
    if (o.z > static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
        throw BudgetError("--z exceeds the prime-table budget", std::numeric_limits<std::uint64_t>::max(),
                          SumPmfOptions{}.z_budget);
    }
    const auto variant = parse_variant(o.variant);
    LltScale scale;
    if (o.scale == "variance") {
        scale = LltScale::EXACT_VARIANCE;
    } else if (o.scale == "loglog") {
        scale = LltScale::LOGLOG;
    } else {
        throw std::invalid_argument("unknown --scale '" + o.scale + "' (expected variance or loglog)");
    }
    c.params["w"] = o.w;
    c.params["z"] = o.z;
    c.params["variant"] = o.variant;
    c.params["scale"] = o.scale;
    const auto pmf = sum_pmf(o.w, o.z, variant);
    const auto d = llt_deviation(pmf, o.z, scale);
    c.csv << "m,pmf,gaussian,L,variant,w,z,truncated_mass\n";
    for (std::int64_t m = pmf.min_support(); m <= pmf.max_support(); ++m) {
        c.csv << m << ',' << num(pmf.at(m)) << ',' << num(gaussian_local(m, d.L)) << ',' << num(d.L) << ','
              << o.variant << ',' << num(o.w) << ',' << num(o.z) << ',' << num(pmf.truncated_mass) << '\n';
    }
    c.summary = {{"deviation", d.deviation}, {"peak", d.peak}, {"relative_deviation", d.deviation / d.peak},
                 {"argmax", d.argmax}, {"L", d.L}, {"variance", pmf.variance()},
                 {"truncated_mass", pmf.truncated_mass}};
}

void cmd_smooth(const Options& o, Context& c) {
    require_budget("--xmax", o.xmax, kMaxX);
    c.params["xmax"] = o.xmax;
    c.params["u"] = o.u;
    c.params["v"] = o.v;
    const auto rows = smooth_pair_table(o.xmax, o.u, o.v);
    c.csv << "x,u,v,pair_density,rho_u,rho_v,product\n";
    json list = json::array();
    for (const auto& r : rows) {
        c.csv << r.x << ',' << num(r.u) << ',' << num(r.v) << ',' << num(r.pair_density) << ','
              << num(r.rho_u) << ',' << num(r.rho_v) << ',' << num(r.rho_u * r.rho_v) << '\n';
        list.push_back({{"u", r.u}, {"v", r.v}, {"pair_density", r.pair_density},
                        {"density_u", r.density_u}, {"density_v", r.density_v},
                        {"independence_defect", std::abs(r.pair_density - r.density_u * r.density_v)}});
    }
    c.summary["pairs"] = std::move(list);
}

MultiplicativeFn parse_g(const std::string& s) {
    const auto g = parse_multiplicative_fn(s);
    if (!g) throw std::invalid_argument("unknown multiplicative function '" + s + "'");
    return *g;
}

void cmd_corr(const Options& o, Context& c) {
    require_budget("--n", 2 * o.n + o.W, kMaxX);
    const auto g1 = parse_g(o.g1);
    const auto g2 = parse_g(o.g2);
    CorrelationQuery q;
    q.N = o.n;
    q.W = o.W;
    q.b = o.b;
    q.h1 = o.h1;
    q.h2 = o.h2;
    q.delta_N = o.delta;
    c.params = {{"g1", o.g1}, {"g2", o.g2}, {"N", o.n}, {"W", o.W}, {"b", o.b},
                {"h1", o.h1}, {"h2", o.h2}, {"delta", o.delta}, {"qmax", o.qmax}};
    const cplx v = two_point_correlation(g1, g2, q);
    c.csv << "g1,g2,N,W,b,h1,h2,delta,re,im,abs\n";
    c.csv << g1.name() << ',' << g2.name() << ',' << o.n << ',' << o.W << ',' << o.b << ',' << o.h1 << ','
          << o.h2 << ',' << num(o.delta) << ',' << num(v.real()) << ',' << num(v.imag()) << ','
          << num(std::abs(v)) << '\n';
    c.summary = {{"correlation_abs", std::abs(v)},
                 {"equidist_defect", equidist_defect(g1, o.n, o.delta, o.qmax)}};
}

void cmd_barriers(const Options& o, Context& c) {
    require_budget("--xmax", o.xmax, kMaxX);
    const std::string& d = o.definition;
    if (d != "all" && d != "omega" && d != "tau" && d != "linear") {
        throw std::invalid_argument("unknown --definition '" + d + "' (expected all, omega, tau or linear)");
    }
    c.params["xmax"] = o.xmax;
    c.params["definition"] = d;
    c.csv << "definition,x,n\n";
    auto emit = [&](const BarrierReport& r) {
        for (const auto n : r.barriers) c.csv << to_string(r.definition) << ',' << r.x << ',' << n << '\n';
        c.summary[std::string(to_string(r.definition))] = {{"count", r.barriers.size()}};
    };
    if (d == "all" || d == "omega") emit(omega_barriers(o.xmax));
    if (d == "all" || d == "tau") emit(tau_k2_scan(o.xmax));
    if (d == "all" || d == "linear") {
        c.params["K"] = o.K;
        const auto p = linear_profile(o.xmax, o.K);
        c.csv << "LINEAR_PROFILE_K" << o.K << ',' << o.xmax << ',' << p.argmin_n << '\n';
        c.summary["linear_profile"] = {{"K", o.K}, {"best_C", p.best_C}, {"num", p.num}, {"den", p.den},
                                       {"argmin_n", p.argmin_n}};
    }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Numerical experiments on consecutive values of arithmetic functions", "erdoslab"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kToolVersion);

    auto common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "CSV output path, '-' for stdout");
        s->add_option("--json", o.json_path, "optional JSON summary path");
        s->add_option("--threads", o.threads, "worker threads (ERDOSLAB_THREADS overrides)");
    };
    auto* constants = app.add_subcommand("constants", "prime-sum constants, c_tau products and series");
    constants->add_option("--pmax", o.pmax, "truncation point of the prime sums");
    common(constants);

    auto* scan = app.add_subcommand("scan", "equal-neighbour densities on the x-grid");
    scan->add_option("--xmax", o.xmax)->check(CLI::PositiveNumber);
    scan->add_option("--f", o.f, "omega, bigomega, tau or all");
    common(scan);

    auto* hist = app.add_subcommand("hist", "difference histogram f(n+1) - f(n)");
    hist->add_option("--xmax", o.xmax)->check(CLI::PositiveNumber);
    hist->add_option("--f", o.f, "omega, bigomega, tau or all");
    common(hist);

    auto* ctau = app.add_subcommand("ctau", "c_tau: empirical scan, lower bounds, Monte Carlo");
    ctau->add_option("--xmax", o.xmax)->check(CLI::PositiveNumber);
    ctau->add_option("--pmax", o.pmax, "largest simulated prime (default 1e5)");
    ctau->add_option("--samples", o.samples, "Monte Carlo samples, 0 to skip");
    ctau->add_option("--seed", o.seed);
    common(ctau);

    auto* llt = app.add_subcommand("llt", "exact sum_{w<p<=z} b_p against the Gaussian local limit");
    llt->add_option("--w", o.w);
    llt->add_option("--z", o.z);
    llt->add_option("--variant", o.variant, "bigomega or omega");
    llt->add_option("--scale", o.scale, "variance (L = Var/2) or loglog (L = log log z)");
    common(llt);

    auto* smooth = app.add_subcommand("smooth", "consecutive smooth pairs against rho(u) rho(v)");
    smooth->add_option("--xmax", o.xmax)->check(CLI::PositiveNumber);
    smooth->add_option("--u", o.u, "comma-separated u values")->delimiter(',');
    smooth->add_option("--v", o.v, "comma-separated v values")->delimiter(',');
    common(smooth);

    auto* corr = app.add_subcommand("corr", "two-point correlation of multiplicative functions");
    corr->add_option("--g1", o.g1);
    corr->add_option("--g2", o.g2);
    corr->add_option("--n", o.n);
    corr->add_option("--W", o.W);
    corr->add_option("--b", o.b);
    corr->add_option("--h1", o.h1);
    corr->add_option("--h2", o.h2);
    corr->add_option("--delta", o.delta);
    corr->add_option("--qmax", o.qmax, "modulus bound for the equidistribution defect");
    common(corr);

    auto* barriers = app.add_subcommand("barriers", "omega barriers, tau(n-k) <= k+2, linear profile");
    barriers->add_option("--xmax", o.xmax, "default 1e5")->check(CLI::PositiveNumber);
    barriers->add_option("--K", o.K, "window of the linear profile");
    barriers->add_option("--definition", o.definition, "all, omega, tau or linear");
    common(barriers);

    if (!argv.empty() && !argv[0].empty() && argv[0][0] != '-' && app.get_subcommand_no_throw(argv[0]) == nullptr) {
        err << "error: unknown subcommand '" << argv[0] << "'\n\n" << app.help();
        return kInvalidArgs;
    }
    std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 consumes from the back
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInvalidArgs;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "ctau" && sub->count("--pmax") == 0) o.pmax = 100'000;
    if (name == "barriers" && sub->count("--xmax") == 0) o.xmax = 100'000;

    const bool to_stdout = o.out.empty() || o.out == "-";
    std::ofstream file;
    if (!to_stdout) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.out << " for writing\n";
            return kInvalidArgs;
        }
    }
    std::ostringstream buffer;
    Context ctx{buffer};
    try {
        if (name == "constants") cmd_constants(o, ctx);
        else if (name == "scan") cmd_scan(o, ctx);
        else if (name == "hist") cmd_hist(o, ctx);
        else if (name == "ctau") cmd_ctau(o, ctx, resolve_threads(o.threads));
        else if (name == "llt") cmd_llt(o, ctx);
        else if (name == "smooth") cmd_smooth(o, ctx);
        else if (name == "corr") cmd_corr(o, ctx);
        else cmd_barriers(o, ctx);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArgs;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArgs;
    }

    (to_stdout ? out : file) << buffer.str();
    json artifacts = json::array();
    if (!to_stdout) artifacts.push_back(o.out);
    if (!o.json_path.empty()) {
        std::ofstream js(o.json_path, std::ios::binary);
        if (!js) {
            err << "error: cannot open " << o.json_path << " for writing\n";
            return kInvalidArgs;
        }
        js << ctx.summary.dump(2) << '\n';
        artifacts.push_back(o.json_path);
    }
    json manifest = {{"subcommand", name},
                     {"parameters", ctx.params},
                     {"seed", ctx.seed ? json(*ctx.seed) : json(nullptr)},
                     {"artifact_paths", artifacts},
                     {"tool_version", kToolVersion}};
    (to_stdout ? err : out) << manifest.dump() << '\n';
    return kOk;
}

}  // namespace erdoslab::cli
