#include "elrk/harness.hpp"
#include "elrk/log.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace elrk;

namespace {

struct Flags {
    std::string config_file, problem, scheme, split, out, l2, dissipation, golden, report, sweep;
    std::vector<int> ns;
    std::vector<double> cfls, snapshots;
    double cfl = kNaN, tfinal = kNaN, error_factor = 3.0, order_tol = 0.35;
    int gauss_order = 0, reference_n = 0;
    double reference_cfl = kNaN;
};

void add_common(CLI::App* app, Flags& f)
{
    app->add_option("--config", f.config_file, "flat key=value file; flags override its entries");
    app->add_option("--problem", f.problem, "registry problem name");
    app->add_option("--n", f.ns, "cells per dimension (a list for converge)")->delimiter(',');
    app->add_option("--cfl", f.cfl, "CFL number");
    app->add_option("--tfinal", f.tfinal, "final time");
    app->add_option("--scheme", f.scheme, "forward-euler | ssp-rk3 | rk4 | IMEX(s,sigma,p) name");
    app->add_option("--split", f.split, "strang | fourth-order (2D)");
    app->add_option("--gauss-order", f.gauss_order, "transverse Gauss points per cell (2D)");
    app->add_option("--out", f.out, "output directory");
    app->add_option("--l2", f.l2, "sqrt (default) or displayed");
    app->add_option("--dissipation", f.dissipation, "local (default) or global");
    app->add_option("--reference-n", f.reference_n, "compare against a finer run with this many cells");
    app->add_option("--reference-cfl", f.reference_cfl, "CFL of the reference run");
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) v.push_back(std::stod(item));
    return v;
}

// config file first, then explicit flags
RunConfig build_config(const Flags& f, std::map<std::string, std::string>& file_kv)
{
    RunConfig c;
    if (!f.config_file.empty()) {
        file_kv = read_config_file(f.config_file);
        apply_config(c, file_kv);
    }
    std::map<std::string, std::string> kv;
    if (!f.problem.empty()) kv["problem"] = f.problem;
    if (!f.scheme.empty()) kv["scheme"] = f.scheme;
    if (!f.split.empty()) kv["split"] = f.split;
    if (!f.out.empty()) kv["out"] = f.out;
    if (!f.l2.empty()) kv["l2"] = f.l2;
    if (!f.dissipation.empty()) kv["dissipation"] = f.dissipation;
    apply_config(c, kv);
    if (!f.ns.empty()) c.n_cells = f.ns.front();
    if (!std::isnan(f.cfl)) c.cfl = f.cfl;
    if (!std::isnan(f.tfinal)) c.final_time = f.tfinal;
    if (f.gauss_order > 0) c.gauss_order = f.gauss_order;
    if (f.reference_n > 0) c.reference_n = f.reference_n;
    if (!std::isnan(f.reference_cfl)) c.reference_cfl = f.reference_cfl;
    if (!f.snapshots.empty()) c.snapshot_times = f.snapshots;
    return c;
}

std::vector<int> ladder(const Flags& f, const std::map<std::string, std::string>& kv, const RunConfig& c)
{
    if (!f.ns.empty()) return f.ns;
    if (auto it = kv.find("n"); it != kv.end()) {
        std::vector<int> ns;
        for (double d : parse_list(it->second)) ns.push_back(static_cast<int>(d));
        return ns;
    }
    return {c.n_cells};
}

std::ofstream open_out(const std::string& dir, const std::string& name)
{
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name);
    if (!os) throw ConfigError("cannot write " + (fs::path(dir) / name).string());
    return os;
}

void emit_report(const ConvergenceReport& rep, const RunConfig& c)
{
    write_report_csv(std::cout, rep);
    if (c.out_dir.empty()) return;
    auto csv = open_out(c.out_dir, "report.csv");
    write_report_csv(csv, rep);
    auto js = open_out(c.out_dir, "report.json");
    js << report_json(rep, c) << '\n';
}

int cmd_run(const Flags& f)
{
    std::map<std::string, std::string> kv;
    const RunConfig c = build_config(f, kv);
    const ProblemSpec p = registry_get(c.problem);
    resolve(c, p);
    const RunResult r = run_single(c);
    std::printf("problem=%s N=%d t=%.15g dt=%.6e steps=%ld halvings=%ld wall=%.3fs\n", p.name.c_str(), c.n_cells,
                r.time, r.dt, r.steps, r.halvings, r.wall_seconds);
    std::printf("min=%.8e max=%.8e\n", r.values.minCoeff(), r.values.maxCoeff());
    try {
        const Norms e = run_errors(c, r, exact_averages(p, r));
        std::printf("L1=%.8e L2=%.8e Linf=%.8e\n", e.L1, e.L2, e.Linf);
    } catch (const ConfigError&) {
        // no exact solution at this time
    }
    if (!c.out_dir.empty()) {
        auto fin = open_out(c.out_dir, "final.csv");
        write_snapshot_csv(fin, r, r.values);
        for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
            auto os = open_out(c.out_dir, "snapshot_" + std::to_string(k) + ".csv");
            os << "# t=" << r.snapshots[k].t << '\n';
            write_snapshot_csv(os, r, r.snapshots[k].values);
        }
        if (!r.macro.empty()) {
            auto os = open_out(c.out_dir, "macro.csv");
            write_macro_csv(os, r);
        }
    }
    return 0;
}

int cmd_converge(const Flags& f)
{
    std::map<std::string, std::string> kv;
    const RunConfig c = build_config(f, kv);
    std::string sweep = f.sweep;
    if (sweep.empty() && kv.count("sweep")) sweep = kv.at("sweep");
    if (!sweep.empty()) {
        if (sweep != "cfl") throw ConfigError("only --sweep cfl is supported");
        std::vector<double> cfls = f.cfls;
        if (cfls.empty() && kv.count("cfls")) cfls = parse_list(kv.at("cfls"));
        if (cfls.empty()) throw ConfigError("--sweep cfl needs --cfls");
        resolve(c, registry_get(c.problem));
        const auto rows = cfl_sweep(c, cfls);
        std::ostringstream os;
        os << "CFL,dt,L1\n";
        for (const auto& r : rows) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.8e,%.8e,%.8e\n", r.cfl, r.dt, r.L1);
            os << buf;
        }
        std::cout << os.str();
        if (!c.out_dir.empty()) open_out(c.out_dir, "sweep.csv") << os.str();
        return 0;
    }
    const ConvergenceReport rep = convergence_study(c, ladder(f, kv, c));
    emit_report(rep, c);
    if (rep.halvings) std::fprintf(stderr, "time-step halvings: %ld\n", rep.halvings);
    return 0;
}

int cmd_golden(const Flags& f)
{
    std::map<std::string, std::string> kv;
    const RunConfig c = build_config(f, kv);
    std::string gpath = f.golden;
    if (gpath.empty() && kv.count("golden")) gpath = kv.at("golden");
    if (gpath.empty()) throw ConfigError("golden needs --golden <csv>");
    std::ifstream gin(gpath);
    if (!gin) throw ConfigError("cannot read " + gpath);
    const ConvergenceReport gold = read_report_csv(gin);
    double factor = f.error_factor, tol = f.order_tol;
    if (kv.count("error-factor") && f.error_factor == 3.0) factor = std::stod(kv.at("error-factor"));
    if (kv.count("order-tol") && f.order_tol == 0.35) tol = std::stod(kv.at("order-tol"));

    ConvergenceReport rep;
    if (!f.report.empty()) {
        std::ifstream rin(f.report);
        if (!rin) throw ConfigError("cannot read " + f.report);
        rep = read_report_csv(rin);
    } else {
        std::vector<int> ns;
        if (!f.ns.empty() || kv.count("n")) ns = ladder(f, kv, c);
        else
            for (const auto& r : gold.rows) ns.push_back(r.n);
        rep = convergence_study(c, ns);
        emit_report(rep, c);
    }
    const GoldenResult g = golden_compare(rep, gold, factor, tol);
    for (const auto& d : g.diffs) std::printf("DIFF %s\n", d.c_str());
    std::printf("%s\n", g.pass ? "PASS" : "FAIL");
    return g.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Eulerian-Lagrangian Runge-Kutta finite-volume solver"};
    app.require_subcommand(1);
    Flags f;

    auto* run = app.add_subcommand("run", "single run; writes final state, snapshots and macro series");
    add_common(run, f);
    run->add_option("--snapshots", f.snapshots, "snapshot times")->delimiter(',');

    auto* conv = app.add_subcommand("converge", "mesh refinement study or CFL sweep");
    add_common(conv, f);
    conv->add_option("--sweep", f.sweep, "cfl: sweep CFL at fixed N");
    conv->add_option("--cfls", f.cfls, "CFL values for the sweep")->delimiter(',');

    auto* gold = app.add_subcommand("golden", "compare a report against a golden table");
    add_common(gold, f);
    gold->add_option("--golden", f.golden, "golden CSV");
    gold->add_option("--report", f.report, "existing report CSV (default: fresh run)");
    gold->add_option("--error-factor", f.error_factor, "multiplicative error tolerance");
    gold->add_option("--order-tol", f.order_tol, "additive order tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(f);
        if (*conv) return cmd_converge(f);
        return cmd_golden(f);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
