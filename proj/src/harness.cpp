#include "elrk/harness.hpp"

#include "elrk/log.hpp"
#include "elrk/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace elrk {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad numeric value for " + key + ": " + v);
}

int to_int(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw ConfigError("bad integer value for " + key + ": " + v);
    return static_cast<int>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');)
        if (!trim(item).empty()) out.push_back(to_double(key, trim(item)));
    return out;
}

std::string fmt(double v)
{
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

}  // namespace

RunConfig resolve(const RunConfig& in, const ProblemSpec& p)
{
    RunConfig c = in;
    if (c.n_cells < 5) throw ConfigError("n must be at least 5");
    if (!(c.cfl > 0)) throw ConfigError("cfl must be positive");
    if (std::isnan(c.final_time)) c.final_time = p.default_tfinal;
    if (!(c.final_time > 0)) throw ConfigError("final time must be positive");
    if (c.gauss_order < 1 || c.gauss_order > 10) throw ConfigError("gauss order must be in 1..10");
    if (c.time_scheme.empty()) c.time_scheme = p.epsilon > 0 ? "IMEX(2,3,3)" : "rk4";
    const bool imex = is_imex_name(c.time_scheme);
    if (!imex) {
        try {
            butcher_table(c.time_scheme);
        } catch (const std::invalid_argument&) {
            throw ConfigError("unknown scheme: " + c.time_scheme);
        }
        if (p.epsilon > 0) throw ConfigError("problem " + p.name + " has diffusion; an IMEX scheme is required");
    }
    if (c.splitting.empty()) c.splitting = p.dimension == 2 ? "strang" : "none";
    if (p.dimension == 1 && c.splitting != "none") throw ConfigError("splitting applies to 2D problems only");
    if (p.dimension == 2 && c.splitting != "strang" && c.splitting != "fourth-order")
        throw ConfigError("2D problems need --split strang or fourth-order");
    if (c.splitting == "fourth-order" && p.epsilon > 0)
        throw ConfigError("fourth-order splitting is rejected for diffusive problems");
    if (c.reference_n > 0 && c.reference_n % c.n_cells != 0)
        throw ConfigError("reference mesh must be a multiple of n");
    return c;
}

Norms error_norms(const CellField& f, const Eigen::VectorXd& ex, bool l2_displayed)
{
    if (f.values.size() != ex.size()) throw std::invalid_argument("error_norms: shape mismatch");
    const Eigen::ArrayXd e = (f.values - ex).array().abs();
    const double dx = f.grid.dx;
    const double s2 = e.square().sum();
    return {dx * e.sum(), l2_displayed ? dx * std::sqrt(s2) : std::sqrt(dx * s2), e.size() ? e.maxCoeff() : 0.0};
}

Norms error_norms(const Field2D& f, const Eigen::MatrixXd& ex, bool l2_displayed)
{
    if (f.values.rows() != ex.rows() || f.values.cols() != ex.cols())
        throw std::invalid_argument("error_norms: shape mismatch");
    const Eigen::ArrayXXd e = (f.values - ex).array().abs();
    const double da = f.grid_x.dx * f.grid_y.dx;
    const double s2 = e.square().sum();
    return {da * e.sum(), l2_displayed ? da * std::sqrt(s2) : std::sqrt(da * s2), e.size() ? e.maxCoeff() : 0.0};
}

namespace {

struct Stepper1D {
    RawStep raw;
};

RawStep make_raw(const RunConfig& c, const LineProblem& lp, DiffusionSolverCache* cache)
{
    if (is_imex_name(c.time_scheme)) {
        const ImexTableau tab = imex_tableau(c.time_scheme);
        return [tab, lp, opt = c.step, cache](const CellField& f, double dt) {
            return el_imex_step(f, tab, dt, lp, opt, cache);
        };
    }
    const ButcherTable tab = butcher_table(c.time_scheme);
    return [tab, lp, opt = c.step](const CellField& f, double dt) { return el_rk_step(f, tab, dt, lp, opt); };
}

}  // namespace

RunResult run_single(const RunConfig& in)
{
    const ProblemSpec p = registry_get(in.problem);
    const RunConfig c = resolve(in, p);
    const auto t_start = std::chrono::steady_clock::now();

    RunResult r;
    r.dimension = p.dimension;
    r.grid_x = make_grid(p.ax, p.bx, c.n_cells);
    r.grid_y = p.dimension == 2 ? make_grid(p.ay, p.by, c.n_cells) : make_grid(0.0, 1.0, 1);
    const Grid1D gx = r.grid_x, gy = r.grid_y;

    DiffusionSolverCache cache;
    StepStats stats;

    CellField f1;
    Field2D f2;
    std::function<void(double)> advance;
    std::function<Eigen::MatrixXd()> state;
    if (p.dimension == 1) {
        f1 = {gx, cell_averages_1d(gx, [&](double x) { return p.initial(x, 0.0); }), 0.0};
        r.dt = cfl_dt_1d(c.cfl, gx.dx, p.max_speed_x);
        const LineProblem lp = line_problem(p, Direction::x, 0.0, 1.0);
        const RawStep raw = make_raw(c, lp, &cache);
        advance = [&, raw](double dt) { f1 = step_with_fallback(f1, dt, raw, c.step.max_halvings, &stats); };
        state = [&] { return Eigen::MatrixXd(f1.values); };
    } else {
        f2 = {gx, gy, cell_averages_2d(gx, gy, p.initial), 0.0};
        r.dt = cfl_dt_2d(c.cfl, gx.dx, gy.dx, p.max_speed_x, p.max_speed_y);
        const LineStepper ls = [&](const CellField& f, double dt, const LineProblem& lp) {
            return step_with_fallback(f, dt, make_raw(c, lp, &cache), c.step.max_halvings, &stats);
        };
        const SplitOptions so{c.gauss_order, c.step.weno};
        if (c.splitting == "strang")
            advance = [&, ls, so](double dt) { f2 = strang_step(f2, dt, p, ls, so); };
        else
            advance = [&, ls, so](double dt) { f2 = fourth_order_split_step(f2, dt, p, ls, so); };
        state = [&] { return f2.values; };
    }

    Eigen::MatrixXd target;
    if (p.kinetic) {
        const MaxwellianParams tg = p.target;
        if (p.dimension == 1)
            target = cell_averages_1d(gx, [&](double v) { return maxwellian(tg, v, 0.0, 1); });
        else
            target = cell_averages_2d(gx, gy, [&](double vx, double vy) { return maxwellian(tg, vx, vy, 2); });
    }
    const double cell_area = gx.dx * (p.dimension == 2 ? gy.dx : 1.0);
    auto record_macro = [&](double t) {
        if (!p.kinetic) return;
        const Eigen::MatrixXd u = state();
        MacroSample s{t, {}, cell_area * u.sum(), cell_area * (u - target).cwiseAbs().sum()};
        s.m = p.dimension == 1 ? macro_parameters(f1, p.target.R) : macro_parameters(f2, p.target.R);
        r.macro.push_back(s);
    };

    std::vector<double> snaps = c.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    Eigen::MatrixXd prev = state();
    double t_prev = 0.0;
    auto take_snaps = [&](double t) {
        while (next_snap < snaps.size() && snaps[next_snap] <= t + 1e-12) {
            const double want = snaps[next_snap++];
            const bool use_prev = want - t_prev < t - want;
            r.snapshots.push_back({use_prev ? t_prev : t, use_prev ? prev : state()});
        }
    };
    take_snaps(0.0);
    record_macro(0.0);
    r.min_seen = prev.minCoeff();
    r.max_seen = prev.maxCoeff();

    const double T = c.final_time;
    double t = 0.0;
    while (t < T) {
        double dt = r.dt;
        bool last = false;
        // clip, and absorb a remainder below 1e-10 of a step into this one
        if (t + dt >= T - 1e-10 * r.dt) {
            dt = T - t;
            last = true;
        }
        prev = state();
        t_prev = t;
        advance(dt);
        t = last ? T : t + dt;
        ++r.steps;
        if (p.dimension == 1) f1.time = t; else f2.time = t;
        record_macro(t);
        take_snaps(t);
        const Eigen::MatrixXd now = state();
        r.min_seen = std::min(r.min_seen, now.minCoeff());
        r.max_seen = std::max(r.max_seen, now.maxCoeff());
    }
    r.values = state();
    r.time = t;
    r.halvings = stats.halvings.load();
    if (r.halvings) log_warn("%s: %ld time-step halvings (max depth %d)", p.name.c_str(), r.halvings,
                             stats.max_depth.load());
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return r;
}

Eigen::MatrixXd exact_averages(const ProblemSpec& p, const RunResult& r)
{
    if (!p.exact) throw ConfigError("problem " + p.name + " has no exact solution; supply a reference mesh");
    if (!std::isnan(p.exact_time) && std::abs(r.time - p.exact_time) > 1e-12)
        throw ConfigError("problem " + p.name + " has an exact solution only at t = " + std::to_string(p.exact_time));
    const double t = r.time;
    if (p.dimension == 1) return cell_averages_1d(r.grid_x, [&](double x) { return p.exact(x, 0.0, t); });
    return cell_averages_2d(r.grid_x, r.grid_y, [&](double x, double y) { return p.exact(x, y, t); });
}

Eigen::MatrixXd restrict_to(const RunResult& fine, int n)
{
    const long fx = fine.values.rows(), fy = fine.values.cols();
    const long rx = fx / n, ry = fine.dimension == 2 ? fy / n : 1;
    const long ny = fine.dimension == 2 ? n : 1;
    Eigen::MatrixXd out(n, ny);
    for (long j = 0; j < ny; ++j)
        for (long i = 0; i < n; ++i) out(i, j) = fine.values.block(i * rx, j * ry, rx, ry).mean();
    return out;
}

Norms run_errors(const RunConfig& c, const RunResult& r, const Eigen::MatrixXd& truth)
{
    if (r.dimension == 1) return error_norms(CellField{r.grid_x, r.values.col(0), r.time}, truth.col(0), c.l2_displayed);
    return error_norms(Field2D{r.grid_x, r.grid_y, r.values, r.time}, truth, c.l2_displayed);
}

void fill_orders(ConvergenceReport& rep)
{
    for (std::size_t k = 1; k < rep.rows.size(); ++k) {
        auto& a = rep.rows[k - 1];
        auto& b = rep.rows[k];
        const double l = std::log(double(b.n) / a.n);
        auto ord = [l](double ep, double ec) { return std::log(ep / ec) / l; };
        b.order = {ord(a.err.L1, b.err.L1), ord(a.err.L2, b.err.L2), ord(a.err.Linf, b.err.Linf)};
    }
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& ns)
{
    const ProblemSpec p = registry_get(base.problem);
    const RunConfig rc = resolve(base, p);
    for (int n : ns) {
        RunConfig c = base;
        c.n_cells = n;
        resolve(c, p);
    }
    const auto t0 = std::chrono::steady_clock::now();

    RunResult reference;
    if (base.reference_n > 0) {
        RunConfig c = base;
        c.n_cells = base.reference_n;
        c.cfl = base.reference_cfl;
        c.reference_n = 0;
        reference = run_single(c);
    }

    ConvergenceReport rep;
    rep.problem = p.name;
    rep.scheme = rc.time_scheme;
    rep.splitting = rc.splitting;
    rep.cfl = rc.cfl;
    rep.final_time = rc.final_time;
    rep.rows.resize(ns.size());
    std::vector<long> halv(ns.size(), 0);
    parallel_for(static_cast<long>(ns.size()), [&](long k) {
        RunConfig c = base;
        c.n_cells = ns[k];
        c.reference_n = 0;
        const RunResult r = run_single(c);
        const Eigen::MatrixXd truth = base.reference_n > 0 ? restrict_to(reference, ns[k]) : exact_averages(p, r);
        rep.rows[k].n = ns[k];
        rep.rows[k].err = run_errors(c, r, truth);
        halv[k] = r.halvings;
    });
    for (long h : halv) rep.halvings += h;
    fill_orders(rep);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<SweepRow> cfl_sweep(const RunConfig& base, const std::vector<double>& cfls)
{
    const ProblemSpec p = registry_get(base.problem);
    std::vector<SweepRow> out(cfls.size());
    parallel_for(static_cast<long>(cfls.size()), [&](long k) {
        RunConfig c = base;
        c.cfl = cfls[k];
        const RunResult r = run_single(c);
        out[k] = {cfls[k], r.dt, run_errors(c, r, exact_averages(p, r)).L1};
    });
    return out;
}

GoldenResult golden_compare(const ConvergenceReport& rep, const ConvergenceReport& gold, double factor, double tol)
{
    GoldenResult g;
    auto fail = [&](const std::string& s) {
        g.pass = false;
        g.diffs.push_back(s);
    };
    for (const auto& gr : gold.rows) {
        auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const auto& r) { return r.n == gr.n; });
        if (it == rep.rows.end()) {
            fail("N=" + std::to_string(gr.n) + ": missing from report");
            continue;
        }
        const struct {
            const char* name;
            double got, want, og, ow;
        } cells[3] = {{"L1", it->err.L1, gr.err.L1, it->order.L1, gr.order.L1},
                      {"L2", it->err.L2, gr.err.L2, it->order.L2, gr.order.L2},
                      {"Linf", it->err.Linf, gr.err.Linf, it->order.Linf, gr.order.Linf}};
        for (const auto& c : cells) {
            std::ostringstream os;
            if (!std::isnan(c.want) && !(c.got <= c.want * factor && c.got >= c.want / factor)) {
                os << "N=" << gr.n << " " << c.name << ": " << c.got << " vs golden " << c.want << " (x" << factor
                   << ")";
                fail(os.str());
            }
            if (!std::isnan(c.ow) && !(std::abs(c.og - c.ow) <= tol)) {
                std::ostringstream o2;
                o2 << "N=" << gr.n << " " << c.name << " order: " << c.og << " vs golden " << c.ow << " (+-" << tol
                   << ")";
                fail(o2.str());
            }
        }
    }
    return g;
}

void write_report_csv(std::ostream& os, const ConvergenceReport& r)
{
    os << "N,L1,L1_order,L2,L2_order,Linf,Linf_order\n";
    for (const auto& row : r.rows)
        os << row.n << ',' << fmt(row.err.L1) << ',' << fmt(row.order.L1) << ',' << fmt(row.err.L2) << ','
           << fmt(row.order.L2) << ',' << fmt(row.err.Linf) << ',' << fmt(row.order.Linf) << '\n';
}

ConvergenceReport read_report_csv(std::istream& is)
{
    ConvergenceReport r;
    std::string line;
    if (!std::getline(is, line) || trim(line).rfind("N,", 0) != 0) throw ConfigError("golden CSV: missing header");
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string item; std::getline(ss, item, ',');) f.push_back(trim(item));
        while (f.size() < 7) f.emplace_back();
        auto num = [&](int i) { return f[i].empty() || f[i] == "-" ? kNaN : to_double("golden", f[i]); };
        ConvergenceRow row;
        row.n = to_int("golden N", f[0]);
        row.err = {num(1), num(3), num(5)};
        row.order = {num(2), num(4), num(6)};
        r.rows.push_back(row);
    }
    return r;
}

std::string report_json(const ConvergenceReport& r, const RunConfig& c)
{
    using nlohmann::json;
    auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"N", row.n},
                        {"L1", num(row.err.L1)},
                        {"L1_order", num(row.order.L1)},
                        {"L2", num(row.err.L2)},
                        {"L2_order", num(row.order.L2)},
                        {"Linf", num(row.err.Linf)},
                        {"Linf_order", num(row.order.Linf)}});
    json j = {{"problem", r.problem},
              {"scheme", r.scheme},
              {"splitting", r.splitting},
              {"cfl", r.cfl},
              {"final_time", r.final_time},
              {"wall_seconds", r.wall_seconds},
              {"dt_halvings", r.halvings},
              {"rows", rows},
              {"config",
               {{"problem", c.problem},
                {"cfl", c.cfl},
                {"gauss_order", c.gauss_order},
                {"l2", c.l2_displayed ? "displayed" : "sqrt"},
                {"dissipation", c.step.dissipation == Dissipation::global ? "global" : "local"},
                {"weno",
                 {{"gamma_hi", c.step.weno.gamma_hi},
                  {"gamma_lo", c.step.weno.gamma_lo},
                  {"epsilon", c.step.weno.epsilon_w},
                  {"p", c.step.weno.power_p},
                  {"linear", c.step.weno.linear_weights}}},
                {"reference_n", c.reference_n}}}};
    return j.dump(2);
}

void write_snapshot_csv(std::ostream& os, const RunResult& r, const Eigen::MatrixXd& v)
{
    if (r.dimension == 1) {
        os << "x,value\n";
        for (int i = 0; i < r.grid_x.n_cells; ++i) os << fmt(r.grid_x.center(i)) << ',' << fmt(v(i, 0)) << '\n';
        return;
    }
    os << "x,y,value\n";
    for (int j = 0; j < r.grid_y.n_cells; ++j)
        for (int i = 0; i < r.grid_x.n_cells; ++i)
            os << fmt(r.grid_x.center(i)) << ',' << fmt(r.grid_y.center(j)) << ',' << fmt(v(i, j)) << '\n';
}

void write_macro_csv(std::ostream& os, const RunResult& r)
{
    os << "t,n,vx,vy,T,mass,l1_to_target\n";
    for (const auto& s : r.macro)
        os << fmt(s.t) << ',' << fmt(s.m.n) << ',' << fmt(s.m.vx) << ',' << fmt(s.m.vy) << ',' << fmt(s.m.T) << ','
           << fmt(s.mass) << ',' << fmt(s.l1_to_target) << '\n';
}

std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(no) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv)
{
    for (const auto& [k, v] : kv) {
        if (k == "problem") c.problem = v;
        else if (k == "n") {
            const auto ns = to_list(k, v);
            for (double d : ns)
                if (d != std::floor(d)) throw ConfigError("bad integer value for n: " + v);
            c.n_cells = static_cast<int>(ns.at(0));
        }
        else if (k == "cfl") c.cfl = to_double(k, v);
        else if (k == "tfinal") c.final_time = to_double(k, v);
        else if (k == "scheme") c.time_scheme = v;
        else if (k == "split") c.splitting = v;
        else if (k == "gauss-order") c.gauss_order = to_int(k, v);
        else if (k == "out") c.out_dir = v;
        else if (k == "snapshots") c.snapshot_times = to_list(k, v);
        else if (k == "reference-n") c.reference_n = to_int(k, v);
        else if (k == "reference-cfl") c.reference_cfl = to_double(k, v);
        else if (k == "l2") {
            if (v != "sqrt" && v != "displayed") throw ConfigError("l2 must be sqrt or displayed");
            c.l2_displayed = v == "displayed";
        } else if (k == "dissipation") {
            if (v != "local" && v != "global") throw ConfigError("dissipation must be local or global");
            c.step.dissipation = v == "global" ? Dissipation::global : Dissipation::local;
        } else if (k == "rh-threshold") c.step.rh_threshold = to_double(k, v);
        else if (k == "max-halvings") c.step.max_halvings = to_int(k, v);
        else if (k == "weno.gamma_hi") c.step.weno.gamma_hi = to_double(k, v);
        else if (k == "weno.gamma_lo") c.step.weno.gamma_lo = to_double(k, v);
        else if (k == "weno.epsilon") c.step.weno.epsilon_w = to_double(k, v);
        else if (k == "weno.p") c.step.weno.power_p = to_double(k, v);
        else if (k == "weno.linear") c.step.weno.linear_weights = v == "1" || v == "true";
        else if (k == "cfls" || k == "sweep" || k == "golden" || k == "error-factor" || k == "order-tol") continue;
        else throw ConfigError("unknown config key: " + k);
    }
}

}  // namespace elrk
