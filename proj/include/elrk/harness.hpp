#pragma once

#include "elrk/diffusion_imex.hpp"
#include "elrk/multidim.hpp"
#include "elrk/problems.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace elrk {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    std::string problem = "transport-1d-const";
    int n_cells = 100;               // per dimension
    double cfl = 0.95;
    double final_time = kNaN;        // NaN: problem default
    std::string time_scheme;         // empty: rk4 for convection, IMEX(2,3,3) with diffusion
    std::string splitting;           // empty: none in 1D, strang in 2D
    int gauss_order = 3;
    StepOptions step{};
    bool l2_displayed = false;       // Delta x * sqrt(sum e^2) instead of sqrt(Delta x * sum e^2)
    std::string out_dir;             // empty: no files
    std::vector<double> snapshot_times;
    int reference_n = 0;             // > 0: compare against a finer run instead of the exact solution
    double reference_cfl = 0.1;
};

// fills defaults and rejects incompatible combinations
RunConfig resolve(const RunConfig& c, const ProblemSpec& p);

struct Norms {
    double L1 = 0.0;
    double L2 = 0.0;
    double Linf = 0.0;
};

Norms error_norms(const CellField& numeric, const Eigen::VectorXd& exact_avgs, bool l2_displayed = false);
Norms error_norms(const Field2D& numeric, const Eigen::MatrixXd& exact_avgs, bool l2_displayed = false);

struct MacroSample {
    double t;
    MacroParams m;
    double mass;
    double l1_to_target;  // L1 distance of the cell averages to the target Maxwellian
};

struct Snapshot {
    double t;
    Eigen::MatrixXd values;  // n_x x n_y (n_y = 1 in 1D)
};

struct RunResult {
    int dimension = 1;
    Grid1D grid_x, grid_y;
    Eigen::MatrixXd values;  // final state, n_x x n_y
    double time = 0.0;
    double dt = 0.0;         // nominal CFL step
    long steps = 0;
    long halvings = 0;
    double wall_seconds = 0.0;
    double min_seen = 0.0, max_seen = 0.0;  // over every step end, initial state included
    std::vector<Snapshot> snapshots;
    std::vector<MacroSample> macro;
};

RunResult run_single(const RunConfig& config);

// exact cell averages at the result's final time, or throws when unavailable
Eigen::MatrixXd exact_averages(const ProblemSpec& p, const RunResult& r);

// block average of a finer run onto n cells per dimension (fine count must be a multiple)
Eigen::MatrixXd restrict_to(const RunResult& fine, int n);

Norms run_errors(const RunConfig& config, const RunResult& r, const Eigen::MatrixXd& truth);

struct ConvergenceRow {
    int n = 0;
    Norms err;
    Norms order{kNaN, kNaN, kNaN};
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::string problem, scheme, splitting;
    double cfl = 0.0, final_time = 0.0, wall_seconds = 0.0;
    long halvings = 0;
};

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& ns);
void fill_orders(ConvergenceReport& r);

struct SweepRow {
    double cfl, dt, L1;
};
std::vector<SweepRow> cfl_sweep(const RunConfig& base, const std::vector<double>& cfls);

struct GoldenResult {
    bool pass = true;
    std::vector<std::string> diffs;
};

// Compares every golden entry present (NaN = absent) against the report row with the same N.
GoldenResult golden_compare(const ConvergenceReport& report, const ConvergenceReport& golden,
                            double error_factor = 3.0, double order_tol = 0.35);

void write_report_csv(std::ostream& os, const ConvergenceReport& r);
ConvergenceReport read_report_csv(std::istream& is);
std::string report_json(const ConvergenceReport& r, const RunConfig& c);
void write_snapshot_csv(std::ostream& os, const RunResult& r, const Eigen::MatrixXd& values);
void write_macro_csv(std::ostream& os, const RunResult& r);

// flat key=value lines, '#' comments
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv);

}  // namespace elrk
