#pragma once

#include "elrk/characteristics.hpp"
#include "elrk/quadrature.hpp"
#include "elrk/reconstruct.hpp"

#include <Eigen/Core>

#include <atomic>
#include <functional>
#include <string>

namespace elrk {

// 1D view of a problem as seen by a line stepper
struct LineProblem {
    FluxFn f;
    FluxFn df;
    double epsilon = 0.0;
    SourceFn source;  // empty when absent
    BoundaryCondition bc = BoundaryCondition::periodic;
};

enum class Dissipation { local, global };

struct StepOptions {
    WenoParams weno{};
    Dissipation dissipation = Dissipation::local;
    double rh_threshold = kRhThreshold;
    int max_halvings = 40;
};

struct ButcherTable {
    std::string name;
    int stages = 1;
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
};

// forward-euler, ssp-rk3, rk4
ButcherTable butcher_table(const std::string& name);

struct ModifiedFluxContext {
    FluxFn f;
    FluxFn df;
    double x = 0.0;
    double t = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
};

double lax_friedrichs_modified(double u_minus, double u_plus, const ModifiedFluxContext& ctx);

// 1.1 * max(|f'(u-) - nu|, |f'(u+) - nu|)
double local_alpha(double u_minus, double u_plus, const ModifiedFluxContext& ctx);

// -(F_{j+1/2} - F_{j-1/2}) on the given traceback nodes at absolute time t
Eigen::VectorXd modified_flux_rhs(const Eigen::VectorXd& nodes, const Eigen::VectorXd& avgs,
                                  const Eigen::VectorXd& speeds, const LineProblem& p, double t,
                                  const StepOptions& opt = {});

// t0 is the absolute time of tau = 0
Eigen::VectorXd semidiscrete_rhs(const TracebackGrid& tb, double tau, const Eigen::VectorXd& avgs,
                                 const LineProblem& p, double t0, const StepOptions& opt = {});

// explicit step with caller-supplied speeds; throws PartitionError on a degenerate grid
CellField el_rk_step_with_speeds(const CellField& field, const ButcherTable& table, double dt, const LineProblem& p,
                                 const Eigen::VectorXd& speeds, const StepOptions& opt = {});

CellField el_rk_step(const CellField& field, const ButcherTable& table, double dt, const LineProblem& p,
                     const StepOptions& opt = {});

struct StepStats {
    std::atomic<long> halvings{0};
    std::atomic<int> max_depth{0};
};

using RawStep = std::function<CellField(const CellField&, double)>;

// runs step(field, dt); on PartitionError splits dt into two halves, recursively
CellField step_with_fallback(const CellField& field, double dt, const RawStep& step, int max_halvings,
                             StepStats* stats = nullptr);

}  // namespace elrk
