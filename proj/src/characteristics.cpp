#include "elrk/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace elrk {

namespace {

double rh(double ul, double ur, double x, double t, const FluxFn& f, const FluxFn& df, double thr)
{
    const double du = ur - ul;
    if (std::abs(du) >= thr) return (f(ur, x, t) - f(ul, x, t)) / du;
    return df(0.5 * (ul + ur), x, t);
}

std::string describe(const PartitionReport& r)
{
    std::ostringstream os;
    os << "traceback partition degenerate: min width " << r.min_width << ", " << r.offending_faces.size()
       << " offending faces, admissible dt " << r.admissible_dt;
    return os.str();
}

}  // namespace

Eigen::VectorXd rh_speeds(const CellField& field, const FluxFn& f, const FluxFn& df, BoundaryCondition bc,
                          double threshold)
{
    const Grid1D& g = field.grid;
    const int n = g.n_cells;
    const auto& u = field.values;
    const double t = field.time;
    Eigen::VectorXd nu(n + 1);
    for (int j = 1; j < n; ++j) nu[j] = rh(u[j - 1], u[j], g.node(j), t, f, df, threshold);
    if (bc == BoundaryCondition::periodic) {
        nu[0] = nu[n] = rh(u[n - 1], u[0], g.a, t, f, df, threshold);
    } else {
        nu[0] = rh(0.0, u[0], g.a, t, f, df, threshold);
        nu[n] = rh(u[n - 1], 0.0, g.b, t, f, df, threshold);
    }
    return nu;
}

Eigen::VectorXd traced_nodes(const Grid1D& g, const Eigen::VectorXd& speeds, double lag)
{
    Eigen::VectorXd x(g.n_cells + 1);
    for (int j = 0; j <= g.n_cells; ++j) x[j] = g.node(j) - speeds[j] * lag;
    return x;
}

Eigen::VectorXd TracebackGrid::nodes_at(double tau) const
{
    const double lo = std::min(0.0, dt_full), hi = std::max(0.0, dt_full);
    if (tau < lo || tau > hi) throw std::out_of_range("nodes_at: tau outside the step");
    return traced_nodes(base, speeds, dt_full - tau);
}

PartitionReport validate_partition(const TracebackGrid& tb)
{
    const Eigen::VectorXd x = tb.nodes_at(0.0);
    const int n = tb.base.n_cells;
    const double tol = 1e-12 * tb.base.dx;
    PartitionReport r;
    r.min_width = std::numeric_limits<double>::infinity();
    r.admissible_dt = std::numeric_limits<double>::infinity();
    const double sgn = tb.dt_full < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
        const double w = x[j + 1] - x[j];
        r.min_width = std::min(r.min_width, w);
        if (!(w > tol)) {
            r.ok = false;
            if (r.offending_faces.empty() || r.offending_faces.back() != j) r.offending_faces.push_back(j);
            r.offending_faces.push_back(j + 1);
        }
        // cells shrink at rate (nu_{j+1} - nu_j) per unit of elapsed step time
        const double closing = sgn * (tb.speeds[j + 1] - tb.speeds[j]);
        if (closing > 0) r.admissible_dt = std::min(r.admissible_dt, (tb.base.node(j + 1) - tb.base.node(j)) / closing);
    }
    return r;
}

TracebackGrid substage_grid(const TracebackGrid& tb, double c_mu)
{
    if (c_mu < 0.0 || c_mu > 1.0) throw std::out_of_range("substage_grid: c outside [0, 1]");
    return {tb.base, tb.speeds, c_mu * tb.dt_full};
}

PartitionError::PartitionError(PartitionReport r) : std::runtime_error(describe(r)), report(std::move(r)) {}

}  // namespace elrk
