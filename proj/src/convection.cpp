#include "elrk/convection.hpp"

#include "elrk/log.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elrk {

ButcherTable butcher_table(const std::string& name)
{
    ButcherTable t;
    t.name = name;
    if (name == "forward-euler") {
        t.stages = 1;
        t.a = Eigen::MatrixXd::Zero(1, 1);
        t.b = Eigen::VectorXd::Ones(1);
        t.c = Eigen::VectorXd::Zero(1);
    } else if (name == "ssp-rk3") {
        t.stages = 3;
        t.a = Eigen::MatrixXd::Zero(3, 3);
        t.a(1, 0) = 1.0;
        t.a(2, 0) = t.a(2, 1) = 0.25;
        t.b = Eigen::Vector3d(1.0 / 6, 1.0 / 6, 2.0 / 3);
        t.c = Eigen::Vector3d(0.0, 1.0, 0.5);
    } else if (name == "rk4") {
        t.stages = 4;
        t.a = Eigen::MatrixXd::Zero(4, 4);
        t.a(1, 0) = 0.5;
        t.a(2, 1) = 0.5;
        t.a(3, 2) = 1.0;
        t.b = Eigen::Vector4d(1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6);
        t.c = Eigen::Vector4d(0.0, 0.5, 0.5, 1.0);
    } else {
        throw std::invalid_argument("unknown explicit scheme: " + name);
    }
    return t;
}

double lax_friedrichs_modified(double um, double up, const ModifiedFluxContext& c)
{
    const double fm = c.f(um, c.x, c.t) - c.nu * um;
    const double fp = c.f(up, c.x, c.t) - c.nu * up;
    return 0.5 * (fm + fp) - 0.5 * c.alpha * (up - um);
}

double local_alpha(double um, double up, const ModifiedFluxContext& c)
{
    return 1.1 * std::max(std::abs(c.df(um, c.x, c.t) - c.nu), std::abs(c.df(up, c.x, c.t) - c.nu));
}

Eigen::VectorXd modified_flux_rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& nu,
                                  const LineProblem& p, double t, const StepOptions& opt)
{
    const long n = u.size();
    const FaceValues fv = face_values_nonuniform(u, x, p.bc, opt.weno);
    const bool periodic = p.bc == BoundaryCondition::periodic;
    const long nf = periodic ? n : n + 1;

    Eigen::VectorXd alpha(nf), flux(n + 1);
    for (long j = 0; j < nf; ++j) {
        const double um = fv.minus[j], up = fv.plus[j];
        alpha[j] = 1.1 * std::max(std::abs(p.df(um, x[j], t) - nu[j]), std::abs(p.df(up, x[j], t) - nu[j]));
    }
    if (opt.dissipation == Dissipation::global) alpha.setConstant(alpha.maxCoeff());
    for (long j = 0; j < nf; ++j) {
        const double um = fv.minus[j], up = fv.plus[j];
        const double fm = p.f(um, x[j], t) - nu[j] * um;
        const double fp = p.f(up, x[j], t) - nu[j] * up;
        flux[j] = 0.5 * (fm + fp) - 0.5 * alpha[j] * (up - um);
    }
    if (periodic) flux[n] = flux[0];

    Eigen::VectorXd rhs(n);
    for (long j = 0; j < n; ++j) rhs[j] = -(flux[j + 1] - flux[j]);
    return rhs;
}

Eigen::VectorXd semidiscrete_rhs(const TracebackGrid& tb, double tau, const Eigen::VectorXd& avgs,
                                 const LineProblem& p, double t0, const StepOptions& opt)
{
    return modified_flux_rhs(tb.nodes_at(tau), avgs, tb.speeds, p, t0 + tau, opt);
}

CellField el_rk_step_with_speeds(const CellField& field, const ButcherTable& tab, double dt, const LineProblem& p,
                                 const Eigen::VectorXd& nu, const StepOptions& opt)
{
    if (p.epsilon > 0.0) throw std::invalid_argument("explicit EL-RK step cannot treat diffusion");
    const Grid1D& g = field.grid;
    const TracebackGrid tb{g, nu, dt};
    const PartitionReport rep = validate_partition(tb);
    if (!rep.ok) throw PartitionError(rep);

    const PolySet src(field.values, p.bc, opt.weno);
    const Eigen::VectorXd x0 = tb.nodes_at(0.0);
    const RemapResult r0 = remap(src, g, x0);
    const Eigen::VectorXd& U0 = r0.integrals;

    const int s = tab.stages;
    std::vector<Eigen::VectorXd> K(s);
    for (int k = 0; k < s; ++k) {
        const double tau = tab.c[k] * dt;
        const Eigen::VectorXd xk = tb.nodes_at(tau);
        Eigen::VectorXd avg;
        if (k == 0 && tab.c[0] == 0.0) {
            avg = r0.averages;
        } else {
            Eigen::VectorXd U = U0;
            for (int l = 0; l < k; ++l)
                if (tab.a(k, l) != 0.0) U += dt * tab.a(k, l) * K[l];
            avg = U.array() / (xk.tail(g.n_cells) - xk.head(g.n_cells)).array();
        }
        K[k] = modified_flux_rhs(xk, avg, nu, p, field.time + tau, opt);
        if (p.source) K[k] += source_cell_integrals(p.source, xk, field.time + tau);
    }

    Eigen::VectorXd U = U0;
    for (int k = 0; k < s; ++k) U += dt * tab.b[k] * K[k];
    return {g, U / g.dx, field.time + dt};
}

CellField el_rk_step(const CellField& field, const ButcherTable& tab, double dt, const LineProblem& p,
                     const StepOptions& opt)
{
    const Eigen::VectorXd nu = rh_speeds(field, p.f, p.df, p.bc, opt.rh_threshold);
    return el_rk_step_with_speeds(field, tab, dt, p, nu, opt);
}

namespace {

CellField fallback_rec(const CellField& f, double dt, const RawStep& step, int depth, int max_depth, StepStats* st)
{
    try {
        return step(f, dt);
    } catch (const PartitionError& e) {
        if (depth >= max_depth) throw;
        if (st) {
            ++st->halvings;
            int m = st->max_depth.load();
            while (depth + 1 > m && !st->max_depth.compare_exchange_weak(m, depth + 1)) {
            }
        }
        log_info("halving dt %.6g -> %.6g at t=%.6g (%s)", dt, 0.5 * dt, f.time, e.what());
        const CellField half = fallback_rec(f, 0.5 * dt, step, depth + 1, max_depth, st);
        CellField out = fallback_rec(half, 0.5 * dt, step, depth + 1, max_depth, st);
        out.time = f.time + dt;
        return out;
    }
}

}  // namespace

CellField step_with_fallback(const CellField& field, double dt, const RawStep& step, int max_halvings,
                             StepStats* stats)
{
    return fallback_rec(field, dt, step, 0, max_halvings, stats);
}

}  // namespace elrk
