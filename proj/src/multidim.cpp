#include "elrk/multidim.hpp"

#include "elrk/parallel.hpp"

#include <stdexcept>

namespace elrk {

LineSet cells_to_lines(const Field2D& f, Direction d, int L, BoundaryCondition bc, const WenoParams& prm)
{
    const GaussRule& q = gauss_legendre(L);
    const bool along_x = d == Direction::x;
    const Grid1D& gp = along_x ? f.grid_x : f.grid_y;  // parallel
    const Grid1D& gt = along_x ? f.grid_y : f.grid_x;  // transverse
    LineSet ls{d, L, Eigen::MatrixXd(gp.n_cells, gt.n_cells * L), Eigen::VectorXd(gt.n_cells * L)};
    for (int j = 0; j < gt.n_cells; ++j)
        for (int l = 0; l < L; ++l) ls.coords[j * L + l] = gt.center(j) + 0.5 * gt.dx * q.nodes[l];

    parallel_for(gp.n_cells, [&](long i) {
        const Eigen::VectorXd prof = along_x ? Eigen::VectorXd(f.values.row(i).transpose()) : f.values.col(i);
        const PolySet ps(prof, bc, prm);
        for (int j = 0; j < gt.n_cells; ++j)
            for (int l = 0; l < L; ++l) ls.lines(i, j * L + l) = ps.value(j, 0.5 * q.nodes[l]);
    });
    return ls;
}

Eigen::MatrixXd lines_to_cells(const LineSet& ls)
{
    const int L = ls.gauss_order;
    const GaussRule& q = gauss_legendre(L);
    const long np = ls.lines.rows(), nt = ls.lines.cols() / L;
    Eigen::MatrixXd cell(np, nt);
    for (long j = 0; j < nt; ++j) {
        cell.col(j).setZero();
        for (int l = 0; l < L; ++l) cell.col(j) += 0.5 * q.weights[l] * ls.lines.col(j * L + l);
    }
    if (ls.direction == Direction::x) return cell;
    return cell.transpose();
}

void sweep(Field2D& field, Direction d, double t_start, double dt, const ProblemSpec& p, const LineStepper& stepper,
           const SplitOptions& opt)
{
    if (dt == 0.0) return;
    LineSet ls = cells_to_lines(field, d, opt.gauss_order, p.bc, opt.weno);
    const Grid1D& gp = d == Direction::x ? field.grid_x : field.grid_y;
    const double share = p.source ? 0.5 : 0.0;
    parallel_for(ls.lines.cols(), [&](long c) {
        const LineProblem lp = line_problem(p, d, ls.coords[c], share);
        const CellField in{gp, ls.lines.col(c), t_start};
        ls.lines.col(c) = stepper(in, dt, lp).values;
    });
    field.values = lines_to_cells(ls);
}

Field2D strang_step(const Field2D& field, double dt, const ProblemSpec& p, const LineStepper& stepper,
                    const SplitOptions& opt)
{
    Field2D f = field;
    const double t = field.time;
    sweep(f, Direction::x, t, 0.5 * dt, p, stepper, opt);
    sweep(f, Direction::y, t, dt, p, stepper, opt);
    sweep(f, Direction::x, t + 0.5 * dt, 0.5 * dt, p, stepper, opt);
    f.time = t + dt;
    return f;
}

Field2D fourth_order_split_step(const Field2D& field, double dt, const ProblemSpec& p, const LineStepper& stepper,
                                const SplitOptions& opt)
{
    if (p.epsilon > 0.0) throw std::invalid_argument("fourth-order splitting is restricted to pure convection");
    const double g1 = kYoshidaG1, g2 = kYoshidaG2;
    const struct {
        Direction d;
        double frac;
    } seq[7] = {{Direction::x, g1 / 2}, {Direction::y, g1},          {Direction::x, (g1 + g2) / 2},
                {Direction::y, g2},     {Direction::x, (g1 + g2) / 2}, {Direction::y, g1},
                {Direction::x, g1 / 2}};
    Field2D f = field;
    double tx = field.time, ty = field.time;
    for (const auto& s : seq) {
        double& clock = s.d == Direction::x ? tx : ty;
        sweep(f, s.d, clock, s.frac * dt, p, stepper, opt);
        clock += s.frac * dt;
    }
    f.time = field.time + dt;
    return f;
}

}  // namespace elrk
