#include "elrk/grid.hpp"

#include <algorithm>
#include <cmath>

namespace elrk {

BoundaryCondition parse_bc(const std::string& s)
{
    if (s == "periodic") return BoundaryCondition::periodic;
    if (s == "zero") return BoundaryCondition::zero;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

std::string to_string(BoundaryCondition bc)
{
    return bc == BoundaryCondition::periodic ? "periodic" : "zero";
}

Eigen::VectorXd Grid1D::nodes() const
{
    Eigen::VectorXd x(n_cells + 1);
    for (int j = 0; j <= n_cells; ++j) x[j] = node(j);
    return x;
}

Eigen::VectorXd Grid1D::centers() const
{
    Eigen::VectorXd x(n_cells);
    for (int j = 0; j < n_cells; ++j) x[j] = center(j);
    return x;
}

Grid1D make_grid(double a, double b, int n_cells)
{
    if (!(b > a)) throw std::invalid_argument("make_grid: need b > a");
    if (n_cells < 1) throw std::invalid_argument("make_grid: need n_cells >= 1");
    return Grid1D{a, b, n_cells, (b - a) / n_cells};
}

CellPosition locate_unwrapped(const Grid1D& g, double x, bool left_on_node)
{
    const double s = (x - g.a) / g.dx;
    const double r = std::nearbyint(s);
    if (std::abs(s - r) <= kNodeSnapTol) {
        const long k = static_cast<long>(r);
        return left_on_node ? CellPosition{k - 1, 0.5} : CellPosition{k, -0.5};
    }
    const double f = std::floor(s);
    return {static_cast<long>(f), s - f - 0.5};
}

int locate_cell(const Grid1D& g, double x, BoundaryCondition bc)
{
    const double L = g.length();
    const double tol = kNodeSnapTol * g.dx;
    if (bc == BoundaryCondition::periodic) {
        x = g.a + std::fmod(x - g.a, L);
        if (x < g.a) x += L;
        if (x >= g.b) x -= L;
    } else {
        if (x < g.a - tol || x > g.b + tol)
            throw std::out_of_range("locate_cell: point outside domain with zero bc");
        x = std::clamp(x, g.a, g.b);
    }
    auto p = locate_unwrapped(g, x, true);
    // x is inside [a, b] here; boundary nodes belong to the adjacent interior cell
    return static_cast<int>(std::clamp<long>(p.k, 0, g.n_cells - 1));
}

double cfl_dt_1d(double cfl, double dx, double max_speed)
{
    if (max_speed < 1e-14) return cfl * dx;
    return cfl * dx / max_speed;
}

double cfl_dt_2d(double cfl, double dx, double dy, double max_fx, double max_gy)
{
    if (max_fx < 1e-14 && max_gy < 1e-14) return cfl * std::min(dx, dy);
    return cfl / (max_fx / dx + max_gy / dy);
}

}  // namespace elrk
