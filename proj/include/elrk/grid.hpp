#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace elrk {

enum class BoundaryCondition { periodic, zero };

BoundaryCondition parse_bc(const std::string& s);
std::string to_string(BoundaryCondition bc);

struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int n_cells = 1;
    double dx = 1.0;

    // node j is the face x_{j+1/2} of 1-based cell indexing, 0 <= j <= n_cells; node(n_cells) == b exactly
    double node(int j) const { return j == n_cells ? b : a + j * dx; }
    double center(int j) const { return a + (j + 0.5) * dx; }
    double length() const { return b - a; }
    Eigen::VectorXd nodes() const;
    Eigen::VectorXd centers() const;
};

Grid1D make_grid(double a, double b, int n_cells);

struct CellField {
    Grid1D grid;
    Eigen::VectorXd values;
    double time = 0.0;
};

// 0-based cell index; interior nodes go to the left cell.
int locate_cell(const Grid1D& g, double x, BoundaryCondition bc);

// Unwrapped variant used by the remap: no periodic reduction, no domain check.
// Snaps to a node when within tol*dx of it. Returns floor-like index k and
// the local coordinate xi in [-1/2, 1/2] of x inside cell k.
struct CellPosition {
    long k;
    double xi;
};
CellPosition locate_unwrapped(const Grid1D& g, double x, bool left_on_node);

double cfl_dt_1d(double cfl, double dx, double max_speed);
double cfl_dt_2d(double cfl, double dx, double dy, double max_fx, double max_gy);

inline constexpr double kNodeSnapTol = 1e-12;

}  // namespace elrk
