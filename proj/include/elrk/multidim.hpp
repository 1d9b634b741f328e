#pragma once

#include "elrk/problem_spec.hpp"
#include "elrk/quadrature.hpp"
#include "elrk/reconstruct.hpp"

#include <Eigen/Core>

#include <cmath>
#include <functional>

namespace elrk {

struct Field2D {
    Grid1D grid_x;
    Grid1D grid_y;
    Eigen::MatrixXd values;  // n_x x n_y
    double time = 0.0;
};

// Line l of the set runs along `direction` at transverse coordinate coords[l].
// lines is n_parallel x (n_perp * L), lines ordered (perp cell, gauss node).
struct LineSet {
    Direction direction = Direction::x;
    int gauss_order = 3;
    Eigen::MatrixXd lines;
    Eigen::VectorXd coords;
};

LineSet cells_to_lines(const Field2D& field, Direction d, int L, BoundaryCondition bc, const WenoParams& prm = {});
Eigen::MatrixXd lines_to_cells(const LineSet& ls);

using LineStepper = std::function<CellField(const CellField&, double dt, const LineProblem&)>;

struct SplitOptions {
    int gauss_order = 3;
    WenoParams weno{};
};

// advance every line in direction d from time t_start by dt (dt may be negative)
void sweep(Field2D& field, Direction d, double t_start, double dt, const ProblemSpec& p, const LineStepper& stepper,
           const SplitOptions& opt = {});

Field2D strang_step(const Field2D& field, double dt, const ProblemSpec& p, const LineStepper& stepper,
                    const SplitOptions& opt = {});

inline const double kYoshidaG1 = 1.0 / (2.0 - std::cbrt(2.0));
inline const double kYoshidaG2 = -std::cbrt(2.0) / (2.0 - std::cbrt(2.0));

Field2D fourth_order_split_step(const Field2D& field, double dt, const ProblemSpec& p, const LineStepper& stepper,
                                const SplitOptions& opt = {});

}  // namespace elrk
