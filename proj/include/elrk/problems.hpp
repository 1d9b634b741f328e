#pragma once

#include "elrk/multidim.hpp"
#include "elrk/problem_spec.hpp"

#include <string>
#include <vector>

namespace elrk {

const std::vector<std::string>& registry_names();
ProblemSpec registry_get(const std::string& name);

// Cole-Hopf series for u_t + (u^2/2)_x = eps u_xx, u0 = 0.2 sin(pi x) on [0, 2]
double burgers_exact(double x, double t, double epsilon, int n_terms = 10);

// 1V when dim == 1 (vy ignored), 2V otherwise
double maxwellian(const MaxwellianParams& p, double vx, double vy = 0.0, int dim = 1);

struct MacroParams {
    double n = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double T = 0.0;
};

MacroParams macro_parameters(const CellField& f, double R);
MacroParams macro_parameters(const Field2D& f, double R);

// cell averages by 5-point Gauss per cell (tensor in 2D)
Eigen::VectorXd cell_averages_1d(const Grid1D& g, const std::function<double(double)>& u);
Eigen::MatrixXd cell_averages_2d(const Grid1D& gx, const Grid1D& gy, const std::function<double(double, double)>& u);

}  // namespace elrk
