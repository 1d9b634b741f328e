#pragma once

#include "elrk/convection.hpp"

#include <Eigen/Core>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace elrk {

struct DiffusionOperator {
    double dx = 1.0;
    double epsilon = 0.0;
    BoundaryCondition bc = BoundaryCondition::periodic;
    std::array<double, 5> stencil{-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
};

// cell averages of u_xx (epsilon not applied)
Eigen::VectorXd d4_apply(const DiffusionOperator& op, const Eigen::VectorXd& v);

// Padded layout: row/column 0 of the implicit table is zero, c(0) = 0.
// Implicit stage mu = 1..s pairs with explicit row mu.
struct ImexTableau {
    std::string name;
    int s = 1;
    int sigma = 2;
    int order = 1;
    Eigen::MatrixXd a_impl;  // (s+1) x (s+1)
    Eigen::MatrixXd a_expl;  // (s+1) x (s+1), strictly lower
    Eigen::VectorXd b_impl;  // s+1, b_impl(0) = 0
    Eigen::VectorXd b_expl;  // s+1
    Eigen::VectorXd c;       // s+1
};

ImexTableau imex_tableau(const std::string& name);
const std::vector<std::string>& imex_names();
bool is_imex_name(const std::string& name);

// (I - theta D) factorizations keyed by (theta, n, bc)
class DiffusionSolverCache {
public:
    Eigen::VectorXd solve(const DiffusionOperator& op, double theta, const Eigen::VectorXd& rhs);
    std::size_t size() const;

private:
    struct Entry;
    mutable std::mutex m_;
    std::map<std::tuple<double, long, int>, std::shared_ptr<Entry>> map_;
};

Eigen::VectorXd implicit_stage_solve(const DiffusionOperator& op, double a_diag, double dt,
                                     const Eigen::VectorXd& rhs, DiffusionSolverCache* cache = nullptr);

CellField el_imex_step_with_speeds(const CellField& field, const ImexTableau& tab, double dt, const LineProblem& p,
                                   const Eigen::VectorXd& speeds, const StepOptions& opt = {},
                                   DiffusionSolverCache* cache = nullptr);

CellField el_imex_step(const CellField& field, const ImexTableau& tab, double dt, const LineProblem& p,
                       const StepOptions& opt = {}, DiffusionSolverCache* cache = nullptr);

}  // namespace elrk
