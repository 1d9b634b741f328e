#pragma once

#include "elrk/grid.hpp"
#include "elrk/weno_ao.hpp"

#include <Eigen/Core>

namespace elrk {

struct ReconstructionPoly {
    int cell_index = 0;
    Coeffs5<double> coefficients = Coeffs5<double>::Zero();
};

// WENO-AO polynomial for cell j of a uniform field (ghosts from bc)
ReconstructionPoly reconstruct_cell(const Eigen::VectorXd& avgs, int j, BoundaryCondition bc,
                                    const WenoParams& prm = {});

double poly_eval(const ReconstructionPoly& p, const Grid1D& g, double x);
double poly_partial_integral(const ReconstructionPoly& p, const Grid1D& g, double x_lo, double x_hi);

// All cell polynomials of a uniform field, one column per cell.
class PolySet {
public:
    PolySet(const Eigen::VectorXd& avgs, BoundaryCondition bc, const WenoParams& prm = {});

    int size() const { return static_cast<int>(avgs_.size()); }
    const Eigen::VectorXd& averages() const { return avgs_; }
    BoundaryCondition bc() const { return bc_; }

    // cell index may lie outside [0, n); periodic wraps, zero gives the null polynomial
    bool inside(long k) const { return bc_ == BoundaryCondition::periodic || (k >= 0 && k < size()); }
    int wrap(long k) const;
    // integral over [xa, xb] of the local polynomial, in units of dx
    double partial(long k, double xa, double xb) const;
    double value(long k, double xi) const;

private:
    Eigen::VectorXd avgs_;
    BoundaryCondition bc_;
    Eigen::Matrix<double, 5, Eigen::Dynamic> coeffs_;
};

struct RemapResult {
    Eigen::VectorXd integrals;  // per target cell, physical units
    Eigen::VectorXd averages;
};

RemapResult remap(const PolySet& src, const Grid1D& g, const Eigen::VectorXd& target_nodes);

Eigen::VectorXd remap_to_cells(const CellField& uniform, const Eigen::VectorXd& target_nodes,
                               BoundaryCondition bc, const WenoParams& prm = {});

struct FaceValues {
    Eigen::VectorXd minus;  // u^-_{j+1/2}, n+1 faces
    Eigen::VectorXd plus;   // u^+_{j+1/2}
};

FaceValues face_values_nonuniform(const Eigen::VectorXd& nonuniform_avgs, const Eigen::VectorXd& traceback_nodes,
                                  BoundaryCondition bc, const WenoParams& prm = {});

}  // namespace elrk
