#pragma once

#include "elrk/grid.hpp"

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <vector>

namespace elrk {

// f(u, x, t); x is the line coordinate
using FluxFn = std::function<double(double, double, double)>;

inline constexpr double kRhThreshold = 1e-8;

// nu_{j+1/2} for faces 0..n, flux evaluated at the face and at field.time
Eigen::VectorXd rh_speeds(const CellField& field, const FluxFn& f, const FluxFn& df, BoundaryCondition bc,
                          double threshold = kRhThreshold);

// Nodes traced back from the uniform nodes: x_{j+1/2} - nu_{j+1/2} * lag. No range checks.
Eigen::VectorXd traced_nodes(const Grid1D& g, const Eigen::VectorXd& speeds, double lag);

struct TracebackGrid {
    Grid1D base;
    Eigen::VectorXd speeds;
    double dt_full = 0.0;  // may be negative for backward substeps

    Eigen::VectorXd nodes_at(double tau) const;
};

struct PartitionReport {
    bool ok = true;
    double min_width = 0.0;
    std::vector<int> offending_faces;
    double admissible_dt = 0.0;  // magnitude; infinity when no pair ever crosses
};

PartitionReport validate_partition(const TracebackGrid& tb);

TracebackGrid substage_grid(const TracebackGrid& tb, double c_mu);

class PartitionError : public std::runtime_error {
public:
    explicit PartitionError(PartitionReport r);
    PartitionReport report;
};

}  // namespace elrk
