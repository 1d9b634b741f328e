#pragma once

#include <Eigen/Core>

#include <functional>

namespace elrk {

struct GaussRule {
    Eigen::VectorXd nodes;    // on [-1, 1]
    Eigen::VectorXd weights;  // sum to 2
};

// orders 1..10
const GaussRule& gauss_legendre(int order);

using SourceFn = std::function<double(double, double)>;  // g(x, t)

// per-cell integral of g over [nodes_j, nodes_{j+1}], 3-point Gauss
Eigen::VectorXd source_cell_integrals(const SourceFn& g, const Eigen::VectorXd& nodes, double t);

}  // namespace elrk
