#include "elrk/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elrk {

namespace {

Coeffs5<double> gather(const Eigen::VectorXd& u, long j, BoundaryCondition bc)
{
    const long n = u.size();
    Coeffs5<double> v;
    for (int o = -2; o <= 2; ++o) {
        long k = j + o;
        if (bc == BoundaryCondition::periodic) {
            k = ((k % n) + n) % n;
            v[o + 2] = u[k];
        } else {
            v[o + 2] = (k >= 0 && k < n) ? u[k] : 0.0;
        }
    }
    return v;
}

double local_xi(const ReconstructionPoly& p, const Grid1D& g, double x)
{
    const double xi = (x - g.center(p.cell_index)) / g.dx;
    if (std::abs(xi) > 0.5 + kNodeSnapTol)
        throw std::out_of_range("reconstruction polynomial evaluated outside its cell");
    return std::clamp(xi, -0.5, 0.5);
}

}  // namespace

ReconstructionPoly reconstruct_cell(const Eigen::VectorXd& avgs, int j, BoundaryCondition bc, const WenoParams& prm)
{
    return {j, weno_ao_53(gather(avgs, j, bc), prm)};
}

double poly_eval(const ReconstructionPoly& p, const Grid1D& g, double x)
{
    return poly_value(p.coefficients, local_xi(p, g, x));
}

double poly_partial_integral(const ReconstructionPoly& p, const Grid1D& g, double x_lo, double x_hi)
{
    if (x_lo > x_hi) throw std::invalid_argument("poly_partial_integral: inverted bounds");
    const double a = local_xi(p, g, x_lo), b = local_xi(p, g, x_hi);
    return g.dx * (poly_antideriv(p.coefficients, b) - poly_antideriv(p.coefficients, a));
}

PolySet::PolySet(const Eigen::VectorXd& avgs, BoundaryCondition bc, const WenoParams& prm)
    : avgs_(avgs), bc_(bc), coeffs_(5, avgs.size())
{
    for (long j = 0; j < avgs.size(); ++j) coeffs_.col(j) = weno_ao_53(gather(avgs, j, bc), prm);
}

int PolySet::wrap(long k) const
{
    const long n = size();
    return static_cast<int>(((k % n) + n) % n);
}

double PolySet::partial(long k, double xa, double xb) const
{
    if (!inside(k)) return 0.0;
    const int i = wrap(k);
    if (xa == -0.5 && xb == 0.5) return avgs_[i];
    const Coeffs5<double> c = coeffs_.col(i);
    return poly_antideriv(c, xb) - poly_antideriv(c, xa);
}

double PolySet::value(long k, double xi) const
{
    if (!inside(k)) return 0.0;
    const Coeffs5<double> c = coeffs_.col(wrap(k));
    return poly_value(c, xi);
}

RemapResult remap(const PolySet& src, const Grid1D& g, const Eigen::VectorXd& x)
{
    const int n = static_cast<int>(x.size()) - 1;
    RemapResult r{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int j = 0; j < n; ++j) {
        const double w = x[j + 1] - x[j];
        if (!(w >= 1e-14 * g.dx)) throw std::invalid_argument("remap: non-increasing or degenerate target cell");
        const CellPosition l = locate_unwrapped(g, x[j], false);
        const CellPosition r_ = locate_unwrapped(g, x[j + 1], true);
        if (l.k == r_.k) {
            const double q = src.partial(l.k, l.xi, r_.xi);
            r.integrals[j] = g.dx * q;
            // exact copy when the target cell is a background cell
            r.averages[j] = (l.xi == -0.5 && r_.xi == 0.5) ? q : r.integrals[j] / w;
            continue;
        }
        if (r_.k < l.k) {
            // sliver straddling a node, narrower than the snap tolerance
            r.integrals[j] = 0.0;
            r.averages[j] = src.value(l.k, -0.5);
            continue;
        }
        double q = src.partial(l.k, l.xi, 0.5) + src.partial(r_.k, -0.5, r_.xi);
        for (long k = l.k + 1; k < r_.k; ++k)
            if (src.inside(k)) q += src.averages()[src.wrap(k)];
        r.integrals[j] = g.dx * q;
        r.averages[j] = r.integrals[j] / w;
    }
    return r;
}

Eigen::VectorXd remap_to_cells(const CellField& uniform, const Eigen::VectorXd& target_nodes, BoundaryCondition bc,
                               const WenoParams& prm)
{
    const Grid1D& g = uniform.grid;
    if (target_nodes.size() != g.n_cells + 1) throw std::invalid_argument("remap_to_cells: node count mismatch");
    if (bc == BoundaryCondition::periodic) {
        const double span = target_nodes[g.n_cells] - target_nodes[0];
        if (std::abs(span - g.length()) > 1e-10 * std::max(1.0, g.length()))
            throw std::invalid_argument("remap_to_cells: periodic target span differs from the domain");
    }
    return remap(PolySet(uniform.values, bc, prm), g, target_nodes).averages;
}

FaceValues face_values_nonuniform(const Eigen::VectorXd& u, const Eigen::VectorXd& nodes, BoundaryCondition bc,
                                  const WenoParams& prm)
{
    const long n = u.size();
    if (nodes.size() != n + 1) throw std::invalid_argument("face_values_nonuniform: node count mismatch");
    for (long j = 0; j < n; ++j)
        if (!(nodes[j + 1] > nodes[j])) throw std::invalid_argument("face_values_nonuniform: nodes not increasing");

    FaceValues fv{Eigen::VectorXd(n + 1), Eigen::VectorXd(n + 1)};
    for (long j = 0; j < n; ++j) {
        const Coeffs5<double> c = weno_ao_53(gather(u, j, bc), prm);
        fv.minus[j + 1] = poly_value(c, 0.5);
        fv.plus[j] = poly_value(c, -0.5);
    }
    if (bc == BoundaryCondition::periodic) {
        fv.minus[0] = fv.minus[n];
        fv.plus[n] = fv.plus[0];
    } else {
        fv.minus[0] = 0.0;
        fv.plus[n] = 0.0;
    }
    return fv;
}

}  // namespace elrk
