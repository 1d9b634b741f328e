#include "elrk/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elrk {

namespace {

GaussRule build_rule(int n)
{
    // Newton on P_n from the Chebyshev-like initial guess
    GaussRule r{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dxn = p1 / dp;
            x -= dxn;
            if (std::abs(dxn) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // enforce exact antisymmetry
    for (int i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[n - 1 - i] + r.weights[i]);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order)
{
    if (order < 1 || order > 10) throw std::invalid_argument("gauss_legendre: order must be in 1..10");
    static const std::array<GaussRule, 10> rules = [] {
        std::array<GaussRule, 10> a;
        for (int n = 1; n <= 10; ++n) a[n - 1] = build_rule(n);
        return a;
    }();
    return rules[order - 1];
}

Eigen::VectorXd source_cell_integrals(const SourceFn& g, const Eigen::VectorXd& nodes, double t)
{
    const long n = nodes.size() - 1;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    if (!g) return out;
    const GaussRule& q = gauss_legendre(3);
    for (long j = 0; j < n; ++j) {
        const double h = 0.5 * (nodes[j + 1] - nodes[j]), m = 0.5 * (nodes[j + 1] + nodes[j]);
        double s = 0.0;
        for (int l = 0; l < 3; ++l) s += q.weights[l] * g(m + h * q.nodes[l], t);
        out[j] = h * s;
    }
    return out;
}

}  // namespace elrk
