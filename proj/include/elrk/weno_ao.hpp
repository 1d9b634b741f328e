#pragma once

// WENO-AO(5,3) kernel in the normalized coordinate xi = (x - x_j)/dx, xi in [-1/2, 1/2].
// Polynomials are stored as monomial coefficients c_0..c_4 of xi^k.

#include <Eigen/Dense>

#include <cmath>

namespace elrk {

template <typename Scalar>
struct WenoParamsT {
    Scalar gamma_hi = Scalar(0.85);
    Scalar gamma_lo = Scalar(0.85);
    Scalar epsilon_w = Scalar(1e-12);
    Scalar power_p = Scalar(2);
    // freeze the nonlinear weights at their linear values
    bool linear_weights = false;
};
using WenoParams = WenoParamsT<double>;

template <typename Scalar>
using Coeffs5 = Eigen::Matrix<Scalar, 5, 1>;

namespace detail {

template <typename Scalar>
Scalar cell_moment(int m, int k)
{
    // average of xi^k over [m - 1/2, m + 1/2]
    const Scalar hi = Scalar(m) + Scalar(0.5), lo = Scalar(m) - Scalar(0.5);
    return (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / Scalar(k + 1);
}

template <typename Scalar>
struct WenoTables {
    Eigen::Matrix<Scalar, 5, 5> big;      // c = big * (v_{-2..2})
    Eigen::Matrix<Scalar, 3, 3> sub[3];   // left, centre, right quadratics
    Eigen::Matrix<Scalar, 5, 5> beta;     // beta = c^T * beta * c

    WenoTables()
    {
        Eigen::Matrix<Scalar, 5, 5> m5;
        for (int r = 0; r < 5; ++r)
            for (int k = 0; k < 5; ++k) m5(r, k) = cell_moment<Scalar>(r - 2, k);
        big = m5.inverse();
        for (int s = 0; s < 3; ++s) {
            Eigen::Matrix<Scalar, 3, 3> m3;
            for (int r = 0; r < 3; ++r)
                for (int k = 0; k < 3; ++k) m3(r, k) = cell_moment<Scalar>(s - 2 + r, k);
            sub[s] = m3.inverse();
        }
        // sum over derivative orders l >= 1 of the integral of (P^(l))^2 on the unit cell
        auto falling = [](int n, int l) {
            Scalar f = 1;
            for (int i = 0; i < l; ++i) f *= Scalar(n - i);
            return f;
        };
        auto mono_int = [](int p) {
            return p % 2 ? Scalar(0) : Scalar(2) * std::pow(Scalar(0.5), p + 1) / Scalar(p + 1);
        };
        beta.setZero();
        for (int k = 1; k < 5; ++k)
            for (int m = 1; m < 5; ++m)
                for (int l = 1; l <= std::min(k, m); ++l)
                    beta(k, m) += falling(k, l) * falling(m, l) * mono_int(k + m - 2 * l);
    }

    static const WenoTables& get()
    {
        static const WenoTables t;
        return t;
    }
};

}  // namespace detail

template <typename Scalar>
Coeffs5<Scalar> weno_ao_53(const Coeffs5<Scalar>& v, const WenoParamsT<Scalar>& prm = {})
{
    const auto& T = detail::WenoTables<Scalar>::get();
    const Coeffs5<Scalar> p5 = T.big * v;
    Eigen::Matrix<Scalar, 3, 1> p3[3];
    for (int s = 0; s < 3; ++s) p3[s] = T.sub[s] * v.template segment<3>(s);

    const Scalar g5 = prm.gamma_hi;
    const Scalar gl[3] = {(1 - prm.gamma_hi) * (1 - prm.gamma_lo) / 2, (1 - prm.gamma_hi) * prm.gamma_lo,
                          (1 - prm.gamma_hi) * (1 - prm.gamma_lo) / 2};

    Scalar w5 = g5, w[3] = {gl[0], gl[1], gl[2]};
    if (!prm.linear_weights) {
        // the constant term carries no smoothness information
        const auto B4 = T.beta.template bottomRightCorner<4, 4>();
        const Scalar b5 = p5.template tail<4>().dot(B4 * p5.template tail<4>());
        Scalar b[3];
        for (int s = 0; s < 3; ++s)
            b[s] = p3[s].template tail<2>().dot(T.beta.template block<2, 2>(1, 1) * p3[s].template tail<2>());
        const Scalar tau = (std::abs(b5 - b[0]) + std::abs(b5 - b[1]) + std::abs(b5 - b[2])) / 3;
        const bool square = prm.power_p == Scalar(2);
        auto raw = [&](Scalar g, Scalar bb) {
            const Scalar r = tau / (bb + prm.epsilon_w);
            return g * (1 + (square ? r * r : std::pow(r, prm.power_p)));
        };
        w5 = raw(g5, b5);
        Scalar sum = w5;
        for (int s = 0; s < 3; ++s) sum += (w[s] = raw(gl[s], b[s]));
        w5 /= sum;
        for (auto& x : w) x /= sum;
    }

    Coeffs5<Scalar> c = (w5 / g5) * p5;
    for (int s = 0; s < 3; ++s) c.template head<3>() += (w[s] - w5 * gl[s] / g5) * p3[s];
    return c;
}

template <typename Scalar>
Scalar poly_value(const Coeffs5<Scalar>& c, Scalar xi)
{
    return c[0] + xi * (c[1] + xi * (c[2] + xi * (c[3] + xi * c[4])));
}

// antiderivative vanishing at xi = 0
template <typename Scalar>
Scalar poly_antideriv(const Coeffs5<Scalar>& c, Scalar xi)
{
    return xi * (c[0] + xi * (c[1] / 2 + xi * (c[2] / 3 + xi * (c[3] / 4 + xi * c[4] / 5))));
}

}  // namespace elrk
