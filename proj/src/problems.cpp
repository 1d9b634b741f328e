#include "elrk/problems.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace elrk {

namespace {

constexpr double pi = std::numbers::pi;

Flux2Fn linear_x(std::function<double(double, double, double)> a)
{
    return [a](double u, double x, double y, double t) { return a(x, y, t) * u; };
}
Flux2Fn coeff(std::function<double(double, double, double)> a)
{
    return [a](double, double x, double y, double t) { return a(x, y, t); };
}

ProblemSpec base(const std::string& name, int dim, double a, double b)
{
    ProblemSpec p;
    p.name = name;
    p.dimension = dim;
    p.ax = a;
    p.bx = b;
    p.ay = dim == 2 ? a : 0.0;
    p.by = dim == 2 ? b : 1.0;
    p.fy = [](double, double, double, double) { return 0.0; };
    p.dfy = p.fy;
    p.max_speed_y = 0.0;
    return p;
}

void constant_velocity(ProblemSpec& p, double cx, double cy)
{
    p.fx = [cx](double u, double, double, double) { return cx * u; };
    p.dfx = [cx](double, double, double, double) { return cx; };
    p.fy = [cy](double u, double, double, double) { return cy * u; };
    p.dfy = [cy](double, double, double, double) { return cy; };
    p.max_speed_x = std::abs(cx);
    p.max_speed_y = std::abs(cy);
}

void burgers_flux(ProblemSpec& p, bool two_d)
{
    p.fx = [](double u, double, double, double) { return 0.5 * u * u; };
    p.dfx = [](double u, double, double, double) { return u; };
    if (two_d) {
        p.fy = p.fx;
        p.dfy = p.dfx;
    }
}

void rigid_body_flux(ProblemSpec& p)
{
    auto ax = [](double, double y, double) { return -y; };
    auto ay = [](double x, double, double) { return x; };
    p.fx = linear_x(ax);
    p.dfx = coeff(ax);
    p.fy = linear_x(ay);
    p.dfy = coeff(ay);
    p.max_speed_x = p.max_speed_y = std::max(std::abs(p.ax), std::abs(p.bx));
}

void swirling_flux(ProblemSpec& p, std::function<double(double)> g, double gmax)
{
    auto ax = [g](double x, double y, double t) {
        const double c = std::cos(0.5 * x);
        return -c * c * std::sin(y) * g(t);
    };
    auto ay = [g](double x, double y, double t) {
        const double c = std::cos(0.5 * y);
        return std::sin(x) * c * c * g(t);
    };
    p.fx = linear_x(ax);
    p.dfx = coeff(ax);
    p.fy = linear_x(ay);
    p.dfy = coeff(ay);
    p.max_speed_x = p.max_speed_y = gmax;
}

double cosine_bell(double x, double y)
{
    const double r0 = 0.3 * pi;
    const double r = std::hypot(x - 0.3 * pi, y);
    if (r >= r0) return 0.0;
    return r0 * std::pow(std::cos(r * pi / (2 * r0)), 6);
}

void fokker_planck(ProblemSpec& p, int dim)
{
    // linearized operator with the equilibrium's bulk velocity and D = R T held fixed
    const MaxwellianParams m{pi, 0.0, 0.0, 1.0 / 6, 3.0};
    p.target = m;
    p.kinetic = true;
    p.bc = BoundaryCondition::zero;
    p.epsilon = m.R * m.T;
    const double vx = m.vx, vy = m.vy;
    p.fx = [vx](double f, double v, double, double) { return -(v - vx) * f; };
    p.dfx = [vx](double, double v, double, double) { return -(v - vx); };
    p.max_speed_x = 2 * pi;
    if (dim == 2) {
        p.fy = [vy](double f, double, double v, double) { return -(v - vy) * f; };
        p.dfy = [vy](double, double, double v, double) { return -(v - vy); };
        p.max_speed_y = 2 * pi;
    }
}

// u_t + (sin(x) u)_x = 0 with u0 = 1; stable form of sin(2 atan(e^-t tan(x/2))) / sin(x)
double varx_exact(double x, double t)
{
    const double k = std::exp(-t);
    const double tau = std::tan(0.5 * x);
    if (std::abs(tau) <= 1.0) return k * (1 + tau * tau) / (1 + k * k * tau * tau);
    const double s = 1.0 / (tau * tau);
    return k * (s + 1) / (s + k * k);
}

}  // namespace

const std::vector<std::string>& registry_names()
{
    static const std::vector<std::string> names{
        "transport-1d-const", "transport-1d-varx",   "transport-1d-vart",     "transport-2d-const",
        "rigid-body",         "rigid-body-box",      "swirling",              "swirling-disc",
        "cd-1d-const",        "cd-1d-var",           "burgers-1d-viscous",    "fokker-planck-0d1v",
        "cd-2d-const",        "rigid-body-diffusion", "swirling-diffusion",   "burgers-2d-viscous",
        "fokker-planck-0d2v", "fokker-planck-0d2v-bimaxwellian"};
    return names;
}

ProblemSpec registry_get(const std::string& name)
{
    if (name == "transport-1d-const") {
        auto p = base(name, 1, 0, 2 * pi);
        constant_velocity(p, 1, 0);
        p.initial = [](double x, double) { return std::sin(x); };
        p.exact = [](double x, double, double t) { return std::sin(x - t); };
        return p;
    }
    if (name == "transport-1d-varx") {
        auto p = base(name, 1, 0, 2 * pi);
        auto a = [](double x, double, double) { return std::sin(x); };
        p.fx = linear_x(a);
        p.dfx = coeff(a);
        p.initial = [](double, double) { return 1.0; };
        p.exact = [](double x, double, double t) { return varx_exact(x, t); };
        return p;
    }
    if (name == "transport-1d-vart") {
        auto p = base(name, 1, 0, 2 * pi);
        auto a = [](double, double, double t) { return 1.0 / (t + 1); };
        p.fx = linear_x(a);
        p.dfx = coeff(a);
        p.initial = [](double x, double) { return std::exp(-5 * (x - pi) * (x - pi)); };
        p.exact = [](double x, double, double t) {
            const double s = x - std::log(t + 1) - pi;
            return std::exp(-5 * s * s);
        };
        return p;
    }
    if (name == "transport-2d-const") {
        auto p = base(name, 2, -pi, pi);
        constant_velocity(p, 1, 1);
        p.initial = [](double x, double y) { return std::sin(x + y); };
        p.exact = [](double x, double y, double t) { return std::sin(x + y - 2 * t); };
        return p;
    }
    if (name == "rigid-body") {
        auto p = base(name, 2, -pi, pi);
        rigid_body_flux(p);
        p.initial = [](double x, double y) { return std::exp(-3 * (x * x + y * y)); };
        p.exact = [](double x, double y, double) { return std::exp(-3 * (x * x + y * y)); };
        p.default_tfinal = 0.5;
        return p;
    }
    if (name == "rigid-body-box") {
        auto p = base(name, 2, -pi, pi);
        rigid_body_flux(p);
        auto box = [](double x, double y) {
            return (std::abs(x) <= 0.5 * pi && std::abs(y) <= 0.5 * pi) ? 1.0 : 0.0;
        };
        p.initial = box;
        p.exact = [box](double x, double y, double t) {
            return box(x * std::cos(t) + y * std::sin(t), -x * std::sin(t) + y * std::cos(t));
        };
        p.default_tfinal = 2 * pi;
        return p;
    }
    if (name == "swirling" || name == "swirling-diffusion") {
        const bool diff = name == "swirling-diffusion";
        const double tf = diff ? 0.1 : 1.5;
        auto p = base(name, 2, -pi, pi);
        swirling_flux(p, [tf](double t) { return std::cos(pi * t / tf) * pi; }, pi);
        p.initial = cosine_bell;
        if (diff) {
            p.epsilon = 1.0;
        } else {
            // the flow reverses and returns the bell to its start at t = 1.5
            p.exact = [](double x, double y, double) { return cosine_bell(x, y); };
            p.exact_time = tf;
        }
        p.default_tfinal = tf;
        return p;
    }
    if (name == "swirling-disc") {
        auto p = base(name, 2, -pi, pi);
        swirling_flux(p, [](double) { return 1.0; }, 1.0);
        p.initial = [](double x, double y) { return std::hypot(x - pi, y - pi) < 8 * pi / 5 ? 1.0 : 0.0; };
        p.default_tfinal = 5 * pi;
        return p;
    }
    if (name == "cd-1d-const") {
        auto p = base(name, 1, 0, 2 * pi);
        constant_velocity(p, 1, 0);
        p.epsilon = 1.0;
        p.initial = [](double x, double) { return std::sin(x); };
        p.exact = [e = p.epsilon](double x, double, double t) { return std::sin(x - t) * std::exp(-e * t); };
        return p;
    }
    if (name == "cd-1d-var") {
        auto p = base(name, 1, 0, 2 * pi);
        auto a = [](double x, double, double) { return std::sin(x); };
        p.fx = linear_x(a);
        p.dfx = coeff(a);
        p.epsilon = 1.0;
        p.source = [e = p.epsilon](double x, double, double t) { return std::sin(2 * x) * std::exp(-e * t); };
        p.initial = [](double x, double) { return std::sin(x); };
        p.exact = [e = p.epsilon](double x, double, double t) { return std::sin(x) * std::exp(-e * t); };
        return p;
    }
    if (name == "burgers-1d-viscous") {
        auto p = base(name, 1, 0, 2);
        burgers_flux(p, false);
        p.epsilon = 0.1;
        p.max_speed_x = 0.2;
        p.initial = [](double x, double) { return 0.2 * std::sin(pi * x); };
        p.exact = [e = p.epsilon](double x, double, double t) { return burgers_exact(x, t, e); };
        return p;
    }
    if (name == "fokker-planck-0d1v") {
        auto p = base(name, 1, -2 * pi, 2 * pi);
        fokker_planck(p, 1);
        const MaxwellianParams m = p.target;
        p.initial = [m](double v, double) { return maxwellian(m, v); };
        p.exact = [m](double v, double, double) { return maxwellian(m, v); };
        return p;
    }
    if (name == "cd-2d-const") {
        auto p = base(name, 2, 0, 2 * pi);
        constant_velocity(p, 1, 1);
        p.epsilon = 1.0;
        p.initial = [](double x, double y) { return std::sin(x + y); };
        p.exact = [e = p.epsilon](double x, double y, double t) {
            return std::exp(-2 * e * t) * std::sin(x + y - 2 * t);
        };
        p.default_tfinal = 0.5;
        return p;
    }
    if (name == "rigid-body-diffusion") {
        auto p = base(name, 2, -2 * pi, 2 * pi);
        rigid_body_flux(p);
        p.epsilon = 1.0;
        const double e = p.epsilon;
        p.source = [e](double x, double y, double t) {
            return (6 * e - 4 * x * y - 4 * e * (x * x + 9 * y * y)) * std::exp(-(x * x + 3 * y * y + 2 * e * t));
        };
        p.initial = [](double x, double y) { return std::exp(-(x * x + 3 * y * y)); };
        p.exact = [e](double x, double y, double t) { return std::exp(-(x * x + 3 * y * y + 2 * e * t)); };
        p.default_tfinal = 0.5;
        return p;
    }
    if (name == "burgers-2d-viscous") {
        auto p = base(name, 2, -pi, pi);
        burgers_flux(p, true);
        p.epsilon = 0.1;
        p.max_speed_x = p.max_speed_y = 1.0;
        const double e = p.epsilon;
        p.source = [e](double x, double y, double t) { return std::exp(-4 * e * t) * std::sin(2 * (x + y)); };
        p.initial = [](double x, double y) { return std::sin(x + y); };
        p.exact = [e](double x, double y, double t) { return std::exp(-2 * e * t) * std::sin(x + y); };
        p.default_tfinal = 0.5;
        return p;
    }
    if (name == "fokker-planck-0d2v" || name == "fokker-planck-0d2v-bimaxwellian") {
        auto p = base(name, 2, -2 * pi, 2 * pi);
        fokker_planck(p, 2);
        const MaxwellianParams m = p.target;
        if (name == "fokker-planck-0d2v") {
            p.initial = [m](double vx, double vy) { return maxwellian(m, vx, vy, 2); };
            p.exact = [m](double vx, double vy, double) { return maxwellian(m, vx, vy, 2); };
            p.default_tfinal = 0.5;
        } else {
            const MaxwellianParams m1{1.990964530353041, 0.4979792385268875, 0.0, m.R, 2.46518981703837};
            const MaxwellianParams m2{1.150628123236752, -0.8616676237412346, 0.0, m.R, 0.4107062104302872};
            p.initial = [m1, m2](double vx, double vy) {
                return maxwellian(m1, vx, vy, 2) + maxwellian(m2, vx, vy, 2);
            };
            p.default_tfinal = 3.0;
        }
        return p;
    }
    throw std::invalid_argument("unknown problem: " + name);
}

double burgers_exact(double x, double t, double eps, int n_terms)
{
    // c_n = 2 e^{-a} I_n(a), a = 1/(10 pi eps); the common e^{-a} cancels in the ratio
    static std::mutex m;
    static std::map<double, std::vector<double>> cache;
    std::vector<double> c;
    {
        std::lock_guard<std::mutex> lk(m);
        auto& v = cache[eps];
        if (v.empty()) {
            const double a = 1.0 / (10 * pi * eps);
            for (int n = 0; n <= 40; ++n) v.push_back((n ? 2.0 : 1.0) * std::cyl_bessel_i(double(n), a));
        }
        c = v;
    }
    n_terms = std::min<int>(n_terms, static_cast<int>(c.size()) - 1);
    double num = 0.0, den = c[0];
    for (int n = 1; n <= n_terms; ++n) {
        const double e = c[n] * std::exp(-n * n * pi * pi * eps * t);
        num += e * n * std::sin(n * pi * x);
        den += e * std::cos(n * pi * x);
    }
    return 2 * eps * pi * num / den;
}

double maxwellian(const MaxwellianParams& p, double vx, double vy, int dim)
{
    const double rt = p.R * p.T;
    if (dim == 1) return p.n / std::sqrt(2 * pi * rt) * std::exp(-(vx - p.vx) * (vx - p.vx) / (2 * rt));
    const double r2 = (vx - p.vx) * (vx - p.vx) + (vy - p.vy) * (vy - p.vy);
    return p.n / (2 * pi * rt) * std::exp(-r2 / (2 * rt));
}

namespace {

// point values from cell averages, sixth order, zero ghosts
Eigen::VectorXd deconvolve(const Eigen::VectorXd& a)
{
    const long n = a.size();
    auto at = [&](long k) { return (k >= 0 && k < n) ? a[k] : 0.0; };
    Eigen::VectorXd p(n);
    for (long j = 0; j < n; ++j)
        p[j] = (9 * (at(j - 2) + at(j + 2)) - 116 * (at(j - 1) + at(j + 1)) + 2134 * a[j]) / 1920.0;
    return p;
}

}  // namespace

MacroParams macro_parameters(const CellField& f, double R)
{
    const Grid1D& g = f.grid;
    MacroParams m;
    m.n = g.dx * f.values.sum();
    if (!(m.n > 0)) throw std::domain_error("macro_parameters: non-positive density");
    const Eigen::VectorXd p = deconvolve(f.values);
    const Eigen::VectorXd v = g.centers();
    m.vx = g.dx * v.dot(p) / m.n;
    m.T = g.dx * ((v.array() - m.vx).square() * p.array()).sum() / (R * m.n);
    return m;
}

MacroParams macro_parameters(const Field2D& f, double R)
{
    const Grid1D &gx = f.grid_x, &gy = f.grid_y;
    const double da = gx.dx * gy.dx;
    MacroParams m;
    m.n = da * f.values.sum();
    if (!(m.n > 0)) throw std::domain_error("macro_parameters: non-positive density");
    Eigen::MatrixXd p = f.values;
    for (long i = 0; i < p.rows(); ++i) p.row(i) = deconvolve(p.row(i).transpose()).transpose();
    for (long j = 0; j < p.cols(); ++j) p.col(j) = deconvolve(p.col(j));
    const Eigen::VectorXd vx = gx.centers(), vy = gy.centers();
    m.vx = da * (vx.transpose() * p).sum() / m.n;
    m.vy = da * (p * vy).sum() / m.n;
    double e = 0.0;
    for (long j = 0; j < p.cols(); ++j)
        for (long i = 0; i < p.rows(); ++i) {
            const double dx = vx[i] - m.vx, dy = vy[j] - m.vy;
            e += (dx * dx + dy * dy) * p(i, j);
        }
    m.T = da * e / (2 * R * m.n);
    return m;
}

Eigen::VectorXd cell_averages_1d(const Grid1D& g, const std::function<double(double)>& u)
{
    const GaussRule& q = gauss_legendre(5);
    Eigen::VectorXd a(g.n_cells);
    for (int j = 0; j < g.n_cells; ++j) {
        double s = 0.0;
        for (int l = 0; l < 5; ++l) s += q.weights[l] * u(g.center(j) + 0.5 * g.dx * q.nodes[l]);
        a[j] = 0.5 * s;
    }
    return a;
}

Eigen::MatrixXd cell_averages_2d(const Grid1D& gx, const Grid1D& gy, const std::function<double(double, double)>& u)
{
    const GaussRule& q = gauss_legendre(5);
    Eigen::MatrixXd a(gx.n_cells, gy.n_cells);
    for (int j = 0; j < gy.n_cells; ++j)
        for (int i = 0; i < gx.n_cells; ++i) {
            double s = 0.0;
            for (int l = 0; l < 5; ++l)
                for (int k = 0; k < 5; ++k)
                    s += q.weights[l] * q.weights[k] *
                         u(gx.center(i) + 0.5 * gx.dx * q.nodes[k], gy.center(j) + 0.5 * gy.dx * q.nodes[l]);
            a(i, j) = 0.25 * s;
        }
    return a;
}

}  // namespace elrk
