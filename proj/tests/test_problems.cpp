#include "elrk/problems.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace elrk;
using oracle::pi;

TEST_SUITE("problems")
{
    TEST_CASE("registry")
    {
        for (const auto& name : registry_names()) {
            CAPTURE(name);
            const ProblemSpec p = registry_get(name);
            CHECK(p.name == name);
            CHECK(p.bx > p.ax);
            CHECK(static_cast<bool>(p.initial));
            CHECK((p.dimension == 1 || p.dimension == 2));
            CHECK(p.epsilon >= 0.0);
            if (p.kinetic) CHECK(p.bc == BoundaryCondition::zero);
        }
        CHECK_THROWS_AS(registry_get("no-such-problem"), std::invalid_argument);

        const ProblemSpec b = registry_get("burgers-1d-viscous");
        CHECK(b.epsilon == 0.1);
        CHECK(b.ax == 0.0);
        CHECK(b.bx == 2.0);
        const ProblemSpec f = registry_get("fokker-planck-0d2v");
        CHECK(f.dimension == 2);
        CHECK(f.ax == doctest::Approx(-2 * pi));
        CHECK(f.epsilon == doctest::Approx(0.5));
        CHECK(std::isnan(registry_get("rigid-body").exact_time));
        CHECK(registry_get("swirling").exact_time == doctest::Approx(1.5));
    }

    TEST_CASE("Burgers series")
    {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(0, 2);
        for (int k = 0; k < 50; ++k) {
            const double x = u(rng);
            CHECK(burgers_exact(x, 0.0, 0.1) == doctest::Approx(0.2 * std::sin(pi * x)).epsilon(1e-12).scale(1));
            CHECK(std::abs(burgers_exact(x, 0.3, 0.1, 10) - burgers_exact(x, 0.3, 0.1, 11)) < 1e-14);
        }
        for (double t : {0.0, 0.5, 1.0}) {
            CHECK(std::abs(burgers_exact(0.0, t, 0.1)) < 1e-15);
            CHECK(std::abs(burgers_exact(1.0, t, 0.1)) < 1e-14);
            // odd about x = 1
            CHECK(burgers_exact(0.7, t, 0.1) == doctest::Approx(-burgers_exact(1.3, t, 0.1)).epsilon(1e-13));
        }
        CHECK(std::abs(burgers_exact(0.5, 1.0, 0.1)) < 0.2 * std::exp(-0.1 * pi * pi * 1.0) * 1.05);
    }

    TEST_CASE("Maxwellians")
    {
        const ProblemSpec p = registry_get("fokker-planck-0d1v");
        CHECK(maxwellian(p.target, 0.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
        for (double v : {0.3, 1.1, 2.7}) CHECK(maxwellian(p.target, v) == maxwellian(p.target, -v));
        const MaxwellianParams m{2.0, 0.5, -0.25, 1.0, 0.8};
        const Grid1D g = make_grid(-8, 8, 400);
        const Eigen::MatrixXd a = cell_averages_2d(g, g, [&](double x, double y) { return maxwellian(m, x, y, 2); });
        CHECK(a.sum() * g.dx * g.dx == doctest::Approx(2.0).epsilon(1e-10));
    }

    TEST_CASE("macroscopic moments")
    {
        const ProblemSpec p = registry_get("fokker-planck-0d2v-bimaxwellian");
        const Grid1D g = make_grid(p.ax, p.bx, 200);
        const Field2D f{g, g, cell_averages_2d(g, g, p.initial)};
        const MacroParams m = macro_parameters(f, p.target.R);
        CHECK(m.n == doctest::Approx(pi).epsilon(1e-8));
        CHECK(std::abs(m.vx) < 1e-8);
        CHECK(std::abs(m.vy) < 1e-12);
        CHECK(m.T == doctest::Approx(3.0).epsilon(1e-8));

        Field2D twice = f;
        twice.values *= 2;
        const MacroParams m2 = macro_parameters(twice, p.target.R);
        CHECK(m2.n == doctest::Approx(2 * m.n).epsilon(1e-14));
        CHECK(m2.vx == doctest::Approx(m.vx).scale(1).epsilon(1e-14));
        CHECK(m2.T == doctest::Approx(m.T).epsilon(1e-14));

        const ProblemSpec p1 = registry_get("fokker-planck-0d1v");
        const Grid1D g1 = make_grid(p1.ax, p1.bx, 100);
        const MacroParams one = macro_parameters(CellField{g1, cell_averages_1d(g1, [&](double v) { return p1.initial(v, 0); })}, p1.target.R);
        CHECK(one.n == doctest::Approx(pi).epsilon(1e-9));
        CHECK(std::abs(one.vx) < 1e-12);
        CHECK(one.T == doctest::Approx(3.0).epsilon(1e-7));

        CHECK_THROWS(macro_parameters(CellField{g1, Eigen::VectorXd::Zero(100)}, 1.0));
    }

    TEST_CASE("exact solutions satisfy their PDEs")
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        const double h = 1e-4;
        for (const auto& name : registry_names()) {
            const ProblemSpec p = registry_get(name);
            if (!p.exact || !std::isnan(p.exact_time) || name == "rigid-body-box") continue;
            CAPTURE(name);
            const auto g = p.source ? p.source : Field2Fn([](double, double, double) { return 0.0; });
            for (int k = 0; k < 20; ++k) {
                const double x = p.ax + u(rng) * (p.bx - p.ax);
                const double y = p.dimension == 2 ? p.ay + u(rng) * (p.by - p.ay) : 0.0;
                const double t = 0.1 + 0.4 * u(rng);
                auto U = [&](double xx, double yy, double tt) { return p.exact(xx, yy, tt); };
                const double ut = (U(x, y, t + h) - U(x, y, t - h)) / (2 * h);
                const double fx = (p.fx(U(x + h, y, t), x + h, y, t) - p.fx(U(x - h, y, t), x - h, y, t)) / (2 * h);
                const double uxx = (U(x + h, y, t) - 2 * U(x, y, t) + U(x - h, y, t)) / (h * h);
                double fy = 0, uyy = 0;
                if (p.dimension == 2) {
                    fy = (p.fy(U(x, y + h, t), x, y + h, t) - p.fy(U(x, y - h, t), x, y - h, t)) / (2 * h);
                    uyy = (U(x, y + h, t) - 2 * U(x, y, t) + U(x, y - h, t)) / (h * h);
                }
                const double r = ut + fx + fy - p.epsilon * (uxx + uyy) - g(x, y, t);
                CHECK(std::abs(r) < 1e-5);
            }
        }
    }

    TEST_CASE("exact solutions match the initial data")
    {
        for (const auto& name : registry_names()) {
            const ProblemSpec p = registry_get(name);
            if (!p.exact || !std::isnan(p.exact_time)) continue;
            CAPTURE(name);
            for (double x : {0.13, 0.61, 0.87}) {
                const double xx = p.ax + x * (p.bx - p.ax), yy = p.ay + (1 - x) * (p.by - p.ay);
                CHECK(p.exact(xx, yy, 0.0) == doctest::Approx(p.initial(xx, yy)).epsilon(1e-12).scale(1));
            }
        }
    }

    TEST_CASE("line restriction scales the source")
    {
        const ProblemSpec p = registry_get("burgers-2d-viscous");
        const LineProblem lx = line_problem(p, Direction::x, 0.4, 0.5);
        const LineProblem ly = line_problem(p, Direction::y, -0.9, 0.5);
        CHECK(lx.source(0.3, 0.2) == doctest::Approx(0.5 * p.source(0.3, 0.4, 0.2)));
        CHECK(ly.source(0.3, 0.2) == doctest::Approx(0.5 * p.source(-0.9, 0.3, 0.2)));
        CHECK(lx.f(0.7, 0.3, 0.2) == doctest::Approx(p.fx(0.7, 0.3, 0.4, 0.2)));
        CHECK(ly.df(0.7, 0.3, 0.2) == doctest::Approx(p.dfy(0.7, -0.9, 0.3, 0.2)));
        CHECK(lx.epsilon == p.epsilon);
        CHECK_FALSE(static_cast<bool>(line_problem(registry_get("rigid-body"), Direction::x, 0.0, 0.5).source));
    }

    TEST_CASE("cell averages use five-point Gauss")
    {
        const Grid1D g = make_grid(0, 1, 7);
        const oracle::Poly q{{1, -2, 0.5, 3, -1, 0.7, 0.2, -0.4, 0.1, 0.3}};
        const Eigen::VectorXd a = cell_averages_1d(g, q);
        const Eigen::VectorXd want = oracle::averages([&](double l, double r) { return q.average(l, r); }, g.nodes());
        CHECK((a - want).cwiseAbs().maxCoeff() < 1e-14);
    }
}
