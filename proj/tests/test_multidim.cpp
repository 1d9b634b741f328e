#include "elrk/multidim.hpp"
#include "elrk/problems.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace elrk;
using oracle::pi;

namespace {

CellField rk4_line(const CellField& f, double dt, const LineProblem& lp)
{
    return el_rk_step(f, butcher_table("rk4"), dt, lp);
}

Field2D initial_field(const ProblemSpec& p, int n)
{
    const Grid1D gx = make_grid(p.ax, p.bx, n), gy = make_grid(p.ay, p.by, n);
    return {gx, gy, cell_averages_2d(gx, gy, p.initial), 0.0};
}

WenoParams linear_weights()
{
    WenoParams w;
    w.linear_weights = true;
    return w;
}

}  // namespace

TEST_SUITE("multidim")
{
    TEST_CASE("Gauss-Legendre rules")
    {
        for (int L = 1; L <= 10; ++L) {
            CAPTURE(L);
            const GaussRule& q = gauss_legendre(L);
            REQUIRE(q.nodes.size() == L);
            CHECK(q.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
            for (int k = 0; k < L; ++k) CHECK(q.nodes[k] == doctest::Approx(-q.nodes[L - 1 - k]).epsilon(1e-14));
            // exact through degree 2L - 1
            const int d = 2 * L - 2;
            CHECK(q.weights.dot(q.nodes.array().pow(d).matrix()) == doctest::Approx(2.0 / (d + 1)).epsilon(1e-13));
            CHECK(std::abs(q.weights.dot(q.nodes.array().pow(d + 1).matrix())) < 1e-14);
        }
        CHECK_THROWS(gauss_legendre(0));
        CHECK_THROWS(gauss_legendre(11));
    }

    TEST_CASE("source cell integrals are exact for quintics")
    {
        const oracle::Poly p{{0.3, -1, 0.5, 2, -0.7, 0.25}};
        const Eigen::VectorXd x = oracle::uniform_nodes(-1, 2, 7);
        const Eigen::VectorXd got = source_cell_integrals([&](double v, double) { return p(v); }, x, 0.0);
        for (int j = 0; j < 7; ++j)
            CHECK(got[j] == doctest::Approx(p.antideriv(x[j + 1]) - p.antideriv(x[j])).epsilon(1e-13));
    }

    TEST_CASE("cells to lines: separable data and exact quartics")
    {
        const Grid1D gx = make_grid(0, 2 * pi, 24), gy = make_grid(0, 2 * pi, 24);
        const Eigen::MatrixXd sep = cell_averages_2d(gx, gy, [](double x, double y) { return std::sin(x) * std::cos(y); });
        const Field2D f{gx, gy, sep};
        const LineSet ls = cells_to_lines(f, Direction::x, 3, BoundaryCondition::periodic);
        CHECK(ls.lines.rows() == 24);
        CHECK(ls.lines.cols() == 72);
        const Eigen::VectorXd sx = oracle::sin_averages(gx.nodes());
        for (int c = 0; c < 72; ++c)
            CHECK((ls.lines.col(c) - sx * std::cos(ls.coords[c])).cwiseAbs().maxCoeff() < 2e-5);

        // quartic in y, constant in x; reconstruction runs across y
        const oracle::Poly q{{0.2, -0.4, 1.0, 0.3, -0.8}};
        const Grid1D g1 = make_grid(-1, 1, 30);
        const Eigen::MatrixXd qa = cell_averages_2d(g1, g1, [&](double, double y) { return q(y); });
        const LineSet lq = cells_to_lines({g1, g1, qa}, Direction::x, 4, BoundaryCondition::periodic, linear_weights());
        for (int c = 3 * 4; c < 27 * 4; ++c)
            CHECK((lq.lines.col(c).array() - q(lq.coords[c])).abs().maxCoeff() < 1e-11);

        const LineSet ly = cells_to_lines({g1, g1, qa.transpose()}, Direction::y, 4, BoundaryCondition::periodic,
                                          linear_weights());
        for (int c = 3 * 4; c < 27 * 4; ++c)
            CHECK((ly.lines.col(c).array() - q(ly.coords[c])).abs().maxCoeff() < 1e-11);
    }

    TEST_CASE("lines to cells inverts cells to lines for three or more nodes")
    {
        std::mt19937 rng(21);
        std::uniform_real_distribution<double> u(-1, 1);
        const Grid1D gx = make_grid(0, 1, 16), gy = make_grid(0, 2, 12);
        Eigen::MatrixXd v(16, 12);
        for (auto& x : v.reshaped()) x = u(rng);
        for (int L = 3; L <= 6; ++L)
            for (Direction d : {Direction::x, Direction::y}) {
                const Field2D f{gx, gy, v};
                CHECK((lines_to_cells(cells_to_lines(f, d, L, BoundaryCondition::periodic)) - v).cwiseAbs().maxCoeff() < 1e-13);
                CHECK((lines_to_cells(cells_to_lines(f, d, L, BoundaryCondition::zero)) - v).cwiseAbs().maxCoeff() < 1e-13);
            }
    }

    TEST_CASE("two-point roundtrip converges at fourth order")
    {
        double prev = 0;
        for (int n : {20, 40, 80}) {
            const Grid1D g = make_grid(0, 2 * pi, n);
            const Eigen::MatrixXd v = cell_averages_2d(g, g, [](double x, double y) { return std::sin(x + y); });
            const Eigen::MatrixXd r = lines_to_cells(cells_to_lines({g, g, v}, Direction::y, 2, BoundaryCondition::periodic));
            const double e = (r - v).cwiseAbs().maxCoeff();
            if (prev > 0) CHECK(std::log2(prev / e) >= 3.8);
            prev = e;
        }
    }

    TEST_CASE("an inert direction leaves the field unchanged")
    {
        ProblemSpec p = registry_get("transport-2d-const");
        p.fy = [](double, double, double, double) { return 0.0; };
        p.dfy = p.fy;
        Field2D f = initial_field(p, 20);
        const Eigen::MatrixXd before = f.values;
        sweep(f, Direction::y, 0.0, 0.7, p, rk4_line);
        CHECK((f.values - before).cwiseAbs().maxCoeff() < 1e-13);
    }

    TEST_CASE("Yoshida coefficients")
    {
        CHECK(2 * kYoshidaG1 + kYoshidaG2 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(2 * std::pow(kYoshidaG1, 3) + std::pow(kYoshidaG2, 3)) < 1e-14);
        CHECK(kYoshidaG2 < 0);
    }

    TEST_CASE("splitting conserves mass and advances the clock")
    {
        for (const char* name : {"rigid-body", "swirling"}) {
            CAPTURE(name);
            const ProblemSpec p = registry_get(name);
            const Field2D f0 = initial_field(p, 32);
            const double dt = cfl_dt_2d(4, f0.grid_x.dx, f0.grid_y.dx, p.max_speed_x, p.max_speed_y);
            const Field2D s = strang_step(f0, dt, p, rk4_line);
            const Field2D y = fourth_order_split_step(f0, dt, p, rk4_line);
            CHECK(s.time == doctest::Approx(dt));
            CHECK(y.time == doctest::Approx(dt));
            CHECK(std::abs(s.values.sum() - f0.values.sum()) <= 1e-12 * std::abs(f0.values.sum()));
            CHECK(std::abs(y.values.sum() - f0.values.sum()) <= 1e-12 * std::abs(f0.values.sum()));
        }
        CHECK_THROWS(fourth_order_split_step(initial_field(registry_get("cd-2d-const"), 8), 0.1,
                                             registry_get("cd-2d-const"), rk4_line));
    }

    TEST_CASE("sweeps commute for diagonal transport with frozen weights")
    {
        // linear weights make every sweep linear and acting on one index only
        const ProblemSpec p = registry_get("transport-2d-const");
        const Grid1D g = make_grid(p.ax, p.bx, 24);
        const Eigen::MatrixXd v =
            cell_averages_2d(g, g, [](double x, double y) { return std::exp(-2 * (x * x + y * y)) + 0.3 * std::sin(x + y); });
        SplitOptions opt;
        opt.weno = linear_weights();
        StepOptions so;
        so.weno = opt.weno;
        const LineStepper lin = [&](const CellField& c, double h, const LineProblem& lp) {
            return el_rk_step(c, butcher_table("rk4"), h, lp, so);
        };
        const double dt = 3 * g.dx;
        Field2D xy{g, g, v}, yx{g, g, v}, x{g, g, v}, y{g, g, v};
        sweep(xy, Direction::x, 0, dt, p, lin, opt);
        sweep(xy, Direction::y, 0, dt, p, lin, opt);
        sweep(yx, Direction::y, 0, dt, p, lin, opt);
        sweep(yx, Direction::x, 0, dt, p, lin, opt);
        CHECK((xy.values - yx.values).cwiseAbs().maxCoeff() < 1e-13);
        // symmetric data: an x sweep mirrors a y sweep
        sweep(x, Direction::x, 0, dt, p, lin, opt);
        sweep(y, Direction::y, 0, dt, p, lin, opt);
        CHECK((x.values - y.values.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    }

    TEST_CASE("constant-velocity transport converges at fifth order with Strang splitting")
    {
        const ProblemSpec p = registry_get("transport-2d-const");
        double prev = 0;
        for (int n : {20, 40}) {
            Field2D f = initial_field(p, n);
            const double T = 0.5;
            const int steps = static_cast<int>(std::ceil(T / cfl_dt_2d(2, f.grid_x.dx, f.grid_y.dx, 1, 1)));
            for (int k = 0; k < steps; ++k) f = strang_step(f, T / steps, p, rk4_line);
            const Eigen::MatrixXd ex =
                cell_averages_2d(f.grid_x, f.grid_y, [&](double x, double y) { return p.exact(x, y, T); });
            const double e = (f.values - ex).cwiseAbs().mean();
            if (prev > 0) CHECK(std::log2(prev / e) >= 4.5);
            prev = e;
        }
    }
}
