#include "elrk/harness.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace elrk;
using oracle::pi;

namespace {

RunConfig quick(const std::string& problem, int n, double cfl, double tf)
{
    RunConfig c;
    c.problem = problem;
    c.n_cells = n;
    c.cfl = cfl;
    c.final_time = tf;
    return c;
}

ConvergenceReport table(std::initializer_list<std::array<double, 2>> rows)
{
    ConvergenceReport r;
    for (const auto& [n, e] : rows) r.rows.push_back({static_cast<int>(n), {e, 0.5 * e, 0.3 * e}});
    fill_orders(r);
    return r;
}

}  // namespace

TEST_SUITE("harness")
{
    TEST_CASE("error norms")
    {
        const Grid1D g = make_grid(0, 2 * pi, 40);
        const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(40, -1, 1);
        const Norms z = error_norms(CellField{g, v}, v);
        CHECK(z.L1 == 0.0);
        CHECK(z.L2 == 0.0);
        CHECK(z.Linf == 0.0);

        const Norms c = error_norms(CellField{g, (v.array() + 0.25).matrix()}, v);
        CHECK(c.L1 == doctest::Approx(2 * pi * 0.25));
        CHECK(c.Linf == doctest::Approx(0.25));
        CHECK(c.L2 == doctest::Approx(std::sqrt(2 * pi) * 0.25));
        const Norms d = error_norms(CellField{g, (v.array() + 0.25).matrix()}, v, true);
        CHECK(d.L2 == doctest::Approx(g.dx * std::sqrt(40.0) * 0.25));

        const Field2D f{g, make_grid(0, 1, 10), Eigen::MatrixXd::Constant(40, 10, 1.5)};
        const Norms n2 = error_norms(f, Eigen::MatrixXd::Constant(40, 10, 1.0));
        CHECK(n2.L1 == doctest::Approx(2 * pi * 0.5));
        CHECK(n2.L2 == doctest::Approx(std::sqrt(2 * pi) * 0.5));
        CHECK(n2.Linf == doctest::Approx(0.5));

        CHECK_THROWS(error_norms(CellField{g, v}, Eigen::VectorXd::Zero(39)));
    }

    TEST_CASE("config resolution")
    {
        const RunConfig a = resolve(quick("transport-1d-const", 20, 1, 1), registry_get("transport-1d-const"));
        CHECK(a.time_scheme == "rk4");
        CHECK(a.splitting == "none");
        const RunConfig b = resolve(quick("cd-2d-const", 20, 1, kNaN), registry_get("cd-2d-const"));
        CHECK(b.time_scheme == "IMEX(2,3,3)");
        CHECK(b.splitting == "strang");
        CHECK(b.final_time == 0.5);

        RunConfig bad = quick("cd-1d-const", 20, 1, 1);
        bad.time_scheme = "rk4";
        CHECK_THROWS_AS(resolve(bad, registry_get("cd-1d-const")), ConfigError);
        bad = quick("cd-2d-const", 20, 1, 1);
        bad.splitting = "fourth-order";
        CHECK_THROWS_AS(resolve(bad, registry_get("cd-2d-const")), ConfigError);
        bad = quick("transport-1d-const", 20, 1, 1);
        bad.splitting = "strang";
        CHECK_THROWS_AS(resolve(bad, registry_get("transport-1d-const")), ConfigError);
        bad = quick("transport-1d-const", 3, 1, 1);
        CHECK_THROWS_AS(resolve(bad, registry_get("transport-1d-const")), ConfigError);
        bad = quick("transport-1d-const", 20, 1, 1);
        bad.time_scheme = "rk45";
        CHECK_THROWS_AS(resolve(bad, registry_get("transport-1d-const")), ConfigError);
        bad = quick("rigid-body", 20, 1, 1);
        bad.gauss_order = 11;
        CHECK_THROWS_AS(resolve(bad, registry_get("rigid-body")), ConfigError);
        bad = quick("transport-1d-const", 20, 1, 1);
        bad.reference_n = 50;
        CHECK_THROWS_AS(resolve(bad, registry_get("transport-1d-const")), ConfigError);
    }

    TEST_CASE("the last step is clipped onto the final time")
    {
        RunConfig c = quick("transport-1d-const", 20, 0.9, 1.0);
        c.snapshot_times = {0.5};
        const RunResult r = run_single(c);
        CHECK(std::abs(r.time - 1.0) <= 1e-14);
        CHECK(r.steps == static_cast<long>(std::ceil(1.0 / r.dt)));
        REQUIRE(r.snapshots.size() == 1);
        CHECK(std::abs(r.snapshots[0].t - 0.5) <= 0.5 * r.dt);
        CHECK(r.min_seen <= r.values.minCoeff());
        CHECK(r.max_seen >= r.values.maxCoeff());
    }

    TEST_CASE("runs are deterministic")
    {
        const RunConfig c = quick("burgers-1d-viscous", 40, 8, 0.5);
        const RunResult a = run_single(c), b = run_single(c);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
        const RunConfig c2 = quick("rigid-body", 16, 4, 0.3);
        CHECK((run_single(c2).values - run_single(c2).values).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("convergence ladders")
    {
        const ConvergenceReport one = convergence_study(quick("transport-1d-const", 20, 8, 1), {20});
        REQUIRE(one.rows.size() == 1);
        CHECK(std::isnan(one.rows[0].order.L1));
        CHECK(std::isnan(one.rows[0].order.Linf));

        RunConfig fe = quick("transport-1d-const", 50, 8, 1);
        fe.time_scheme = "forward-euler";
        const ConvergenceReport r = convergence_study(fe, {50, 100});
        REQUIRE(r.rows.size() == 2);
        CHECK(r.scheme == "forward-euler");
        for (const auto& row : r.rows) CHECK(row.err.L1 <= 2 * pi * row.err.Linf * (1 + 1e-12));
        CHECK(r.rows[1].order.L1 ==
              doctest::Approx(std::log(r.rows[0].err.L1 / r.rows[1].err.L1) / std::log(2.0)).epsilon(1e-14));
        CHECK(r.rows[1].err.L1 == doctest::Approx(3.34e-10).epsilon(2.0));
        CHECK(r.rows[1].err.Linf == doctest::Approx(8.34e-11).epsilon(2.0));

        CHECK_THROWS_AS(convergence_study(quick("swirling-disc", 20, 8, 1), {20}), ConfigError);
    }

    TEST_CASE("reference-mesh errors")
    {
        RunConfig c = quick("swirling-diffusion", 10, 1.0, 0.02);
        c.reference_n = 40;
        c.reference_cfl = 0.5;
        const ConvergenceReport r = convergence_study(c, {10, 20});
        REQUIRE(r.rows.size() == 2);
        CHECK(r.rows[1].err.L1 < r.rows[0].err.L1);
    }

    TEST_CASE("golden comparison")
    {
        const ConvergenceReport g = table({{50, 1e-6}, {100, 3e-8}, {200, 1e-9}});
        CHECK(golden_compare(g, g).pass);

        ConvergenceReport off = g;
        off.rows[1].err.L2 *= 10;
        fill_orders(off);
        const GoldenResult r = golden_compare(off, g);
        CHECK_FALSE(r.pass);
        bool named = false;
        for (const auto& d : r.diffs) named = named || (d.find("N=100") != std::string::npos && d.find("L2") != std::string::npos);
        CHECK(named);

        ConvergenceReport slight = g;
        slight.rows[2].err.L1 *= 1.2;
        fill_orders(slight);
        CHECK(golden_compare(slight, g).pass);

        // missing golden entries are skipped, missing rows fail
        ConvergenceReport partial = g;
        partial.rows[2].err.Linf = kNaN;
        partial.rows[2].order.Linf = kNaN;
        CHECK(golden_compare(g, partial).pass);
        ConvergenceReport shorter = g;
        shorter.rows.pop_back();
        CHECK_FALSE(golden_compare(shorter, g).pass);
    }

    TEST_CASE("report CSV roundtrip")
    {
        ConvergenceReport r = table({{50, 1.0877e-8}, {100, 3.3412e-10}});
        std::stringstream ss;
        write_report_csv(ss, r);
        const std::string text = ss.str();
        CHECK(text.rfind("N,L1,L1_order,L2,L2_order,Linf,Linf_order", 0) == 0);
        const ConvergenceReport back = read_report_csv(ss);
        REQUIRE(back.rows.size() == 2);
        CHECK(back.rows[1].n == 100);
        CHECK(back.rows[1].err.L1 == doctest::Approx(3.3412e-10).epsilon(1e-8));
        CHECK(std::isnan(back.rows[0].order.L1));
        CHECK(back.rows[1].order.L1 == doctest::Approx(r.rows[1].order.L1).epsilon(1e-8));

        std::istringstream bad("x,y\n1,2\n");
        CHECK_THROWS_AS(read_report_csv(bad), ConfigError);

        const std::string js = report_json(r, quick("transport-1d-const", 50, 8, 1));
        CHECK(js.find("\"rows\"") != std::string::npos);
    }

    TEST_CASE("every golden table parses")
    {
        namespace fs = std::filesystem;
        int count = 0;
        for (const auto& e : fs::directory_iterator(fs::path(ELRK_DATA_DIR) / "golden")) {
            if (e.path().filename() == "index.csv") continue;
            CAPTURE(e.path().string());
            std::ifstream in(e.path());
            const ConvergenceReport g = read_report_csv(in);
            CHECK(g.rows.size() >= 2);
            for (const auto& row : g.rows) CHECK(row.err.L1 > 0);
            ++count;
        }
        CHECK(count >= 30);
    }

    TEST_CASE("config files")
    {
        const std::string path = (std::filesystem::temp_directory_path() / "elrk_test.cfg").string();
        {
            std::ofstream os(path);
            os << "# ladder\nproblem = burgers-1d-viscous\nn = 50,100\ncfl=8\nscheme=IMEX(2,3,3)\n"
                  "weno.epsilon = 1e-10\nl2 = displayed\n\ngauss-order=4\n";
        }
        const auto kv = read_config_file(path);
        CHECK(kv.at("problem") == "burgers-1d-viscous");
        RunConfig c;
        apply_config(c, kv);
        CHECK(c.problem == "burgers-1d-viscous");
        CHECK(c.n_cells == 50);
        CHECK(c.cfl == 8);
        CHECK(c.time_scheme == "IMEX(2,3,3)");
        CHECK(c.step.weno.epsilon_w == 1e-10);
        CHECK(c.l2_displayed);
        CHECK(c.gauss_order == 4);

        CHECK_THROWS_AS(apply_config(c, {{"colour", "red"}}), ConfigError);
        CHECK_THROWS_AS(apply_config(c, {{"cfl", "fast"}}), ConfigError);
        CHECK_THROWS_AS(apply_config(c, {{"n", "12.5"}}), ConfigError);
        CHECK_THROWS_AS(apply_config(c, {{"l2", "cubic"}}), ConfigError);
        {
            std::ofstream os(path);
            os << "problem burgers\n";
        }
        CHECK_THROWS_AS(read_config_file(path), ConfigError);
        std::filesystem::remove(path);
        CHECK_THROWS_AS(read_config_file(path), ConfigError);
    }

    TEST_CASE("kinetic runs record the macro series")
    {
        // fine enough that the zero-bc ends stay at round-off level
        const RunResult r = run_single(quick("fokker-planck-0d1v", 100, 2, 0.2));
        REQUIRE(r.macro.size() == static_cast<std::size_t>(r.steps + 1));
        for (const auto& s : r.macro) CHECK(std::abs(s.mass - r.macro.front().mass) <= 1e-12 * r.macro.front().mass);
        CHECK(r.macro.front().m.n == doctest::Approx(pi).epsilon(1e-6));
        std::stringstream ss;
        write_macro_csv(ss, r);
        CHECK(ss.str().rfind("t,n,vx,vy,T,mass,l1_to_target", 0) == 0);
    }
}
