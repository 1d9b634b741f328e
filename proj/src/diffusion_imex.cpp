#include "elrk/diffusion_imex.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <stdexcept>

namespace elrk {

Eigen::VectorXd d4_apply(const DiffusionOperator& op, const Eigen::VectorXd& v)
{
    const long n = v.size();
    const bool periodic = op.bc == BoundaryCondition::periodic;
    auto at = [&](long k) {
        if (k >= 0 && k < n) return v[k];
        return periodic ? v[((k % n) + n) % n] : 0.0;
    };
    const double s = 1.0 / (op.dx * op.dx);
    const auto& c = op.stencil;
    Eigen::VectorXd out(n);
    for (long j = 0; j < n; ++j) {
        // symmetric pairing keeps mirrored data mirrored bit-for-bit
        out[j] = s * (c[2] * v[j] + c[1] * (at(j - 1) + at(j + 1)) + c[0] * (at(j - 2) + at(j + 2)));
    }
    return out;
}

namespace {

ImexTableau make(const std::string& name, int s, int sigma, int p)
{
    ImexTableau t;
    t.name = name;
    t.s = s;
    t.sigma = sigma;
    t.order = p;
    t.a_impl = Eigen::MatrixXd::Zero(s + 1, s + 1);
    t.a_expl = Eigen::MatrixXd::Zero(s + 1, s + 1);
    t.b_impl = Eigen::VectorXd::Zero(s + 1);
    t.b_expl = Eigen::VectorXd::Zero(s + 1);
    t.c = Eigen::VectorXd::Zero(s + 1);
    return t;
}

}  // namespace

const std::vector<std::string>& imex_names()
{
    static const std::vector<std::string> names{"IMEX(1,1,1)", "IMEX(1,2,2)", "IMEX(2,2,2)", "IMEX(2,3,3)",
                                                "IMEX(2,3,2)", "IMEX(3,4,3)", "IMEX(4,4,3)"};
    return names;
}

bool is_imex_name(const std::string& name)
{
    for (const auto& n : imex_names())
        if (n == name) return true;
    return false;
}

ImexTableau imex_tableau(const std::string& name)
{
    if (name == "IMEX(1,1,1)") {
        auto t = make(name, 1, 2, 1);
        t.c << 0, 1;
        t.a_impl(1, 1) = 1;
        t.b_impl << 0, 1;
        t.a_expl(1, 0) = 1;
        t.b_expl << 1, 0;
        return t;
    }
    if (name == "IMEX(1,2,2)") {
        auto t = make(name, 1, 2, 2);
        t.c << 0, 0.5;
        t.a_impl(1, 1) = 0.5;
        t.b_impl << 0, 1;
        t.a_expl(1, 0) = 0.5;
        t.b_expl << 0, 1;
        return t;
    }
    if (name == "IMEX(2,2,2)" || name == "IMEX(2,3,2)") {
        const bool two = name == "IMEX(2,2,2)";
        auto t = make(name, 2, two ? 2 : 3, 2);
        const double g = two ? 1.0 - std::sqrt(2.0) / 2 : (2.0 - std::sqrt(2.0)) / 2;
        const double d = two ? 1.0 - 1.0 / (2.0 * g) : -2.0 * std::sqrt(2.0) / 3;
        t.c << 0, g, 1;
        t.a_impl(1, 1) = g;
        t.a_impl(2, 1) = 1 - g;
        t.a_impl(2, 2) = g;
        t.b_impl << 0, 1 - g, g;
        t.a_expl(1, 0) = g;
        t.a_expl(2, 0) = d;
        t.a_expl(2, 1) = 1 - d;
        if (two)
            t.b_expl << d, 1 - d, 0;
        else
            t.b_expl << 0, 1 - g, g;
        return t;
    }
    if (name == "IMEX(2,3,3)") {
        auto t = make(name, 2, 3, 3);
        const double g = (3.0 + std::sqrt(3.0)) / 6;
        t.c << 0, g, 1 - g;
        t.a_impl(1, 1) = g;
        t.a_impl(2, 1) = 1 - 2 * g;
        t.a_impl(2, 2) = g;
        t.b_impl << 0, 0.5, 0.5;
        t.a_expl(1, 0) = g;
        t.a_expl(2, 0) = g - 1;
        t.a_expl(2, 1) = 2 * (1 - g);
        t.b_expl << 0, 0.5, 0.5;
        return t;
    }
    if (name == "IMEX(3,4,3)") {
        auto t = make(name, 3, 4, 3);
        const double g = 0.435867;
        t.c << 0, g, 0.717933, 1;
        t.a_impl(1, 1) = g;
        t.a_impl(2, 1) = 0.282067;
        t.a_impl(2, 2) = g;
        t.a_impl(3, 1) = 1.208497;
        t.a_impl(3, 2) = -0.644363;
        t.a_impl(3, 3) = g;
        t.b_impl << 0, 1.208497, -0.644363, g;
        t.a_expl(1, 0) = g;
        t.a_expl(2, 0) = 0.321279;
        t.a_expl(2, 1) = 0.396654;
        t.a_expl(3, 0) = -0.105858;
        t.a_expl(3, 1) = 0.552929;
        t.a_expl(3, 2) = 0.552929;
        t.b_expl << 0, 1.208497, -0.644363, g;
        return t;
    }
    if (name == "IMEX(4,4,3)") {
        auto t = make(name, 4, 4, 3);
        t.c << 0, 0.5, 2.0 / 3, 0.5, 1;
        t.a_impl(1, 1) = 0.5;
        t.a_impl(2, 1) = 1.0 / 6;
        t.a_impl(2, 2) = 0.5;
        t.a_impl(3, 1) = -0.5;
        t.a_impl(3, 2) = 0.5;
        t.a_impl(3, 3) = 0.5;
        t.a_impl(4, 1) = 1.5;
        t.a_impl(4, 2) = -1.5;
        t.a_impl(4, 3) = 0.5;
        t.a_impl(4, 4) = 0.5;
        t.b_impl << 0, 1.5, -1.5, 0.5, 0.5;
        t.a_expl(1, 0) = 0.5;
        t.a_expl(2, 0) = 11.0 / 18;
        t.a_expl(2, 1) = 1.0 / 18;
        t.a_expl(3, 0) = 5.0 / 6;
        t.a_expl(3, 1) = -5.0 / 6;
        t.a_expl(3, 2) = 0.5;
        t.a_expl(4, 0) = 0.25;
        t.a_expl(4, 1) = 1.75;
        t.a_expl(4, 2) = 0.75;
        t.a_expl(4, 3) = -1.75;
        t.b_expl << 0.25, 1.75, 0.75, -1.75, 0;
        return t;
    }
    throw std::invalid_argument("unknown IMEX tableau: " + name);
}

struct DiffusionSolverCache::Entry {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

namespace {

Eigen::SparseMatrix<double> system_matrix(const DiffusionOperator& op, long n, double theta)
{
    // I - theta * stencil, theta already carries 1/dx^2
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    const bool periodic = op.bc == BoundaryCondition::periodic;
    for (long j = 0; j < n; ++j) {
        trip.emplace_back(j, j, 1.0);
        for (int o = -2; o <= 2; ++o) {
            long k = j + o;
            if (periodic)
                k = ((k % n) + n) % n;
            else if (k < 0 || k >= n)
                continue;
            trip.emplace_back(j, k, -theta * op.stencil[o + 2]);
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

}  // namespace

Eigen::VectorXd DiffusionSolverCache::solve(const DiffusionOperator& op, double theta, const Eigen::VectorXd& rhs)
{
    const long n = rhs.size();
    const auto key = std::make_tuple(theta, n, static_cast<int>(op.bc));
    std::shared_ptr<Entry> e;
    {
        std::lock_guard<std::mutex> lk(m_);
        auto it = map_.find(key);
        if (it != map_.end()) e = it->second;
    }
    if (!e) {
        e = std::make_shared<Entry>();
        e->ldlt.compute(system_matrix(op, n, theta));
        if (e->ldlt.info() != Eigen::Success) throw std::runtime_error("implicit diffusion system is singular");
        std::lock_guard<std::mutex> lk(m_);
        if (map_.size() > 64) map_.clear();
        map_.emplace(key, e);
    }
    return e->ldlt.solve(rhs);
}

std::size_t DiffusionSolverCache::size() const
{
    std::lock_guard<std::mutex> lk(m_);
    return map_.size();
}

Eigen::VectorXd implicit_stage_solve(const DiffusionOperator& op, double a_diag, double dt, const Eigen::VectorXd& rhs,
                                     DiffusionSolverCache* cache)
{
    if (!(a_diag > 0.0)) throw std::invalid_argument("implicit_stage_solve: diagonal coefficient must be positive");
    const double theta = a_diag * op.epsilon * dt / (op.dx * op.dx);
    if (theta == 0.0) return rhs;
    if (cache) return cache->solve(op, theta, rhs);
    DiffusionSolverCache local;
    return local.solve(op, theta, rhs);
}

namespace {

void check_lags(const Grid1D& g, const Eigen::VectorXd& nu, double lo, double hi)
{
    // widths are affine in the lag, so the extreme lags decide
    for (double lag : {lo, hi}) {
        if (lag == 0.0) continue;
        const PartitionReport r = validate_partition(TracebackGrid{g, nu, lag});
        if (!r.ok) throw PartitionError(r);
    }
}

}  // namespace

CellField el_imex_step_with_speeds(const CellField& field, const ImexTableau& T, double dt, const LineProblem& p,
                                   const Eigen::VectorXd& nu, const StepOptions& opt, DiffusionSolverCache* cache)
{
    const Grid1D& g = field.grid;
    const int s = T.s;
    const double t0 = field.time;
    const bool diff = p.epsilon > 0.0;
    const bool src = static_cast<bool>(p.source);

    double lo = std::min(0.0, dt), hi = std::max(0.0, dt);
    for (int m = 1; m <= s; ++m)
        for (int v = 1; v < m; ++v) {
            const double lag = (T.c[m] - T.c[v]) * dt;
            lo = std::min(lo, lag);
            hi = std::max(hi, lag);
        }
    check_lags(g, nu, lo, hi);

    const DiffusionOperator op{g.dx, p.epsilon, p.bc};
    auto khat = [&](const Eigen::VectorXd& avgs, const Eigen::VectorXd& x, double t) {
        return modified_flux_rhs(x, avgs, nu, p, t, opt);
    };
    // epsilon * (cell integral of u_xx) + cell integral of g
    auto kdiff = [&](const PolySet* uxx, const Eigen::VectorXd& x, double t) {
        Eigen::VectorXd k = Eigen::VectorXd::Zero(g.n_cells);
        if (diff) k = p.epsilon * remap(*uxx, g, x).integrals;
        if (src) k += source_cell_integrals(p.source, x, t);
        return k;
    };

    // which stage quantities are consumed later
    std::vector<bool> need_k(s + 1, false), need_kh(s + 1, false);
    for (int k = 0; k <= s; ++k) {
        need_k[k] = T.b_impl[k] != 0.0;
        need_kh[k] = T.b_expl[k] != 0.0;
        for (int m = k + 1; m <= s; ++m) {
            need_k[k] = need_k[k] || T.a_impl(m, k) != 0.0;
            need_kh[k] = need_kh[k] || T.a_expl(m, k) != 0.0;
        }
    }

    const PolySet ps0(field.values, p.bc, opt.weno);
    const Eigen::VectorXd xw0 = traced_nodes(g, nu, dt);
    const RemapResult rw0 = remap(ps0, g, xw0);
    const Eigen::VectorXd& U0 = rw0.integrals;

    std::vector<Eigen::VectorXd> K(s + 1), Kh(s + 1);
    std::vector<std::unique_ptr<PolySet>> ps_u(s + 1), ps_uxx(s + 1);
    Kh[0] = khat(rw0.averages, xw0, t0);

    for (int mu = 1; mu <= s; ++mu) {
        const double cm = T.c[mu];
        const double tm = t0 + cm * dt;
        Eigen::VectorXd rhs;
        if (cm == 1.0) {
            // the sub-region is the full region; its stage quantities are already stored
            rhs = U0 + dt * T.a_expl(mu, 0) * Kh[0];
            for (int v = 1; v < mu; ++v) {
                if (T.a_impl(mu, v) != 0.0) rhs += dt * T.a_impl(mu, v) * K[v];
                if (T.a_expl(mu, v) != 0.0) rhs += dt * T.a_expl(mu, v) * Kh[v];
            }
        } else {
            const Eigen::VectorXd xs0 = traced_nodes(g, nu, cm * dt);
            const RemapResult rs0 = remap(ps0, g, xs0);
            rhs = rs0.integrals;
            if (T.a_expl(mu, 0) != 0.0) rhs += dt * T.a_expl(mu, 0) * khat(rs0.averages, xs0, t0);
            for (int v = 1; v < mu; ++v) {
                const double tv = t0 + T.c[v] * dt;
                const Eigen::VectorXd x = traced_nodes(g, nu, (cm - T.c[v]) * dt);
                if (T.a_impl(mu, v) != 0.0 && (diff || src))
                    rhs += dt * T.a_impl(mu, v) * kdiff(ps_uxx[v].get(), x, tv);
                if (T.a_expl(mu, v) != 0.0)
                    rhs += dt * T.a_expl(mu, v) * khat(remap(*ps_u[v], g, x).averages, x, tv);
            }
        }
        if (src) rhs += T.a_impl(mu, mu) * dt * source_cell_integrals(p.source, g.nodes(), tm);

        const Eigen::VectorXd U = implicit_stage_solve(op, T.a_impl(mu, mu), dt, rhs, cache);
        const Eigen::VectorXd ubar = U / g.dx;
        ps_u[mu] = std::make_unique<PolySet>(ubar, p.bc, opt.weno);
        if (diff) ps_uxx[mu] = std::make_unique<PolySet>(d4_apply(op, ubar), p.bc, opt.weno);

        // stage contributions on the full region at t^(mu)
        const Eigen::VectorXd x = traced_nodes(g, nu, (1.0 - cm) * dt);
        if (need_k[mu]) K[mu] = kdiff(ps_uxx[mu].get(), x, tm);
        if (need_kh[mu]) Kh[mu] = khat(remap(*ps_u[mu], g, x).averages, x, tm);
    }

    Eigen::VectorXd U = U0;
    for (int k = 1; k <= s; ++k)
        if (T.b_impl[k] != 0.0) U += dt * T.b_impl[k] * K[k];
    for (int k = 0; k <= s; ++k)
        if (T.b_expl[k] != 0.0) U += dt * T.b_expl[k] * Kh[k];
    return {g, U / g.dx, t0 + dt};
}

CellField el_imex_step(const CellField& field, const ImexTableau& tab, double dt, const LineProblem& p,
                       const StepOptions& opt, DiffusionSolverCache* cache)
{
    const Eigen::VectorXd nu = rh_speeds(field, p.f, p.df, p.bc, opt.rh_threshold);
    return el_imex_step_with_speeds(field, tab, dt, p, nu, opt, cache);
}

}  // namespace elrk
