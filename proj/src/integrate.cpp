#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "cosserat/errors.hpp"
#include "cosserat/system.hpp"

namespace cosserat {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

// First-order form in mass-normalized modal coordinates q = Phi eta,
// scaled so that every component carries energy in the same units:
//   y = c eta / s,  z = eta' / s.
struct ModalRhs {
    const FreeSystem* fs;
    const Loading* loads;
    const Eigen::MatrixXd* phi;
    Eigen::VectorXd omega2;
    Eigen::VectorXd c;
    double s;
    bool nonlinear;

    Eigen::VectorXd eta(const Eigen::Map<const Eigen::VectorXd>& ys) const {
        return (ys.head(c.size()).array() * s / c.array()).matrix();
    }

    void operator()(const State& y, State& dydt, double t) const {
        const Eigen::Index n = c.size();
        const Eigen::Map<const Eigen::VectorXd> ys(y.data(), 2 * n);
        const Eigen::VectorXd e = eta(ys);
        Eigen::VectorXd f = fs->restrict(loads->full(t, fs->system().dof_count()));
        if (nonlinear) f -= fs->nonlinear_force(*phi * e);
        const Eigen::VectorXd acc = phi->transpose() * f - (omega2.array() * e.array()).matrix();
        Eigen::Map<Eigen::VectorXd> out(dydt.data(), 2 * n);
        out.head(n) = (c.array() * ys.tail(n).array()).matrix();
        out.tail(n) = acc / s;
    }
};

}  // namespace

TimeSeries integrate(const FreeSystem& fs, const Loading& loads, const Eigen::VectorXd& q0,
                     const Eigen::VectorXd& v0, const IntegrateOptions& opts) {
    const int n = fs.size();
    if (q0.size() != n || v0.size() != n) throw UsageError("initial state has the wrong dimension");
    if (!(opts.t_end > 0.0) || !(opts.tol > 0.0) || !(opts.output_dt > 0.0)) {
        throw ConfigurationError("t_end, tol and output_dt must be positive");
    }

    const std::vector<Mode> modes = modal(fs);
    Eigen::MatrixXd phi(n, n);
    Eigen::VectorXd omega(n);
    for (int k = 0; k < n; ++k) {
        phi.col(k) = modes[static_cast<std::size_t>(k)].shape;
        omega(k) = modes[static_cast<std::size_t>(k)].omega;
    }
    // Rigid-body modes get the weight of the lowest elastic one.
    const double wmax = n > 0 ? omega.maxCoeff() : 0.0;
    double wfloor = 1.0;
    for (int k = 0; k < n; ++k) {
        if (omega(k) > 1e-9 * wmax) {
            wfloor = omega(k);
            break;
        }
    }
    const Eigen::VectorXd c = omega.cwiseMax(wfloor);

    // Energy scale: initial state or the static response to the peak load.
    const Eigen::VectorXd mass_v0 = fs.M() * v0;
    const Eigen::VectorXd eta0 = phi.transpose() * (fs.M() * q0);
    const Eigen::VectorXd xi0 = phi.transpose() * mass_v0;
    Eigen::VectorXd fpeak = Eigen::VectorXd::Zero(fs.system().dof_count());
    for (const PointLoad& p : loads.point) fpeak(global_dof(p.node, p.dof)) += std::abs(p.amplitude);
    if (loads.constant.size() == fpeak.size()) fpeak += loads.constant.cwiseAbs();
    const Eigen::VectorXd fmod = phi.transpose() * fs.restrict(fpeak);
    double s = std::max({(c.array() * eta0.array()).matrix().norm(), xi0.norm(), (fmod.array() / c.array()).matrix().norm()});
    if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;

    const ModalRhs rhs{&fs, &loads, &phi, omega.cwiseAbs2(), c, s, opts.nonlinear && fs.system().nonlinear()};
    State y(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] = c(i) * eta0(i) / s;
        y[static_cast<std::size_t>(n + i)] = xi0(i) / s;
    }

    TimeSeries ts;
    const long rows = static_cast<long>(std::floor(opts.t_end / opts.output_dt + 1e-9)) + 1;
    auto record = [&](double t, const State& st) {
        for (double x : st) {
            if (!std::isfinite(x)) throw IntegratorError("state became non-finite", ts.t.empty() ? 0.0 : ts.t.back());
        }
        const Eigen::Map<const Eigen::VectorXd> ys(st.data(), 2 * n);
        ts.t.push_back(t);
        ts.q.push_back(phi * rhs.eta(ys));
        ts.v.push_back(phi * (ys.tail(n) * s));
    };
    ts.t.reserve(static_cast<std::size_t>(rows));
    record(0.0, y);
    // exact initial state, free of the modal round trip
    ts.q.front() = q0;
    ts.v.front() = v0;
    if (rows == 1) return ts;

    auto stepper = odeint::make_dense_output(opts.tol, opts.tol, odeint::runge_kutta_dopri5<State>());
    const double span = opts.t_end;
    const double min_step = 1e-12 * span;
    stepper.initialize(y, 0.0, std::min(opts.output_dt, 1e-3 * span));
    double last_good = 0.0;
    long next = 1;
    State out(y.size());
    try {
        while (next < rows) {
            const auto [t0, t1] = stepper.do_step(rhs);
            if (t1 - t0 < min_step || stepper.current_time_step() < min_step) {
                throw IntegratorError("step size collapsed below 1e-12 of the time span", last_good);
            }
            for (double v : stepper.current_state()) {
                if (!std::isfinite(v)) throw IntegratorError("state became non-finite", last_good);
            }
            while (next < rows) {
                const double t = static_cast<double>(next) * opts.output_dt;
                if (t > t1) break;
                stepper.calc_state(t, out);
                record(t, out);
                ++next;
            }
            last_good = t1;
        }
    } catch (const odeint::step_adjustment_error&) {
        throw IntegratorError("step size control failed", last_good);
    }
    return ts;
}

}  // namespace cosserat
