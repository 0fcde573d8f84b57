#include "ionsim/annealing.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace ionsim {

double AnnealSchedule::t_final_or_default() const {
    return t_final > 0.0 ? t_final : 10.0 * std::max(tau_ev, tau_ev_prime);
}

void AnnealSchedule::validate() const {
    if (!(omega_x0 > 0.0)) throw config_error("AnnealSchedule: omega_x0 must be > 0");
    if (omega_z0 < 0.0) throw config_error("AnnealSchedule: omega_z0 must be >= 0");
    if (!(g0 > 0.0)) throw config_error("AnnealSchedule: g0 must be > 0");
    if (!(tau_ev > 0.0) || !(tau_ev_prime > 0.0))
        throw config_error("AnnealSchedule: time constants must be > 0");
    if (!(tau_ev_prime < tau_ev))
        throw config_error("AnnealSchedule: needs tau_ev' < tau_ev");
}

ScheduleValues schedule_values(double t, const AnnealSchedule& sched) {
    if (t < 0.0) throw config_error("schedule_values: t must be >= 0");
    ScheduleValues v;
    v.omega_x = sched.omega_x0 * std::exp(-t / sched.tau_ev);
    v.omega_z = sched.omega_z0 * std::exp(-t / sched.tau_ev_prime);
    v.g2_weight = 1.0 - std::exp(-t / sched.tau_ev);
    return v;
}

void bloch_rhs(const Eigen::VectorXd& u, Eigen::VectorXd& dudt, double t,
               const AnnealSchedule& sched, const Eigen::MatrixXd& J) {
    const int n = static_cast<int>(J.rows());
    const ScheduleValues f = schedule_values(t, sched);
    const auto x = u.segment(0, n);
    const auto y = u.segment(n, n);
    const auto z = u.segment(2 * n, n);

    // molecular field h_j = sum_{l != j} J_{j,l} <sz_l>
    Eigen::VectorXd h = J * z;
    h -= J.diagonal().cwiseProduct(z);

    dudt.resize(3 * n);
    dudt.segment(0, n) = -f.omega_z * y.array() + 2.0 * f.g2_weight * h.array() * y.array();
    dudt.segment(n, n) = f.omega_z * x.array() - f.omega_x * z.array() -
                         2.0 * f.g2_weight * h.array() * x.array();
    dudt.segment(2 * n, n) = f.omega_x * y.array();
}

Eigen::MatrixXd initial_bloch(int n_sites, const AnnealSchedule& sched,
                              InitialOrientation orientation) {
    Eigen::Vector3d b(sched.omega_x0, 0.0, sched.omega_z0);
    b.normalize();
    if (orientation == InitialOrientation::FieldAntiAligned) b = -b;
    Eigen::MatrixXd bloch(n_sites, 3);
    for (int j = 0; j < n_sites; ++j) bloch.row(j) = b.transpose();
    return bloch;
}

Trajectory integrate_anneal(const AnnealSchedule& sched, const Eigen::MatrixXd& J,
                            const IntegrateOptions& opts) {
    return integrate_anneal(sched, J,
                            initial_bloch(static_cast<int>(J.rows()), sched, opts.orientation),
                            opts);
}

Trajectory integrate_anneal(const AnnealSchedule& sched, const Eigen::MatrixXd& J,
                            const Eigen::MatrixXd& bloch0, const IntegrateOptions& opts) {
    sched.validate();
    const int n = static_cast<int>(J.rows());
    if (J.cols() != n) throw config_error("integrate_anneal: J must be square");
    if (bloch0.rows() != n || bloch0.cols() != 3)
        throw config_error("integrate_anneal: initial state must be N x 3");
    for (int j = 0; j < n; ++j)
        if (std::abs(bloch0.row(j).norm() - 1.0) > 1e-9)
            throw config_error("integrate_anneal: initial Bloch vectors must be unit");

    using state_type = std::vector<double>;
    state_type u(3 * n);
    for (int j = 0; j < n; ++j) {
        u[j] = bloch0(j, 0);
        u[n + j] = bloch0(j, 1);
        u[2 * n + j] = bloch0(j, 2);
    }

    auto system = [&](const state_type& s, state_type& dsdt, double t) {
        Eigen::Map<const Eigen::VectorXd> sm(s.data(), 3 * n);
        Eigen::VectorXd d;
        bloch_rhs(sm, d, t, sched, J);
        dsdt.assign(d.data(), d.data() + 3 * n);
    };

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_dense_output(opts.tolerance, opts.tolerance,
                                          ode::runge_kutta_dopri5<state_type>());
    const double tf = sched.t_final_or_default();
    const double dt_record = tf / opts.n_records;

    Trajectory traj;
    traj.states.reserve(opts.n_records + 1);

    auto record = [&](const state_type& s, double t) {
        AnnealState st;
        st.t = t;
        st.fields = schedule_values(t, sched);
        st.bloch.resize(n, 3);
        for (int j = 0; j < n; ++j) {
            st.bloch(j, 0) = s[j];
            st.bloch(j, 1) = s[n + j];
            st.bloch(j, 2) = s[2 * n + j];
            const double drift = std::abs(st.bloch.row(j).norm() - 1.0);
            if (drift > traj.max_norm_drift) traj.max_norm_drift = drift;
        }
        if (traj.max_norm_drift > opts.norm_tol)
            throw numerical_error("integrate_anneal: Bloch norm drift " +
                                  std::to_string(traj.max_norm_drift) + " exceeds " +
                                  std::to_string(opts.norm_tol) + " at t = " + std::to_string(t));
        traj.states.push_back(std::move(st));
    };

    stepper.initialize(u, 0.0, std::min(dt_record, 1e-3 * tf));
    record(u, 0.0);
    state_type interp(3 * n);
    int next_record = 1;
    while (next_record <= opts.n_records) {
        const double t_target = next_record * dt_record;
        while (stepper.current_time() < t_target) {
            stepper.do_step(system);
            if (!(stepper.current_time_step() > 0.0) ||
                stepper.current_time_step() < 1e-15 * tf)
                throw numerical_error("integrate_anneal: step size underflow at t = " +
                                      std::to_string(stepper.current_time()));
        }
        while (next_record <= opts.n_records &&
               next_record * dt_record <= stepper.current_time()) {
            stepper.calc_state(next_record * dt_record, interp);
            record(interp, next_record * dt_record);
            ++next_record;
        }
    }
    return traj;
}

double fidelity(const Eigen::VectorXd& sz, const Eigen::VectorXi& exact) {
    const int n = static_cast<int>(sz.size());
    if (exact.size() != n) throw config_error("fidelity: dimension mismatch");
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += sz(j) * exact(j);
    return std::abs(acc) / n;
}

double fidelity(const AnnealState& final_state, const Eigen::VectorXi& exact) {
    return fidelity(final_state.bloch.col(2), exact);
}

AdiabaticityReport adiabaticity_check(const Trajectory& traj, const ModeData& modes,
                                      const AnnealSchedule& sched, double threshold) {
    if (traj.states.size() < 3)
        throw config_error("adiabaticity_check: trajectory too sparse for finite differences");
    AdiabaticityReport rep;
    rep.threshold = threshold;
    rep.min_delta = modes.frequencies.minCoeff();
    for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
        const auto& prev = traj.states[k - 1];
        const auto& next = traj.states[k + 1];
        const double dt = next.t - prev.t;
        if (!(dt > 0.0)) continue;
        const double rx = ((next.bloch.col(0) - prev.bloch.col(0)) / dt).cwiseAbs().maxCoeff();
        const double rz = ((next.bloch.col(2) - prev.bloch.col(2)) / dt).cwiseAbs().maxCoeff();
        rep.max_rate_x = std::max(rep.max_rate_x, rx);
        rep.max_rate_z = std::max(rep.max_rate_z, rz);
    }
    rep.rate_over_delta = std::max(rep.max_rate_x, rep.max_rate_z) / rep.min_delta;
    rep.tau_inv_over_delta = 1.0 / (sched.tau_ev * rep.min_delta);
    rep.tau_p_inv_over_delta = 1.0 / (sched.tau_ev_prime * rep.min_delta);
    rep.flagged = rep.rate_over_delta > threshold || rep.tau_inv_over_delta > threshold ||
                  rep.tau_p_inv_over_delta > threshold;
    return rep;
}

} // namespace ionsim
