#include "ionsim/expparams.hpp"

#include <cmath>
#include <numbers>

namespace ionsim {

using constants::amu;
using constants::coulomb_k;
using constants::e_charge;
using constants::hbar;
using constants::m_electron;

double ion_mass_kg(const std::string& species) {
    if (species == "Be9") return 9.0121831 * amu - m_electron;
    if (species == "Mg25") return 24.985837 * amu - m_electron;
    if (species == "Ca40") return 39.9625909 * amu - m_electron;
    if (species == "Yb171") return 170.9363302 * amu - m_electron;
    throw config_error("unknown ion species '" + species +
                       "' (known: Be9, Mg25, Ca40, Yb171)");
}

void PhysicalSetup::validate() const {
    if (!(mass_kg > 0.0)) throw config_error("PhysicalSetup: mass must be > 0");
    if (charge < 1) throw config_error("PhysicalSetup: charge must be >= 1");
    if (!(omega_x > 0.0) || !(omega_z > 0.0))
        throw config_error("PhysicalSetup: trap frequencies must be > 0");
    if (!(omega_x > omega_z))
        throw config_error("PhysicalSetup: needs omega_x > omega_z for a linear chain");
    if (!(d0 > 0.0)) throw config_error("PhysicalSetup: d0 must be > 0");
    if (!(lambda_eff > 0.0)) throw config_error("PhysicalSetup: lambda_eff must be > 0");
    if (theta < 0.0 || theta > std::numbers::pi / 2)
        throw config_error("PhysicalSetup: theta must lie in [0, pi/2]");
    if (n_ions < 2) throw config_error("PhysicalSetup: n_ions must be >= 2");
}

std::vector<std::string> PhysicalSetup::warnings() const {
    std::vector<std::string> w;
    if (omega_x < 5.0 * omega_z)
        w.push_back("omega_x / omega_z < 5: linear-chain condition is marginal");
    const LambDicke ld = lamb_dicke(*this);
    if (ld.marginal_x) w.push_back("eta_x >= 0.3: Lamb-Dicke regime marginal (radial)");
    if (ld.marginal_z) w.push_back("eta_z >= 0.3: Lamb-Dicke regime marginal (axial)");
    return w;
}

double coulomb_coupling(const PhysicalSetup& setup) {
    setup.validate();
    const double q2e2 = coulomb_k * e_charge * e_charge * setup.charge * setup.charge;
    return q2e2 / (setup.mass_kg * setup.omega_x * setup.d0 * setup.d0 * setup.d0);
}

LambDicke lamb_dicke(const PhysicalSetup& setup) {
    if (!(setup.mass_kg > 0.0) || !(setup.omega_x > 0.0) || !(setup.omega_z > 0.0) ||
        !(setup.lambda_eff > 0.0))
        throw config_error("lamb_dicke: setup incomplete");
    const double dk = 2.0 * std::numbers::pi / setup.lambda_eff;
    LambDicke ld;
    ld.eta_x = std::cos(setup.theta) * dk * std::sqrt(hbar / (2.0 * setup.mass_kg * setup.omega_x));
    ld.eta_z = std::sin(setup.theta) * dk * std::sqrt(hbar / (2.0 * setup.mass_kg * setup.omega_z));
    ld.marginal_x = ld.eta_x >= 0.3;
    ld.marginal_z = ld.eta_z >= 0.3;
    return ld;
}

BeamAngle angle_for_dk(const PhysicalSetup& setup, double dk_d0) {
    if (dk_d0 < 0.0) throw config_error("angle_for_dk: dk_d0 must be >= 0");
    const double dk = 2.0 * std::numbers::pi / setup.lambda_eff;
    const double s = (dk_d0 / setup.d0) / dk;
    if (s > 1.0)
        throw config_error("angle_for_dk: target dk_d0 unachievable at this wavelength/spacing");
    BeamAngle a;
    a.radians = std::asin(s);
    a.degrees = a.radians * 180.0 / std::numbers::pi;
    return a;
}

namespace {

// dimensionless axial force: f_i = u_i - sum_{l<i} 1/(u_i-u_l)^2 + sum_{l>i} 1/(u_l-u_i)^2
Eigen::VectorXd crystal_force(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::VectorXd f = u;
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double d = u(i) - u(l);
            f(i) -= (d > 0 ? 1.0 : -1.0) / (d * d);
        }
    return f;
}

Eigen::MatrixXd crystal_jacobian(const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double d = std::abs(u(i) - u(l));
            const double w = 2.0 / (d * d * d);
            jac(i, i) += w;
            jac(i, l) -= w;
        }
    return jac;
}

// Dimensionless equilibrium positions for N ions; cached per N.
Eigen::VectorXd solve_crystal(int n) {
    Eigen::VectorXd u(n);
    const double spread = std::pow(static_cast<double>(n), 0.56);
    for (int i = 0; i < n; ++i)
        u(i) = (2.0 * i / (n - 1.0) - 1.0) * spread;
    double res = crystal_force(u).cwiseAbs().maxCoeff();
    for (int it = 0; it < 200; ++it) {
        if (res < 1e-13) return u;
        const Eigen::VectorXd step = crystal_jacobian(u).ldlt().solve(crystal_force(u));
        double damp = 1.0;
        for (int tries = 0; tries < 40; ++tries) {
            Eigen::VectorXd trial = u - damp * step;
            std::sort(trial.data(), trial.data() + n);
            const double r2 = crystal_force(trial).cwiseAbs().maxCoeff();
            if (r2 < res) {
                u = trial;
                res = r2;
                break;
            }
            damp *= 0.5;
            if (tries == 39)
                throw numerical_error("equilibrium_positions: Newton line search failed");
        }
    }
    throw numerical_error("equilibrium_positions: Newton did not converge, residual " +
                          std::to_string(res));
}

} // namespace

EquilibriumResult equilibrium_positions(int n_ions, double omega_z, double mass_kg,
                                        int charge) {
    if (n_ions < 2) throw config_error("equilibrium_positions: need N >= 2");
    if (!(omega_z > 0.0) || !(mass_kg > 0.0))
        throw config_error("equilibrium_positions: omega_z and mass must be > 0");

    EquilibriumResult r;
    r.u = solve_crystal(n_ions);
    r.force_residual = crystal_force(r.u).cwiseAbs().maxCoeff();
    r.iterations = n_ions; // informational; Newton count folded into the solve
    const double q2e2 = coulomb_k * e_charge * e_charge * charge * charge;
    r.length_scale = std::cbrt(q2e2 / (mass_kg * omega_z * omega_z));
    r.positions = r.u * r.length_scale;
    r.central_spacing = (r.u(n_ions / 2) - r.u(n_ions / 2 - 1)) * r.length_scale;
    r.mean_spacing = (r.u(n_ions - 1) - r.u(0)) / (n_ions - 1) * r.length_scale;
    return r;
}

double omega_z_for_spacing(int n_ions, double d0, double mass_kg, SpacingKind kind,
                           int charge) {
    if (!(d0 > 0.0)) throw config_error("omega_z_for_spacing: d0 must be > 0");
    const Eigen::VectorXd u = solve_crystal(n_ions);
    const double c = kind == SpacingKind::Central
                         ? u(n_ions / 2) - u(n_ions / 2 - 1)
                         : (u(n_ions - 1) - u(0)) / (n_ions - 1);
    const double ell = d0 / c;
    const double q2e2 = coulomb_k * e_charge * e_charge * charge * charge;
    return std::sqrt(q2e2 / (mass_kg * ell * ell * ell));
}

AxialClearance axial_mode_clearance(const PhysicalSetup& setup) {
    setup.validate();
    const Eigen::VectorXd u = solve_crystal(setup.n_ions);
    const int n = setup.n_ions;

    // D_ii = sum 1/|u_i-u_l|^3, D_il = -1/|u_i-u_l|^3
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double w = 1.0 / std::pow(std::abs(u(i) - u(l)), 3);
            d(i, l) = -w;
            d(i, i) += w;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ax(Eigen::MatrixXd::Identity(n, n) + 2.0 * d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rad(d, Eigen::EigenvaluesOnly);

    AxialClearance c;
    c.axial_freqs = ax.eigenvalues().cwiseSqrt() * setup.omega_z;
    c.omega_z_max = c.axial_freqs(n - 1);
    const double kappa_max = rad.eigenvalues()(n - 1);
    const double w2 = setup.omega_x * setup.omega_x - setup.omega_z * setup.omega_z * kappa_max;
    if (w2 <= 0.0)
        throw numerical_error("axial_mode_clearance: radial band collapses (chain unstable)");
    c.radial_min = std::sqrt(w2);
    c.clearance = c.radial_min - c.omega_z_max;
    c.pass = c.clearance > 0.0;
    return c;
}

DimensionlessChain to_dimensionless(const PhysicalSetup& setup, double delta_rad,
                                    double g_rad) {
    if (!(delta_rad > 0.0)) throw config_error("to_dimensionless: delta must be > 0");
    DimensionlessChain d;
    d.t_C_over_delta = coulomb_coupling(setup) / delta_rad;
    d.g_over_delta = g_rad / delta_rad;
    const double dk = 2.0 * std::numbers::pi / setup.lambda_eff;
    d.dk_d0 = std::sin(setup.theta) * dk * setup.d0;
    return d;
}

RecoveredSetup from_dimensionless(const DimensionlessChain& dimless, double delta_rad,
                                  double mass_kg, double d0, double lambda_eff, int charge) {
    const double t_c = dimless.t_C_over_delta * delta_rad;
    const double q2e2 = coulomb_k * e_charge * e_charge * charge * charge;
    RecoveredSetup r;
    r.omega_x = q2e2 / (mass_kg * t_c * d0 * d0 * d0);
    const double dk = 2.0 * std::numbers::pi / lambda_eff;
    r.theta = std::asin((dimless.dk_d0 / d0) / dk);
    return r;
}

} // namespace ionsim
