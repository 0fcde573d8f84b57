#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ionsim/chain_config.hpp"

namespace ionsim {

namespace constants {
inline constexpr double e_charge = 1.602176634e-19;        // C
inline constexpr double coulomb_k = 8.9875517873681764e9;  // 1/(4 pi eps0), N m^2/C^2
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double amu = 1.66053906660e-27;           // kg
inline constexpr double m_electron = 9.1093837015e-31;     // kg
} // namespace constants

// Ion mass for Be9, Mg25, Ca40, Yb171 (one electron removed).
double ion_mass_kg(const std::string& species);

// Physical trap and laser parameters, SI units; frequencies are angular.
struct PhysicalSetup {
    double mass_kg = 0.0;
    int charge = 1;            // elementary charges
    double omega_x = 0.0;      // radial trap frequency, rad/s
    double omega_z = 0.0;      // axial trap frequency, rad/s
    double d0 = 0.0;           // ion spacing, m
    double lambda_eff = 0.0;   // effective optical wavelength, m
    double theta = 0.0;        // beam angle from the transverse direction, rad
    int n_ions = 2;

    void validate() const;
    // Soft conditions worth surfacing (linear-chain ratio, Lamb-Dicke margin).
    std::vector<std::string> warnings() const;
};

// t_C = q^2 e^2 /(4 pi eps0 m omega_x d0^3), returned as angular frequency (rad/s).
double coulomb_coupling(const PhysicalSetup& setup);

struct LambDicke {
    double eta_x;
    double eta_z;
    bool marginal_x; // eta >= 0.3
    bool marginal_z;
};

// eta_beta = dk_beta sqrt(hbar/(2 m omega_beta)), dk_x = cos(theta)|dk|,
// dk_z = sin(theta)|dk|, |dk| = 2 pi / lambda_eff.
LambDicke lamb_dicke(const PhysicalSetup& setup);

struct BeamAngle {
    double radians;
    double degrees;
};

// Angle whose axial projection gives the per-site phase dk_d0:
// sin(theta) = (dk_d0/d0) / |dk|.
BeamAngle angle_for_dk(const PhysicalSetup& setup, double dk_d0);

struct EquilibriumResult {
    Eigen::VectorXd u;         // dimensionless positions, ascending
    Eigen::VectorXd positions; // meters
    double length_scale;       // ell = (q^2 e^2 k /(m omega_z^2))^{1/3}
    double central_spacing;    // spacing of the middle pair, m
    double mean_spacing;       // (z_max - z_min)/(N-1), m
    double force_residual;     // max |dimensionless force|
    int iterations;
};

// Force balance of N charges in a harmonic axial well, damped Newton from the
// scaled linear initial guess.
EquilibriumResult equilibrium_positions(int n_ions, double omega_z, double mass_kg,
                                        int charge = 1);

enum class SpacingKind { Mean, Central };

// omega_z that places the requested spacing at d0; exact one-shot scaling,
// since the dimensionless crystal depends only on N.
double omega_z_for_spacing(int n_ions, double d0, double mass_kg,
                           SpacingKind kind = SpacingKind::Mean, int charge = 1);

struct AxialClearance {
    Eigen::VectorXd axial_freqs;  // rad/s, ascending
    double omega_z_max;           // rad/s
    double radial_min;            // lowest radial normal mode, rad/s
    double clearance;             // radial_min - omega_z_max
    bool pass;
};

// Axial normal-mode spectrum from the equilibrium Hessian, and the gap to the
// radial band.
AxialClearance axial_mode_clearance(const PhysicalSetup& setup);

struct DimensionlessChain {
    double t_C_over_delta;
    double g_over_delta;
    double dk_d0;
};

// Model inputs induced by a physical setup at a chosen detuning and coupling
// (both angular, rad/s).
DimensionlessChain to_dimensionless(const PhysicalSetup& setup, double delta_rad,
                                    double g_rad);

// Inverse of to_dimensionless at fixed (mass, d0, lambda_eff, delta, g):
// recovers omega_x and theta.
struct RecoveredSetup {
    double omega_x;
    double theta;
};
RecoveredSetup from_dimensionless(const DimensionlessChain& dimless, double delta_rad,
                                  double mass_kg, double d0, double lambda_eff,
                                  int charge = 1);

} // namespace ionsim
