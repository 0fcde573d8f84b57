#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ionsim/chain_config.hpp"

namespace ionsim {

// Normal modes of the rotated-frame phonon Hamiltonian.
//
// Mode ordering follows the label convention of the underlying model:
// for PbcDipolar, n is the plane-wave label (M_{j,n} = e^{i 2 pi n j / N}/sqrt(N))
// and the zigzag mode sits at n = N/2; for open chains, modes are sorted by
// descending frequency so the zigzag mode is the last one. zigzag_index points
// at the lowest-frequency mode either way.
struct ModeData {
    Eigen::VectorXd frequencies;    // delta_n > 0
    Eigen::MatrixXcd wavefunctions; // column n is mode n, unitary as a matrix
    HoppingModel hopping_model = HoppingModel::OpenNN;
    int zigzag_index = 0;
};

double zeta3();

// Hurwitz zeta(3, a) = sum_{k>=0} (k+a)^{-3}, a > 0. Euler-Maclaurin tail.
double hurwitz_zeta3(double a);

// sum_{k=1..k_max} cos(k x)/k^3. Direct summation; the k^-3 tail keeps the
// absolute truncation error below ~1/(2 k_max^2).
double clausen3(double x, long k_max = 1000000);

// On-site rotated-frame frequency delta_x that places min_n delta_n at
// cfg.delta_target. Closed form for PBC; for open models the minimum
// eigenvalue is linear in delta_x, so the shift is exact as well.
double delta_x_from_target(const ChainConfig& cfg);

// A_{j,l} = delta_x delta_{j,l} + (t_C/2) F_{j,l}, with F per the hopping
// model. The PBC kernel is the image-summed dipolar kernel
// F_{j,l} = sum_{m in Z} 1/|j-l+mN|^3 and carries the self-image constant
// t_C zeta(3)/N^3 on the diagonal; this is the unique cyclic kernel whose
// spectrum coincides with the dispersion series at the grid points.
Eigen::MatrixXd build_hopping_matrix(const ChainConfig& cfg);

// Diagonalize A. Throws numerical_error("unstable rotated frame") if any
// frequency is <= 0 (the rotated-frame construction needs delta_{N/2} > 0).
ModeData normal_modes(const Eigen::MatrixXd& a, const ChainConfig& cfg);

// Convenience: build_hopping_matrix + normal_modes.
ModeData chain_modes(const ChainConfig& cfg);

// Continuum dispersion delta(x) = delta_x + t_C sum_k cos(kx)/k^3 on [0, 2pi].
// Valid for PbcDipolar only.
double dispersion_pbc(double x, const ChainConfig& cfg);

} // namespace ionsim
