#pragma once

#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ionsim/couplings.hpp"

namespace ionsim {

using SparseH = Eigen::SparseMatrix<std::complex<double>>;

// Product basis of N spins and N collective modes truncated at n_max phonons
// per mode. Indexing is spin-major, mode-ordered:
//   index = spin_index * (n_max+1)^N + sum_k m_k (n_max+1)^k,
// spin j down <=> bit j of spin_index set.
struct TruncatedHilbert {
    int n_sites;
    int n_max;

    TruncatedHilbert(int n_sites, int n_max); // checks the guards below
    long phonon_dim() const;
    long dim() const; // 2^N (n_max+1)^N, guarded at 2e6
    long index(int spin_index, long phonon_index) const;
    int spin_of(long index) const;
    long phonon_of(long index) const;
    int occupation(long phonon_index, int mode) const;
};

// H = sum_n delta_n a+_n a_n + (Omega_x/2) sum_j sx_j
//   + g sum_{j,n} sz_j (M_{j,n} a_n e^{-i dk j} + M*_{j,n} a+_n e^{+i dk j})
SparseH build_hamiltonian(const ChainConfig& cfg, const ModeData& modes,
                          const TruncatedHilbert& hilbert, double omega_x);

// P: sz -> -sz, a -> -a. Sparse signed permutation.
SparseH parity_operator(const TruncatedHilbert& hilbert);

struct GroundStateResult {
    double energy;
    Eigen::VectorXcd vector;
    double residual;   // ||Hv - Ev||
    int iterations;    // total Lanczos steps
};

// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
// Deterministic for a fixed seed. residual < 1e-9 * ||H|| (Gershgorin bound).
GroundStateResult ground_state(const SparseH& h, std::uint64_t seed = 20240915);

struct QuantumObservables {
    double energy = 0.0;
    double oaf = 0.0;
    double mean_phonons = 0.0;        // (1/N) sum_n <a+_n a_n>
    Eigen::VectorXd sz;               // <sz_j>
    Eigen::MatrixXd zz;               // <sz_j sz_l>, unit diagonal
    Eigen::MatrixXd xx_connected;     // <sx_j sx_l> - <sx_j><sx_l>
    Eigen::VectorXcd mode_displacements; // <a_n>
};

QuantumObservables observables(const Eigen::VectorXcd& state, const TruncatedHilbert& hilbert,
                               const SparseH& h);

struct PolaronReport {
    double classical_energy = 0.0; // min_s sum_{j,l} J_{j,l} s_j s_l, diagonal included
    double quantum_energy = 0.0;   // block-ED energy at the final n_max
    std::vector<std::pair<int, double>> nmax_energies;
    bool converged = false;
    double final_error = 0.0;
    int n_max_used = 0;
    Eigen::VectorXi ground_spins;
    Eigen::VectorXcd displacements;           // <a_n> on the ED ground state
    Eigen::VectorXcd predicted_displacements; // -(g/delta_n) sum_j M*_{j,n} e^{i dk j} s_j
    double displacement_error = 0.0;          // max_n abs difference / max_n |predicted|
};

// Omega_x = 0 equivalence between exact diagonalization and the polaron
// (classical Ising + coherent displacement) picture. H commutes with every
// sz_j there, so each spin sector is diagonalized on its own phonon ladder;
// sectors whose classical energy exceeds the current best cannot win (the
// truncated block energy is bounded below by the classical value) and are
// pruned.
PolaronReport polaron_check(const ChainConfig& cfg, const ModeData& modes,
                            int n_max_start = 6, int n_max_limit = 24, double tol = 1e-8);

// Omega_{x,c} = (g^2 / delta_target) e^{-2 nbar}
double critical_field_estimate(double n_bar, const ChainConfig& cfg);

// Omega_x of the steepest OAF change on a sweep grid (midpoint of the
// steepest segment); the finite-size crossover locator.
double susceptibility_peak(const std::vector<double>& omega_x,
                           const std::vector<double>& oaf_values);

} // namespace ionsim
