#pragma once

#include <vector>

#include "ionsim/couplings.hpp"

namespace ionsim {

enum class SpinPattern { AF, F, HopfieldCos, HopfieldSin };
enum class PhaseLabel { AF, F, Hopfield, Frustrated, Other };

std::string to_string(PhaseLabel label);

struct PatternOverlaps {
    double af = 0.0;
    double f = 0.0;
    double hopf_c = 0.0;
    double hopf_s = 0.0;
    double max_hopfield() const { return hopf_c > hopf_s ? hopf_c : hopf_s; }
};

struct SpinConfiguration {
    Eigen::VectorXi s;  // entries +-1
    double energy = 0.0; // off-diagonal double sum
    PatternOverlaps overlaps;
};

struct GroundStateReport {
    SpinConfiguration ground;
    long degeneracy_count = 0; // states within the window, Z2 partners included
    double window = 0.0;       // absolute energy window used
    PhaseLabel phase_label = PhaseLabel::Other;
};

struct GroundStateOptions {
    double window_rel = 1e-3;        // window = window_rel * |E0|
    double pattern_threshold = 0.9;  // overlap needed to claim a pattern label
    int frustration_count_per_site = 2; // frustrated when count > 2N and no pattern
    int jobs = 1;                    // Gray-code range partitions
};

// E = sum_{j != l} J_{j,l} s_j s_l (each unordered pair counted twice).
double ising_energy(const Eigen::VectorXi& s, const Eigen::MatrixXd& J);

// Overlap (1/N_eff)|sum_j p_j s_j| with p the pattern sign sequence; sites
// where the Hopfield chi vanishes are excluded and N reduced accordingly.
double pattern_overlap(const Eigen::VectorXi& s, SpinPattern pattern, double dk_d0,
                       int* excluded_sites = nullptr);

PatternOverlaps all_overlaps(const Eigen::VectorXi& s, double dk_d0);

// Exhaustive minimum over the 2^{N-1} configurations with s_0 = +1 (the Z2
// gauge); Gray-code incremental energies, O(N) per state. N <= 24.
GroundStateReport exact_ground_state(const Eigen::MatrixXd& J, double dk_d0,
                                     const GroundStateOptions& opts = {});

struct FrustrationPoint {
    double t_C;
    double energy;
    long degeneracy_count;
    PhaseLabel phase_label;
    PatternOverlaps overlaps;
};

// Ground-state summary per t_C over exact couplings built from cfg.
std::vector<FrustrationPoint> frustration_scan(ChainConfig cfg,
                                               const std::vector<double>& t_grid,
                                               const GroundStateOptions& opts = {});

// Staggered order parameter sum_{j != l} (-1)^{|j-l|} C_{j,l} / (N(N-1)).
double oaf(const Eigen::MatrixXd& zz_correlations);

} // namespace ionsim
