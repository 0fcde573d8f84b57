#pragma once

#include <optional>
#include <vector>

#include "ionsim/lattice.hpp"

namespace ionsim {

enum class CouplingProvenance { ExactModeSum, Analytic };

// Constants of the long-chain closed form
//   J_{j,l} ~ -(-1)^{j-l} J_exp e^{-|j-l|/xi} + J_dip / |j-l|^3.
struct AnalyticConstants {
    double xi;
    double j_exp;
    double j_dip;
};

struct CouplingMatrix {
    Eigen::MatrixXd J;  // dressed couplings J^{dk}_{j,l}
    CouplingProvenance provenance = CouplingProvenance::ExactModeSum;
    double dk_d0 = 0.0;
    std::optional<AnalyticConstants> constants; // populated for Analytic
};

// J^{dk}_{j,l} = cos(dk_d0 (j-l)) * ( -g^2 sum_n M_{j,n} M*_{l,n} / delta_n ).
// The mode sum includes j = l: the diagonal is the constant polaron offset
// -g^2 sum_n |M_{j,n}|^2/delta_n, kept for energy bookkeeping.
CouplingMatrix exact_couplings(const ModeData& modes, const ChainConfig& cfg);

// Closed-form couplings from the long-chain limit, dressed by cos(dk_d0 (j-l)),
// diagonal set to zero. Derived under PBC; callers may apply it to open
// configs, and compare_couplings flags the mismatch.
CouplingMatrix analytic_couplings(const ChainConfig& cfg);

AnalyticConstants analytic_constants(const ChainConfig& cfg);

struct CouplingComparisonRow {
    int separation;
    double j_exact;
    double j_analytic;
    double rel_err; // |Ja - Je| / |Je|
};

struct CouplingComparison {
    std::vector<CouplingComparisonRow> rows; // separations 1 .. N/2
    int reference_site = 0;
    bool model_mismatch = false; // analytic applied outside its PBC derivation
};

CouplingComparison compare_couplings(const CouplingMatrix& exact,
                                     const CouplingMatrix& analytic,
                                     int reference_site,
                                     const ChainConfig& cfg);

} // namespace ionsim
