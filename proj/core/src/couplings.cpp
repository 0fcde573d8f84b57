#include "ionsim/couplings.hpp"

#include <cmath>
#include <complex>

namespace ionsim {

CouplingMatrix exact_couplings(const ModeData& modes, const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.N;
    if (modes.frequencies.size() != n)
        throw config_error("exact_couplings: mode data does not match cfg.N");
    if (modes.frequencies.minCoeff() <= 0.0)
        throw numerical_error("exact_couplings: requires all delta_n > 0");

    // -g^2 M diag(1/delta) M^dagger
    Eigen::MatrixXcd sum = modes.wavefunctions *
                           modes.frequencies.cwiseInverse().asDiagonal() *
                           modes.wavefunctions.adjoint();
    sum *= -cfg.g * cfg.g;

    const double scale = std::max(1.0, sum.cwiseAbs().maxCoeff());
    if (sum.imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw numerical_error("exact_couplings: mode sum has a non-real residue");

    CouplingMatrix cm;
    cm.provenance = CouplingProvenance::ExactModeSum;
    cm.dk_d0 = cfg.dk_d0;
    cm.J.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            cm.J(j, l) = std::cos(cfg.dk_d0 * (j - l)) * sum(j, l).real();
    return cm;
}

AnalyticConstants analytic_constants(const ChainConfig& cfg) {
    cfg.validate();
    AnalyticConstants c;
    c.xi = std::sqrt(0.5 * std::log(2.0)) * std::sqrt(cfg.t_C / cfg.delta_target);
    c.j_exp = c.xi * cfg.g * cfg.g / (cfg.t_C * std::log(2.0));
    const double denom = cfg.delta_target + 1.75 * zeta3() * cfg.t_C;
    c.j_dip = cfg.g * cfg.g * cfg.t_C / (2.0 * denom * denom);
    return c;
}

CouplingMatrix analytic_couplings(const ChainConfig& cfg) {
    const AnalyticConstants c = analytic_constants(cfg);
    const int n = cfg.N;
    CouplingMatrix cm;
    cm.provenance = CouplingProvenance::Analytic;
    cm.dk_d0 = cfg.dk_d0;
    cm.constants = c;
    cm.J = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            const int d = std::abs(j - l);
            const double sign = (d % 2 == 0) ? 1.0 : -1.0;
            const double undressed = -sign * c.j_exp * std::exp(-d / c.xi) +
                                     c.j_dip / (static_cast<double>(d) * d * d);
            cm.J(j, l) = std::cos(cfg.dk_d0 * (j - l)) * undressed;
        }
    return cm;
}

CouplingComparison compare_couplings(const CouplingMatrix& exact,
                                     const CouplingMatrix& analytic,
                                     int reference_site,
                                     const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.N;
    if (exact.J.rows() != n || analytic.J.rows() != n)
        throw config_error("compare_couplings: matrix sizes do not match cfg.N");
    if (reference_site < 0 || reference_site >= n)
        throw config_error("compare_couplings: reference site out of range");

    const bool pbc = cfg.hopping_model == HoppingModel::PbcDipolar;
    CouplingComparison out;
    out.reference_site = reference_site;
    out.model_mismatch = !pbc;
    for (int d = 1; d <= n / 2; ++d) {
        int l = reference_site + d;
        if (l >= n) {
            if (!pbc)
                throw config_error("compare_couplings: separation " + std::to_string(d) +
                                   " from site " + std::to_string(reference_site) +
                                   " leaves the open chain");
            l -= n;
        }
        CouplingComparisonRow row;
        row.separation = d;
        row.j_exact = exact.J(reference_site, l);
        row.j_analytic = analytic.J(reference_site, l);
        row.rel_err = std::abs(row.j_analytic - row.j_exact) / std::abs(row.j_exact);
        out.rows.push_back(row);
    }
    return out;
}

} // namespace ionsim
