#include "ionsim/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ionsim {

namespace {
constexpr double kZeta3 = 1.2020569031595942854;
}

double zeta3() { return kZeta3; }

HoppingModel hopping_model_from_string(const std::string& name) {
    if (name == "pbc_dipolar") return HoppingModel::PbcDipolar;
    if (name == "open_dipolar") return HoppingModel::OpenDipolar;
    if (name == "open_nn") return HoppingModel::OpenNN;
    throw config_error("unknown hopping_model '" + name +
                       "' (expected pbc_dipolar, open_dipolar or open_nn)");
}

std::string to_string(HoppingModel model) {
    switch (model) {
        case HoppingModel::PbcDipolar: return "pbc_dipolar";
        case HoppingModel::OpenDipolar: return "open_dipolar";
        case HoppingModel::OpenNN: return "open_nn";
    }
    return "?";
}

void ChainConfig::validate() const {
    std::ostringstream err;
    if (N < 2)
        err << "N must be >= 2 (got " << N << ")";
    else if (hopping_model == HoppingModel::PbcDipolar && N % 2 != 0)
        err << "PBC dipolar chain needs even N (got " << N << ")";
    else if (!(t_C > 0.0))
        err << "t_C must be > 0 (got " << t_C << ")";
    else if (!(delta_target > 0.0))
        err << "delta_target must be > 0 (got " << delta_target << ")";
    else if (!(g >= 0.0))
        err << "g must be >= 0 (got " << g << ")";
    else if (dk_d0 < 0.0 || dk_d0 >= 2.0 * std::numbers::pi)
        err << "dk_d0 must lie in [0, 2*pi) (got " << dk_d0 << ")";
    const std::string msg = err.str();
    if (!msg.empty()) throw config_error("ChainConfig: " + msg);
}

double hurwitz_zeta3(double a) {
    // sum_{k<M} (a+k)^-3 plus the Euler-Maclaurin tail at a+M.
    constexpr int m = 64;
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
        const double t = a + k;
        s += 1.0 / (t * t * t);
    }
    const double u = a + m;
    const double u2 = 1.0 / (u * u);
    // integral + f/2 - f'/12 + f'''/720
    s += 0.5 * u2 + 0.5 * u2 / u + 0.25 * u2 * u2 - u2 * u2 * u2 / 12.0;
    return s;
}

double clausen3(double x, long k_max) {
    double s = 0.0;
    for (long k = k_max; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        s += std::cos(kk * x) / (kk * kk * kk);
    }
    return s;
}

namespace {

// Dipolar kernel value at cyclic separation d for the image-summed PBC chain.
double pbc_kernel(int d, int n) {
    const double nd = static_cast<double>(n);
    return (hurwitz_zeta3(d / nd) + hurwitz_zeta3((n - d) / nd)) / (nd * nd * nd);
}

// Smallest eigenvalue of the bare kernel F (no on-site part), i.e. of
// build_hopping_matrix with delta_x = 0 and t_C = 2.
double kernel_min_eigenvalue(const ChainConfig& cfg) {
    const int n = cfg.N;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            const int d = std::abs(j - l);
            switch (cfg.hopping_model) {
                case HoppingModel::PbcDipolar:
                    f(j, l) = pbc_kernel(d, n);
                    break;
                case HoppingModel::OpenDipolar:
                    f(j, l) = 1.0 / (static_cast<double>(d) * d * d);
                    break;
                case HoppingModel::OpenNN:
                    f(j, l) = (d == 1) ? 1.0 : 0.0;
                    break;
            }
        }
    if (cfg.hopping_model == HoppingModel::PbcDipolar)
        f.diagonal().array() += 2.0 * kZeta3 / (static_cast<double>(n) * n * n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

} // namespace

double delta_x_from_target(const ChainConfig& cfg) {
    cfg.validate();
    if (cfg.hopping_model == HoppingModel::PbcDipolar)
        return cfg.delta_target + 0.75 * kZeta3 * cfg.t_C;
    // min eig(A) = delta_x + (t_C/2) lambda_min(F), exactly linear in delta_x.
    return cfg.delta_target - 0.5 * cfg.t_C * kernel_min_eigenvalue(cfg);
}

Eigen::MatrixXd build_hopping_matrix(const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.N;
    const double dx = delta_x_from_target(cfg);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            const int d = std::abs(j - l);
            double f = 0.0;
            switch (cfg.hopping_model) {
                case HoppingModel::PbcDipolar: f = pbc_kernel(d, n); break;
                case HoppingModel::OpenDipolar: f = 1.0 / (static_cast<double>(d) * d * d); break;
                case HoppingModel::OpenNN: f = (d == 1) ? 1.0 : 0.0; break;
            }
            a(j, l) = 0.5 * cfg.t_C * f;
        }
        a(j, j) = dx;
        if (cfg.hopping_model == HoppingModel::PbcDipolar)
            a(j, j) += cfg.t_C * kZeta3 / (static_cast<double>(n) * n * n);
    }
    return a;
}

ModeData normal_modes(const Eigen::MatrixXd& a, const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.N;
    if (a.rows() != n || a.cols() != n)
        throw config_error("normal_modes: matrix size does not match cfg.N");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw config_error("normal_modes: matrix is not symmetric");

    ModeData md;
    md.hopping_model = cfg.hopping_model;
    md.frequencies.resize(n);
    md.wavefunctions.resize(n, n);

    if (cfg.hopping_model == HoppingModel::PbcDipolar) {
        // Circulant: plane waves e^{i 2 pi n j / N}/sqrt(N), frequency = DFT of row 0.
        const double tau = 2.0 * std::numbers::pi / n;
        for (int m = 0; m < n; ++m) {
            double freq = 0.0;
            for (int l = 0; l < n; ++l) freq += a(0, l) * std::cos(tau * m * l);
            md.frequencies(m) = freq;
            for (int j = 0; j < n; ++j)
                md.wavefunctions(j, m) =
                    std::polar(1.0 / std::sqrt(static_cast<double>(n)), tau * m * j);
        }
        md.zigzag_index = n / 2;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        if (es.info() != Eigen::Success)
            throw numerical_error("normal_modes: eigensolver failed");
        // descending order; the zigzag (lowest) mode is the last label
        for (int m = 0; m < n; ++m) {
            md.frequencies(m) = es.eigenvalues()(n - 1 - m);
            md.wavefunctions.col(m) = es.eigenvectors().col(n - 1 - m).cast<std::complex<double>>();
        }
        md.zigzag_index = n - 1;
    }

    if (md.frequencies.minCoeff() <= 0.0)
        throw numerical_error("unstable rotated frame: min_n delta_n <= 0");

    // reconstruction check
    Eigen::MatrixXcd rec = md.wavefunctions * md.frequencies.asDiagonal() *
                           md.wavefunctions.adjoint();
    const double rel = (rec - a.cast<std::complex<double>>()).norm() / a.norm();
    if (rel > 1e-10)
        throw numerical_error("normal_modes: reconstruction residual " + std::to_string(rel));
    return md;
}

ModeData chain_modes(const ChainConfig& cfg) {
    return normal_modes(build_hopping_matrix(cfg), cfg);
}

double dispersion_pbc(double x, const ChainConfig& cfg) {
    cfg.validate();
    if (cfg.hopping_model != HoppingModel::PbcDipolar)
        throw config_error("dispersion_pbc: requires the PBC dipolar model");
    if (x < 0.0 || x > 2.0 * std::numbers::pi)
        throw config_error("dispersion_pbc: x must lie in [0, 2*pi]");
    return delta_x_from_target(cfg) + cfg.t_C * clausen3(x);
}

} // namespace ionsim
