#include "ionsim/quantum.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

#include "ionsim/classical.hpp"

namespace ionsim {

using cplx = std::complex<double>;

TruncatedHilbert::TruncatedHilbert(int n_sites_, int n_max_)
    : n_sites(n_sites_), n_max(n_max_) {
    if (n_sites < 1 || n_sites > 6)
        throw capacity_error("TruncatedHilbert: N must be in [1, 6], got " +
                             std::to_string(n_sites));
    if (n_max < 1) throw config_error("TruncatedHilbert: n_max must be >= 1");
    long d = 1;
    for (int k = 0; k < n_sites; ++k) {
        d *= 2L * (n_max + 1);
        if (d > 2000000L)
            throw capacity_error("TruncatedHilbert: dimension (2(n_max+1))^N exceeds 2e6");
    }
}

long TruncatedHilbert::phonon_dim() const {
    long d = 1;
    for (int k = 0; k < n_sites; ++k) d *= n_max + 1;
    return d;
}

long TruncatedHilbert::dim() const { return (1L << n_sites) * phonon_dim(); }

long TruncatedHilbert::index(int spin_index, long phonon_index) const {
    return spin_index * phonon_dim() + phonon_index;
}

int TruncatedHilbert::spin_of(long index) const {
    return static_cast<int>(index / phonon_dim());
}

long TruncatedHilbert::phonon_of(long index) const { return index % phonon_dim(); }

int TruncatedHilbert::occupation(long phonon_index, int mode) const {
    long p = phonon_index;
    for (int k = 0; k < mode; ++k) p /= n_max + 1;
    return static_cast<int>(p % (n_max + 1));
}

namespace {

// spin values s_j = +-1 for a spin basis index (bit set <=> s_j = -1)
inline double spin_val(int spin_index, int j) {
    return (spin_index >> j) & 1 ? -1.0 : 1.0;
}

// b_n(s) = g sum_j s_j M_{j,n} e^{-i dk j}; the coefficient of a_n for the
// spin configuration s.
Eigen::VectorXcd mode_amplitudes(const ChainConfig& cfg, const ModeData& modes,
                                 int spin_index) {
    const int n = cfg.N;
    Eigen::VectorXcd phase(n);
    for (int j = 0; j < n; ++j)
        phase(j) = std::polar(spin_val(spin_index, j), -cfg.dk_d0 * j);
    return cfg.g * (modes.wavefunctions.transpose() * phase);
}

// Phonon-ladder block H_s = sum_n delta_n a+a + sum_n (b_n a_n + h.c.)
SparseH build_block(const Eigen::VectorXd& freqs, const Eigen::VectorXcd& b, int n_max) {
    const int n_modes = static_cast<int>(freqs.size());
    const int nb = n_max + 1;
    long dim = 1;
    for (int k = 0; k < n_modes; ++k) dim *= nb;
    SparseH h(dim, dim);
    h.reserve(Eigen::VectorXi::Constant(dim, 2 * n_modes + 1));
    std::vector<long> stride(n_modes);
    stride[0] = 1;
    for (int k = 1; k < n_modes; ++k) stride[k] = stride[k - 1] * nb;
    for (long p = 0; p < dim; ++p) {
        double diag = 0.0;
        long rest = p;
        for (int k = 0; k < n_modes; ++k) {
            const int m = static_cast<int>(rest % nb);
            rest /= nb;
            diag += freqs(k) * m;
            if (m > 0) h.insert(p - stride[k], p) = b(k) * std::sqrt(double(m));
            if (m < n_max) h.insert(p + stride[k], p) = std::conj(b(k)) * std::sqrt(double(m + 1));
        }
        h.insert(p, p) = diag;
    }
    h.makeCompressed();
    return h;
}

} // namespace

SparseH build_hamiltonian(const ChainConfig& cfg, const ModeData& modes,
                          const TruncatedHilbert& hilbert, double omega_x) {
    cfg.validate();
    if (hilbert.n_sites != cfg.N)
        throw config_error("build_hamiltonian: hilbert space does not match cfg.N");
    if (modes.frequencies.size() != cfg.N)
        throw config_error("build_hamiltonian: mode data does not match cfg.N");
    if (modes.frequencies.minCoeff() <= 0.0)
        throw numerical_error("build_hamiltonian: requires all delta_n > 0");

    const int n = cfg.N;
    const int nb = hilbert.n_max + 1;
    const long pdim = hilbert.phonon_dim();
    const long dim = hilbert.dim();

    std::vector<long> stride(n);
    stride[0] = 1;
    for (int k = 1; k < n; ++k) stride[k] = stride[k - 1] * nb;

    SparseH h(dim, dim);
    h.reserve(Eigen::VectorXi::Constant(dim, 3 * n + 2));
    for (int s = 0; s < (1 << n); ++s) {
        const Eigen::VectorXcd b = mode_amplitudes(cfg, modes, s);
        const long base = hilbert.index(s, 0);
        for (long p = 0; p < pdim; ++p) {
            double diag = 0.0;
            long rest = p;
            for (int k = 0; k < n; ++k) {
                const int m = static_cast<int>(rest % nb);
                rest /= nb;
                diag += modes.frequencies(k) * m;
                if (m > 0) h.insert(base + p - stride[k], base + p) = b(k) * std::sqrt(double(m));
                if (m < hilbert.n_max)
                    h.insert(base + p + stride[k], base + p) =
                        std::conj(b(k)) * std::sqrt(double(m + 1));
            }
            h.insert(base + p, base + p) = diag;
            for (int j = 0; j < n; ++j)
                h.insert(hilbert.index(s ^ (1 << j), p), base + p) = 0.5 * omega_x;
        }
    }
    h.makeCompressed();

    // Hermiticity check
    SparseH diff = SparseH(h.adjoint()) - h;
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseH::InnerIterator it(diff, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    if (worst > 1e-12 * std::max(1.0, modes.frequencies.maxCoeff() * hilbert.n_max))
        throw numerical_error("build_hamiltonian: Hermiticity residual " + std::to_string(worst));
    return h;
}

SparseH parity_operator(const TruncatedHilbert& hilbert) {
    const long dim = hilbert.dim();
    const long pdim = hilbert.phonon_dim();
    const int mask = (1 << hilbert.n_sites) - 1;
    SparseH p(dim, dim);
    p.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (long i = 0; i < dim; ++i) {
        const int s = hilbert.spin_of(i);
        const long ph = hilbert.phonon_of(i);
        int total = 0;
        for (int k = 0; k < hilbert.n_sites; ++k) total += hilbert.occupation(ph, k);
        const double sign = (total % 2 == 0) ? 1.0 : -1.0;
        p.insert((s ^ mask) * pdim + ph, i) = sign;
    }
    p.makeCompressed();
    return p;
}

namespace {

double gershgorin_norm(const SparseH& h) {
    Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(h.rows());
    for (int k = 0; k < h.outerSize(); ++k)
        for (SparseH::InnerIterator it(h, k); it; ++it)
            row_sum(it.row()) += std::abs(it.value());
    return row_sum.maxCoeff();
}

} // namespace

GroundStateResult ground_state(const SparseH& h, std::uint64_t seed) {
    const long dim = h.rows();
    if (dim == 0 || h.cols() != dim) throw config_error("ground_state: empty or non-square operator");

    const double hnorm = std::max(gershgorin_norm(h), 1e-300);
    const double tol = 1e-9 * hnorm;

    if (dim <= 512) {
        Eigen::MatrixXcd dense(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
        if (es.info() != Eigen::Success) throw numerical_error("ground_state: dense solve failed");
        GroundStateResult r;
        r.energy = es.eigenvalues()(0);
        r.vector = es.eigenvectors().col(0);
        r.residual = (h * r.vector - r.energy * r.vector).norm();
        r.iterations = 0;
        return r;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v0(dim);
    for (long i = 0; i < dim; ++i) v0(i) = cplx(gauss(rng), gauss(rng));
    v0.normalize();

    const int m = 64;
    const int max_restarts = 300;
    int total_iters = 0;

    Eigen::MatrixXcd basis(dim, m);
    Eigen::VectorXd alpha(m), beta(m);

    for (int restart = 0; restart < max_restarts; ++restart) {
        int steps = 0;
        basis.col(0) = v0;
        Eigen::VectorXcd w;
        for (int k = 0; k < m; ++k) {
            w = h * basis.col(k);
            alpha(k) = w.dot(basis.col(k)).real();
            w -= alpha(k) * basis.col(k);
            if (k > 0) w -= beta(k - 1) * basis.col(k - 1);
            // full reorthogonalization, twice
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i <= k; ++i) w -= basis.col(i).dot(w) * basis.col(i);
            steps = k + 1;
            const double nw = w.norm();
            if (k + 1 < m) {
                if (nw < 1e-14 * hnorm) break; // invariant subspace reached
                beta(k) = nw;
                basis.col(k + 1) = w / nw;
            }
        }
        total_iters += steps;

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
        for (int k = 0; k < steps; ++k) {
            t(k, k) = alpha(k);
            if (k + 1 < steps) t(k, k + 1) = t(k + 1, k) = beta(k);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(0);
        Eigen::VectorXcd x = basis.leftCols(steps) * es.eigenvectors().col(0).cast<cplx>();
        x.normalize();
        const double res = (h * x - theta * x).norm();
        if (res < tol || steps < m) {
            GroundStateResult r;
            r.energy = theta;
            r.vector = x;
            r.residual = res;
            r.iterations = total_iters;
            if (res >= tol)
                throw numerical_error("ground_state: Lanczos stalled, residual " +
                                      std::to_string(res));
            return r;
        }
        v0 = x;
    }
    throw numerical_error("ground_state: no convergence after restart cap");
}

QuantumObservables observables(const Eigen::VectorXcd& state, const TruncatedHilbert& hilbert,
                               const SparseH& h) {
    const long dim = hilbert.dim();
    if (state.size() != dim) throw config_error("observables: state dimension mismatch");
    if (std::abs(state.norm() - 1.0) > 1e-8)
        throw config_error("observables: state must be normalized");

    const int n = hilbert.n_sites;
    const int nb = hilbert.n_max + 1;
    const long pdim = hilbert.phonon_dim();

    QuantumObservables obs;
    obs.energy = state.dot(h * state).real();
    obs.sz = Eigen::VectorXd::Zero(n);
    obs.zz = Eigen::MatrixXd::Zero(n, n);
    obs.mode_displacements = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXd sx = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd xx = Eigen::MatrixXd::Zero(n, n);

    std::vector<long> stride(n);
    stride[0] = 1;
    for (int k = 1; k < n; ++k) stride[k] = stride[k - 1] * nb;

    for (long i = 0; i < dim; ++i) {
        const cplx amp = state(i);
        if (amp == cplx(0.0, 0.0)) continue;
        const double w = std::norm(amp);
        const int s = hilbert.spin_of(i);
        const long ph = hilbert.phonon_of(i);
        long rest = ph;
        for (int k = 0; k < n; ++k) {
            const int m = static_cast<int>(rest % nb);
            rest /= nb;
            obs.mean_phonons += w * m;
            if (m > 0)
                obs.mode_displacements(k) +=
                    std::conj(state(i - stride[k])) * std::sqrt(double(m)) * amp;
        }
        for (int j = 0; j < n; ++j) {
            const double sj = spin_val(s, j);
            obs.sz(j) += w * sj;
            for (int l = 0; l < n; ++l) obs.zz(j, l) += w * sj * spin_val(s, l);
            sx(j) += (std::conj(state(hilbert.index(s ^ (1 << j), ph))) * amp).real();
            for (int l = j + 1; l < n; ++l) {
                const double c =
                    (std::conj(state(hilbert.index(s ^ (1 << j) ^ (1 << l), ph))) * amp).real();
                xx(j, l) += c;
                xx(l, j) += c;
            }
        }
    }
    obs.mean_phonons /= n;
    xx.diagonal().setOnes();
    obs.xx_connected = xx - sx * sx.transpose();
    obs.oaf = oaf(obs.zz);
    return obs;
}

PolaronReport polaron_check(const ChainConfig& cfg, const ModeData& modes,
                            int n_max_start, int n_max_limit, double tol) {
    cfg.validate();
    const int n = cfg.N;
    if (n > 20) throw capacity_error("polaron_check: N too large for spin enumeration");
    const CouplingMatrix cm = exact_couplings(modes, cfg);

    // classical energies of all Z2-reduced spin configurations, diagonal included
    const int half = 1 << (n - 1);
    std::vector<std::pair<double, int>> sector(half);
    for (int k = 0; k < half; ++k) {
        const int s = k << 1; // bit 0 clear: s_0 = +1 gauge
        Eigen::VectorXd sv(n);
        for (int j = 0; j < n; ++j) sv(j) = spin_val(s, j);
        sector[k] = {sv.dot(cm.J * sv), s};
    }
    std::sort(sector.begin(), sector.end());

    PolaronReport rep;
    rep.classical_energy = sector.front().first;
    rep.ground_spins.resize(n);
    for (int j = 0; j < n; ++j) rep.ground_spins(j) = spin_val(sector.front().second, j) > 0 ? 1 : -1;

    Eigen::VectorXcd best_vec;
    double prev_e = std::numeric_limits<double>::infinity();
    for (int n_max = n_max_start; n_max <= n_max_limit; n_max += 2) {
        double best = std::numeric_limits<double>::infinity();
        int best_s = sector.front().second;
        for (const auto& [e_cl, s] : sector) {
            if (e_cl >= best) break; // truncated block energy >= classical value
            const Eigen::VectorXcd b = mode_amplitudes(cfg, modes, s);
            const SparseH hb = build_block(modes.frequencies, b, n_max);
            const GroundStateResult gs = ground_state(hb);
            if (gs.energy < best) {
                best = gs.energy;
                best_s = s;
                best_vec = gs.vector;
            }
        }
        rep.nmax_energies.emplace_back(n_max, best);
        rep.quantum_energy = best;
        rep.n_max_used = n_max;
        rep.final_error = best - rep.classical_energy;
        if (best > prev_e + 1e-12)
            throw numerical_error("polaron_check: energy increased with n_max");
        prev_e = best;
        if (std::abs(rep.final_error) < tol) {
            rep.converged = true;
            for (int j = 0; j < n; ++j)
                rep.ground_spins(j) = spin_val(best_s, j) > 0 ? 1 : -1;

            // displacements on the winning block
            const int nb = n_max + 1;
            std::vector<long> stride(n);
            stride[0] = 1;
            for (int k = 1; k < n; ++k) stride[k] = stride[k - 1] * nb;
            rep.displacements = Eigen::VectorXcd::Zero(n);
            for (long p = 0; p < best_vec.size(); ++p) {
                if (best_vec(p) == cplx(0.0, 0.0)) continue;
                long rest = p;
                for (int k = 0; k < n; ++k) {
                    const int m = static_cast<int>(rest % nb);
                    rest /= nb;
                    if (m > 0)
                        rep.displacements(k) +=
                            std::conj(best_vec(p - stride[k])) * std::sqrt(double(m)) * best_vec(p);
                }
            }
            rep.predicted_displacements = Eigen::VectorXcd::Zero(n);
            for (int k = 0; k < n; ++k) {
                cplx acc(0.0, 0.0);
                for (int j = 0; j < n; ++j)
                    acc += std::conj(modes.wavefunctions(j, k)) *
                           std::polar(1.0, cfg.dk_d0 * j) * double(rep.ground_spins(j));
                rep.predicted_displacements(k) = -(cfg.g / modes.frequencies(k)) * acc;
            }
            const double scale =
                std::max(1e-300, rep.predicted_displacements.cwiseAbs().maxCoeff());
            rep.displacement_error =
                (rep.displacements - rep.predicted_displacements).cwiseAbs().maxCoeff() / scale;
            return rep;
        }
    }
    throw numerical_error("polaron_check: not converged below tolerance at n_max = " +
                          std::to_string(n_max_limit));
}

double critical_field_estimate(double n_bar, const ChainConfig& cfg) {
    if (n_bar < 0.0) throw config_error("critical_field_estimate: n_bar must be >= 0");
    return cfg.g * cfg.g / cfg.delta_target * std::exp(-2.0 * n_bar);
}

double susceptibility_peak(const std::vector<double>& omega_x,
                           const std::vector<double>& oaf_values) {
    if (omega_x.size() != oaf_values.size() || omega_x.size() < 2)
        throw config_error("susceptibility_peak: need two grids of equal size >= 2");
    double best = -1.0, where = omega_x.front();
    for (std::size_t k = 0; k + 1 < omega_x.size(); ++k) {
        const double d = std::abs((oaf_values[k + 1] - oaf_values[k]) /
                                  (omega_x[k + 1] - omega_x[k]));
        if (d > best) {
            best = d;
            where = 0.5 * (omega_x[k] + omega_x[k + 1]);
        }
    }
    return where;
}

} // namespace ionsim
