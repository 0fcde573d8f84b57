#include "ionsim/classical.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <future>

namespace ionsim {

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::AF: return "AF";
        case PhaseLabel::F: return "F";
        case PhaseLabel::Hopfield: return "HOPFIELD";
        case PhaseLabel::Frustrated: return "FRUSTRATED";
        case PhaseLabel::Other: return "OTHER";
    }
    return "?";
}

double ising_energy(const Eigen::VectorXi& s, const Eigen::MatrixXd& J) {
    const int n = static_cast<int>(s.size());
    if (J.rows() != n || J.cols() != n)
        throw config_error("ising_energy: dimension mismatch between s and J");
    for (int j = 0; j < n; ++j)
        if (s(j) != 1 && s(j) != -1)
            throw config_error("ising_energy: spins must be +-1");
    const Eigen::VectorXd sd = s.cast<double>();
    return sd.dot(J * sd) - J.trace();
}

namespace {

Eigen::VectorXd pattern_chi(SpinPattern pattern, int n, double dk_d0) {
    Eigen::VectorXd chi(n);
    for (int j = 0; j < n; ++j) {
        const double stag = (j % 2 == 0) ? 1.0 : -1.0;
        switch (pattern) {
            case SpinPattern::AF: chi(j) = stag; break;
            case SpinPattern::F: chi(j) = 1.0; break;
            case SpinPattern::HopfieldCos: chi(j) = stag * std::cos(dk_d0 * j); break;
            case SpinPattern::HopfieldSin: chi(j) = stag * std::sin(dk_d0 * j); break;
        }
    }
    return chi;
}

constexpr double kChiZeroTol = 1e-9;

} // namespace

double pattern_overlap(const Eigen::VectorXi& s, SpinPattern pattern, double dk_d0,
                       int* excluded_sites) {
    const int n = static_cast<int>(s.size());
    const Eigen::VectorXd chi = pattern_chi(pattern, n, dk_d0);
    double acc = 0.0;
    int used = 0;
    for (int j = 0; j < n; ++j) {
        if (std::abs(chi(j)) <= kChiZeroTol) continue;
        acc += (chi(j) > 0 ? 1.0 : -1.0) * s(j);
        ++used;
    }
    if (excluded_sites) *excluded_sites = n - used;
    if (used == 0) return 0.0;
    return std::abs(acc) / used;
}

PatternOverlaps all_overlaps(const Eigen::VectorXi& s, double dk_d0) {
    PatternOverlaps o;
    o.af = pattern_overlap(s, SpinPattern::AF, dk_d0);
    o.f = pattern_overlap(s, SpinPattern::F, dk_d0);
    o.hopf_c = pattern_overlap(s, SpinPattern::HopfieldCos, dk_d0);
    o.hopf_s = pattern_overlap(s, SpinPattern::HopfieldSin, dk_d0);
    return o;
}

namespace {

struct GrayChunk {
    double best_e;
    std::uint32_t best_key; // lex key of the best state, site 1 most significant
    long count;             // states with E <= threshold (pass 2 only)
};

// Spins for enumeration index k: s_0 = +1, s_j = -1 iff bit (j-1) of gray(k).
void spins_for_index(std::uint32_t k, int n, Eigen::VectorXi& s) {
    const std::uint32_t gray = k ^ (k >> 1);
    s(0) = 1;
    for (int j = 1; j < n; ++j) s(j) = (gray >> (j - 1)) & 1u ? -1 : 1;
}

std::uint32_t lex_key(const Eigen::VectorXi& s) {
    const int n = static_cast<int>(s.size());
    std::uint32_t key = 0;
    for (int j = 1; j < n; ++j)
        if (s(j) < 0) key |= 1u << (n - 1 - j);
    return key;
}

// Walk one Gray-code range; visit(E, s) is called for every state.
template <typename Visit>
void walk_range(const Eigen::MatrixXd& J, int n, std::uint32_t k_begin,
                std::uint32_t k_end, Visit&& visit) {
    Eigen::VectorXi s(n);
    spins_for_index(k_begin, n, s);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n); // h_l = sum_{m != l} J(l,m) s_m
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
            if (m != l) h(l) += J(l, m) * s(m);
    double e = 0.0;
    for (int l = 0; l < n; ++l) e += s(l) * h(l);

    for (std::uint32_t k = k_begin;; ++k) {
        visit(e, s);
        if (k + 1 == k_end) break;
        const int p = std::countr_zero(k + 1) + 1; // site flipped next (never 0)
        const double sp = s(p);
        e -= 4.0 * sp * h(p);
        for (int l = 0; l < n; ++l)
            if (l != p) h(l) -= 2.0 * sp * J(l, p);
        s(p) = -s(p);
    }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> partition(std::uint32_t total, int jobs) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
    const std::uint32_t step = total / jobs;
    std::uint32_t begin = 0;
    for (int i = 0; i < jobs; ++i) {
        const std::uint32_t end = (i + 1 == jobs) ? total : begin + step;
        if (end > begin) ranges.emplace_back(begin, end);
        begin = end;
    }
    return ranges;
}

} // namespace

GroundStateReport exact_ground_state(const Eigen::MatrixXd& J, double dk_d0,
                                     const GroundStateOptions& opts) {
    const int n = static_cast<int>(J.rows());
    if (J.cols() != n || n < 2) throw config_error("exact_ground_state: J must be square, N >= 2");
    if (n > 24)
        throw capacity_error("exact_ground_state: enumeration supports N <= 24, got N = " +
                             std::to_string(n));
    const std::uint32_t total = 1u << (n - 1);
    const int jobs = std::max(1, std::min<int>(opts.jobs, 64));

    // pass 1: global minimum, ties broken toward the lexicographically
    // smallest configuration (s_0 = +1 gauge)
    auto pass1 = [&](std::uint32_t b, std::uint32_t e) {
        GrayChunk c{std::numeric_limits<double>::infinity(), 0, 0};
        walk_range(J, n, b, e, [&](double energy, const Eigen::VectorXi& s) {
            if (energy < c.best_e) {
                c.best_e = energy;
                c.best_key = lex_key(s);
            } else if (energy == c.best_e) {
                const std::uint32_t key = lex_key(s);
                if (key < c.best_key) c.best_key = key;
            }
        });
        return c;
    };
    const auto ranges = partition(total, jobs);
    std::vector<GrayChunk> results(ranges.size());
    if (ranges.size() == 1) {
        results[0] = pass1(ranges[0].first, ranges[0].second);
    } else {
        std::vector<std::future<GrayChunk>> futs;
        for (const auto& r : ranges)
            futs.push_back(std::async(std::launch::async, pass1, r.first, r.second));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    }
    double e0 = std::numeric_limits<double>::infinity();
    std::uint32_t key0 = 0;
    for (const auto& c : results) {
        if (c.best_e < e0 || (c.best_e == e0 && c.best_key < key0)) {
            e0 = c.best_e;
            key0 = c.best_key;
        }
    }

    Eigen::VectorXi s0(n);
    s0(0) = 1;
    for (int j = 1; j < n; ++j) s0(j) = (key0 >> (n - 1 - j)) & 1u ? -1 : 1;
    e0 = ising_energy(s0, J); // from-scratch value, free of incremental drift

    const double window = opts.window_rel * std::abs(e0);
    const double threshold = e0 + window;

    // pass 2: count states inside the window
    auto pass2 = [&](std::uint32_t b, std::uint32_t e) {
        long count = 0;
        walk_range(J, n, b, e, [&](double energy, const Eigen::VectorXi&) {
            if (energy <= threshold) ++count;
        });
        return count;
    };
    long count = 0;
    if (ranges.size() == 1) {
        count = pass2(ranges[0].first, ranges[0].second);
    } else {
        std::vector<std::future<long>> futs;
        for (const auto& r : ranges)
            futs.push_back(std::async(std::launch::async, pass2, r.first, r.second));
        for (auto& f : futs) count += f.get();
    }

    GroundStateReport rep;
    rep.ground.s = s0;
    rep.ground.energy = e0;
    rep.ground.overlaps = all_overlaps(s0, dk_d0);
    rep.degeneracy_count = 2 * count; // each enumerated state stands for a Z2 pair
    rep.window = window;

    const PatternOverlaps& o = rep.ground.overlaps;
    const double thr = opts.pattern_threshold;
    const bool patterned = o.af >= thr || o.f >= thr || o.max_hopfield() >= thr;
    if (!patterned && rep.degeneracy_count > static_cast<long>(opts.frustration_count_per_site) * n) {
        rep.phase_label = PhaseLabel::Frustrated;
    } else if (patterned) {
        if (o.f >= o.af && o.f >= o.max_hopfield())
            rep.phase_label = PhaseLabel::F;
        else if (o.af >= o.max_hopfield())
            rep.phase_label = PhaseLabel::AF;
        else
            rep.phase_label = PhaseLabel::Hopfield;
    } else {
        rep.phase_label = PhaseLabel::Other;
    }
    return rep;
}

std::vector<FrustrationPoint> frustration_scan(ChainConfig cfg,
                                               const std::vector<double>& t_grid,
                                               const GroundStateOptions& opts) {
    std::vector<FrustrationPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        cfg.t_C = t;
        const ModeData modes = chain_modes(cfg);
        const CouplingMatrix cm = exact_couplings(modes, cfg);
        const GroundStateReport rep = exact_ground_state(cm.J, cfg.dk_d0, opts);
        out.push_back({t, rep.ground.energy, rep.degeneracy_count, rep.phase_label,
                       rep.ground.overlaps});
    }
    return out;
}

double oaf(const Eigen::MatrixXd& zz) {
    const int n = static_cast<int>(zz.rows());
    if (zz.cols() != n || n < 2) throw config_error("oaf: matrix must be square, N >= 2");
    for (int j = 0; j < n; ++j)
        if (std::abs(zz(j, j) - 1.0) > 1e-9)
            throw config_error("oaf: correlation matrix must have unit diagonal");
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            const double sign = (std::abs(j - l) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * zz(j, l);
        }
    return acc / (static_cast<double>(n) * (n - 1));
}

} // namespace ionsim
