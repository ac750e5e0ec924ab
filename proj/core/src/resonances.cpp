#include "erfeo/resonances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "erfeo/errors.hpp"
#include "erfeo/magnon.hpp"
#include "erfeo/units.hpp"

namespace erfeo {

std::string label_name(ModeLabel l) {
    switch (l) {
        case ModeLabel::qFM: return "qFM";
        case ModeLabel::qAFM: return "qAFM";
        case ModeLabel::ErIn: return "Er-in-phase";
        case ModeLabel::ErOut: return "Er-out-of-phase";
    }
    return "?";
}

Axis parse_axis(const std::string& s) {
    if (s == "a" || s == "x") return Axis::a;
    if (s == "b" || s == "y") return Axis::b;
    if (s == "c" || s == "z") return Axis::c;
    throw ConfigError("axis must be one of a, b, c");
}

std::string axis_name(Axis a) { return a == Axis::a ? "a" : a == Axis::b ? "b" : "c"; }

Vec3 axis_field(Axis a, double B) {
    Vec3 v = Vec3::Zero();
    v[static_cast<int>(a)] = B;
    return v;
}

double effective_er_density(double T, const Vec3& B, const DickeParams& p) {
    const double mu = PhysConsts::mu_B;
    const double ex = p.E_x + p.g_Er.x() * mu * B.x();
    const double ey = p.g_Er.y() * mu * B.y();
    const double ez = p.g_Er.z() * mu * B.z();
    const double E = std::sqrt(ex * ex + ey * ey + ez * ez);
    if (T <= 0.0) return 1.0;
    return std::tanh(E / (2.0 * PhysConsts::k_B * T));
}

LinearizedSystem linearize(const SpinState& s, const ModelConfig& cfg, double tol) {
    const StationarityReport st = stationarity(s, cfg, cfg.env.T);
    if (st.max_cross > tol) throw PreconditionError("linearize needs a stationary reference state");

    const MeanFields h0 = compute_mean_fields(s, cfg);
    const MeanFields hz = compute_mean_fields(SpinState{}, cfg);
    const std::array<Vec3, 4> spin{s.sigma_A, s.sigma_B, s.S_A, s.S_B};
    const std::array<Vec3, 4> field{h0.h_Er_A, h0.h_Er_B, h0.h_Fe_A, h0.h_Fe_B};

    LinearizedSystem sys;
    sys.reference = s;
    for (int j = 0; j < 12; ++j) {
        Vec12 e = Vec12::Zero();
        e[j] = 1.0;
        const SpinState d = SpinState::unpack(e);
        const MeanFields hd = compute_mean_fields(d, cfg);
        const std::array<Vec3, 4> dspin{d.sigma_A, d.sigma_B, d.S_A, d.S_B};
        const std::array<Vec3, 4> dfield{hd.h_Er_A - hz.h_Er_A, hd.h_Er_B - hz.h_Er_B, hd.h_Fe_A - hz.h_Fe_A,
                                         hd.h_Fe_B - hz.h_Fe_B};
        for (int i = 0; i < 4; ++i)
            sys.matrix.block<3, 1>(3 * i, j) = (-dspin[i].cross(field[i]) - spin[i].cross(dfield[i])) / PhysConsts::hbar;
    }
    return sys;
}

std::vector<double> linear_frequencies(const LinearizedSystem& sys) {
    Eigen::EigenSolver<Eigen::Matrix<double, 12, 12>> es(sys.matrix, false);
    std::vector<double> nu;
    for (int k = 0; k < 12; ++k) nu.push_back((cplx(0, 1) * es.eigenvalues()[k]).real() / (2.0 * std::numbers::pi));
    std::sort(nu.begin(), nu.end());
    return nu;
}

namespace {

// Assign distinct labels greedily by descending weight.
std::vector<ModeLabel> assign_labels(const std::vector<std::array<double, 4>>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<ModeLabel> out(n, ModeLabel::qFM);
    std::vector<bool> mode_done(n, false), label_done(4, false);
    for (int round = 0; round < std::min(n, 4); ++round) {
        double best = -1.0;
        int bm = -1, bl = -1;
        for (int m = 0; m < n; ++m) {
            if (mode_done[m]) continue;
            for (int l = 0; l < 4; ++l) {
                if (label_done[l]) continue;
                if (w[m][l] > best) {
                    best = w[m][l];
                    bm = m;
                    bl = l;
                }
            }
        }
        mode_done[bm] = true;
        label_done[bl] = true;
        out[bm] = static_cast<ModeLabel>(bl);
    }
    return out;
}

std::array<double, 4> mf_weights(const Eigen::Matrix<cplx, 12, 1>& v, const MagnonBasis& mb, double S, double x) {
    using V3 = Eigen::Matrix<cplx, 3, 1>;
    const V3 sA = v.segment<3>(0), sB = v.segment<3>(3), SA = v.segment<3>(6), SB = v.segment<3>(9);
    const V3 plus = SA + SB, minus = SA - SB;
    const double cb = std::cos(mb.beta0), sb = std::sin(mb.beta0);
    const cplx T0 = -minus.x() * cb - plus.z() * sb;
    const cplx Tpi = plus.x() * cb + minus.z() * sb;
    const cplx Y0 = plus.y();
    const cplx Ypi = -minus.y();
    const double n0 = std::norm(T0) / (mb.scale_T0 * mb.scale_T0) + std::norm(Y0) / (mb.scale_Y0 * mb.scale_Y0);
    const double npi = std::norm(Tpi) / (mb.scale_Tpi * mb.scale_Tpi) + std::norm(Ypi) / (mb.scale_Ypi * mb.scale_Ypi);
    const double fe = (SA.squaredNorm() + SB.squaredNorm()) / (2.0 * S);
    const double in = (sA + sB).squaredNorm(), out = (sA - sB).squaredNorm();
    const double er = x * (sA.squaredNorm() + sB.squaredNorm()) / 4.0;
    std::array<double, 4> w{};
    const double nf = n0 + npi, ne = in + out;
    w[0] = nf > 0 ? fe * n0 / nf : 0.0;
    w[1] = nf > 0 ? fe * npi / nf : 0.0;
    w[2] = ne > 0 ? er * in / ne : 0.0;
    w[3] = ne > 0 ? er * out / ne : 0.0;
    return w;
}

}  // namespace

ResonanceSet mf_resonances(const ModelConfig& cfg_in, double T, const Vec3& B_ext, const SolverOptions& opt) {
    ModelConfig cfg = cfg_in;
    cfg.env.T = T;
    cfg.env.B_ext = B_ext;
    const EquilibriumResult eq = solve_equilibrium(cfg, opt);
    if (!eq.converged) throw ConvergenceError("mean-field solve did not converge");
    cfg.env.T = std::max(T, opt.T_floor);
    const LinearizedSystem sys = linearize(eq.state, cfg);

    Eigen::EigenSolver<Eigen::Matrix<double, 12, 12>> es(sys.matrix, true);
    const MagnonBasis mb = magnon_basis(cfg.fe);
    struct Mode {
        double nu;
        std::array<double, 4> w;
    };
    std::vector<Mode> modes;
    for (int k = 0; k < 12; ++k) {
        const double nu = (cplx(0, 1) * es.eigenvalues()[k]).real() / (2.0 * std::numbers::pi);
        if (nu > 1e-9) modes.push_back({nu, mf_weights(es.eigenvectors().col(k), mb, cfg.fe.S, cfg.env.x)});
    }
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.nu < b.nu; });

    ResonanceSet rs;
    std::vector<std::array<double, 4>> w;
    for (const auto& m : modes) {
        rs.frequencies.push_back(m.nu);
        w.push_back(m.w);
    }
    rs.labels = assign_labels(w);
    if (modes.size() != 4) rs.validity.push_back("expected four positive frequencies");
    if (order_parameter(eq.state) > 1e-4) rs.validity.push_back("ordered phase");
    return rs;
}

BosonicQuadratic dicke_quadratic(const DickeParams& p, Axis axis, double B) {
    enum { a0 = 0, api = 1, bp = 2, bm = 3 };
    const double h = PhysConsts::h;
    const double mu = PhysConsts::mu_B;
    const double zj4 = 4.0 * p.J_Er_term;
    const cplx I(0.0, 1.0);
    BosonicQuadratic q(4);
    q.set_frequency(a0, p.omega0);
    q.set_frequency(api, p.omegapi);

    switch (axis) {
        case Axis::a: {
            const double e = p.E_x + p.g_Er.x() * mu * B;
            if (std::abs(e) <= zj4)
                throw DomainError("field along a inside the ordered-phase gap; bosonization invalid");
            const double sgn = e > 0.0 ? 1.0 : -1.0;
            q.set_frequency(bp, std::abs(e) / h);
            q.set_frequency(bm, (std::abs(e) - zj4) / h);
            q.add_coupling(a0, bp, I * p.lambda_y, -1, +1);
            q.add_coupling(a0, bp, -sgn * I * p.lambda_zp, +1, -1);
            q.add_coupling(api, bm, p.lambda_yp, +1, +1);
            q.add_coupling(api, bm, sgn * p.lambda_z, -1, -1);
            break;
        }
        case Axis::b: {
            const double e = std::abs(p.g_Er.y() * mu * B);
            if (e <= zj4) throw DomainError("field along b below 4 zEr J_Er; bosonization invalid");
            q.set_frequency(bp, e / h);
            q.set_frequency(bm, (e - zj4) / h);
            q.add_coupling(api, bp, -I * p.lambda_x, +1, -1);
            q.add_coupling(api, bm, I * p.lambda_z, -1, +1);
            q.add_coupling(a0, bp, p.lambda_zp, +1, +1);
            break;
        }
        case Axis::c: {
            const double e = std::abs(p.g_Er.z() * mu * B);
            if (e <= zj4) throw DomainError("field along c below 4 zEr J_Er; bosonization invalid");
            q.set_frequency(bp, e / h);
            q.set_frequency(bm, (e - zj4) / h);
            q.add_coupling(a0, bp, p.lambda_y, -1, -1);
            q.add_coupling(api, bp, p.lambda_x, +1, +1);
            break;
        }
    }
    return q;
}

ResonanceSet dicke_resonances(const ModelConfig& cfg, double T, Axis axis, double B) {
    const Vec3 field = axis_field(axis, B);
    const MagnonBasis mb = magnon_basis(cfg.fe);
    const DickeParams bare = dicke_params(cfg, mb);
    ModelConfig eff = cfg;
    eff.env.x = cfg.env.x * effective_er_density(T, field, bare);
    const DickeParams p = dicke_params(eff, mb);
    const BosonicQuadratic q = dicke_quadratic(p, axis, B);
    const NormalModes nm = bogoliubov_modes(q);

    ResonanceSet rs;
    std::vector<std::array<double, 4>> w;
    for (std::size_t k = 0; k < nm.frequencies.size(); ++k) {
        std::array<double, 4> wk{};
        for (int i = 0; i < 4; ++i) wk[i] = std::norm(nm.vectors(i, k)) + std::norm(nm.vectors(i + 4, k));
        rs.frequencies.push_back(nm.frequencies[k]);
        w.push_back(wk);
    }
    rs.labels = assign_labels(w);
    if (axis == Axis::c) rs.validity.push_back("Er-out-of-phase uncoupled");
    return rs;
}

std::vector<Anticrossing> find_anticrossings(const std::vector<double>& fields, const std::vector<ResonanceSet>& sets,
                                             ModeLabel p, ModeLabel q, int window) {
    const int n = static_cast<int>(fields.size());
    std::vector<double> diff(n, NAN);
    for (int j = 0; j < n; ++j) {
        const auto& s = sets[j];
        double fp = NAN, fq = NAN;
        for (std::size_t k = 0; k < s.labels.size(); ++k) {
            if (s.labels[k] == p) fp = s.frequencies[k];
            if (s.labels[k] == q) fq = s.frequencies[k];
        }
        diff[j] = fp - fq;
    }
    std::vector<Anticrossing> out;
    for (int j = 0; j < n; ++j) {
        if (std::isnan(diff[j])) continue;
        const double g = std::abs(diff[j]);
        bool local_min = true;
        for (int k : {j - 1, j + 1}) {
            if (k < 0 || k >= n) continue;
            if (std::isnan(diff[k]) || std::abs(diff[k]) < g) local_min = false;
        }
        if (!local_min || j == 0 || j == n - 1) continue;
        const int l = std::max(0, j - window), r = std::min(n - 1, j + window);
        if (std::isnan(diff[l]) || std::isnan(diff[r])) continue;
        if (diff[l] * diff[r] >= 0.0) continue;
        if (!out.empty() && std::abs(out.back().B - fields[j]) <= window * std::abs(fields[1] - fields[0])) {
            if (g < out.back().gap) out.back() = {fields[j], g, p, q};
            continue;
        }
        out.push_back({fields[j], g, p, q});
    }
    return out;
}

}  // namespace erfeo
