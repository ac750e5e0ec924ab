#include "erfeo/dicke.hpp"

#include <cmath>

#include "erfeo/errors.hpp"
#include "erfeo/units.hpp"

namespace erfeo {

double alignment_energy(const ErFeCouplings& xc, double S, double beta0) {
    return 4.0 * S * (xc.J * std::sin(beta0) + xc.D_y * std::cos(beta0));
}

CouplingStrengths coupling_strengths(const ModelConfig& cfg, const MagnonBasis& mb) {
    const auto& k = mb.k;
    const auto& xc = cfg.xc;
    const double cb = std::cos(mb.beta0), sb = std::sin(mb.beta0);
    const double pre = std::sqrt(2.0 * cfg.env.x * cfg.fe.S) / PhysConsts::h;
    const double r_pi = std::pow((k.b + k.a) / (k.d - k.c), 0.25);
    const double r_0 = std::pow((k.b - k.a) / (k.d + k.c), 0.25);
    CouplingStrengths l;
    l.lambda_x = pre * (xc.J * cb - xc.D_y * sb) * r_pi;
    l.lambda_y = pre * xc.J / r_0;
    l.lambda_yp = pre * xc.D_x * sb * r_pi;
    l.lambda_z = pre * xc.D_x / r_pi;
    l.lambda_zp = pre * (-xc.J * sb - xc.D_y * cb) * r_0;
    return l;
}

DickeParams dicke_params(const ModelConfig& cfg) { return dicke_params(cfg, magnon_basis(cfg.fe)); }

DickeParams dicke_params(const ModelConfig& cfg, const MagnonBasis& mb) {
    DickeParams p;
    p.omega0 = mb.nu0;
    p.omegapi = mb.nupi;
    p.E_x = alignment_energy(cfg.xc, cfg.fe.S, mb.beta0);
    const CouplingStrengths l = coupling_strengths(cfg, mb);
    p.lambda_x = l.lambda_x;
    p.lambda_y = l.lambda_y;
    p.lambda_yp = l.lambda_yp;
    p.lambda_z = l.lambda_z;
    p.lambda_zp = l.lambda_zp;
    p.J_Er_term = cfg.z_Er() * cfg.er.J_Er;
    p.g_Er = cfg.er.g_Er;
    p.x = cfg.env.x;
    return p;
}

ReducedDicke reduce_for_ltpt(const DickeParams& p, double B_x) {
    ReducedDicke r;
    r.omegapi = p.omegapi;
    r.omegaEr = std::abs(p.E_x + p.g_Er.x() * PhysConsts::mu_B * B_x) / PhysConsts::h;
    r.lambda_x = p.lambda_x;
    r.lambda_z = p.lambda_z;
    r.zErJEr = p.J_Er_term;
    return r;
}

ReducedDicke reduce_for_ltpt(const DickeParams& p, const Vec3& B_ext) {
    if (B_ext.y() != 0.0 || B_ext.z() != 0.0)
        throw DomainError("reduced model requires the field along a");
    return reduce_for_ltpt(p, B_ext.x());
}

}  // namespace erfeo
