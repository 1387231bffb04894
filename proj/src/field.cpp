#include "resdyn/field.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "resdyn/errors.hpp"
#include "resdyn/tensor.hpp"

namespace resdyn {

namespace {

constexpr double kPi = 3.141592653589793238;
constexpr double kMinSeparation = 1e-12;
constexpr double kConeBandFactor = 1e-9;

struct AtomView {
    Vec3 pos;
    Vec3 mu;
};

AtomView atom_view(const AtomPairConfig& cfg, Atom atom) {
    return atom == Atom::A ? AtomView{cfg.r_A, cfg.mu_A} : AtomView{cfg.r_B, cfg.mu_B};
}

void check_observation(const Vec3& point, double t) {
    if (!point.finite() || !std::isfinite(t))
        throw std::domain_error("field: observation point and time must be finite");
    if (t < 0.0) throw std::domain_error("field: t must be >= 0");
}

double distance_checked(const Vec3& point, const AtomView& atom) {
    const double R = (point - atom.pos).norm();
    if (R < kMinSeparation)
        throw SingularityError("field: observation point coincides with an atom position");
    return R;
}

void check_cone_band(double t, double R) {
    if (std::fabs(t - R) < kConeBandFactor * R)
        throw LightConeError("field: observation time lies in the light-cone guard band");
}

// Complex field amplitude of one atom's dipole at the observation point.
struct Amplitude {
    std::complex<double> a[3];
};

Amplitude amplitude_at(const Vec3& point, const AtomView& atom, double k0) {
    const DipoleFieldTensor T = dipole_field_tensor(k0, point - atom.pos);
    Amplitude amp;
    for (int l = 0; l < 3; ++l) {
        std::complex<double> acc{0.0, 0.0};
        for (int m = 0; m < 3; ++m) acc += T.entries[l][m] * atom.mu[m];
        amp.a[l] = acc;
    }
    return amp;
}

double self_density(const Amplitude& amp) {
    double acc = 0.0;
    for (int l = 0; l < 3; ++l) acc += std::norm(amp.a[l]);
    return acc / (8.0 * kPi);
}

double cross_density(const Amplitude& ampA, const Amplitude& ampB, int sign) {
    double acc = 0.0;
    for (int l = 0; l < 3; ++l) acc += (ampA.a[l] * std::conj(ampB.a[l])).real();
    return sign * acc / (4.0 * kPi);
}

}  // namespace

void GridSpec::validate() const {
    if (!origin.finite() || !axis_u.finite() || !axis_v.finite())
        throw ConfigError("grid: origin and axes must be finite");
    if (std::fabs(axis_u.norm() - 1.0) > 1e-12 || std::fabs(axis_v.norm() - 1.0) > 1e-12)
        throw ConfigError("grid: axes must be unit vectors (within 1e-12)");
    if (std::fabs(axis_u.dot(axis_v)) > 1e-12)
        throw ConfigError("grid: axes must be orthogonal (within 1e-12)");
    if (!(extent_u > 0.0) || !(extent_v > 0.0)) throw ConfigError("grid: extents must be > 0");
    if (n_u < 2 || n_v < 2) throw ConfigError("grid: resolution must be >= 2 per axis");
}

Vec3 GridSpec::point_at(int iu, int iv) const {
    const double fu = static_cast<double>(iu) / (n_u - 1) - 0.5;
    const double fv = static_cast<double>(iv) / (n_v - 1) - 0.5;
    return origin + axis_u * (extent_u * fu) + axis_v * (extent_v * fv);
}

double single_atom_density(const Vec3& point, double t, Atom atom, const AtomPairConfig& cfg) {
    cfg.validate();
    check_observation(point, t);
    const AtomView av = atom_view(cfg, atom);
    const double R = distance_checked(point, av);
    check_cone_band(t, R);
    if (t < R) return 0.0;
    return self_density(amplitude_at(point, av, cfg.k0));
}

double interference_density(const Vec3& point, double t, const AtomPairConfig& cfg,
                            DickeParity parity) {
    cfg.validate();
    check_observation(point, t);
    const AtomView a = atom_view(cfg, Atom::A), b = atom_view(cfg, Atom::B);
    const double RA = distance_checked(point, a), RB = distance_checked(point, b);
    check_cone_band(t, RA);
    check_cone_band(t, RB);
    if (t < RA || t < RB) return 0.0;
    return cross_density(amplitude_at(point, a, cfg.k0), amplitude_at(point, b, cfg.k0),
                         parity_sign(parity));
}

FieldMapSample total_density(const Vec3& point, double t, const AtomPairConfig& cfg,
                             DickeParity parity) {
    cfg.validate();
    check_observation(point, t);
    const AtomView a = atom_view(cfg, Atom::A), b = atom_view(cfg, Atom::B);
    const double RA = distance_checked(point, a), RB = distance_checked(point, b);
    check_cone_band(t, RA);
    check_cone_band(t, RB);

    FieldMapSample s;
    s.point = point;
    s.inside_cone_A = t > RA;
    s.inside_cone_B = t > RB;
    s.flag = SampleFlag::Ok;
    s.h_A = s.inside_cone_A ? self_density(amplitude_at(point, a, cfg.k0)) : 0.0;
    s.h_B = s.inside_cone_B ? self_density(amplitude_at(point, b, cfg.k0)) : 0.0;
    s.h_AB = (s.inside_cone_A && s.inside_cone_B)
                 ? cross_density(amplitude_at(point, a, cfg.k0), amplitude_at(point, b, cfg.k0),
                                 parity_sign(parity))
                 : 0.0;
    s.total = s.h_A + s.h_B + s.h_AB;
    return s;
}

std::vector<FieldMapSample> field_map(const GridSpec& grid, double t, const AtomPairConfig& cfg,
                                      DickeParity parity) {
    grid.validate();
    cfg.validate();
    std::vector<FieldMapSample> out;
    out.reserve(static_cast<size_t>(grid.n_u) * grid.n_v);
    for (int iv = 0; iv < grid.n_v; ++iv) {
        for (int iu = 0; iu < grid.n_u; ++iu) {
            const Vec3 p = grid.point_at(iu, iv);
            try {
                out.push_back(total_density(p, t, cfg, parity));
            } catch (const SingularityError&) {
                FieldMapSample s;
                s.point = p;
                s.inside_cone_A = t > (p - cfg.r_A).norm();
                s.inside_cone_B = t > (p - cfg.r_B).norm();
                s.flag = SampleFlag::NearAtom;
                out.push_back(s);
            } catch (const LightConeError&) {
                FieldMapSample s;
                s.point = p;
                s.inside_cone_A = t > (p - cfg.r_A).norm();
                s.inside_cone_B = t > (p - cfg.r_B).norm();
                s.flag = SampleFlag::ConeBand;
                out.push_back(s);
            }
        }
    }
    return out;
}

double probe_energy(const Vec3& point, double alpha, double t, const AtomPairConfig& cfg,
                    DickeParity parity) {
    if (!std::isfinite(alpha)) throw std::domain_error("probe: alpha must be finite");
    // delta E = -(alpha/2) <E^2> and the density is <E^2>/(8 pi)
    return -4.0 * kPi * alpha * total_density(point, t, cfg, parity).total;
}

Vec3 probe_force(const Vec3& point, double alpha, double t, const AtomPairConfig& cfg,
                 DickeParity parity) {
    if (!std::isfinite(alpha)) throw std::domain_error("probe: alpha must be finite");
    cfg.validate();
    check_observation(point, t);
    const double RA = (point - cfg.r_A).norm(), RB = (point - cfg.r_B).norm();
    const double h = 1e-4 * std::min(RA, RB);
    if (!(h > 0.0)) throw SingularityError("probe: observation point coincides with an atom");

    FieldMapSample center;
    FieldMapSample plus[3], minus[3];
    try {
        center = total_density(point, t, cfg, parity);
        for (int i = 0; i < 3; ++i) {
            Vec3 dp = point, dm = point;
            if (i == 0) {
                dp.x += h;
                dm.x -= h;
            } else if (i == 1) {
                dp.y += h;
                dm.y -= h;
            } else {
                dp.z += h;
                dm.z -= h;
            }
            plus[i] = total_density(dp, t, cfg, parity);
            minus[i] = total_density(dm, t, cfg, parity);
        }
    } catch (const LightConeError&) {
        throw StencilError("probe: finite-difference stencil enters a light-cone guard band");
    }
    for (int i = 0; i < 3; ++i) {
        if (plus[i].inside_cone_A != center.inside_cone_A ||
            plus[i].inside_cone_B != center.inside_cone_B ||
            minus[i].inside_cone_A != center.inside_cone_A ||
            minus[i].inside_cone_B != center.inside_cone_B)
            throw StencilError("probe: finite-difference stencil crosses a light-cone boundary");
    }
    const double fac = 4.0 * kPi * alpha / (2.0 * h);  // -d/dx of (-4 pi alpha rho)
    return Vec3{fac * (plus[0].total - minus[0].total), fac * (plus[1].total - minus[1].total),
                fac * (plus[2].total - minus[2].total)};
}

}  // namespace resdyn
