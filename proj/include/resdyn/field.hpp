#pragma once

#include <vector>

#include "resdyn/resonance.hpp"

namespace resdyn {

enum class Atom { A, B };

enum class SampleFlag {
    Ok = 0,
    ConeBand = 1,  // within the guard band of a light-cone boundary
    NearAtom = 2,  // numerically on top of an atom
};

// Per-point decomposition of the electric energy density:
// total = h_A + h_B + h_AB exactly; h_A, h_B >= 0; h_AB carries the parity
// sign and vanishes unless the point is inside both light cones.
struct FieldMapSample {
    Vec3 point;
    double h_A = 0.0;
    double h_B = 0.0;
    double h_AB = 0.0;
    double total = 0.0;
    bool inside_cone_A = false;
    bool inside_cone_B = false;
    SampleFlag flag = SampleFlag::Ok;
};

// Planar sampling grid, centered on origin: point(iu, iv) =
// origin + axis_u * extent_u * (iu/(n_u-1) - 1/2) + axis_v * (...).
struct GridSpec {
    Vec3 origin;
    Vec3 axis_u{1.0, 0.0, 0.0};
    Vec3 axis_v{0.0, 1.0, 0.0};
    double extent_u = 1.0;
    double extent_v = 1.0;
    int n_u = 2;
    int n_v = 2;

    void validate() const;  // orthonormal axes, resolution >= 2
    Vec3 point_at(int iu, int iv) const;
};

// (1/8pi) |sum_m T_lm(k0, r - r_X) mu_m|^2 summed over l, inside the cone of
// atom X; 0 outside (theta(0) = 0). Throws SingularityError at the atom and
// LightConeError within 1e-9 * R_X of the cone.
double single_atom_density(const Vec3& point, double t, Atom atom, const AtomPairConfig& cfg);

// Signed interference term of the two emitted fields; nonzero only inside
// both cones.
double interference_density(const Vec3& point, double t, const AtomPairConfig& cfg,
                            DickeParity parity);

FieldMapSample total_density(const Vec3& point, double t, const AtomPairConfig& cfg,
                             DickeParity parity);

// Row-major samples (iv outer, iu inner). Guard-band or near-atom points are
// flagged with zeroed densities instead of throwing.
std::vector<FieldMapSample> field_map(const GridSpec& grid, double t, const AtomPairConfig& cfg,
                                      DickeParity parity);

// Far-zone probe energy on a passive polarizable atom:
// -(alpha/2) <E^2> = -(alpha/2) * 8pi * total_density.
double probe_energy(const Vec3& point, double alpha, double t, const AtomPairConfig& cfg,
                    DickeParity parity);

// Negative central-difference gradient of probe_energy, step
// 1e-4 * min(R_A, R_B). Throws StencilError if the stencil crosses a cone
// boundary or hits a guarded point.
Vec3 probe_force(const Vec3& point, double alpha, double t, const AtomPairConfig& cfg,
                 DickeParity parity);

}  // namespace resdyn
