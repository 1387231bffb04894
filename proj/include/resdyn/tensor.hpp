#pragma once

#include <complex>

#include "resdyn/vec3.hpp"

namespace resdyn {

// Transition dipole matrix elements are real vectors (statC*cm in Gaussian
// units, dimensionless in natural units).
using DipoleMoment = Vec3;

// Real tensor V_lm(k0, R) whose contraction with the two dipole moments gives
// the stationary interaction energy:
//   V_lm = (1/R^3) [ (d_lm - 3 Rh_l Rh_m)(cos k0R + k0R sin k0R)
//                    - (d_lm - Rh_l Rh_m)(k0R)^2 cos k0R ].
struct PotentialTensor {
    double entries[3][3];
    double k0;
    Vec3 Rvec;
};

// Complex tensor (-d_lm lap + grad_l grad_m) e^{ikR}/R:
//   T_lm = e^{ikR} [ (d_lm - Rh_l Rh_m) k^2/R
//                    - (d_lm - 3 Rh_l Rh_m)(1/R^3 - ik/R^2) ].
// -Re(T) with k = k0 reproduces PotentialTensor entrywise.
struct DipoleFieldTensor {
    std::complex<double> entries[3][3];
    double k;
    Vec3 Rvec;
};

PotentialTensor potential_tensor(double k0, const Vec3& Rvec);
DipoleFieldTensor dipole_field_tensor(double k, const Vec3& Rvec);

// sum_lm a_l T_lm b_m
double contract(const PotentialTensor& T, const DipoleMoment& a, const DipoleMoment& b);
std::complex<double> contract(const DipoleFieldTensor& T, const DipoleMoment& a,
                              const DipoleMoment& b);

}  // namespace resdyn
