#include "resdyn/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "resdyn/errors.hpp"

namespace resdyn {

namespace {

constexpr double kMinSeparation = 1e-12;

void check_args(double k, const Vec3& Rvec, const char* who) {
    if (!std::isfinite(k) || k < 0.0)
        throw std::domain_error(std::string(who) + ": wavenumber must be finite and >= 0");
    if (!Rvec.finite())
        throw std::domain_error(std::string(who) + ": separation must be finite");
    if (Rvec.norm() < kMinSeparation)
        throw SingularityError(std::string(who) + ": evaluation at zero separation");
}

}  // namespace

PotentialTensor potential_tensor(double k0, const Vec3& Rvec) {
    check_args(k0, Rvec, "potential_tensor");
    const double R = Rvec.norm();
    const Vec3 n = Rvec.normalized();
    const double u = k0 * R;
    const double cu = std::cos(u);
    const double su = std::sin(u);
    const double near = (cu + u * su) / (R * R * R);  // (d - 3nn) coefficient
    const double far = k0 * k0 * cu / R;              // (d - nn) coefficient
    PotentialTensor T{{}, k0, Rvec};
    for (int l = 0; l < 3; ++l) {
        for (int m = 0; m < 3; ++m) {
            const double dm = l == m ? 1.0 : 0.0;
            const double nn = n[l] * n[m];
            T.entries[l][m] = (dm - 3.0 * nn) * near - (dm - nn) * far;
        }
    }
    return T;
}

DipoleFieldTensor dipole_field_tensor(double k, const Vec3& Rvec) {
    check_args(k, Rvec, "dipole_field_tensor");
    const double R = Rvec.norm();
    const Vec3 n = Rvec.normalized();
    const std::complex<double> phase(std::cos(k * R), std::sin(k * R));
    const double wave = k * k / R;
    const std::complex<double> nearc(1.0 / (R * R * R), -k / (R * R));
    DipoleFieldTensor T{{}, k, Rvec};
    for (int l = 0; l < 3; ++l) {
        for (int m = 0; m < 3; ++m) {
            const double dm = l == m ? 1.0 : 0.0;
            const double nn = n[l] * n[m];
            T.entries[l][m] = phase * ((dm - nn) * wave - (dm - 3.0 * nn) * nearc);
        }
    }
    return T;
}

double contract(const PotentialTensor& T, const DipoleMoment& a, const DipoleMoment& b) {
    double acc = 0.0;
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) acc += a[l] * T.entries[l][m] * b[m];
    return acc;
}

std::complex<double> contract(const DipoleFieldTensor& T, const DipoleMoment& a,
                              const DipoleMoment& b) {
    std::complex<double> acc = 0.0;
    for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) acc += a[l] * T.entries[l][m] * b[m];
    return acc;
}

}  // namespace resdyn
