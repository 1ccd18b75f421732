#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hmimo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kReferenceTemperature = 290.0;  // K
inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace hmimo
