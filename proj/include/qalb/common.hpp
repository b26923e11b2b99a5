#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qalb {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cplx>;

enum class errc {
    omega_out_of_range,
    tau_too_small,
    zero_density,
    singular_time,
    too_large,
    dim_mismatch,
    out_of_range,
    ground_amplitude_zero,
    convergence_failure,
    non_finite,
    negative_radicand,
    discriminant_not_closed,
    quadrature_failure,
    singular_coefficient,
    index_out_of_range,
    division_by_zero,
    config,
};

inline const char* errc_name(errc e)
{
    switch (e) {
    case errc::omega_out_of_range: return "OmegaOutOfRange";
    case errc::tau_too_small: return "TauTooSmall";
    case errc::zero_density: return "ZeroDensity";
    case errc::singular_time: return "SingularTime";
    case errc::too_large: return "TooLarge";
    case errc::dim_mismatch: return "DimMismatch";
    case errc::out_of_range: return "OutOfRange";
    case errc::ground_amplitude_zero: return "GroundAmplitudeZero";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::non_finite: return "NonFinite";
    case errc::negative_radicand: return "NegativeRadicand";
    case errc::discriminant_not_closed: return "DiscriminantNotClosed";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::singular_coefficient: return "SingularCoefficient";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::config: return "ConfigError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace qalb
