#include "mot/diagnostics/recorder.hpp"

#include <cmath>

#include "mot/core/errors.hpp"
#include "mot/diagnostics/observables.hpp"

namespace mot::diagnostics {

Recorder::Recorder(const std::string& path, double lambda, bool with_symmetry)
    : csv_(std::make_unique<CsvWriter>(
          path,
          std::vector<std::string>{"t", "mass", "l2", "linf", "m2", "m4",
                                   "entropy", "exp_moment", "covariance",
                                   "symmetry"})),
      lambda_(lambda),
      with_symmetry_(with_symmetry) {}

void Recorder::record(const DensityField& rho, double t) {
    const std::vector<double> row{
        t,
        total_mass(rho),
        lp_norm(rho, 2.0),
        linf_norm(rho),
        moment_k(rho, 2),
        moment_k(rho, 4),
        entropy(rho),
        exp_moment(rho, lambda_),
        covariance_stat(rho),
        with_symmetry_ ? symmetry_defect(rho) : 0.0,
    };
    for (double v : row)
        if (!std::isfinite(v))
            throw NumericalError("non-finite observable at t=" + std::to_string(t));
    csv_->row(row);
}

void Recorder::close() { csv_->close(); }

}  // namespace mot::diagnostics
