#pragma once

#include <memory>
#include <string>

#include "mot/core/field.hpp"
#include "mot/core/io.hpp"

namespace mot::diagnostics {

// Streams the standard observable set of a density trajectory to CSV, one row
// per recorded time. Columns: t, mass, l2, linf, m2, m4, entropy, exp_moment,
// covariance, symmetry. Rows with non-finite entries are rejected (numerical
// failure) so a blown-up run cannot masquerade as data.
class Recorder {
  public:
    // lambda: weight of the exponential moment column.
    // with_symmetry: emit the reflection defect (needs a symmetric grid);
    // when false the column holds NaN-free 0 and no symmetry check runs.
    Recorder(const std::string& path, double lambda, bool with_symmetry);

    void record(const DensityField& rho, double t);
    void close();

  private:
    std::unique_ptr<CsvWriter> csv_;
    double lambda_;
    bool with_symmetry_;
};

}  // namespace mot::diagnostics
