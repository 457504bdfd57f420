#pragma once

#include <string>
#include <vector>

#include "mot/core/ensemble.hpp"
#include "mot/core/field.hpp"

namespace mot {

// Density snapshot: text header (grid shape, bounds, time) followed by
// row-major ASCII values, 17 significant digits (round-trip exact).
void write_density(const std::string& path, const DensityField& f, double time);
struct DensitySnapshot {
    DensityField field;
    double time = 0.0;
};
DensitySnapshot read_density(const std::string& path);

// Particle ensembles as CSV: "# schema=1", then "x,y", then one row per particle.
void write_ensemble_csv(const std::string& path, const ParticleEnsemble& e);
ParticleEnsemble read_ensemble_csv(const std::string& path);

// Minimal CSV emitter for diagnostics/rate tables. First line "# schema=1",
// second the header; numeric cells at full precision.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void close();

  private:
    struct Impl;
    Impl* impl_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mot
