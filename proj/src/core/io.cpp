#include "mot/core/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <string>

#include "mot/core/errors.hpp"

namespace mot {
namespace {

FILE* open_or_throw(const std::string& path, const char* mode) {
    FILE* f = std::fopen(path.c_str(), mode);
    if (!f) throw IoError("cannot open '" + path + "' for mode " + mode);
    return f;
}

void check_write(int rc, const std::string& path) {
    if (rc < 0) throw IoError("write failed: " + path);
}

}  // namespace

void write_density(const std::string& path, const DensityField& f, double time) {
    FILE* fp = open_or_throw(path, "w");
    const Grid2D& g = f.grid;
    check_write(std::fprintf(fp,
                             "# density snapshot schema=1\n"
                             "nx = %d\nny = %d\n"
                             "x_min = %.17g\nx_max = %.17g\n"
                             "y_min = %.17g\ny_max = %.17g\n"
                             "time = %.17g\n",
                             g.nx, g.ny, g.x_min, g.x_max, g.y_min, g.y_max, time),
                path);
    for (int j = 0; j < g.ny; ++j) {
        const double* row = f.row(j);
        for (int i = 0; i < g.nx; ++i)
            check_write(std::fprintf(fp, i + 1 == g.nx ? "%.17g\n" : "%.17g ", row[i]), path);
    }
    if (std::fclose(fp) != 0) throw IoError("close failed: " + path);
}

DensitySnapshot read_density(const std::string& path) {
    FILE* fp = open_or_throw(path, "r");
    char header[128];
    if (!std::fgets(header, sizeof header, fp)) {
        std::fclose(fp);
        throw IoError("snapshot truncated: " + path);
    }
    Grid2D g;
    double time = 0.0;
    if (std::fscanf(fp,
                    " nx = %d ny = %d x_min = %lf x_max = %lf y_min = %lf y_max = %lf time = %lf",
                    &g.nx, &g.ny, &g.x_min, &g.x_max, &g.y_min, &g.y_max, &time) != 7) {
        std::fclose(fp);
        throw IoError("snapshot header malformed: " + path);
    }
    if (g.nx < 1 || g.ny < 1 || g.x_max <= g.x_min || g.y_max <= g.y_min) {
        std::fclose(fp);
        throw IoError("snapshot header invalid: " + path);
    }
    DensitySnapshot snap{DensityField(g), time};
    for (double& v : snap.field.v) {
        if (std::fscanf(fp, "%lf", &v) != 1) {
            std::fclose(fp);
            throw IoError("snapshot data truncated: " + path);
        }
    }
    std::fclose(fp);
    return snap;
}

void write_ensemble_csv(const std::string& path, const ParticleEnsemble& e) {
    FILE* fp = open_or_throw(path, "w");
    check_write(std::fprintf(fp, "# schema=1\nx,y\n"), path);
    for (std::size_t i = 0; i < e.n(); ++i)
        check_write(std::fprintf(fp, "%.17g,%.17g\n", e.x[i], e.y[i]), path);
    if (std::fclose(fp) != 0) throw IoError("close failed: " + path);
}

ParticleEnsemble read_ensemble_csv(const std::string& path) {
    FILE* fp = open_or_throw(path, "r");
    char line[256];
    if (!std::fgets(line, sizeof line, fp) || std::strncmp(line, "# schema=1", 10) != 0 ||
        !std::fgets(line, sizeof line, fp)) {
        std::fclose(fp);
        throw IoError("ensemble csv malformed: " + path);
    }
    ParticleEnsemble e;
    double x, y;
    while (std::fscanf(fp, "%lf,%lf", &x, &y) == 2) {
        e.x.push_back(x);
        e.y.push_back(y);
    }
    std::fclose(fp);
    return e;
}

struct CsvWriter::Impl {
    FILE* fp = nullptr;
    std::string path;
    std::size_t ncols = 0;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(new Impl) {
    impl_->fp = open_or_throw(path, "w");
    impl_->path = path;
    impl_->ncols = columns.size();
    check_write(std::fprintf(impl_->fp, "# schema=1\n"), path);
    for (std::size_t c = 0; c < columns.size(); ++c)
        check_write(std::fprintf(impl_->fp, "%s%s", columns[c].c_str(),
                                 c + 1 == columns.size() ? "\n" : ","),
                    path);
}

CsvWriter::~CsvWriter() {
    if (impl_->fp) std::fclose(impl_->fp);
    delete impl_;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->ncols) throw IoError("csv row width mismatch: " + impl_->path);
    for (std::size_t c = 0; c < values.size(); ++c)
        check_write(std::fprintf(impl_->fp, c + 1 == values.size() ? "%.17g\n" : "%.17g,", values[c]),
                    impl_->path);
}

void CsvWriter::close() {
    if (impl_->fp) {
        if (std::fclose(impl_->fp) != 0) {
            impl_->fp = nullptr;
            throw IoError("close failed: " + impl_->path);
        }
        impl_->fp = nullptr;
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    FILE* fp = open_or_throw(path, "w");
    if (std::fwrite(content.data(), 1, content.size(), fp) != content.size()) {
        std::fclose(fp);
        throw IoError("write failed: " + path);
    }
    if (std::fclose(fp) != 0) throw IoError("close failed: " + path);
}

}  // namespace mot
