#include "gbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbm/errors.hpp"

namespace gbm {

Grid::Grid(std::size_t nx_, std::size_t ny_, double x0_, double x1_, double y0_, double y1_)
    : nx(nx_), ny(ny_), x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  std::ostringstream os;
  if (nx < 3 || ny < 3) os << "grid needs at least 3 cells per direction (got " << nx << "x" << ny << "); ";
  if (!(x1 > x0) || !std::isfinite(x1 - x0)) os << "x bounds must satisfy x1 > x0; ";
  if (!(y1 > y0) || !std::isfinite(y1 - y0)) os << "y bounds must satisfy y1 > y0; ";
  if (!os.str().empty()) throw InvalidInput("invalid grid: " + os.str());
}

ScalarField::ScalarField(const Grid& grid, double value)
    : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "field has " << values_.size() << " values, grid expects " << grid_.size();
    throw InvalidInput(os.str());
  }
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::integral() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * grid_.cell_area();
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridState::GridState(double t_, ScalarField tumor_, ScalarField necrosis_, ScalarField vasculature_)
    : t(t_), tumor(std::move(tumor_)), necrosis(std::move(necrosis_)),
      vasculature(std::move(vasculature_)) {
  if (!(tumor.grid() == necrosis.grid()) || !(tumor.grid() == vasculature.grid())) {
    throw InvalidInput("grid state fields must share one grid");
  }
}

void apply_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out) {
  const std::size_t nx = grid.nx;
  const std::size_t ny = grid.ny;
  const double cx = 1.0 / (grid.hx() * grid.hx());
  const double cy = 1.0 / (grid.hy() * grid.hy());
  for (std::size_t j = 0; j < ny; ++j) {
    const double* row = in.data() + j * nx;
    // mirror ghosts: the value outside the boundary equals the boundary cell
    const double* below = j > 0 ? row - nx : row;
    const double* above = j + 1 < ny ? row + nx : row;
    double* dst = out.data() + j * nx;
    auto vertical = [&](std::size_t i) { return cy * ((above[i] - row[i]) - (row[i] - below[i])); };
    dst[0] = cx * (row[1] - row[0]) + vertical(0);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      dst[i] = cx * ((row[i + 1] - row[i]) - (row[i] - row[i - 1])) + vertical(i);
    }
    dst[nx - 1] = cx * (row[nx - 2] - row[nx - 1]) + vertical(nx - 1);
  }
}

ScalarField laplacian_neumann(const ScalarField& f) {
  ScalarField out(f.grid());
  apply_laplacian(f.grid(), f.values(), out.values());
  return out;
}

}  // namespace gbm
