#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gbm {

/// Uniform cell-centred grid on the rectangle (x0, x1) x (y0, y1).
struct Grid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double x0 = -2.0;
  double x1 = 2.0;
  double y0 = -2.0;
  double y1 = 2.0;

  Grid() = default;
  /// Throws InvalidInput unless nx, ny >= 3 and the bounds are ordered.
  Grid(std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1);

  double hx() const noexcept { return (x1 - x0) / static_cast<double>(nx); }
  double hy() const noexcept { return (y1 - y0) / static_cast<double>(ny); }
  double cell_area() const noexcept { return hx() * hy(); }
  std::size_t size() const noexcept { return nx * ny; }

  double x_center(std::size_t i) const noexcept {
    return x0 + (static_cast<double>(i) + 0.5) * hx();
  }
  double y_center(std::size_t j) const noexcept {
    return y0 + (static_cast<double>(j) + 0.5) * hy();
  }
  /// Row-major: x varies fastest.
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx + i; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Samples of one variable at the cell centres of a grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double value = 0.0);
  /// Throws InvalidInput when the value count does not match the grid.
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[grid_.index(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[grid_.index(i, j)];
  }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  double max() const;
  double min() const;
  /// Midpoint-rule integral over the domain.
  double integral() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Tumor, necrosis and vasculature fields at one time level on a shared grid.
struct GridState {
  double t = 0.0;
  ScalarField tumor;
  ScalarField necrosis;
  ScalarField vasculature;

  GridState() = default;
  GridState(double t, ScalarField tumor, ScalarField necrosis, ScalarField vasculature);

  const Grid& grid() const noexcept { return tumor.grid(); }
};

/// 5-point Laplacian with mirror ghost cells (homogeneous Neumann closure).
///
/// The discrete operator is symmetric, annihilates constants and its
/// cell-sum vanishes identically (zero boundary flux).
void apply_laplacian(const Grid& grid, std::span<const double> in, std::span<double> out);

ScalarField laplacian_neumann(const ScalarField& f);

}  // namespace gbm
