#pragma once

#include <cstdint>
#include <vector>

namespace rkdg {

/// Periodic partition of [a,b] into cells I_j = [x_{j-1/2}, x_{j+1/2}].
///
/// Boundaries are stored as x_{1/2} = a < x_{3/2} < ... < x_{N+1/2} = b.
/// The mesh is immutable after construction.
class Mesh1D {
 public:
  /// Takes ownership of the boundary list; rejects non-increasing
  /// sequences and meshes whose max/min width ratio exceeds max_ratio.
  explicit Mesh1D(std::vector<double> boundaries, double max_ratio = 2.0);

  static Mesh1D uniform(double a, double b, int cells);
  /// Randomly perturbed mesh with width ratio at most `ratio` (>= 1).
  static Mesh1D quasi_uniform(double a, double b, int cells, double ratio, std::uint64_t seed);

  int cells() const { return static_cast<int>(bounds_.size()) - 1; }
  double left() const { return bounds_.front(); }
  double right() const { return bounds_.back(); }
  double length() const { return right() - left(); }
  /// x_{i+1/2} for i = 0..N (i = 0 is the left end).
  double boundary(int i) const { return bounds_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& boundaries() const { return bounds_; }
  double width(int j) const { return bounds_[j + 1] - bounds_[j]; }
  double center(int j) const { return 0.5 * (bounds_[j] + bounds_[j + 1]); }
  /// h = max_j h_j.
  double h() const;
  double min_width() const;
  double quasi_uniformity() const { return h() / min_width(); }

  /// Maps x into [a, b) by periodic translation.
  double wrap(double x) const;
  /// Index of the (wrapped) cell containing x; interface points resolve
  /// to the cell on their right.
  int locate(double x) const;
  /// Periodic cell index.
  int cell(int j) const { const int n = cells(); return ((j % n) + n) % n; }
  /// Reference coordinate of x in cell j, in [-1, 1].
  double to_reference(int j, double x) const { return 2.0 * (x - center(j)) / width(j); }

  /// Overlapping mesh with boundaries at the cell centers x_j; dual cell
  /// j covers [x_j, x_{j+1}] (the last one wraps around).
  Mesh1D dual() const;

 private:
  std::vector<double> bounds_;
};

/// Uniform periodic mesh of N cells on [a, b].
Mesh1D build_uniform_mesh(double a, double b, int cells);

/// Cartesian product of two periodic meshes.
struct Mesh2D {
  Mesh1D x;
  Mesh1D y;
  double h() const;
};

}  // namespace rkdg
