#include "rkdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rkdg/error.hpp"

namespace rkdg {

Mesh1D::Mesh1D(std::vector<double> boundaries, double max_ratio) : bounds_(std::move(boundaries)) {
  if (bounds_.size() < 3) throw InvalidArgument("mesh needs at least 2 cells");
  if (!(bounds_.back() > bounds_.front())) throw InvalidArgument("empty domain");
  for (std::size_t i = 1; i < bounds_.size(); ++i) {
    if (!(bounds_[i] > bounds_[i - 1])) throw InvalidArgument("mesh boundaries must be strictly increasing");
  }
  if (quasi_uniformity() > max_ratio * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "mesh quasi-uniformity ratio " << quasi_uniformity() << " exceeds bound " << max_ratio;
    throw InvalidArgument(os.str());
  }
}

Mesh1D Mesh1D::uniform(double a, double b, int cells) {
  if (cells < 2) throw InvalidArgument("mesh needs at least 2 cells");
  if (!(b > a)) throw InvalidArgument("empty domain");
  std::vector<double> x(static_cast<std::size_t>(cells) + 1);
  const double dx = (b - a) / cells;
  for (int i = 0; i <= cells; ++i) x[i] = a + i * dx;
  x.back() = b;
  return Mesh1D(std::move(x), 1.0);
}

Mesh1D Mesh1D::quasi_uniform(double a, double b, int cells, double ratio, std::uint64_t seed) {
  if (cells < 2) throw InvalidArgument("mesh needs at least 2 cells");
  if (!(b > a)) throw InvalidArgument("empty domain");
  if (!(ratio >= 1.0)) throw InvalidArgument("quasi-uniformity ratio must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1.0, ratio);
  std::vector<double> w(static_cast<std::size_t>(cells));
  for (auto& wi : w) wi = dist(rng);
  double total = 0.0;
  for (double wi : w) total += wi;
  std::vector<double> x(static_cast<std::size_t>(cells) + 1);
  x[0] = a;
  double acc = 0.0;
  for (int j = 0; j < cells; ++j) {
    acc += w[j];
    x[j + 1] = a + (b - a) * acc / total;
  }
  x.back() = b;
  return Mesh1D(std::move(x), ratio);
}

double Mesh1D::h() const {
  double m = 0.0;
  for (int j = 0; j < cells(); ++j) m = std::max(m, width(j));
  return m;
}

double Mesh1D::min_width() const {
  double m = width(0);
  for (int j = 1; j < cells(); ++j) m = std::min(m, width(j));
  return m;
}

double Mesh1D::wrap(double x) const {
  const double L = length();
  double y = std::fmod(x - left(), L);
  if (y < 0) y += L;
  if (y >= L) y -= L;
  return left() + y;
}

int Mesh1D::locate(double x) const {
  const double y = wrap(x);
  auto it = std::upper_bound(bounds_.begin(), bounds_.end(), y);
  int j = static_cast<int>(it - bounds_.begin()) - 1;
  return std::clamp(j, 0, cells() - 1);
}

Mesh1D Mesh1D::dual() const {
  const int n = cells();
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < n; ++j) x[j] = center(j);
  x[n] = center(0) + length();
  // A dual cell spans two half primal cells, so its width ratio is bounded
  // by the primal ratio.
  return Mesh1D(std::move(x), std::max(1.0, quasi_uniformity()));
}

Mesh1D build_uniform_mesh(double a, double b, int cells) { return Mesh1D::uniform(a, b, cells); }

double Mesh2D::h() const { return std::max(x.h(), y.h()); }

}  // namespace rkdg
