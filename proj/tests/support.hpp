#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rkdg/harness.hpp"

namespace testing {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline Eigen::VectorXd random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline rkdg::Mesh1D periodic(int cells) { return rkdg::Mesh1D::uniform(0.0, kTwoPi, cells); }

/// Rate of errors[i] measured on meshes periodic(cells[i]).
template <class F>
double mesh_rate(const std::vector<int>& cells, F&& error_at) {
  std::vector<std::pair<double, double>> pts;
  for (int n : cells) pts.emplace_back(kTwoPi / n, error_at(n));
  return rkdg::fit_rate(pts).slope;
}

}  // namespace testing
