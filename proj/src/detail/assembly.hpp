#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "rkdg/mesh.hpp"

namespace rkdg::detail {

using Triplets = std::vector<Eigen::Triplet<double>>;

/// Adds c * int_{I_j} phi_n^{(trial_d)} phi_m^{(test_d)} dx for every cell,
/// at (row_offset + j*(k+1) + m, col_offset + j*(k+1) + n).
void add_volume(const Mesh1D& mesh, int k, int trial_d, int test_d, double c, Triplets& t, int row_offset = 0,
                int col_offset = 0);

/// Adds c * sum_{j+1/2} (wl w^{-(trial_d)} + wr w^{+(trial_d)}) [v^{(test_d)}] at every interface.
void add_interface(const Mesh1D& mesh, int k, int trial_d, double wl, double wr, int test_d, double c, Triplets& t,
                   int row_offset = 0, int col_offset = 0);

}  // namespace rkdg::detail
