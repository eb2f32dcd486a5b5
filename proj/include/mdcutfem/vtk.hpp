#pragma once

#include <ostream>

#include <Eigen/Core>

#include "mdcutfem/assembly.hpp"

namespace mdcutfem {

/// Legacy ASCII VTK (v2.0) unstructured grid of the discrete solution: clipped bulk pieces
/// as triangles, fracture chords as lines and points as vertices. Each cell keeps its own
/// nodes so jumps between components stay visible. Cell data: dim, index. Point data: u_h,
/// and u when the problem has exact solutions.
void write_vtk(std::ostream& os, const Problem& problem, const Discretization& disc, const Eigen::VectorXd& uh);

}  // namespace mdcutfem
