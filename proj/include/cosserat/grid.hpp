#pragma once

#include <array>

#include "cosserat/core.hpp"

namespace cosserat {

/// Multi-index of a cell: family axis (meaning depends on degree) plus the
/// lexicographic corner index. Degree 0 and 3 ignore the axis.
struct CellRef {
  int axis = 0;
  int i = 0, j = 0, k = 0;
};

/// Signed cell in a chain.
struct ChainEntry {
  int cell = 0;  ///< linear index within the degree's cell set
  int sign = +1;
};
using Chain = std::vector<ChainEntry>;

/// Regular cubical complex over a box: vertices, axis-aligned edges, faces
/// and cells, with fixed orientations. Edges point along +axis; the face
/// with normal axis a is oriented dx_b ^ dx_c for (b, c) the cyclic pair of
/// a (so its value column matches the contraction basis A_a); cells carry
/// the standard volume orientation.
class BodyGrid {
 public:
  BodyGrid(std::array<int, 3> dims, Vec3 spacing, Vec3 origin = Vec3::Zero());

  const std::array<int, 3>& dims() const { return dims_; }
  const Vec3& spacing() const { return spacing_; }
  const Vec3& origin() const { return origin_; }

  int nv(int axis) const { return dims_[axis] + 1; }  ///< vertices per axis

  int num_vertices() const { return nverts_; }
  int num_edges() const { return edge_base_[3]; }
  int num_faces() const { return face_base_[3]; }
  int num_cubes() const { return ncubes_; }
  /// Number of k-cells.
  int num_cells(int degree) const;

  // --- linear index maps (bijective per degree) ---
  int vertex_id(int i, int j, int k) const;
  int edge_id(int axis, int i, int j, int k) const;
  int face_id(int axis, int i, int j, int k) const;
  int cube_id(int i, int j, int k) const;

  CellRef vertex_ref(int id) const;
  CellRef edge_ref(int id) const;
  CellRef face_ref(int id) const;
  CellRef cube_ref(int id) const;
  /// Generic inverse map for a k-cell linear index.
  CellRef cell_ref(int degree, int id) const;
  int cell_id(int degree, const CellRef& c) const;

  /// Base-corner position of any cell (its lexicographically least vertex).
  Vec3 position(int i, int j, int k) const {
    return origin_ + Vec3(i * spacing_[0], j * spacing_[1], k * spacing_[2]);
  }
  Vec3 cell_base_position(int degree, int id) const;
  /// Midpoint of a cell.
  Vec3 cell_center(int degree, int id) const;

  bool is_boundary_vertex(int i, int j, int k) const {
    return i == 0 || j == 0 || k == 0 || i == dims_[0] || j == dims_[1] || k == dims_[2];
  }

  /// Signed boundary of a k-cell (k = 1, 2, 3) as (k-1)-cells.
  Chain boundary(int degree, int id) const;

  /// Extent per axis of a k-cell family: 1 if the cell spans that axis.
  static std::array<int, 3> spans(int degree, int axis);

 private:
  std::array<int, 3> dims_;
  Vec3 spacing_;
  Vec3 origin_;
  int nverts_ = 0;
  int ncubes_ = 0;
  std::array<int, 4> edge_base_{};  // family offsets, edge_base_[3] = total
  std::array<int, 4> face_base_{};
  std::array<std::array<int, 3>, 3> edge_shape_{};
  std::array<std::array<int, 3>, 3> face_shape_{};
};

}  // namespace cosserat
