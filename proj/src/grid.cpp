#include "cosserat/grid.hpp"

namespace cosserat {

namespace {
inline int lex(const std::array<int, 3>& shape, int i, int j, int k) {
  return i + shape[0] * (j + shape[1] * k);
}
inline void unlex(const std::array<int, 3>& shape, int id, int& i, int& j, int& k) {
  i = id % shape[0];
  id /= shape[0];
  j = id % shape[1];
  k = id / shape[1];
}
}  // namespace

BodyGrid::BodyGrid(std::array<int, 3> dims, Vec3 spacing, Vec3 origin)
    : dims_(dims), spacing_(spacing), origin_(origin) {
  for (int a = 0; a < 3; ++a) {
    if (dims_[a] < 2) throw ValidationError("BodyGrid: need at least 2 cells per axis");
    if (!(spacing_[a] > 0.0)) throw ValidationError("BodyGrid: spacing must be positive");
  }
  nverts_ = nv(0) * nv(1) * nv(2);
  ncubes_ = dims_[0] * dims_[1] * dims_[2];
  edge_base_[0] = face_base_[0] = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      edge_shape_[a][b] = (b == a) ? dims_[b] : nv(b);
      face_shape_[a][b] = (b == a) ? nv(b) : dims_[b];
    }
    edge_base_[a + 1] =
        edge_base_[a] + edge_shape_[a][0] * edge_shape_[a][1] * edge_shape_[a][2];
    face_base_[a + 1] =
        face_base_[a] + face_shape_[a][0] * face_shape_[a][1] * face_shape_[a][2];
  }
}

int BodyGrid::num_cells(int degree) const {
  switch (degree) {
    case 0: return num_vertices();
    case 1: return num_edges();
    case 2: return num_faces();
    case 3: return num_cubes();
    default: throw ValidationError("num_cells: degree must be 0..3");
  }
}

int BodyGrid::vertex_id(int i, int j, int k) const {
  return lex({nv(0), nv(1), nv(2)}, i, j, k);
}

int BodyGrid::edge_id(int axis, int i, int j, int k) const {
  return edge_base_[axis] + lex(edge_shape_[axis], i, j, k);
}

int BodyGrid::face_id(int axis, int i, int j, int k) const {
  return face_base_[axis] + lex(face_shape_[axis], i, j, k);
}

int BodyGrid::cube_id(int i, int j, int k) const { return lex(dims_, i, j, k); }

CellRef BodyGrid::vertex_ref(int id) const {
  CellRef c;
  unlex({nv(0), nv(1), nv(2)}, id, c.i, c.j, c.k);
  return c;
}

CellRef BodyGrid::edge_ref(int id) const {
  CellRef c;
  for (int a = 2; a >= 0; --a) {
    if (id >= edge_base_[a]) {
      c.axis = a;
      unlex(edge_shape_[a], id - edge_base_[a], c.i, c.j, c.k);
      return c;
    }
  }
  throw ValidationError("edge_ref: bad index");
}

CellRef BodyGrid::face_ref(int id) const {
  CellRef c;
  for (int a = 2; a >= 0; --a) {
    if (id >= face_base_[a]) {
      c.axis = a;
      unlex(face_shape_[a], id - face_base_[a], c.i, c.j, c.k);
      return c;
    }
  }
  throw ValidationError("face_ref: bad index");
}

CellRef BodyGrid::cube_ref(int id) const {
  CellRef c;
  unlex(dims_, id, c.i, c.j, c.k);
  return c;
}

CellRef BodyGrid::cell_ref(int degree, int id) const {
  if (id < 0 || id >= num_cells(degree)) throw ValidationError("cell_ref: index out of range");
  switch (degree) {
    case 0: return vertex_ref(id);
    case 1: return edge_ref(id);
    case 2: return face_ref(id);
    default: return cube_ref(id);
  }
}

int BodyGrid::cell_id(int degree, const CellRef& c) const {
  switch (degree) {
    case 0: return vertex_id(c.i, c.j, c.k);
    case 1: return edge_id(c.axis, c.i, c.j, c.k);
    case 2: return face_id(c.axis, c.i, c.j, c.k);
    case 3: return cube_id(c.i, c.j, c.k);
    default: throw ValidationError("cell_id: degree must be 0..3");
  }
}

Vec3 BodyGrid::cell_base_position(int degree, int id) const {
  const CellRef c = cell_ref(degree, id);
  return position(c.i, c.j, c.k);
}

Vec3 BodyGrid::cell_center(int degree, int id) const {
  const CellRef c = cell_ref(degree, id);
  Vec3 p = position(c.i, c.j, c.k);
  const auto sp = spans(degree, c.axis);
  for (int a = 0; a < 3; ++a) p[a] += 0.5 * sp[a] * spacing_[a];
  return p;
}

std::array<int, 3> BodyGrid::spans(int degree, int axis) {
  switch (degree) {
    case 0: return {0, 0, 0};
    case 1: return {axis == 0, axis == 1, axis == 2};
    case 2: return {axis != 0, axis != 1, axis != 2};
    default: return {1, 1, 1};
  }
}

Chain BodyGrid::boundary(int degree, int id) const {
  Chain out;
  const CellRef c = cell_ref(degree, id);
  std::array<int, 3> at{c.i, c.j, c.k};
  switch (degree) {
    case 1: {
      // edge tail -> head
      auto head = at;
      head[c.axis] += 1;
      out.push_back({vertex_id(head[0], head[1], head[2]), +1});
      out.push_back({vertex_id(at[0], at[1], at[2]), -1});
      break;
    }
    case 2: {
      // square in the cyclic plane (b, c): edge_b(v) + edge_c(v+eb) - edge_b(v+ec) - edge_c(v)
      const auto [b, cc] = axis_cycle(c.axis);
      auto vb = at, vc = at;
      vb[b] += 1;
      vc[cc] += 1;
      out.push_back({edge_id(b, at[0], at[1], at[2]), +1});
      out.push_back({edge_id(cc, vb[0], vb[1], vb[2]), +1});
      out.push_back({edge_id(b, vc[0], vc[1], vc[2]), -1});
      out.push_back({edge_id(cc, at[0], at[1], at[2]), -1});
      break;
    }
    case 3: {
      // outward-oriented pairs: +face_a(v + ea) - face_a(v)
      for (int a = 0; a < 3; ++a) {
        auto top = at;
        top[a] += 1;
        out.push_back({face_id(a, top[0], top[1], top[2]), +1});
        out.push_back({face_id(a, at[0], at[1], at[2]), -1});
      }
      break;
    }
    default:
      throw ValidationError("boundary: degree must be 1..3");
  }
  return out;
}

}  // namespace cosserat
