#pragma once

// Triangulated meshes of parameter patches and text exports (OBJ, PLY, CSV).
// All numbers are written with the classic locale: decimal point, no grouping.

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "solgeom/family.hpp"

namespace solgeom {

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;  // zero-based
};

/// Samples the patch on an nu x nv grid including both ends of each range.
/// Vertex (i, j) has index i * nv + j (row-major in (u, v)); each grid cell
/// contributes two triangles.
Mesh triangulate(const SurfacePatch& patch, std::size_t nu, std::size_t nv);

enum class MeshFormat { obj, ply };
MeshFormat mesh_format_from_string(const std::string& s);

void write_obj(const Mesh& mesh, std::ostream& os, const std::string& comment = {});
void write_ply(const Mesh& mesh, std::ostream& os, const std::string& comment = {});
void write_mesh(const Mesh& mesh, MeshFormat format, std::ostream& os, const std::string& comment = {});

/// Fixed-point text with `precision` decimals in the classic locale.
std::string format_fixed(double x, int precision = 12);

/// Gaussian curvature along a profile: -cos^2(theta) - 2 f sin(theta) in the
/// x1 convention, with the sign of the last term flipped in the x2 convention.
double profile_gaussian_curvature(const ProfileSample& s, SurfaceVariant convention);

/// Columns u,theta,f,Psi,Phi,K with 12 decimals; Phi is the coordinate of the
/// profile's own variant. Implicit profiles end with a "# halt: ..." comment.
void write_profile_csv(const ProfileSolution& profile, std::ostream& os);

}  // namespace solgeom
