#include "solgeom/mesh_io.hpp"

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>
#include <stdexcept>

#include "solgeom/numerics.hpp"

namespace solgeom {

Mesh triangulate(const SurfacePatch& patch, std::size_t nu, std::size_t nv) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("triangulate: grid sizes must be at least 2");
    const auto us = numerics::linspace(patch.domain.u_min, patch.domain.u_max, nu);
    const auto vs = numerics::linspace(patch.domain.v_min, patch.domain.v_max, nv);
    Mesh m;
    m.vertices.reserve(nu * nv);
    for (double u : us) {
        for (double v : vs) {
            const Vec3 p = patch.immersion(u, v).vec();
            if (!p.allFinite()) throw NonFiniteValue("triangulate: non-finite vertex on " + patch.name);
            m.vertices.push_back(p);
        }
    }
    m.triangles.reserve(2 * (nu - 1) * (nv - 1));
    for (std::size_t i = 0; i + 1 < nu; ++i) {
        for (std::size_t j = 0; j + 1 < nv; ++j) {
            const std::size_t a = i * nv + j, b = a + 1, c = a + nv, d = c + 1;
            m.triangles.push_back({a, c, d});
            m.triangles.push_back({a, d, b});
        }
    }
    return m;
}

MeshFormat mesh_format_from_string(const std::string& s) {
    if (s == "obj") return MeshFormat::obj;
    if (s == "ply") return MeshFormat::ply;
    throw std::invalid_argument("unknown mesh format '" + s + "' (expected obj|ply)");
}

std::string format_fixed(double x, int precision) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(precision) << (x == 0.0 ? 0.0 : x);
    return os.str();
}

namespace {

std::string vertex_line(const Vec3& p) {
    return format_fixed(p.x()) + ' ' + format_fixed(p.y()) + ' ' + format_fixed(p.z());
}

}  // namespace

void write_obj(const Mesh& mesh, std::ostream& os, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    for (const auto& v : mesh.vertices) os << "v " << vertex_line(v) << '\n';
    for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_ply(const Mesh& mesh, std::ostream& os, const std::string& comment) {
    os << "ply\nformat ascii 1.0\n";
    if (!comment.empty()) os << "comment " << comment << '\n';
    os << "element vertex " << mesh.vertices.size() << '\n'
       << "property double x\nproperty double y\nproperty double z\n"
       << "element face " << mesh.triangles.size() << '\n'
       << "property list uchar uint vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices) os << vertex_line(v) << '\n';
    for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_mesh(const Mesh& mesh, MeshFormat format, std::ostream& os, const std::string& comment) {
    if (format == MeshFormat::obj) write_obj(mesh, os, comment);
    else write_ply(mesh, os, comment);
}

double profile_gaussian_curvature(const ProfileSample& s, SurfaceVariant convention) {
    const double sign = convention == SurfaceVariant::x1 ? 1.0 : -1.0;
    const double c = std::cos(s.theta);
    return -c * c - 2.0 * sign * s.f * std::sin(s.theta);
}

void write_profile_csv(const ProfileSolution& profile, std::ostream& os) {
    os << "u,theta,f,Psi,Phi,K\n";
    for (const auto& s : profile.samples) {
        os << format_fixed(s.u) << ',' << format_fixed(s.theta) << ',' << format_fixed(s.f) << ','
           << format_fixed(s.psi) << ',' << format_fixed(s.phi(profile.convention)) << ','
           << format_fixed(profile_gaussian_curvature(s, profile.convention)) << '\n';
    }
    if (profile.kind == ProfileKind::implicit_family) {
        os << "# halt: " << to_string(profile.halt) << '\n';
        os << "# u-range: " << format_fixed(profile.u_first()) << ' ' << format_fixed(profile.u_last()) << '\n';
    }
}

}  // namespace solgeom
