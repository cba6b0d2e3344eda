#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "solgeom/family.hpp"
#include "solgeom/mesh_io.hpp"

namespace solgeom {

/// Bad flags or configuration values; maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { generate, profile, verify, curvature };

struct RunConfig {
    Command command = Command::generate;

    ProfileKind kind = ProfileKind::explicit_family;
    SurfaceVariant variant = SurfaceVariant::x1;
    double c = 1.0;
    double theta_start = 3.0;
    double u_min = -4.0, u_max = -0.01;
    double v_min = -1.0, v_max = 1.0;
    std::size_t nu = 64, nv = 16;
    std::size_t samples = 64;
    std::optional<double> u0;
    double step = 1e-3;
    double richardson_tol = 1e-11;
    double quadrature_tol = 1e-10;

    MeshFormat format = MeshFormat::obj;
    std::string output = "-";

    std::string suite = "all";
    std::uint64_t seed = 20240917;

    std::array<double, 3> point{0.0, 0.0, 0.0};
    std::array<int, 2> plane{1, 3};
    bool json = false;

    /// Throws UsageError unless grid sizes >= 2, ranges are nonempty and tolerances > 0.
    void validate() const;
    [[nodiscard]] ProfileRequest profile_request() const;
};

/// Parses "x,y,z".
std::array<double, 3> parse_point(const std::string& s);
/// Parses "Ei,Ej" with i, j in 1..3.
std::array<int, 2> parse_plane(const std::string& s);

/// Runs the command line (without the program name). Exit status: 0 success
/// or all checks pass, 1 runtime or check failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solgeom
