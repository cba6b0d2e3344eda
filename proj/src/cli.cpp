#include "solgeom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "solgeom/verification.hpp"

namespace solgeom {

void RunConfig::validate() const {
    if (nu < 2 || nv < 2) throw UsageError("grid sizes must be at least 2");
    if (samples < 2) throw UsageError("--samples must be at least 2");
    if (!(u_min < u_max)) throw UsageError("empty u-range");
    if (!(v_min < v_max)) throw UsageError("empty v-range");
    if (!(step > 0.0) || !(richardson_tol > 0.0) || !(quadrature_tol > 0.0))
        throw UsageError("step and tolerances must be positive");
    if (kind == ProfileKind::implicit_family && !(c > 0.0)) throw UsageError("--c must be positive");
    if (kind == ProfileKind::explicit_family && !(u_max < 0.0))
        throw UsageError("the explicit family is defined for u < 0");
}

ProfileRequest RunConfig::profile_request() const {
    ProfileRequest r;
    r.kind = kind;
    r.c = c;
    r.theta_start = theta_start;
    r.u_begin = u_min;
    r.u_end = u_max;
    r.samples = command == Command::profile ? samples : nu;
    r.u0 = u0;
    r.control.step = step;
    r.control.richardson_tol = richardson_tol;
    r.control.quadrature_tol = quadrature_tol;
    r.variant = variant;
    return r;
}

std::array<double, 3> parse_point(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    is.imbue(std::locale::classic());
    std::array<double, 3> p{};
    if (!(is >> p[0] >> p[1] >> p[2])) throw UsageError("--point expects x,y,z, got '" + s + "'");
    std::string rest;
    if (is >> rest) throw UsageError("--point expects exactly three numbers, got '" + s + "'");
    return p;
}

std::array<int, 2> parse_plane(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--plane expects Ei,Ej, got '" + s + "'");
    auto one = [&](std::string e) {
        if (e.size() != 2 || (e[0] != 'E' && e[0] != 'e') || e[1] < '1' || e[1] > '3')
            throw UsageError("--plane entries must be E1, E2 or E3, got '" + e + "'");
        return e[1] - '0';
    };
    return {one(s.substr(0, comma)), one(s.substr(comma + 1))};
}

namespace {

// Splices "--key value" pairs from a JSON config file into the argument list
// for every key the command line does not already set.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    auto given = [&args](const std::string& flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            args.push_back(flag);
            args.push_back(value.dump());
        } else {
            throw UsageError("config key '" + key + "' must be a string, number or boolean");
        }
    }
    return args;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

std::string describe_profile(const RunConfig& cfg) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << to_string(cfg.kind) << " family, surface " << to_string(cfg.variant);
    if (cfg.kind == ProfileKind::implicit_family) os << ", c=" << cfg.c << ", theta_start=" << cfg.theta_start;
    return os.str();
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ProfileSolution profile = build_profile(cfg.profile_request());
    const SurfacePatch patch = family_surface(profile, cfg.variant, cfg.v_min, cfg.v_max);
    const Mesh mesh = triangulate(patch, cfg.nu, cfg.nv);
    Output o(cfg.output, out);
    write_mesh(mesh, cfg.format, o.stream(),
               describe_profile(cfg) + ", u in [" + format_fixed(patch.domain.u_min, 6) + ", " +
                   format_fixed(patch.domain.u_max, 6) + "]");
    if (profile.halt != HaltReason::none)
        err << "profile halted (" << to_string(profile.halt) << "); mesh covers u <= "
            << format_fixed(profile.u_last(), 6) << '\n';
    return 0;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
    const ProfileSolution profile = build_profile(cfg.profile_request());
    Output o(cfg.output, out);
    write_profile_csv(profile, o.stream());
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    SuiteOptions opts;
    opts.grid = {cfg.nu, cfg.nv};
    opts.seed = cfg.seed;
    const auto reports = run_suite(cfg.suite, opts);
    Output o(cfg.output, out);
    o.stream() << to_json(reports).dump(2) << '\n';
    std::size_t failed = 0, expected = 0;
    for (const auto& r : reports) {
        if (!r.ok()) ++failed;
        if (r.expected_failure && r.ok()) ++expected;
    }
    err << cfg.suite << ": " << reports.size() << " checks, " << failed << " failed, " << expected
        << " expected failures confirmed\n";
    for (const auto& r : reports)
        if (!r.ok()) err << "  FAIL " << r.check_id << " max_error=" << r.max_error << " tol=" << r.tolerance << '\n';
    return failed == 0 ? 0 : 1;
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out) {
    const Point p{cfg.point[0], cfg.point[1], cfg.point[2]};
    const TangentVector x = TangentVector::frame_vector(p, cfg.plane[0]);
    const TangentVector y = TangentVector::frame_vector(p, cfg.plane[1]);
    const double k = sectional_curvature(x, y);
    const Vec3 rxyy = curvature_tensor(x, y, y).frame();
    const Vec3 rxyx = curvature_tensor(x, y, x).frame();
    const std::string plane = "E" + std::to_string(cfg.plane[0]) + ",E" + std::to_string(cfg.plane[1]);
    if (cfg.json) {
        nlohmann::json j = {{"point", cfg.point},
                            {"plane", plane},
                            {"sectional_curvature", k},
                            {"R(X,Y)Y", {rxyy.x(), rxyy.y(), rxyy.z()}},
                            {"R(X,Y)X", {rxyx.x(), rxyx.y(), rxyx.z()}},
                            {"basis", "frame"}};
        out << j.dump(2) << '\n';
        return 0;
    }
    auto vec = [](const Vec3& v) {
        return format_fixed(v.x()) + ' ' + format_fixed(v.y()) + ' ' + format_fixed(v.z());
    };
    out << "point: " << format_fixed(p.x) << ' ' << format_fixed(p.y) << ' ' << format_fixed(p.z) << '\n'
        << "plane: " << plane << '\n'
        << "sectional_curvature: " << format_fixed(k) << '\n'
        << "R(X,Y)Y (frame): " << vec(rxyy) << '\n'
        << "R(X,Y)X (frame): " << vec(rxyx) << '\n';
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string kind = "explicit", variant = "x1", format = "obj", point = "0,0,0", plane = "E1,E3";
    std::optional<double> u0;

    CLI::App app{"Biconservative surfaces in Sol^3: generation and verification", "solgeom"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "solgeom 1.0");

    auto profile_opts = [&](CLI::App* s) {
        s->add_option("--kind", kind, "Profile family")->check(CLI::IsMember({"explicit", "implicit"}));
        s->add_option("--variant", variant, "Surface x1 = (v, Phi1, Psi) or x2 = (Phi2, v, Psi)")
            ->check(CLI::IsMember({"x1", "x2"}));
        s->add_option("--c", cfg.c, "Implicit family constant (> 0)");
        s->add_option("--theta-start", cfg.theta_start, "Implicit family: theta at u-min");
        s->add_option("--u-min", cfg.u_min, "Start of the u-range");
        s->add_option("--u-max", cfg.u_max, "End of the u-range");
        s->add_option("--u0", u0, "Anchor where Psi and Phi vanish");
        s->add_option("--step", cfg.step, "RK4 step of the implicit integration");
        s->add_option("--richardson-tol", cfg.richardson_tol, "Per-step error estimate bound");
        s->add_option("--quad-tol", cfg.quadrature_tol, "Adaptive Simpson tolerance for Psi and Phi");
        s->add_option("-o,--output", cfg.output, "Output path, '-' for stdout");
        s->add_option("--config", "JSON file with option values; flags override");
    };

    CLI::App* gen = app.add_subcommand("generate", "Write a triangulated mesh of a family surface");
    profile_opts(gen);
    gen->add_option("--v-min", cfg.v_min, "Start of the v-range");
    gen->add_option("--v-max", cfg.v_max, "End of the v-range");
    gen->add_option("--nu", cfg.nu, "Vertices along u");
    gen->add_option("--nv", cfg.nv, "Vertices along v");
    gen->add_option("--format", format, "Mesh format")->check(CLI::IsMember({"obj", "ply"}));
    gen->add_flag_callback("--ply", [&format] { format = "ply"; }, "Shorthand for --format ply");

    CLI::App* prof = app.add_subcommand("profile", "Write the profile table as CSV");
    profile_opts(prof);
    prof->add_option("--samples", cfg.samples, "Rows in the table");

    CLI::App* ver = app.add_subcommand("verify", "Run verification suites and emit a JSON report");
    ver->add_option("--suite", cfg.suite, "Suite name")->check(CLI::IsMember(suite_names()));
    ver->add_option("--nu", cfg.nu, "Grid samples along u");
    ver->add_option("--nv", cfg.nv, "Grid samples along v");
    ver->add_option("--seed", cfg.seed, "Seed for random points");
    ver->add_option("-o,--output", cfg.output, "Report path, '-' for stdout");
    ver->add_option("--config", "JSON file with option values; flags override");

    CLI::App* cur = app.add_subcommand("curvature", "Sectional curvature and curvature tensor at a point");
    cur->add_option("--point", point, "x,y,z");
    cur->add_option("--plane", plane, "Frame plane, e.g. E1,E3");
    cur->add_flag("--json", cfg.json, "JSON output");
    cur->add_option("--config", "JSON file with option values; flags override");

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        cfg.kind = profile_kind_from_string(kind);
        cfg.variant = variant_from_string(variant);
        cfg.format = mesh_format_from_string(format);
        cfg.u0 = u0;
        if (gen->parsed()) cfg.command = Command::generate;
        else if (prof->parsed()) cfg.command = Command::profile;
        else if (ver->parsed()) cfg.command = Command::verify;
        else cfg.command = Command::curvature;
        if (cfg.command == Command::curvature) {
            cfg.point = parse_point(point);
            cfg.plane = parse_plane(plane);
        } else if (cfg.command != Command::verify) {
            cfg.validate();
        } else if (cfg.nu < 2 || cfg.nv < 2) {
            throw UsageError("grid sizes must be at least 2");
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        switch (cfg.command) {
            case Command::generate: return cmd_generate(cfg, out, err);
            case Command::profile: return cmd_profile(cfg, out);
            case Command::verify: return cmd_verify(cfg, out, err);
            case Command::curvature: return cmd_curvature(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace solgeom
