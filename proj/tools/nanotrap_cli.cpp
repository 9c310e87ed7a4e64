// Command-line surface for the two-color nanofiber trap toolkit.
// Subcommands: mode | potential | report | bound | sweep.
// Units at the boundary: um, nm, mW, mK; SI internally.
// Exit codes: 0 ok, 2 bad input, 3 no trap / multimode, 4 non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nanotrap/nanotrap.hpp"

using json = nlohmann::ordered_json;
using namespace nanotrap;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_bad_input = 2;
constexpr int exit_no_trap = 3;
constexpr int exit_no_convergence = 4;

// fixed 9-significant-digit formatting keeps outputs byte-reproducible
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct RunConfig {
    std::string atom = "cesium";
    double radius_um = 0.2;
    double lambda1_um = 1.06;
    double lambda2_nm = 700.0;
    double p1_mw = 30.0;
    double p2_mw = 29.0;
    std::string pol = "circular";
    double r_max_um = 0.0; // 0 -> a + 6 Lambda_1
    int n_r = 2000;
    int n_phi = 360;
    int levels = 6;
    int m_rot = 0;
    double phi_cut_um = 0.4; // radius of the azimuthal cut (linear scheme)
    std::string out;
    std::string wf_out;
    std::string format = "csv";

    void apply_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw invalid_input("cannot open config file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(0, eq), val = line.substr(eq + 1);
            auto trim = [](std::string& s) {
                s.erase(0, s.find_first_not_of(" \t"));
                s.erase(s.find_last_not_of(" \t") + 1);
            };
            trim(key);
            trim(val);
            if (key == "atom") atom = val;
            else if (key == "radius_um") radius_um = std::stod(val);
            else if (key == "lambda1_um") lambda1_um = std::stod(val);
            else if (key == "lambda2_nm") lambda2_nm = std::stod(val);
            else if (key == "p1_mw") p1_mw = std::stod(val);
            else if (key == "p2_mw") p2_mw = std::stod(val);
            else if (key == "pol") pol = val;
            else if (key == "r_max_um") r_max_um = std::stod(val);
            else if (key == "n_r") n_r = std::stoi(val);
            else if (key == "n_phi") n_phi = std::stoi(val);
            else if (key == "levels") levels = std::stoi(val);
            else if (key == "m_rot") m_rot = std::stoi(val);
            else if (key == "phi_cut_um") phi_cut_um = std::stod(val);
            else if (key == "out") out = val;
            else if (key == "wf_out") wf_out = val;
            else if (key == "format") format = val;
            else throw invalid_input("unknown config key: " + key);
        }
    }

    void validate() const {
        if (radius_um <= 0) throw invalid_input("radius must be positive");
        if (p1_mw < 0 || p2_mw < 0) throw invalid_input("powers must be >= 0");
        if (lambda1_um * 1000.0 <= lambda2_nm)
            throw invalid_input("lambda1 must exceed lambda2 (red/blue ordering)");
        if (pol != "circular" && pol != "linear")
            throw invalid_input("pol must be circular or linear");
    }

    AtomModel make_atom() const {
        return atom == "cesium" ? cesium() : load_atom(atom);
    }
    FiberSpec make_fiber() const { return FiberSpec{radius_um * 1e-6, silica()}; }
    Polarization scheme() const {
        return pol == "circular" ? Polarization::circular : Polarization::linear_x;
    }
    TrapConfiguration make_trap(bool with_vdw = true) const {
        return make_configuration(make_fiber(), make_atom(), lambda1_um * 1e-6,
                                  p1_mw * 1e-3, lambda2_nm * 1e-9, p2_mw * 1e-3,
                                  scheme(), with_vdw);
    }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw invalid_input("cannot open output file: " + path);
    return file;
}

json mode_to_json(const ModeSolution& m) {
    json j;
    j["lambda_um"] = m.lambda * 1e6;
    j["V"] = m.v;
    j["beta_per_m"] = m.beta;
    j["qa"] = m.q * m.radius;
    j["q_per_m"] = m.q;
    j["ha"] = m.h * m.radius;
    j["decay_length_um"] = m.decay_length() * 1e6;
    j["s"] = m.s;
    j["w"] = m.w_coef;
    j["f"] = m.f_coef;
    j["xi"] = m.xi_coef;
    j["n_core"] = m.n1;
    j["power_mW"] = m.power * 1e3;
    j["field_strength_V_per_m"] = m.e_strength;
    return j;
}

json report_to_json(const TrapReport& r) {
    json j;
    j["scheme"] = r.scheme;
    j["r_m_um"] = r.r_m * 1e6;
    j["phi_m_rad"] = r.phi_m;
    j["u_min_mK"] = joule_to_mK(r.u_min);
    j["depth_mK"] = joule_to_mK(r.depth);
    j["barrier_mK"] = joule_to_mK(r.barrier);
    j["gamma_red_per_s"] = r.gamma_red;
    j["gamma_blue_per_s"] = r.gamma_blue;
    j["gamma_total_per_s"] = r.gamma_total;
    j["tau_coh_ms"] = r.tau_coh * 1e3;
    j["tau_trap_s"] = r.tau_trap;
    j["freq_r_kHz"] = r.freq_r / 1e3;
    j["freq_phi_kHz"] = r.freq_phi / 1e3;
    j["loc_r_nm"] = r.loc_r * 1e9;
    j["loc_phi_nm"] = r.loc_phi * 1e9;
    j["recoil_red_uK"] = joule_to_uK(r.recoil_red);
    j["recoil_blue_uK"] = joule_to_uK(r.recoil_blue);
    j["mode_spacing_uK"] = joule_to_uK(hbar * 2.0 * pi * r.freq_r);
    // SI copies
    j["si"] = {{"r_m", fmt(r.r_m)},          {"u_min_J", fmt(r.u_min)},
               {"depth_J", fmt(r.depth)},    {"tau_coh_s", fmt(r.tau_coh)},
               {"omega_r", fmt(2 * pi * r.freq_r)},
               {"omega_phi", fmt(2 * pi * r.freq_phi)}};
    return j;
}

int cmd_mode(const RunConfig& rc) {
    const FiberSpec fiber = rc.make_fiber();
    auto red = normalize_power(solve_he11(fiber, rc.lambda1_um * 1e-6), rc.p1_mw * 1e-3);
    auto blue = normalize_power(solve_he11(fiber, rc.lambda2_nm * 1e-9), rc.p2_mw * 1e-3);
    json j;
    j["radius_um"] = rc.radius_um;
    j["red"] = mode_to_json(red);
    j["blue"] = mode_to_json(blue);
    std::ofstream file;
    open_out(rc.out, file) << j.dump(2) << "\n";
    return exit_ok;
}

int cmd_potential(const RunConfig& rc) {
    auto cfg = rc.make_trap();
    const double a = cfg.fiber.radius;
    const double rlo = a * (1.0 + 1e-4);
    const double rhi =
        rc.r_max_um > 0 ? rc.r_max_um * 1e-6 : a + 6.0 * cfg.red.decay_length();

    bool trapped = true;
    try {
        find_minimum(cfg);
    } catch (const no_trap_error&) {
        trapped = false;
    }

    std::ofstream file;
    std::ostream& os = open_out(rc.out, file);
    const bool lin = cfg.scheme == Polarization::linear_x;
    os << "# r_um,U1_mK,U2_mK,U_net_mK,V_vdw_mK,V_flat_mK,U_tot_mK";
    if (!trapped) os << "  # no-minimum";
    os << "\n";
    const double c3 = c3_flat(cfg.atom, cfg.fiber.core);
    for (int i = 0; i < rc.n_r; ++i) {
        const double r = rlo * std::pow(rhi / rlo, (double)i / (rc.n_r - 1));
        const double i1 = lin ? intensity_linear(cfg.red, r, 0.0)
                              : intensity_circular(cfg.red, r);
        const double i2 = lin ? intensity_linear(cfg.blue, r, 0.0)
                              : intensity_circular(cfg.blue, r);
        const double u1 = optical_potential(cfg.alpha_red, i1);
        const double u2 = optical_potential(cfg.alpha_blue, i2);
        const double v = (*cfg.vdw)(r);
        os << fmt(r * 1e6) << ',' << fmt(joule_to_mK(u1)) << ','
           << fmt(joule_to_mK(u2)) << ',' << fmt(joule_to_mK(u1 + u2)) << ','
           << fmt(joule_to_mK(v)) << ',' << fmt(joule_to_mK(vdw_flat(c3, r - a)))
           << ',' << fmt(joule_to_mK(u1 + u2 + v)) << "\n";
    }

    if (lin && !rc.out.empty() && rc.out != "-") {
        const std::string stem =
            rc.out.size() > 4 && rc.out.substr(rc.out.size() - 4) == ".csv"
                ? rc.out.substr(0, rc.out.size() - 4)
                : rc.out;
        {
            std::ofstream fphi(stem + "_phi.csv");
            fphi << "# phi_rad,U_tot_mK  (r = " << fmt(rc.phi_cut_um) << " um)\n";
            const double rcut = rc.phi_cut_um * 1e-6;
            for (int i = 0; i < rc.n_phi; ++i) {
                const double phi = 2.0 * pi * i / rc.n_phi;
                fphi << fmt(phi) << ','
                     << fmt(joule_to_mK(total_potential(cfg, rcut, phi).total))
                     << "\n";
            }
        }
        {
            std::ofstream fxy(stem + "_xy.csv");
            fxy << "# x_um,y_um,U_tot_mK  (NaN inside the core)\n";
            const int n = 161;
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    const double x = -rhi + 2 * rhi * ix / (n - 1);
                    const double y = -rhi + 2 * rhi * iy / (n - 1);
                    const double r = std::hypot(x, y);
                    fxy << fmt(x * 1e6) << ',' << fmt(y * 1e6) << ',';
                    if (r <= a)
                        fxy << "nan\n";
                    else
                        fxy << fmt(joule_to_mK(
                                   total_potential(cfg, r, std::atan2(y, x)).total))
                            << "\n";
                }
        }
    }
    return trapped ? exit_ok : exit_no_trap;
}

int cmd_report(const RunConfig& rc) {
    auto cfg = rc.make_trap();
    const TrapReport rep = analyze(cfg);
    std::ofstream file;
    open_out(rc.out, file) << report_to_json(rep).dump(2) << "\n";
    return exit_ok;
}

int cmd_bound(const RunConfig& rc) {
    auto cfg = rc.make_trap();
    const BoundStateSet set = solve_bound_states(cfg, rc.m_rot, rc.levels);
    json j;
    j["m"] = set.m_rot;
    j["requested"] = set.requested;
    j["bound_count"] = set.count;
    j["delta_r_nm"] = set.delta_r * 1e9;
    j["energies_mK"] = json::array();
    for (double e : set.energies) j["energies_mK"].push_back(joule_to_mK(e));
    if (set.energies.size() >= 2)
        j["spacing_01_uK"] = joule_to_uK(set.energies[1] - set.energies[0]);
    std::ofstream file;
    open_out(rc.out, file) << j.dump(2) << "\n";

    if (!rc.wf_out.empty()) {
        std::ofstream wf(rc.wf_out);
        wf << "# r_um";
        for (size_t n = 0; n < set.states.size(); ++n) wf << ",psi_" << n;
        wf << "\n";
        for (int i = 0; i < set.grid_size(); ++i) {
            wf << fmt(set.grid_point(i) * 1e6);
            for (const auto& psi : set.states) wf << ',' << fmt(psi[i]);
            wf << "\n";
        }
    }
    return exit_ok;
}

int cmd_sweep(const RunConfig& rc, const std::string& axis, double from, double to,
              int steps, bool optimize_blue) {
    if (steps < 1) throw invalid_input("sweep needs at least one step");
    static const std::vector<std::string> axes = {"P1", "P2", "radius", "lambda1",
                                                  "lambda2"};
    if (std::find(axes.begin(), axes.end(), axis) == axes.end())
        throw invalid_input("axis must be one of P1,P2,radius,lambda1,lambda2");

    std::ofstream file;
    std::ostream& os = open_out(rc.out, file);
    os << "# " << axis
       << ",trapped,r_m_um,depth_mK,barrier_mK,gamma_total_per_s,tau_coh_ms,"
          "tau_trap_s,freq_r_kHz,p2_mw\n";
    for (int i = 0; i < steps; ++i) {
        const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        RunConfig pt = rc;
        if (axis == "P1") pt.p1_mw = v;
        else if (axis == "P2") pt.p2_mw = v;
        else if (axis == "radius") pt.radius_um = v;
        else if (axis == "lambda1") pt.lambda1_um = v;
        else pt.lambda2_nm = v;
        pt.validate();
        try {
            auto cfg = pt.make_trap();
            if (optimize_blue) {
                const double p2 = optimize_blue_power(cfg);
                pt.p2_mw = p2 * 1e3;
                cfg = pt.make_trap();
            }
            const TrapReport rep = analyze(cfg);
            os << fmt(v) << ",1," << fmt(rep.r_m * 1e6) << ','
               << fmt(joule_to_mK(rep.depth)) << ',' << fmt(joule_to_mK(rep.barrier))
               << ',' << fmt(rep.gamma_total) << ',' << fmt(rep.tau_coh * 1e3) << ','
               << fmt(rep.tau_trap) << ',' << fmt(rep.freq_r / 1e3) << ','
               << fmt(pt.p2_mw) << "\n";
        } catch (const no_trap_error&) {
            os << fmt(v) << ",0,,,,,,,," << fmt(pt.p2_mw) << "\n";
        } catch (const saddle_point_error&) {
            os << fmt(v) << ",0,,,,,,,," << fmt(pt.p2_mw) << "\n";
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-color evanescent-field nanofiber atom trap toolkit"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_path;
    std::optional<std::string> atom_f, pol_f, out_f, wf_out_f, format_f;
    std::optional<double> radius_f, l1_f, l2_f, p1_f, p2_f, rmax_f, phicut_f;
    std::optional<int> nr_f, nphi_f, levels_f, mrot_f;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--atom", atom_f, "atom name (cesium) or data-file path");
        sub->add_option("--radius-um", radius_f, "fiber radius, um");
        sub->add_option("--lambda1-um", l1_f, "red wavelength, um");
        sub->add_option("--lambda2-nm", l2_f, "blue wavelength, nm");
        sub->add_option("--p1-mw", p1_f, "red power, mW");
        sub->add_option("--p2-mw", p2_f, "blue power, mW");
        sub->add_option("--pol", pol_f, "circular | linear");
        sub->add_option("--out", out_f, "output path ('-' = stdout)");
        sub->add_option("--format", format_f, "csv | json");
        sub->add_option("--r-max-um", rmax_f, "outer radius of the profile grid");
        sub->add_option("--n-r", nr_f, "radial grid points");
        sub->add_option("--n-phi", nphi_f, "azimuthal grid points");
        sub->add_option("--phi-cut-um", phicut_f, "radius of the azimuthal cut");
    };

    auto* c_mode = app.add_subcommand("mode", "guided-mode summary");
    auto* c_pot = app.add_subcommand("potential", "radial potential profile(s)");
    auto* c_rep = app.add_subcommand("report", "full trap report (JSON)");
    auto* c_bnd = app.add_subcommand("bound", "radial bound states");
    auto* c_swp = app.add_subcommand("sweep", "parameter sweep of trap reports");
    for (auto* sub : {c_mode, c_pot, c_rep, c_bnd, c_swp}) add_common(sub);

    c_bnd->add_option("--levels", levels_f, "number of levels (default 6)");
    c_bnd->add_option("--m-rot", mrot_f, "rotational quantum number (default 0)");
    c_bnd->add_option("--wf-out", wf_out_f, "CSV path for wavefunctions");

    std::string axis;
    double from = 0, to = 0;
    int steps = 0;
    bool optimize_blue = false;
    c_swp->add_option("--axis", axis, "P1|P2|radius|lambda1|lambda2")->required();
    c_swp->add_option("--from", from, "start value (config units)")->required();
    c_swp->add_option("--to", to, "end value")->required();
    c_swp->add_option("--steps", steps, "number of points")->required();
    c_swp->add_flag("--optimize-blue", optimize_blue,
                    "set P2 from the surface-safety equality at each point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return exit_bad_input;
    }

    try {
        if (!config_path.empty()) rc.apply_file(config_path);
        if (atom_f) rc.atom = *atom_f;
        if (radius_f) rc.radius_um = *radius_f;
        if (l1_f) rc.lambda1_um = *l1_f;
        if (l2_f) rc.lambda2_nm = *l2_f;
        if (p1_f) rc.p1_mw = *p1_f;
        if (p2_f) rc.p2_mw = *p2_f;
        if (pol_f) rc.pol = *pol_f;
        if (out_f) rc.out = *out_f;
        if (wf_out_f) rc.wf_out = *wf_out_f;
        if (format_f) rc.format = *format_f;
        if (rmax_f) rc.r_max_um = *rmax_f;
        if (nr_f) rc.n_r = *nr_f;
        if (nphi_f) rc.n_phi = *nphi_f;
        if (levels_f) rc.levels = *levels_f;
        if (mrot_f) rc.m_rot = *mrot_f;
        if (phicut_f) rc.phi_cut_um = *phicut_f;
        rc.validate();

        if (c_mode->parsed()) return cmd_mode(rc);
        if (c_pot->parsed()) return cmd_potential(rc);
        if (c_rep->parsed()) return cmd_report(rc);
        if (c_bnd->parsed()) return cmd_bound(rc);
        if (c_swp->parsed()) return cmd_sweep(rc, axis, from, to, steps, optimize_blue);
        return exit_bad_input;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const multimode_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_trap;
    } catch (const no_guided_mode_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_trap;
    } catch (const no_trap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_trap;
    } catch (const saddle_point_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_trap;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_convergence;
    }
}
