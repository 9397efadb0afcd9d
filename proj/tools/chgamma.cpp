// chgamma: numerical laboratory for the second-order expansion of the
// mass-constrained phase-field energy and its slow-motion dynamics.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chg/config.hpp"
#include "chg/dynamics.hpp"
#include "chg/gamma2.hpp"
#include "chg/isoperimetry.hpp"
#include "chg/potential.hpp"
#include "chg/profile.hpp"
#include "chg/report_io.hpp"
#include "chg/scenario.hpp"
#include "chg/weight.hpp"
#include "chg/weighted1d.hpp"

using nlohmann::json;
using namespace chg;

namespace {

Potential potential_from(const Config& cfg, const std::string& kind_flag,
                         double beta, double q) {
    const std::string kind =
        !kind_flag.empty() ? kind_flag : cfg.get("potential.kind", "quartic");
    if (kind == "quartic") return make_quartic();
    if (kind == "asymmetric")
        return make_asymmetric(cfg.has("potential.beta")
                                   ? cfg.get_double("potential.beta", beta)
                                   : beta);
    if (kind == "degenerate")
        return make_degenerate(
            cfg.has("potential.q") ? cfg.get_double("potential.q", q) : q);
    throw std::runtime_error("unknown potential kind '" + kind + "'");
}

TouchingIso scenario_iso(const std::string& scenario) {
    if (scenario == "flat") return flat_iso(1.0, 0.5);
    if (scenario == "disk")
        return build_touching_iso(1.0, 1.0, 1.0, 1.2, 0.05, 0.5, 2, {});
    if (scenario == "rect-crossover") {
        std::vector<RefSample> ref;
        for (int i = 1; i < 99; ++i)
            ref.push_back({i / 99.0, iso_analytic_rectangle(1.0, i / 99.0)});
        return build_touching_iso(1.0, M_PI / 2.0, 0.0, 1.2, 0.05, 1.0 / M_PI,
                                  2, ref);
    }
    throw std::runtime_error("unknown weight scenario '" + scenario + "'");
}

void emit(const std::string& out, const std::string& name,
          const std::string& content) {
    if (out.empty()) {
        std::cout << content;
    } else {
        std::filesystem::create_directories(out);
        write_text_file(out + "/" + name, content);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"second-order expansion laboratory"};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    long seed = 0;
    int threads = 1;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed recorded in manifests");
    app.add_option("--threads", threads, "worker threads");

    std::string pot_kind;
    double beta = 0.5, qval = 0.5;

    auto* c_const = app.add_subcommand("constants", "profile constants as JSON");
    c_const->add_option("--potential", pot_kind, "quartic|asymmetric|degenerate");
    c_const->add_option("--beta", beta, "asymmetry parameter");
    c_const->add_option("--q", qval, "well exponent for the degenerate family");

    auto* c_prof = app.add_subcommand("profile", "profile samples as CSV");
    c_prof->add_option("--potential", pot_kind, "potential kind");
    c_prof->add_option("--beta", beta, "asymmetry parameter");
    c_prof->add_option("--q", qval, "well exponent");

    double rect_w = 1.0, iso_delta = -1.0;
    int iso_samples = 97;
    std::string e0_kind = "strip";
    double e0_vm = 0.5;
    auto* c_iso = app.add_subcommand("iso", "isoperimetric profile as CSV");
    c_iso->add_option("--rect-w", rect_w, "rectangle width (area 1)");
    c_iso->add_option("--samples", iso_samples, "number of v samples");
    c_iso->add_option("--delta", iso_delta, "local profile parameter");
    c_iso->add_option("--e0", e0_kind, "reference set: strip|disk");
    c_iso->add_option("--vm", e0_vm, "reference set measure");

    std::string scenario = "disk";
    auto* c_weight = app.add_subcommand("weight", "weight eta samples as CSV");
    c_weight->add_option("--scenario", scenario, "flat|disk|rect-crossover");

    std::vector<double> eps_list;
    auto* c_min = app.add_subcommand("minimize1d", "weighted minimization ladder");
    c_min->add_option("--scenario", scenario, "weight scenario");
    c_min->add_option("--eps", eps_list, "epsilon ladder");

    std::string in_path;
    auto* c_pred = app.add_subcommand("predict", "rank candidate geometries");
    c_pred->add_option("--in", in_path, "JSON list of {kappa, perimeter, n, m}")
        ->required();
    c_pred->add_option("--potential", pot_kind, "potential kind");

    std::string flow = "ac", geometry = "disk";
    double horizon = 1.0, dyn_vm = 0.2;
    auto* c_dyn = app.add_subcommand("dynamics", "slow-motion ladder");
    c_dyn->add_option("--flow", flow, "ac|ch");
    c_dyn->add_option("--geometry", geometry, "disk|strip");
    c_dyn->add_option("--eps", eps_list, "epsilon ladder");
    c_dyn->add_option("--M", horizon, "horizon factor, T = M/eps");
    c_dyn->add_option("--vm", dyn_vm, "reference set measure");

    auto* c_run = app.add_subcommand("run", "execute a scenario pipeline");
    auto* c_plots = app.add_subcommand("plots", "render SVGs from stored CSVs");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config(config_path);

        if (c_const->parsed()) {
            const Potential p = potential_from(cfg, pot_kind, beta, qval);
            const Profile prof = solve_profile(p);
            json j;
            j["c_w"] = compute_cw(p);
            j["c_sym"] = compute_csym(prof);
            j["i0"] = compute_I0(p);
            j["ell"] = p.ell();
            j["wpp_a"] = p.wpp_a();
            j["tolerance"] = 1e-10;
            emit(out_dir, "constants.json", j.dump(2) + "\n");
        } else if (c_prof->parsed()) {
            const Potential p = potential_from(cfg, pot_kind, beta, qval);
            const Profile prof = solve_profile(p);
            CsvTable t;
            t.header = {"t", "z", "dz"};
            for (std::size_t i = 0; i < prof.t.size(); i += 4)
                t.rows.push_back({prof.t[i], prof.z[i], prof.dz[i]});
            emit(out_dir, "profile.csv", t.to_string());
        } else if (c_iso->parsed()) {
            CsvTable t;
            t.header = {"v", "value", "d_minus", "d_plus"};
            for (int i = 1; i <= iso_samples; ++i) {
                const double v = double(i) / (iso_samples + 1);
                double val;
                OneSided os;
                if (iso_delta >= 0.0) {
                    auto f = [&](double x) {
                        return local_square_profile(e0_kind, e0_vm, iso_delta, x);
                    };
                    val = f(v);
                    os = one_sided_derivatives(f, v, 1e-3);
                } else {
                    auto f = [&](double x) {
                        return iso_analytic_rectangle(rect_w, x);
                    };
                    val = f(v);
                    os = one_sided_derivatives(f, v, 1e-3);
                }
                t.rows.push_back({v, val, os.d_minus, os.d_plus});
            }
            emit(out_dir, "iso.csv", t.to_string());
            if (!out_dir.empty()) {
                PlotSeries s;
                s.label = "value";
                for (const auto& r : t.rows) {
                    s.x.push_back(r[0]);
                    s.y.push_back(r[1]);
                }
                PlotOptions opt;
                opt.title = "isoperimetric profile";
                write_text_file(out_dir + "/iso.svg", svg_line_plot({s}, opt));
            }
        } else if (c_weight->parsed()) {
            const WeightFunction w = build_eta(scenario_iso(scenario));
            CsvTable t;
            t.header = {"t", "eta"};
            for (int i = 1; i < 400; ++i) {
                const double tt = w.a_end + (w.b_end - w.a_end) * i / 400.0;
                t.rows.push_back({tt, w.eval(tt)});
            }
            emit(out_dir, "eta.csv", t.to_string());
        } else if (c_min->parsed()) {
            const Potential p = make_quartic();
            const Profile prof = solve_profile(p);
            const WeightFunction w = build_eta(scenario_iso(scenario));
            if (eps_list.empty()) eps_list = {0.04, 0.02, 0.01};
            const double vm = w.iso.vm;
            const double m = p.a * vm + p.b * (1.0 - vm);
            json recs = json::array();
            CsvTable t;
            t.header = {"eps", "lambda", "gap"};
            std::vector<MinimizerResult> ladder;
            for (double e : eps_list) {
                ladder.push_back(minimize_Geps(w, e, m, p, prof));
                const auto& r = ladder.back();
                recs.push_back({{"eps", r.eps},
                                {"lambda", r.lambda},
                                {"gap", r.gap},
                                {"el_residual", r.el_residual},
                                {"mass_residual", r.mass_residual},
                                {"tolerance", 1e-11}});
                t.rows.push_back({r.eps, r.lambda, r.gap});
            }
            const auto lam = extract_lambda_limit(ladder, p, w);
            const double tau0 = solve_tau0(w, p, prof, lam.lambda0);
            json j;
            j["ladder"] = recs;
            j["lambda0"] = lam.lambda0;
            j["tau0"] = tau0;
            j["theorem_rhs"] = theorem31_rhs(w, p, prof, lam.lambda0, tau0);
            emit(out_dir, "minimize1d.json", j.dump(2) + "\n");
            if (!out_dir.empty()) {
                write_text_file(out_dir + "/minimize1d.csv", t.to_string());
                PlotSeries s;
                s.label = "gap";
                for (const auto& r : t.rows) {
                    s.x.push_back(r[0]);
                    s.y.push_back(r[2]);
                }
                PlotOptions opt;
                opt.title = "gap vs eps";
                opt.log_x = true;
                opt.has_ref_line = true;
                opt.ref_line = j["theorem_rhs"];
                write_text_file(out_dir + "/gap.svg", svg_line_plot({s}, opt));
            }
        } else if (c_pred->parsed()) {
            std::ifstream f(in_path);
            if (!f) throw std::runtime_error("cannot open " + in_path);
            json cand = json::parse(f);
            const Potential p = potential_from(cfg, pot_kind, beta, qval);
            const Profile prof = solve_profile(p);
            std::vector<MinimizerGeometry> geoms;
            for (const auto& c : cand)
                geoms.push_back({c.value("kappa", 0.0), c.value("perimeter", 1.0),
                                 c.value("n", 2), c.value("m", 0.0)});
            const auto sel = select_minimizer(geoms, p, prof);
            json j;
            j["values"] = sel.values;
            j["selected"] = sel.index;
            j["tie"] = sel.tie;
            emit(out_dir, "predict.json", j.dump(2) + "\n");
        } else if (c_dyn->parsed()) {
            const Potential p = make_quartic();
            const Profile prof = solve_profile(p);
            if (eps_list.empty()) eps_list = {0.08, 0.04};
            const double m = p.a * dyn_vm + p.b * (1.0 - dyn_vm);
            const auto rep = slow_motion_experiment(flow, geometry, dyn_vm, m,
                                                    eps_list, horizon, prof);
            CsvTable t;
            t.header = {"eps", "sup_l1", "sup_dual", "mass_drift", "wellprep_c"};
            json j = json::array();
            for (const auto& r : rep.runs) {
                t.rows.push_back(
                    {r.eps, r.sup_l1, r.sup_dual, r.mass_drift, r.wellprep_c});
                j.push_back({{"eps", r.eps},
                             {"sup_l1", r.sup_l1},
                             {"sup_dual", r.sup_dual},
                             {"mass_drift", r.mass_drift},
                             {"energy_monotone", r.energy_monotone},
                             {"steps", r.steps}});
            }
            emit(out_dir, "dynamics.json", j.dump(2) + "\n");
            if (!out_dir.empty())
                write_text_file(out_dir + "/dynamics.csv", t.to_string());
        } else if (c_run->parsed()) {
            ResultStore store = run_scenario(cfg, out_dir);
            emit_plots(store);
            std::cout << "scenario complete: " << store.records.size()
                      << " records\n";
        } else if (c_plots->parsed()) {
            ResultStore store;
            store.dir = out_dir;
            for (const auto& entry :
                 std::filesystem::directory_iterator(out_dir)) {
                if (entry.path().extension() != ".csv") continue;
                std::ifstream f(entry.path());
                CsvTable t;
                std::string line;
                if (std::getline(f, line)) {
                    std::istringstream hs(line);
                    std::string col;
                    while (std::getline(hs, col, ',')) t.header.push_back(col);
                }
                while (std::getline(f, line)) {
                    std::istringstream rs(line);
                    std::string cell;
                    std::vector<double> row;
                    while (std::getline(rs, cell, ','))
                        row.push_back(std::stod(cell));
                    t.rows.push_back(row);
                }
                store.tables[entry.path().stem().string()] = t;
            }
            const auto written = emit_plots(store);
            for (const auto& p : written) std::cout << p << "\n";
            for (const auto& n : store.notes) std::cout << n << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
