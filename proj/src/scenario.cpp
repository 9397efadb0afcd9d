#include "chg/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "chg/gamma2.hpp"
#include "chg/isoperimetry.hpp"
#include "chg/potential.hpp"
#include "chg/profile.hpp"
#include "chg/weight.hpp"
#include "chg/weighted1d.hpp"

namespace chg {

using nlohmann::json;

void ResultStore::put(const std::string& key, json value) {
    records[key] = std::move(value);
}

void ResultStore::save(const Config& cfg) const {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    json manifest;
    manifest["config"] = cfg.serialize();
    manifest["hash"] = cfg.manifest_hash();
    write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
    write_text_file(dir + "/records.json", records.dump(2) + "\n");
    for (const auto& [name, table] : tables)
        write_text_file(dir + "/" + name + ".csv", table.to_string());
}

namespace {

Potential potential_from_config(const Config& cfg) {
    const std::string kind = cfg.get("potential.kind", "quartic");
    if (kind == "quartic") return make_quartic();
    if (kind == "asymmetric")
        return make_asymmetric(cfg.get_double("potential.beta", 0.5));
    if (kind == "degenerate")
        return make_degenerate(cfg.get_double("potential.q", 0.5));
    throw std::runtime_error("config: unknown potential.kind '" + kind + "'");
}

TouchingIso iso_for_scenario(const std::string& name, const Config& cfg) {
    const double c0 = cfg.get_double("weight.c0", 1.2);
    const double r = cfg.get_double("weight.r", 0.05);
    if (name == "flat") return flat_iso(1.0, 0.5);
    if (name == "disk") {
        // smooth slope (n-1) kappa = 1, anchor P = 1
        return build_touching_iso(1.0, 1.0, 1.0, c0, r, 0.5, 2, {});
    }
    if (name == "rect-crossover") {
        const double vm = 1.0 / M_PI;
        std::vector<RefSample> ref;
        for (int i = 1; i < 99; ++i) {
            const double v = i / 99.0;
            ref.push_back({v, iso_analytic_rectangle(1.0, v)});
        }
        return build_touching_iso(1.0, M_PI / 2.0, 0.0, c0, r, vm, 2, ref);
    }
    throw std::runtime_error("unknown scenario '" + name + "'");
}

}  // namespace

ResultStore run_scenario(const Config& cfg, const std::string& outdir) {
    ResultStore store;
    store.dir = outdir;
    const std::string name = cfg.require("scenario");
    std::string stage = "constants";
    try {
        const Potential pot = potential_from_config(cfg);
        const Profile prof = solve_profile(pot);
        const double cw = compute_cw(pot);
        json constants;
        constants["c_w"] = cw;
        constants["c_sym"] = compute_csym(prof);
        constants["i0"] = compute_I0(pot);
        constants["ell"] = pot.ell();
        constants["wpp_a"] = pot.wpp_a();
        constants["tolerance"] = 1e-10;
        store.put("constants", constants);

        stage = "iso";
        if (name == "rect-crossover") {
            CsvTable iso_table;
            iso_table.header = {"v", "value", "d_minus", "d_plus"};
            for (int i = 1; i < 99; ++i) {
                const double v = i / 99.0;
                auto f = [](double x) { return iso_analytic_rectangle(1.0, x); };
                const auto os = one_sided_derivatives(f, v, 1e-3);
                iso_table.rows.push_back(
                    {v, iso_analytic_rectangle(1.0, v), os.d_minus, os.d_plus});
            }
            store.tables["iso_profile"] = iso_table;
        }

        stage = "weight";
        const TouchingIso iso = iso_for_scenario(name, cfg);
        const WeightFunction w = build_eta(iso);
        json wrec;
        wrec["a"] = w.a_end;
        wrec["b"] = w.b_end;
        wrec["eta_t0"] = w.eval(0.0);
        wrec["dminus"] = w.dminus;
        wrec["dplus"] = w.dplus;
        if (name != "flat") {
            const auto rep = validate_eta(w);
            wrec["validation_pass"] = rep.all_pass();
        }
        store.put("weight", wrec);
        CsvTable eta_table;
        eta_table.header = {"t", "eta"};
        for (int i = 1; i < 200; ++i) {
            const double t = w.a_end + (w.b_end - w.a_end) * i / 200.0;
            eta_table.rows.push_back({t, w.eval(t)});
        }
        store.tables["eta"] = eta_table;

        stage = "minimize1d";
        std::vector<double> ladder = cfg.get_list("ladder.eps");
        if (ladder.empty()) ladder = {0.04, 0.02, 0.01};
        const double vm = iso.vm;
        const double m = pot.a * vm + pot.b * (1.0 - vm);
        std::vector<MinimizerResult> results;
        CsvTable gap_table;
        gap_table.header = {"eps", "lambda", "energy", "gap", "el_residual",
                            "mass_residual"};
        for (double e : ladder) {
            results.push_back(minimize_Geps(w, e, m, pot, prof));
            const auto& r = results.back();
            gap_table.rows.push_back({r.eps, r.lambda, r.energy_acc, r.gap,
                                      r.el_residual, r.mass_residual});
        }
        LambdaLimit lam;
        if (results.size() >= 3) {
            lam = extract_lambda_limit(results, pot, w);
        } else {
            // short ladder: report the finest multiplier without extrapolation
            lam.lambda0 = results.back().lambda;
            const double cw = compute_cw(pot);
            const double p0 = w.eval(0.0);
            lam.bracket_lo = 2.0 * cw * w.dplus / ((pot.b - pot.a) * p0);
            lam.bracket_hi = 2.0 * cw * w.dminus / ((pot.b - pot.a) * p0);
            lam.margin = std::fmin(lam.lambda0 - lam.bracket_lo,
                                   lam.bracket_hi - lam.lambda0);
            lam.in_bracket = lam.margin >= -1e-2;
        }
        const double tau0 = solve_tau0(w, pot, prof, lam.lambda0);
        const double rhs = theorem31_rhs(w, pot, prof, lam.lambda0, tau0);
        json mrec;
        mrec["lambda0"] = lam.lambda0;
        mrec["bracket"] = {lam.bracket_lo, lam.bracket_hi};
        mrec["in_bracket"] = lam.in_bracket;
        mrec["tau0"] = tau0;
        mrec["theorem_rhs"] = rhs;
        const std::size_t nr = results.size();
        mrec["gap_extrapolated"] =
            nr >= 2 ? 2.0 * results[nr - 1].gap - results[nr - 2].gap
                    : results.back().gap;
        mrec["tolerance"] = 1e-11;
        store.put("minimize1d", mrec);
        store.tables["gap_ladder"] = gap_table;
        store.records["minimize1d"]["rhs_line"] = rhs;

        stage = "predict";
        if (name == "rect-crossover" || name == "disk") {
            std::vector<MinimizerGeometry> cands;
            if (name == "rect-crossover") {
                cands.push_back({0.0, 1.0, 2, m});               // straight cut
                cands.push_back({M_PI / 2.0, 1.0, 2, m});        // quarter disk
            } else {
                cands.push_back({1.0, 1.0, 2, m});
            }
            const auto sel = select_minimizer(cands, pot, prof);
            json prec;
            prec["values"] = sel.values;
            prec["selected"] = sel.index;
            prec["tie"] = sel.tie;
            store.put("predict", prec);
        }
    } catch (const std::exception& ex) {
        store.put("failure", {{"stage", stage}, {"error", ex.what()}});
        store.save(cfg);
        throw;
    }
    store.save(cfg);
    return store;
}

std::vector<std::string> emit_plots(ResultStore& store) {
    std::vector<std::string> written;
    if (store.dir.empty()) return written;
    std::filesystem::create_directories(store.dir);
    auto plot_table = [&](const std::string& name, int xcol, int ycol,
                          const PlotOptions& opt) {
        auto it = store.tables.find(name);
        if (it == store.tables.end()) {
            store.notes.push_back("plot skipped: missing table " + name);
            return;
        }
        PlotSeries s;
        s.label = it->second.header[ycol];
        for (const auto& row : it->second.rows) {
            s.x.push_back(row[xcol]);
            s.y.push_back(row[ycol]);
        }
        const std::string path = store.dir + "/" + name + ".svg";
        write_text_file(path, svg_line_plot({s}, opt));
        written.push_back(path);
    };
    PlotOptions gap_opt;
    gap_opt.title = "gap vs eps";
    gap_opt.log_x = true;
    if (store.records.contains("minimize1d") &&
        store.records["minimize1d"].contains("rhs_line")) {
        gap_opt.has_ref_line = true;
        gap_opt.ref_line = store.records["minimize1d"]["rhs_line"];
    }
    plot_table("gap_ladder", 0, 3, gap_opt);
    PlotOptions iso_opt;
    iso_opt.title = "isoperimetric profile";
    plot_table("iso_profile", 0, 1, iso_opt);
    PlotOptions eta_opt;
    eta_opt.title = "weight eta";
    plot_table("eta", 0, 1, eta_opt);
    PlotOptions drift_opt;
    drift_opt.title = "drift vs t";
    plot_table("drift", 0, 1, drift_opt);
    return written;
}

}  // namespace chg
