/*
   Copyright 2026 the valdef authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "valdef/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "valdef/report.hpp"
#include "valdef/series_parse.hpp"

namespace valdef {

Value value_from_str(const std::string& s) {
    if (s == "inf") return Value::infinity();
    return Value(Rational::parse(s));
}

static void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw config_error("cannot write output file: " + path);
    out << content;
}

BuiltRun build_run(const RunConfig& cfg) {
    register_plateau_builtins();
    BackendCfg backend{cfg.kind, Prime(cfg.prime)};
    if (cfg.kind == FieldKind::equal_char && backend.monomial_symbol() != 't')
        throw config_error("internal backend symbol mismatch");
    Poly g = parse_poly(cfg.g_text, backend, cfg.budget);
    if (!g.is_monic()) throw config_error("g must be monic");
    BuiltRun run(backend, g);
    run.cfg = cfg;

    const char* env = std::getenv("VALDEF_CACHE_DIR");
    run.cache_dir = env ? std::string(env)
                        : (cfg.cache_dir ? *cfg.cache_dir : cfg.out_dir + "/cache");

    if (cfg.stages.empty()) throw config_error("missing stages");

    std::optional<SeriesElem> eta;
    for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
        const StageCfg& sc = cfg.stages[i];
        std::optional<Value> hint;
        if (sc.gamma_hint) hint = Value(*sc.gamma_hint);
        if (sc.generator == "as_stepper") {
            Poly lift = parse_poly(sc.lift_text, backend, cfg.budget);
            if (lift.degree() != sc.degree)
                throw config_error("stage lift degree does not match the stage degree");
            SeriesElem a = SeriesElem::zero(backend);
            if (sc.a_text == "auto") {
                if (!cfg.kase || *cfg.kase != ExtCase::artin_schreier)
                    throw config_error("a = auto requires case = AS");
                a = extract_as_a(g);
            } else {
                a = parse_series(sc.a_text, backend, cfg.budget);
            }
            StepperOut out = as_root_stepper(a, sc.steps, hint, &lift, cfg.budget);
            if (sc.degree == 1 && !eta) eta = out.eta;
            run.stages.push_back(StageRun{out.family, hint, 0});
        } else if (sc.generator == "newton_stepper") {
            if (sc.degree != 1) throw config_error("newton_stepper stages have degree 1");
            SeriesElem b0 = sc.b0_text == "auto" ? SeriesElem::one(backend)
                                                 : parse_series(sc.b0_text, backend, cfg.budget);
            if (!b0.is_exact()) throw config_error("newton_stepper b0 must be exact");
            ApproxFamily fam = newton_stepper(g, b0.exact(), sc.steps, hint, cfg.budget);
            run.stages.push_back(StageRun{fam, hint, 0});
        } else if (sc.generator == "explicit") {
            if (sc.explicit_members.empty())
                throw config_error("explicit stage lists no members");
            auto members = std::make_shared<std::vector<FamilyMember>>();
            for (const auto& [qt, ga] : sc.explicit_members) {
                if (qt.empty()) throw config_error("explicit member without a polynomial");
                members->push_back(FamilyMember{parse_poly(qt, backend, cfg.budget), Value(ga)});
            }
            std::optional<Value> sup;
            if (sc.explicit_sup) sup = Value(*sc.explicit_sup);
            auto gen = [members](int rho) -> FamilyMember {
                if (rho > static_cast<int>(members->size()))
                    throw invariant_error("explicit family exhausted at rho = " +
                                          std::to_string(rho));
                return (*members)[static_cast<std::size_t>(rho - 1)];
            };
            ApproxFamily fam(sc.degree, static_cast<int>(members->size()), gen, sup,
                             "explicit stage " + std::to_string(i + 1));
            run.stages.push_back(StageRun{fam, hint, 0});
        } else {
            throw config_error("unknown generator '" + sc.generator + "'");
        }
    }
    // default lookahead index: stage i serves as stage i-1's limit key
    // polynomial at depth past everything stage i-1 can query
    for (std::size_t i = 1; i < cfg.stages.size(); ++i) {
        int def = 2 * cfg.stages[i - 1].steps + cfg.window + 2;
        run.stages[i].limit_index = cfg.stages[i].limit_index.value_or(def);
    }

    if (cfg.eta_text) {
        eta = parse_series(*cfg.eta_text, backend, cfg.budget);
    }
    if (eta) {
        run.oracle = NuOracle::root_eval(g, *eta, cfg.budget);
    } else if (cfg.kase) {
        run.oracle = NuOracle::shortcut(g, *cfg.kase, cfg.budget);
    } else {
        throw config_error("no nu oracle available: supply an as_stepper stage, eta, or a case");
    }

    // explicit families carry verbatim values; verify them against the oracle
    for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
        if (cfg.stages[i].generator != "explicit") continue;
        const auto& fam = run.stages[i].fam;
        for (int rho = 1; rho <= fam.limit(); ++rho) {
            FamilyMember m = fam.member(rho);
            Value check = run.oracle->nu(m.Q);
            if (check != m.gamma)
                throw invariant_error("explicit gamma mismatch at stage " + std::to_string(i + 1) +
                                      ", rho " + std::to_string(rho) + ": listed " +
                                      m.gamma.str() + ", computed " + check.str());
        }
    }
    return run;
}

namespace {

struct RunOutputs {
    DefectReport report;
    std::optional<ClassifyResult> classification;
    std::vector<CacheMemberRecord> members;
    std::vector<CacheSummaryRecord> summaries;
    std::vector<StageFigure> figures;

    RunOutputs(const BackendCfg& cfg) : report(), classification() { (void)cfg; }
};

RunOutputs execute(BuiltRun& run, bool want_classification) {
    RunOutputs out(run.backend);
    out.report = analyze_extension(run.g, run.stages, *run.oracle, run.cfg.window);
    if (want_classification) {
        if (!run.cfg.kase) throw config_error("classification requires case = AS or Kummer");
        if (run.g.degree() != static_cast<int>(run.cfg.prime))
            throw config_error("classification requires deg(g) = p");
        out.classification = classify_degree_p(run.g, *run.cfg.kase, run.stages[0], *run.oracle,
                                               run.cfg.window);
    }
    for (std::size_t s = 0; s < run.stages.size(); ++s) {
        const auto& fam = run.stages[s].fam;
        const auto& rec = out.report.plateaus[s];
        for (int rho = 1; rho <= fam.limit(); ++rho) {
            FamilyMember m = fam.member(rho);
            CacheMemberRecord r;
            r.stage = static_cast<int>(s + 1);
            r.rho = rho;
            r.q_text = m.Q.str();
            r.gamma = m.gamma.str();
            if (rho <= static_cast<int>(rec.J_history.size()))
                r.J = rec.J_history[static_cast<std::size_t>(rho - 1)];
            out.members.push_back(std::move(r));
        }
        CacheSummaryRecord sr;
        sr.stage = static_cast<int>(s + 1);
        sr.B = rec.B.str();
        sr.Bbar = rec.Bbar.str();
        sr.D = rec.D;
        sr.d = rec.d;
        sr.stabilization_index = rec.stabilization_index;
        out.summaries.push_back(std::move(sr));

        FamilyMember m = fam.member(rec.stabilization_index);
        NewtonPolygon poly = newton_polygon(rec.F, m.Q, *run.oracle);
        PiLine line{rec.D, rec.d, rec.B, rec.Bbar};
        out.figures.push_back(
            StageFigure{static_cast<int>(s + 1), rec.stabilization_index, poly, line});
    }
    return out;
}

void write_run_files(const BuiltRun& run, const RunOutputs& out) {
    Json rep = report_json(out.report, out.classification, out.figures);
    rep["label"] = run.cfg.label;
    write_file(run.cfg.out_dir + "/report.json", rep.dump(2) + "\n");
    if (out.classification) {
        Json v = classify_json(*out.classification);
        v["label"] = run.cfg.label;
        write_file(run.cfg.out_dir + "/verdict.json", v.dump(2) + "\n");
    }
    for (const auto& fig : out.figures) {
        std::string stem = run.cfg.out_dir + "/polygon_stage" + std::to_string(fig.stage) +
                           "_rho" + std::to_string(fig.rho);
        write_file(stem + ".json", polygon_json(fig.polygon, fig.line).dump(2) + "\n");
        write_file(stem + ".svg", polygon_svg(fig.polygon, fig.line, run.cfg.svg_ppu));
    }
    SessionCache cache(run.cache_dir, run.cfg.input_hash());
    cache.load();
    cache.verify_and_store(out.members, out.summaries);
}

}  // namespace

int cmd_classify(const RunConfig& cfg, std::ostream& diag) {
    BuiltRun run = build_run(cfg);
    if (!cfg.kase) throw config_error("classify requires case = AS or Kummer");
    RunOutputs out = execute(run, /*want_classification=*/true);
    write_run_files(run, out);
    if (!out.classification->routes_agree) {
        diag << "routes disagree: distance route and expansion route conflict\n";
        return 3;
    }
    diag << cfg.label << ": " << (out.classification->independent ? "independent" : "dependent")
         << " (routes agree)\n";
    return 0;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& diag) {
    BuiltRun run = build_run(cfg);
    bool classify_too = cfg.kase.has_value() && run.g.degree() == static_cast<int>(cfg.prime);
    RunOutputs out = execute(run, classify_too);
    write_run_files(run, out);
    diag << cfg.label << ": r = " << out.report.plateaus.size()
         << ", d = " << out.report.total_defect_exponent
         << ", defect = " << out.report.total_defect << "\n";
    return 0;
}

int cmd_polygon(const RunConfig& cfg, std::optional<int> rho_opt, int stage, std::ostream& diag) {
    BuiltRun run = build_run(cfg);
    SessionCache cache(run.cache_dir, cfg.input_hash());
    if (!cache.exists()) throw cache_error("no cached run for this config: " + cache.path());
    cache.load();
    auto summary = cache.find_summary(stage);
    if (!summary) throw cache_error("cache has no summary for stage " + std::to_string(stage));
    int rho = rho_opt.value_or(summary->stabilization_index);
    auto member = cache.find_member(stage, rho);
    if (!member) throw cache_error("cache has no member for stage " + std::to_string(stage) +
                                   ", rho " + std::to_string(rho));
    if (stage < 1 || stage > static_cast<int>(run.stages.size()))
        throw config_error("stage out of range");
    FamilyMember m = run.stages[static_cast<std::size_t>(stage - 1)].fam.member(rho);
    if (m.Q.str() != member->q_text || m.gamma.str() != member->gamma)
        throw cache_error("cached member does not match the regenerated family at rho " +
                          std::to_string(rho));
    Poly F = (static_cast<std::size_t>(stage) < run.stages.size())
                 ? run.stages[static_cast<std::size_t>(stage)].fam
                       .member(run.stages[static_cast<std::size_t>(stage)].limit_index)
                       .Q
                 : run.g;
    NewtonPolygon poly = newton_polygon(F, m.Q, *run.oracle);
    PiLine line{summary->D, summary->d, value_from_str(summary->B),
                value_from_str(summary->Bbar)};
    std::string stem = cfg.out_dir + "/polygon_stage" + std::to_string(stage) + "_rho" +
                       std::to_string(rho);
    write_file(stem + ".json", polygon_json(poly, line).dump(2) + "\n");
    write_file(stem + ".svg", polygon_svg(poly, line, cfg.svg_ppu));
    diag << "wrote " << stem << ".{json,svg}\n";
    return 0;
}

int cmd_expand(const RunConfig& cfg, const std::string& f_text, const std::string& q_text,
               std::ostream& out, std::ostream& diag) {
    BuiltRun run = build_run(cfg);
    Poly f = parse_poly(f_text, run.backend, cfg.budget);
    Poly Q = parse_poly(q_text, run.backend, cfg.budget);
    if (!Q.is_monic() || Q.degree() < 1)
        throw config_error("expansion base Q must be monic of degree >= 1");
    Value gammaQ = run.oracle->nu(Q);
    QExpansion e = q_expansion(f, Q);
    TruncResult t = nu_trunc(f, Q, gammaQ, *run.oracle);
    Json j;
    j["f"] = f.str();
    j["Q"] = Q.str();
    j["gammaQ"] = gammaQ.str();
    Json coeffs = Json::array();
    for (const auto& c : e.coeffs) coeffs.push_back(c.str());
    j["coefficients"] = coeffs;
    j["L"] = e.support;
    j["nu_Q"] = t.value.str();
    j["argmin"] = t.argmin;
    j["deg_Q"] = *t.argmin.rbegin();
    NewtonPolygon poly = newton_polygon(f, Q, *run.oracle);
    Json pts = Json::array();
    for (const auto& [i, v] : poly.points) pts.push_back(Json::array({i, v.str()}));
    j["points"] = pts;
    Json verts = Json::array();
    for (const auto& [i, v] : poly.vertices) verts.push_back(Json::array({i, v.str()}));
    j["vertices"] = verts;
    out << j.dump(2) << "\n";
    (void)diag;
    return 0;
}

int guarded(const std::function<int()>& fn, std::ostream& diag) {
    try {
        return fn();
    } catch (const config_error& e) {
        diag << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cache_error& e) {
        diag << "cache error: " << e.what() << "\n";
        return 4;
    } catch (const stepper_error& e) {
        diag << "not a defect run: " << e.what() << "\n";
        return 3;
    } catch (const precision_error& e) {
        diag << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        diag << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        diag << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace valdef
