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

#include "valdef/report.hpp"

#include <sstream>

namespace valdef {

Json value_json(const Value& v) { return v.str(); }

Json cut_json(const Cut& c) {
    Json j;
    j["bound"] = c.bound.str();
    j["attained"] = c.attained;
    return j;
}

Json polygon_json(const NewtonPolygon& poly, const PiLine& line) {
    Json j;
    Json pts = Json::array();
    for (const auto& [i, v] : poly.points) pts.push_back(Json::array({i, v.str()}));
    Json verts = Json::array();
    for (const auto& [i, v] : poly.vertices) verts.push_back(Json::array({i, v.str()}));
    j["points"] = pts;
    j["vertices"] = verts;
    j["pi"] = Json{{"B", line.B.str()}, {"Bbar", line.Bbar.str()}, {"d", line.defect_exponent}};
    return j;
}

Json plateau_json(const PlateauRecord& rec) {
    Json j;
    j["n"] = rec.n;
    j["B"] = rec.B.str();
    j["Bbar"] = rec.Bbar.str();
    j["D"] = rec.D;
    j["d"] = rec.d;
    j["B_n"] = rec.B_n;
    j["I"] = rec.I;
    j["stabilization_index"] = rec.stabilization_index;
    Json hist = Json::array();
    for (const auto& J : rec.J_history) hist.push_back(J);
    j["J_history"] = hist;
    j["F"] = rec.F.str();
    j["F_reduced"] = rec.F_reduced.str();
    return j;
}

Json classify_json(const ClassifyResult& res) {
    Json j;
    j["case"] = ext_case_name(res.kase);
    j["gamma"] = cut_json(res.gamma);
    if (res.alpha) j["alpha"] = res.alpha->str();
    j["delta"] = cut_json(res.delta);
    j["I1"] = res.I1;
    j["verdict"] = res.independent ? "independent" : "dependent";
    j["routes_agree"] = res.routes_agree;
    return j;
}

Json report_json(const DefectReport& rep, const std::optional<ClassifyResult>& cls,
                 const std::vector<StageFigure>& figures) {
    Json j;
    Json plats = Json::array();
    for (const auto& p : rep.plateaus) plats.push_back(plateau_json(p));
    j["plateaus"] = plats;
    j["d"] = rep.total_defect_exponent;
    j["defect"] = rep.total_defect;
    if (cls) j["classification"] = classify_json(*cls);
    if (!figures.empty()) {
        Json figs = Json::array();
        for (const auto& f : figures) {
            Json fj = polygon_json(f.polygon, f.line);
            fj["stage"] = f.stage;
            fj["rho"] = f.rho;
            figs.push_back(fj);
        }
        j["figures"] = figs;
    }
    return j;
}

namespace {

struct Range {
    Rational lo, hi;
    void extend(const Rational& r) {
        if (r < lo) lo = r;
        if (hi < r) hi = r;
    }
};

std::string dec(const Rational& r) { return r.decimal(12); }

}  // namespace

std::string polygon_svg(const NewtonPolygon& poly, const PiLine& line, long ppu) {
    // x spans 0..D; y spans the finite point values together with 0 and Bbar.
    Rational D(line.defect_degree);
    Range yr{Rational(0), Rational(0)};
    for (const auto& [i, v] : poly.points)
        if (v.is_finite()) yr.extend(v.finite());
    if (line.Bbar.is_finite()) yr.extend(line.Bbar.finite());
    Rational pad(1, 2);
    yr.lo -= pad;
    yr.hi += pad;
    Rational scale(ppu);
    Rational margin(40);
    Rational width = margin * Rational(2) + D * scale;
    Rational height = margin * Rational(2) + (yr.hi - yr.lo) * scale;
    auto X = [&](const Rational& i) { return dec(margin + i * scale); };
    auto Y = [&](const Rational& v) { return dec(margin + (yr.hi - v) * scale); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << dec(width) << "\" height=\""
      << dec(height) << "\" viewBox=\"0 0 " << dec(width) << " " << dec(height) << "\">\n";
    s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    s << "  <line x1=\"" << X(Rational(0)) << "\" y1=\"" << Y(yr.lo) << "\" x2=\""
      << X(Rational(0)) << "\" y2=\"" << Y(yr.hi) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s << "  <line x1=\"" << X(Rational(0)) << "\" y1=\"" << Y(Rational(0)) << "\" x2=\"" << X(D)
      << "\" y2=\"" << Y(Rational(0)) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // pi line from (0, Bbar) to (p^d, 0)
    if (line.Bbar.is_finite()) {
        s << "  <line x1=\"" << X(Rational(0)) << "\" y1=\"" << Y(line.Bbar.finite())
          << "\" x2=\"" << X(D) << "\" y2=\"" << Y(Rational(0))
          << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
        s << "  <circle cx=\"" << X(Rational(0)) << "\" cy=\"" << Y(line.Bbar.finite())
          << "\" r=\"3\" fill=\"red\"/>\n";
        s << "  <text x=\"" << X(Rational(0)) << "\" y=\"" << dec(margin + (yr.hi - line.Bbar.finite()) * scale - Rational(6))
          << "\" font-size=\"11\" fill=\"red\">(0, " << line.Bbar.finite().str_short()
          << ") = (0, p^d B)</text>\n";
    }
    // blue hull
    if (poly.vertices.size() >= 2) {
        s << "  <polyline fill=\"none\" stroke=\"blue\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
            if (k) s << " ";
            s << X(Rational(poly.vertices[k].first)) << ","
              << Y(poly.vertices[k].second.finite());
        }
        s << "\"/>\n";
    }
    // blue points
    for (const auto& [i, v] : poly.points) {
        if (!v.is_finite()) continue;
        s << "  <circle cx=\"" << X(Rational(i)) << "\" cy=\"" << Y(v.finite())
          << "\" r=\"3\" fill=\"blue\"/>\n";
    }
    // endpoint labels
    if (!poly.vertices.empty()) {
        const auto& first = poly.vertices.front();
        const auto& last = poly.vertices.back();
        s << "  <text x=\"" << X(Rational(first.first)) << "\" y=\""
          << dec(margin + (yr.hi - first.second.finite()) * scale + Rational(14))
          << "\" font-size=\"11\" fill=\"blue\">(" << first.first << ", "
          << first.second.finite().str_short() << ") = (0, p^d nu(Q))</text>\n";
        s << "  <text x=\"" << dec(margin + Rational(last.first) * scale - Rational(30)) << "\" y=\""
          << dec(margin + (yr.hi - last.second.finite()) * scale - Rational(6))
          << "\" font-size=\"11\" fill=\"blue\">(" << last.first << ", "
          << last.second.finite().str_short() << ")</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace valdef
