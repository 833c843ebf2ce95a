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

#ifndef VALDEF_REPORT_HPP
#define VALDEF_REPORT_HPP

#include <json.hpp>

#include "valdef/classify.hpp"

namespace valdef {

using Json = nlohmann::ordered_json;

struct StageFigure {
    int stage;
    int rho;
    NewtonPolygon polygon;
    PiLine line;
};

Json value_json(const Value& v);
Json cut_json(const Cut& c);
Json polygon_json(const NewtonPolygon& poly, const PiLine& line);
Json classify_json(const ClassifyResult& res);
Json plateau_json(const PlateauRecord& rec);
Json report_json(const DefectReport& rep, const std::optional<ClassifyResult>& cls,
                 const std::vector<StageFigure>& figures = {});

// Deterministic SVG of a Newton polygon: blue lower hull and points, red pi
// line, labeled endpoints.  All coordinates come from exact rationals
// rendered at 12 significant digits.
std::string polygon_svg(const NewtonPolygon& poly, const PiLine& line, long ppu);

}  // namespace valdef

#endif
