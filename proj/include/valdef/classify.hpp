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

#ifndef VALDEF_CLASSIFY_HPP
#define VALDEF_CLASSIFY_HPP

#include "valdef/plateau.hpp"

namespace valdef {

// Dependent/independent classification of a rank-one degree-p defect
// extension, computed by two routes that must agree:
//   Route 1 (distance): gamma = B; independent iff gamma = 0 (AS) or
//   gamma = alpha = v(p)/(p-1) (Kummer).
//   Route 2 (expansion): I_1 from B_1; independent iff I_1 = {0}.
struct ClassifyResult {
    ExtCase kase;
    Cut gamma;  // dist(eta, K) = B^-
    Cut delta;  // (p*B)^-, the sup of the nu_{x-b}(g)
    std::optional<Value> alpha;
    std::set<int> I1;
    bool independent = false;
    bool routes_agree = false;
    PlateauRecord plateau;

    ClassifyResult(const BackendCfg& cfg) : plateau(cfg) {}
};

ClassifyResult classify_degree_p(const Poly& g, ExtCase kase, const StageRun& stage,
                                 const NuOracle& oracle, int window = 3);

// Extracts a from the expected shape: x^p - x - a (AS) or x^p - a (Kummer).
// Throws config_error when g does not have the shape.
SeriesElem extract_as_a(const Poly& g);
SeriesElem extract_kummer_a(const Poly& g);

}  // namespace valdef

#endif
