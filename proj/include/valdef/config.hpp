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

#ifndef VALDEF_CONFIG_HPP
#define VALDEF_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "valdef/rational.hpp"
#include "valdef/series.hpp"
#include "valdef/valuation.hpp"

namespace valdef {

struct StageCfg {
    int degree = 1;
    std::string generator = "as_stepper";  // as_stepper | newton_stepper | explicit
    std::string a_text = "auto";
    std::string lift_text = "x";
    std::string b0_text = "1";
    int steps = 12;
    std::optional<Rational> gamma_hint;
    std::optional<int> limit_index;
    std::vector<std::pair<std::string, Rational>> explicit_members;
    std::optional<Rational> explicit_sup;
};

struct RunConfig {
    std::string label = "run";
    unsigned long prime = 2;
    FieldKind kind = FieldKind::equal_char;
    std::optional<ExtCase> kase;
    std::string g_text;
    std::optional<std::string> eta_text;
    std::vector<StageCfg> stages;
    std::string out_dir = "out";
    std::optional<std::string> cache_dir;
    int budget = kDefaultBudget;
    int window = 3;
    long svg_ppu = 40;

    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    // Deterministic serialization of everything that affects computation;
    // the session-cache key hashes this.
    std::string canonical() const;
    std::string input_hash() const;
};

}  // namespace valdef

#endif
