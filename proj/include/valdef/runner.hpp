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

#ifndef VALDEF_RUNNER_HPP
#define VALDEF_RUNNER_HPP

#include <iosfwd>

#include "valdef/cache.hpp"
#include "valdef/config.hpp"
#include "valdef/plateau.hpp"
#include "valdef/classify.hpp"

namespace valdef {

struct BuiltRun {
    RunConfig cfg;
    BackendCfg backend;
    Poly g;
    std::vector<StageRun> stages;
    std::optional<NuOracle> oracle;
    std::string cache_dir;

    BuiltRun(BackendCfg b, Poly g_) : backend(b), g(std::move(g_)) {}
};

// Parses the polynomial, constructs the stage families (steppers or explicit
// lists), picks the nu oracle, and resolves the cache directory.
BuiltRun build_run(const RunConfig& cfg);

int cmd_classify(const RunConfig& cfg, std::ostream& diag);
int cmd_analyze(const RunConfig& cfg, std::ostream& diag);
int cmd_polygon(const RunConfig& cfg, std::optional<int> rho, int stage, std::ostream& diag);
int cmd_expand(const RunConfig& cfg, const std::string& f_text, const std::string& q_text,
               std::ostream& out, std::ostream& diag);

// Maps the library's error hierarchy onto the CLI exit-code contract:
// config/parse 2, math/precision 3, cache 4.
int guarded(const std::function<int()>& fn, std::ostream& diag);

Value value_from_str(const std::string& s);

}  // namespace valdef

#endif
