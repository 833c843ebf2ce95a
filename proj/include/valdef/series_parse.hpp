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

#ifndef VALDEF_SERIES_PARSE_HPP
#define VALDEF_SERIES_PARSE_HPP

#include <functional>
#include <string>
#include <vector>

#include "valdef/poly.hpp"

namespace valdef {

// Named lazy constructors usable inside series text, e.g. "as_root(t^(-1))".
// Arguments arrive as raw substrings; each builtin parses what it needs.
using BuiltinFn =
    std::function<SeriesElem(const std::vector<std::string>& args, const BackendCfg& cfg, int budget)>;

void register_builtin(const std::string& name, BuiltinFn fn);
bool builtin_registered(const std::string& name);

// Polynomial grammar: sums/differences/products of atoms with optional
// integer powers; atoms are 'x', monomials t^(q) / p^(q), rational numbers,
// builtins, and parenthesized subexpressions.
Poly parse_poly(const std::string& text, const BackendCfg& cfg, int budget = kDefaultBudget);

// Series grammar: the polynomial grammar restricted to degree 0.
SeriesElem parse_series(const std::string& text, const BackendCfg& cfg, int budget = kDefaultBudget);

}  // namespace valdef

#endif
