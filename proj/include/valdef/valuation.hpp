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

#ifndef VALDEF_VALUATION_HPP
#define VALDEF_VALUATION_HPP

#include <set>

#include "valdef/poly.hpp"

namespace valdef {

enum class ExtCase { artin_schreier, kummer };

inline std::string ext_case_name(ExtCase c) {
    return c == ExtCase::artin_schreier ? "AS" : "Kummer";
}

// The valuation nu on K[x] with support g.  root_eval mode evaluates reduced
// polynomials at a certified approximation of the root; shortcut mode serves
// degree-p runs where nu(x - b) = v(g(b)) / p inside the shortcut radius.
class NuOracle {
  public:
    static NuOracle root_eval(Poly g, SeriesElem eta, int budget = kDefaultBudget);
    static NuOracle shortcut(Poly g, ExtCase kase, int budget = kDefaultBudget);

    Value nu(const Poly& f) const;
    const Poly& support() const { return g_; }
    int budget() const { return budget_; }
    bool is_root_eval() const { return root_; }

  private:
    NuOracle(Poly g, int budget) : g_(std::move(g)), budget_(budget) {}
    Poly g_;
    int budget_;
    bool root_ = false;
    std::optional<SeriesElem> eta_;
    std::optional<ExtCase> case_;
};

// nu(x - b) = v(g(b)) / p for monic degree-p g.  The result must land inside
// the shortcut radius: < 0 in the Artin-Schreier case, < alpha = v(p)/(p-1)
// with v(b) = 0 in the Kummer case; otherwise "shortcut radius exceeded".
Value nu_xb_via_g(const FiniteSum& b, const Poly& g, ExtCase kase, int budget = kDefaultBudget);

// alpha = v(p)/(p-1) under the v(p) = 1 normalization.
Value kummer_alpha(const BackendCfg& cfg);

struct TruncResult {
    Value value;
    std::set<int> argmin;
};

// Truncation of nu at Q: min over the Q-expansion support of
// nu(a_i) + i * gammaQ, with the attaining index set.
TruncResult nu_trunc(const Poly& f, const Poly& Q, const Value& gammaQ, const NuOracle& oracle);

// Largest index attaining the truncation minimum (the degree of the initial
// form in the graded ring, observed through the expansion).
int deg_wrt(const Poly& f, const Poly& Q, const Value& gammaQ, const NuOracle& oracle);

struct NewtonPolygon {
    std::vector<std::pair<int, Value>> points;    // (i, nu(a_i)), infinity kept
    std::vector<std::pair<int, Value>> vertices;  // lower hull, finite points only
};

NewtonPolygon newton_polygon(const Poly& f, const Poly& Q, const NuOracle& oracle);

// The line pi(y) = -B y + Bbar through (p^d, 0) and (0, Bbar); membership of
// (k, beta_k) characterizes the set B_n.
struct PiLine {
    int defect_degree;    // p^d
    int defect_exponent;  // d
    Value B;
    Value Bbar;
};

bool pi_member(int k, const Value& beta_k, const PiLine& line);

}  // namespace valdef

#endif
