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

#ifndef VALDEF_PLATEAU_HPP
#define VALDEF_PLATEAU_HPP

#include "valdef/valuation.hpp"

namespace valdef {

struct stepper_error : error {
    enum class Kind {
        root_found,
        residue_unsolvable,
        stalled,
        pattern_undetected,
        coefficient_root_unavailable,
    };
    Kind kind;
    stepper_error(Kind k, const std::string& msg) : error(msg), kind(k) {}
};

struct FamilyMember {
    Poly Q;
    Value gamma;  // nu(Q)
};

// Well-ordered approximant family of monic key polynomials of one degree with
// strictly increasing values.  Members are generated on demand and memoized;
// `limit` is the analysis depth R (generation beyond it is allowed for
// verification lookahead).
class ApproxFamily {
  public:
    ApproxFamily(int degree, int limit, std::function<FamilyMember(int)> gen,
                 std::optional<Value> sup_hint, std::string label);

    int degree() const { return degree_; }
    int limit() const { return limit_; }
    const std::optional<Value>& sup_hint() const { return st_->sup; }
    const std::string& label() const { return st_->label; }

    FamilyMember member(int rho) const;  // rho >= 1

  private:
    struct State {
        std::function<FamilyMember(int)> gen;
        std::optional<Value> sup;
        std::string label;
        std::map<int, FamilyMember> memo;
        std::mutex mu;
    };
    int degree_;
    int limit_;
    std::shared_ptr<State> st_;
};

struct StepperOut {
    SeriesElem eta;
    ApproxFamily family;
};

// Root approximation for x^p - x = a in equal characteristic, v(a) < 0.
// Each step extracts the p-th root of the residual's leading term; the
// emitted family is Q_rho = lift - b_rho (lift defaults to x) with
// gamma_rho = v(residual_rho)/p.  The sup hint comes from the declared value
// or from an exactly verified geometric pattern of the residual values.
StepperOut as_root_stepper(const SeriesElem& a, int R,
                           std::optional<Value> declared_sup_gamma = std::nullopt,
                           const Poly* lift = nullptr, int budget = kDefaultBudget);

// Digit-extraction iteration for monic degree-p Kummer polynomials in mixed
// characteristic: the leading term of the Newton correction -g(b)/g'(b) is
// appended per step, with gamma = v(g(b))/p certified through the shortcut.
ApproxFamily newton_stepper(const Poly& g, const FiniteSum& b0, int R,
                            std::optional<Value> declared_sup_gamma = std::nullopt,
                            int budget = kDefaultBudget);

struct PlateauStats {
    Value B;
    Value Bbar;
    int D;
    int d;  // D = p^d
};

// B from the family hint (cross-checked against every computed gamma), the
// expansion length D, and Bbar = D * B, with the nu_Q(F) = D * nu(Q)
// consistency check at every member.
PlateauStats plateau_stats(const ApproxFamily& fam, const Poly& F, const NuOracle& oracle,
                           std::optional<Value> gamma_hint = std::nullopt);

// J_rho(F) = indices j in {1..D} with nu(a_j Q^j) > Bbar; indices missing
// from the expansion support count as members (their value is infinite).
std::set<int> j_set(const Poly& F, const Poly& Q_rho, const Value& gamma_rho, const Value& Bbar,
                    const NuOracle& oracle);

struct BSetResult {
    std::set<int> B_n;
    int stabilization_index;
    std::vector<std::set<int>> J_history;
};

// Runs J along the family until it is constant over `window` consecutive
// members, cross-checks the geometric pi-line characterization with
// beta_k = nu(a_k(F)), and verifies every member of B_n is a power of p.
BSetResult b_set(const Poly& F, const ApproxFamily& fam, const PlateauStats& stats,
                 const NuOracle& oracle, int window = 3);

// F_{S,rho} = a_0 + sum_{s in S} a_s Q^s + Q^D.  With verify set (S = B_n),
// checks nu_Q(F_{S,rho}) = nu_Q(F) at the next three family members.
Poly reduced_limit_kp(const Poly& F, const ApproxFamily& fam, int rho, const std::set<int>& S,
                      const PlateauStats& stats, const NuOracle& oracle, bool verify);

// deg(F)/deg(Q), asserted to be a power of p and to match deg_Q(F) at the
// three deepest members.
int plateau_defect(const Poly& F, const ApproxFamily& fam, const PlateauStats& stats,
                   const NuOracle& oracle);

struct PlateauRecord {
    int n = 0;
    Value B;
    Value Bbar;
    int D = 0;
    int d = 0;
    std::vector<std::set<int>> J_history;
    std::set<int> B_n;
    std::set<int> I;
    int stabilization_index = 0;
    Poly F;
    Poly F_reduced;

    PlateauRecord(const BackendCfg& cfg) : F(cfg), F_reduced(cfg) {}
};

struct DefectReport {
    std::vector<PlateauRecord> plateaus;
    int total_defect_exponent = 0;
    long total_defect = 1;
};

struct StageRun {
    ApproxFamily fam;
    std::optional<Value> gamma_hint;
    // Index of this stage's family member exposed as the previous stage's
    // limit key polynomial.
    int limit_index;
};

// Full pipeline: per-stage stats, B_n, I_i, reduced limit key polynomial and
// defect, with the L_Q(F) containment checks; stages must strictly increase
// in degree and the final stage analyzes g itself.
DefectReport analyze_extension(const Poly& g, const std::vector<StageRun>& stages,
                               const NuOracle& oracle, int window = 3);

// Registers the "as_root" series builtin (equal characteristic AS roots).
void register_plateau_builtins();

}  // namespace valdef

#endif
