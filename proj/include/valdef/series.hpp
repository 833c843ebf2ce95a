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

#ifndef VALDEF_SERIES_HPP
#define VALDEF_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "valdef/cyclotomic.hpp"
#include "valdef/fp.hpp"
#include "valdef/value.hpp"

namespace valdef {

// The two concrete models of the base field K:
//   equal-char: coefficients F_p, monomials t^q  (q rational), v(t^q) = q
//   mixed-char: coefficients Q(zeta_p), monomials p^q, v(c p^q) = v(c) + q
enum class FieldKind { equal_char, mixed_char };

struct BackendCfg {
    FieldKind kind;
    Prime p;
    bool operator==(const BackendCfg& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const BackendCfg& o) const { return !(*this == o); }
    char monomial_symbol() const { return kind == FieldKind::equal_char ? 't' : 'p'; }
};

// Residue-side coefficient, dispatching on the backend.
class Coeff {
  public:
    static Coeff from_fp(FpElem e) { return Coeff(std::move(e)); }
    static Coeff from_cyc(CycElem e) { return Coeff(std::move(e)); }
    static Coeff one(const BackendCfg& cfg);
    static Coeff from_rational(const BackendCfg& cfg, const Rational& r);

    bool is_fp() const { return std::holds_alternative<FpElem>(v_); }
    const FpElem& fp() const { return std::get<FpElem>(v_); }
    const CycElem& cyc() const { return std::get<CycElem>(v_); }

    bool is_zero() const;
    bool is_one() const;
    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator-() const;

    // Coefficient-side valuation: 0 for a nonzero F_p element, the cyclotomic
    // valuation in mixed characteristic, infinity for zero.
    Value val() const;

    // Exact n-th root when available (Frobenius identity in F_p; rational
    // perfect powers in the cyclotomic case).
    std::optional<Coeff> perfect_root(unsigned long n) const;

    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    std::string str() const;

  private:
    explicit Coeff(FpElem e) : v_(std::move(e)) {}
    explicit Coeff(CycElem e) : v_(std::move(e)) {}
    std::variant<FpElem, CycElem> v_;
};

struct Term {
    Rational exponent;
    Coeff coeff;
};

// Exact element: finite sum of terms with strictly increasing exponents and
// no zero coefficients; the empty sum is 0.
class FiniteSum {
  public:
    FiniteSum() = default;
    static FiniteSum monomial(Rational exponent, Coeff coeff);

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }

    FiniteSum operator+(const FiniteSum& o) const;
    FiniteSum operator-(const FiniteSum& o) const;
    FiniteSum operator*(const FiniteSum& o) const;
    FiniteSum operator-() const;
    bool operator==(const FiniteSum& o) const;
    bool operator!=(const FiniteSum& o) const { return !(*this == o); }

    // All terms with exponent strictly below the cutoff.
    FiniteSum truncate_below(const Rational& cutoff) const;

    // Valuation of the exact element.  In mixed characteristic, ties between
    // terms of equal value are resolved exactly by collapsing integer-spaced
    // exponent classes; an unresolvable cross-class tie raises
    // "cancellation depth exceeded".
    Value val(const BackendCfg& cfg) const;

    // The unique value-minimal term (after mixed-char collapse); used for
    // leading-digit extraction.  Throws precision_error on zero input or an
    // unresolvable tie.
    Term val_leading_term(const BackendCfg& cfg) const;

    // x -> x^p in equal characteristic (coefficientwise Frobenius is the
    // identity on F_p, exponents multiply by p).
    FiniteSum frobenius(const BackendCfg& cfg) const;

    std::string str(const BackendCfg& cfg) const;

    static FiniteSum from_terms(std::vector<Term> terms);  // canonicalizes

  private:
    std::vector<Term> t_;
};

// One certified approximation step: val(exact - sum) >= error.
struct Approx {
    FiniteSum sum;
    Value error;
};

// Precision-on-demand element.  The generator must be pure (same index, same
// output); results are memoized behind a mutex so lazy elements can be shared
// across threads.  error values must strictly increase with the index.
class LazySeries {
  public:
    LazySeries(std::function<Approx(int)> gen, std::optional<Value> sup_hint, std::string label);

    Approx at(int n) const;
    const std::optional<Value>& sup_hint() const { return st_->sup; }
    const std::string& label() const { return st_->label; }

    void cache_val(Value v) const;
    std::optional<Value> cached_val() const;

  private:
    struct State {
        std::function<Approx(int)> gen;
        std::optional<Value> sup;
        std::string label;
        std::map<int, Approx> memo;
        std::optional<Value> val_cache;
        std::mutex mu;
    };
    std::shared_ptr<State> st_;
};

// An element of K: exact finite sum or lazy approximation net.
class SeriesElem {
  public:
    SeriesElem(BackendCfg cfg, FiniteSum s) : cfg_(std::move(cfg)), rep_(std::move(s)) {}
    SeriesElem(BackendCfg cfg, LazySeries l) : cfg_(std::move(cfg)), rep_(std::move(l)) {}

    static SeriesElem zero(const BackendCfg& cfg) { return SeriesElem(cfg, FiniteSum()); }
    static SeriesElem one(const BackendCfg& cfg);
    static SeriesElem monomial(const BackendCfg& cfg, const Rational& exponent, const Coeff& c);
    static SeriesElem from_int(const BackendCfg& cfg, long n);

    const BackendCfg& cfg() const { return cfg_; }
    bool is_exact() const { return std::holds_alternative<FiniteSum>(rep_); }
    const FiniteSum& exact() const { return std::get<FiniteSum>(rep_); }
    const LazySeries& lazy() const { return std::get<LazySeries>(rep_); }

    bool is_exact_zero() const { return is_exact() && exact().is_zero(); }

    std::string str() const;

  private:
    BackendCfg cfg_;
    std::variant<FiniteSum, LazySeries> rep_;
};

inline constexpr int kDefaultBudget = 64;

SeriesElem ser_add(const SeriesElem& a, const SeriesElem& b);
SeriesElem ser_neg(const SeriesElem& a);
SeriesElem ser_sub(const SeriesElem& a, const SeriesElem& b);
SeriesElem ser_mul(const SeriesElem& a, const SeriesElem& b, int budget = kDefaultBudget);

// k-th power with sharp certificates: Frobenius steps in equal characteristic
// and binomial-tail bounds in mixed characteristic.
SeriesElem ser_pow(const SeriesElem& a, unsigned long k, int budget = kDefaultBudget);

// Certified valuation; escalates lazy elements up to `budget` generator steps.
Value ser_val(const SeriesElem& a, int budget = kDefaultBudget);

// Certified value-leading term of a nonzero element.
Term ser_val_leading_term(const SeriesElem& a, int budget = kDefaultBudget);

// Finite sum of all terms with exponent < cutoff; for lazy elements requires
// an approximation whose error reaches the cutoff.
FiniteSum ser_truncate(const SeriesElem& a, const Rational& cutoff, int budget = kDefaultBudget);

// Inverse of an exact nonzero element by geometric-series expansion; the
// result is lazy (index = number of expansion terms).  Equal characteristic.
SeriesElem ser_inv_exact(const SeriesElem& a);

// Structural equality for exact elements.
bool ser_equal_exact(const SeriesElem& a, const SeriesElem& b);

// True if the element is exactly zero (exact case) or its approximations
// vanish through the probed indices (lazy case; used by internal
// reconstruction checks only).
bool ser_probably_zero(const SeriesElem& a, int probes = 3);

}  // namespace valdef

#endif
