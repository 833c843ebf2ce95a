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

#include "valdef/series.hpp"

#include <algorithm>
#include <map>

namespace valdef {

// ---------------------------------------------------------------------------
// Coeff

Coeff Coeff::one(const BackendCfg& cfg) {
    if (cfg.kind == FieldKind::equal_char) return from_fp(FpElem(1, cfg.p.get()));
    return from_cyc(CycElem::one(cfg.p.get()));
}

Coeff Coeff::from_rational(const BackendCfg& cfg, const Rational& r) {
    if (cfg.kind == FieldKind::mixed_char) return from_cyc(CycElem(cfg.p.get(), r));
    if (!r.is_integer())
        throw config_error("equal-characteristic coefficients must be integers, got " + r.str());
    return from_fp(FpElem(static_cast<long>(r.mod_ui(cfg.p.get())), cfg.p.get()));
}

bool Coeff::is_zero() const {
    if (is_fp()) return fp().is_zero();
    return cyc().is_zero();
}

bool Coeff::is_one() const {
    if (is_fp()) return fp().residue() == 1;
    return cyc() == CycElem::one(cyc().prime());
}

Coeff Coeff::operator+(const Coeff& o) const {
    if (is_fp()) return from_fp(fp() + o.fp());
    return from_cyc(cyc() + o.cyc());
}

Coeff Coeff::operator-(const Coeff& o) const {
    if (is_fp()) return from_fp(fp() - o.fp());
    return from_cyc(cyc() - o.cyc());
}

Coeff Coeff::operator*(const Coeff& o) const {
    if (is_fp()) return from_fp(fp() * o.fp());
    return from_cyc(cyc() * o.cyc());
}

Coeff Coeff::operator-() const {
    if (is_fp()) return from_fp(-fp());
    return from_cyc(-cyc());
}

Value Coeff::val() const {
    if (is_fp()) return fp().is_zero() ? Value::infinity() : Value(Rational(0));
    return cyc().val();
}

std::optional<Coeff> Coeff::perfect_root(unsigned long n) const {
    if (is_fp()) {
        // Frobenius is the identity on F_p, so x^(p^k) roots are the element
        // itself; other n are handled by solving x^n = c by scan (p is tiny).
        unsigned long p = fp().modulus();
        for (unsigned long x = 0; x < p; ++x) {
            FpElem cand(static_cast<long>(x), p);
            if (cand.pow(n) == fp()) return from_fp(cand);
        }
        return std::nullopt;
    }
    auto r = cyc().perfect_root(n);
    if (!r) return std::nullopt;
    return from_cyc(*r);
}

bool Coeff::operator==(const Coeff& o) const {
    if (is_fp() != o.is_fp()) return false;
    if (is_fp()) return fp() == o.fp();
    return cyc() == o.cyc();
}

std::string Coeff::str() const {
    if (is_fp()) return std::to_string(fp().residue());
    const auto& co = cyc().coords();
    if (cyc().is_rational()) return co[0].str_short();
    std::string s = "(";
    for (std::size_t i = 0; i < co.size(); ++i) {
        if (i) s += ", ";
        s += co[i].str_short();
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// FiniteSum

FiniteSum FiniteSum::monomial(Rational exponent, Coeff coeff) {
    FiniteSum s;
    if (!coeff.is_zero()) s.t_.push_back(Term{std::move(exponent), std::move(coeff)});
    return s;
}

FiniteSum FiniteSum::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    FiniteSum out;
    for (auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        if (!out.t_.empty() && out.t_.back().exponent == t.exponent) {
            Coeff c = out.t_.back().coeff + t.coeff;
            if (c.is_zero())
                out.t_.pop_back();
            else
                out.t_.back().coeff = c;
        } else {
            out.t_.push_back(std::move(t));
        }
    }
    return out;
}

FiniteSum FiniteSum::operator+(const FiniteSum& o) const {
    FiniteSum out;
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].exponent < o.t_[j].exponent)) {
            out.t_.push_back(t_[i++]);
        } else if (i == t_.size() || o.t_[j].exponent < t_[i].exponent) {
            out.t_.push_back(o.t_[j++]);
        } else {
            Coeff c = t_[i].coeff + o.t_[j].coeff;
            if (!c.is_zero()) out.t_.push_back(Term{t_[i].exponent, c});
            ++i;
            ++j;
        }
    }
    return out;
}

FiniteSum FiniteSum::operator-() const {
    FiniteSum out = *this;
    for (auto& t : out.t_) t.coeff = -t.coeff;
    return out;
}

FiniteSum FiniteSum::operator-(const FiniteSum& o) const { return *this + (-o); }

FiniteSum FiniteSum::operator*(const FiniteSum& o) const {
    std::vector<Term> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
        for (const auto& b : o.t_) acc.push_back(Term{a.exponent + b.exponent, a.coeff * b.coeff});
    return from_terms(std::move(acc));
}

bool FiniteSum::operator==(const FiniteSum& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].exponent != o.t_[i].exponent || t_[i].coeff != o.t_[i].coeff) return false;
    return true;
}

FiniteSum FiniteSum::truncate_below(const Rational& cutoff) const {
    FiniteSum out;
    for (const auto& t : t_) {
        if (!(t.exponent < cutoff)) break;
        out.t_.push_back(t);
    }
    return out;
}

FiniteSum FiniteSum::frobenius(const BackendCfg& cfg) const {
    if (cfg.kind != FieldKind::equal_char)
        throw invariant_error("frobenius only defined in equal characteristic");
    FiniteSum out;
    Rational p(static_cast<long>(cfg.p.get()));
    for (const auto& t : t_) out.t_.push_back(Term{t.exponent * p, t.coeff});
    return out;  // x -> x^p fixes F_p coefficients; exponent map is monotone
}

// Collapse terms whose exponents differ by integers into a single term at the
// minimal exponent of the class: c1 p^q + c2 p^(q+k) = (c1 + c2 p^k) p^q.
// This is exact in Q(zeta_p) and resolves same-class value ties completely.
static std::vector<Term> collapse_classes(const BackendCfg& cfg, const std::vector<Term>& terms) {
    std::map<std::string, std::vector<Term>> classes;
    for (const auto& t : terms) classes[t.exponent.frac().str()].push_back(t);
    std::vector<Term> out;
    Rational p(static_cast<long>(cfg.p.get()));
    for (auto& [key, ts] : classes) {
        Rational qmin = ts.front().exponent;
        for (const auto& t : ts)
            if (t.exponent < qmin) qmin = t.exponent;
        CycElem c = CycElem::zero(cfg.p.get());
        for (const auto& t : ts) {
            Rational shift = t.exponent - qmin;  // non-negative integer
            c = c + t.coeff.cyc().scale(p.pow_int(shift.to_long()));
        }
        if (!c.is_zero()) out.push_back(Term{qmin, Coeff::from_cyc(c)});
    }
    return out;
}

Value FiniteSum::val(const BackendCfg& cfg) const {
    if (t_.empty()) return Value::infinity();
    if (cfg.kind == FieldKind::equal_char) return Value(t_.front().exponent);
    std::vector<Term> collapsed = collapse_classes(cfg, t_);
    if (collapsed.empty()) return Value::infinity();
    Value best = Value::infinity();
    int ties = 0;
    for (const auto& t : collapsed) {
        Value v = t.coeff.val() + Value(t.exponent);
        if (v < best) {
            best = v;
            ties = 1;
        } else if (v == best) {
            ++ties;
        }
    }
    if (ties > 1)
        throw precision_error("cancellation depth exceeded: value tie across exponent classes");
    return best;
}

Term FiniteSum::val_leading_term(const BackendCfg& cfg) const {
    if (t_.empty()) throw precision_error("leading term of zero");
    if (cfg.kind == FieldKind::equal_char) return t_.front();
    std::vector<Term> collapsed = collapse_classes(cfg, t_);
    if (collapsed.empty()) throw precision_error("leading term of zero");
    const Term* best = nullptr;
    Value bestv = Value::infinity();
    int ties = 0;
    for (const auto& t : collapsed) {
        Value v = t.coeff.val() + Value(t.exponent);
        if (v < bestv) {
            bestv = v;
            best = &t;
            ties = 1;
        } else if (v == bestv) {
            ++ties;
        }
    }
    if (ties > 1)
        throw precision_error("cancellation depth exceeded: value tie across exponent classes");
    return *best;
}

std::string FiniteSum::str(const BackendCfg& cfg) const {
    if (t_.empty()) return "0";
    std::string s;
    char sym = cfg.monomial_symbol();
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (i) s += " + ";
        const Term& t = t_[i];
        bool unit = t.coeff.is_one();
        bool zero_exp = t.exponent.is_zero();
        if (unit && zero_exp) {
            s += "1";
        } else if (zero_exp) {
            s += t.coeff.str();
        } else {
            if (!unit) s += t.coeff.str() + "*";
            s += std::string(1, sym) + "^(" + t.exponent.str_short() + ")";
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// LazySeries

LazySeries::LazySeries(std::function<Approx(int)> gen, std::optional<Value> sup_hint,
                       std::string label)
    : st_(std::make_shared<State>()) {
    st_->gen = std::move(gen);
    st_->sup = std::move(sup_hint);
    st_->label = std::move(label);
}

Approx LazySeries::at(int n) const {
    if (n < 1) throw invariant_error("lazy approximation index must be >= 1");
    std::lock_guard<std::mutex> lock(st_->mu);
    auto it = st_->memo.find(n);
    if (it != st_->memo.end()) return it->second;
    Approx a = st_->gen(n);
    // error values must strictly increase with the index
    auto lo = st_->memo.lower_bound(n);
    if (lo != st_->memo.begin()) {
        auto prev = std::prev(lo);
        if (!(prev->second.error < a.error))
            throw invariant_error("lazy error values not strictly increasing: " + st_->label);
    }
    if (lo != st_->memo.end()) {
        if (!(a.error < lo->second.error))
            throw invariant_error("lazy error values not strictly increasing: " + st_->label);
    }
    st_->memo.emplace(n, a);
    return a;
}

void LazySeries::cache_val(Value v) const {
    std::lock_guard<std::mutex> lock(st_->mu);
    st_->val_cache = std::move(v);
}

std::optional<Value> LazySeries::cached_val() const {
    std::lock_guard<std::mutex> lock(st_->mu);
    return st_->val_cache;
}

// ---------------------------------------------------------------------------
// SeriesElem constructors

SeriesElem SeriesElem::one(const BackendCfg& cfg) {
    return monomial(cfg, Rational(0), Coeff::one(cfg));
}

SeriesElem SeriesElem::monomial(const BackendCfg& cfg, const Rational& e, const Coeff& c) {
    return SeriesElem(cfg, FiniteSum::monomial(e, c));
}

SeriesElem SeriesElem::from_int(const BackendCfg& cfg, long n) {
    Coeff c = cfg.kind == FieldKind::equal_char
                  ? Coeff::from_fp(FpElem(n, cfg.p.get()))
                  : Coeff::from_cyc(CycElem(cfg.p.get(), Rational(n)));
    return monomial(cfg, Rational(0), c);
}

std::string SeriesElem::str() const {
    if (is_exact()) return exact().str(cfg_);
    return lazy().label().empty() ? "<lazy>" : lazy().label();
}

// ---------------------------------------------------------------------------
// Operations

static void check_cfg(const SeriesElem& a, const SeriesElem& b) {
    if (a.cfg() != b.cfg()) throw invariant_error("series arithmetic across different backends");
}

SeriesElem ser_add(const SeriesElem& a, const SeriesElem& b) {
    check_cfg(a, b);
    if (a.is_exact() && b.is_exact()) return SeriesElem(a.cfg(), a.exact() + b.exact());
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    std::string label = a.str() + " + " + b.str();
    std::optional<Value> sup;
    if (a.is_exact()) {
        if (b.lazy().sup_hint()) sup = b.lazy().sup_hint();
    } else if (b.is_exact()) {
        if (a.lazy().sup_hint()) sup = a.lazy().sup_hint();
    } else if (a.lazy().sup_hint() && b.lazy().sup_hint()) {
        sup = Value::min(*a.lazy().sup_hint(), *b.lazy().sup_hint());
    }
    auto av = a, bv = b;
    auto gen = [av, bv](int n) -> Approx {
        FiniteSum sa = av.is_exact() ? av.exact() : av.lazy().at(n).sum;
        FiniteSum sb = bv.is_exact() ? bv.exact() : bv.lazy().at(n).sum;
        Value ea = av.is_exact() ? Value::infinity() : av.lazy().at(n).error;
        Value eb = bv.is_exact() ? Value::infinity() : bv.lazy().at(n).error;
        return Approx{sa + sb, Value::min(ea, eb)};
    };
    return SeriesElem(a.cfg(), LazySeries(gen, sup, label));
}

SeriesElem ser_neg(const SeriesElem& a) {
    if (a.is_exact()) return SeriesElem(a.cfg(), -a.exact());
    auto av = a;
    auto gen = [av](int n) -> Approx {
        Approx x = av.lazy().at(n);
        return Approx{-x.sum, x.error};
    };
    return SeriesElem(a.cfg(), LazySeries(gen, a.lazy().sup_hint(), "-(" + a.str() + ")"));
}

SeriesElem ser_sub(const SeriesElem& a, const SeriesElem& b) { return ser_add(a, ser_neg(b)); }

SeriesElem ser_mul(const SeriesElem& a, const SeriesElem& b, int budget) {
    check_cfg(a, b);
    if (a.is_exact() && b.is_exact()) return SeriesElem(a.cfg(), a.exact() * b.exact());
    if (a.is_exact_zero() || b.is_exact_zero()) return SeriesElem::zero(a.cfg());
    // a*b - aN*bN = a(b - bN) + bN(a - aN)
    Value va = ser_val(a, budget);
    Value vb = ser_val(b, budget);
    auto av = a, bv = b;
    BackendCfg cfg = a.cfg();
    auto gen = [av, bv, va, cfg](int n) -> Approx {
        FiniteSum sa = av.is_exact() ? av.exact() : av.lazy().at(n).sum;
        FiniteSum sb = bv.is_exact() ? bv.exact() : bv.lazy().at(n).sum;
        Value ea = av.is_exact() ? Value::infinity() : av.lazy().at(n).error;
        Value eb = bv.is_exact() ? Value::infinity() : bv.lazy().at(n).error;
        Value vbn = sb.val(cfg);
        return Approx{sa * sb, Value::min(va + eb, vbn + ea)};
    };
    std::optional<Value> sup;
    {
        std::optional<Value> sa = a.is_exact() ? std::optional<Value>(Value::infinity())
                                               : a.lazy().sup_hint();
        std::optional<Value> sb = b.is_exact() ? std::optional<Value>(Value::infinity())
                                               : b.lazy().sup_hint();
        if (sa && sb) {
            Value s1 = sb->is_infinite() ? Value::infinity() : va + *sb;
            Value s2 = sa->is_infinite() ? Value::infinity() : vb + *sa;
            Value m = Value::min(s1, s2);
            if (m.is_finite()) sup = m;
        }
    }
    return SeriesElem(a.cfg(), LazySeries(gen, sup, "(" + a.str() + ")*(" + b.str() + ")"));
}

static SeriesElem frobenius_lazy(const SeriesElem& a, int /*budget*/) {
    BackendCfg cfg = a.cfg();
    long p = static_cast<long>(cfg.p.get());
    if (a.is_exact()) return SeriesElem(cfg, a.exact().frobenius(cfg));
    auto av = a;
    auto gen = [av, cfg, p](int n) -> Approx {
        Approx x = av.lazy().at(n);
        return Approx{x.sum.frobenius(cfg), Value::scale(p, x.error)};
    };
    std::optional<Value> sup;
    if (a.lazy().sup_hint() && a.lazy().sup_hint()->is_finite())
        sup = Value::scale(p, *a.lazy().sup_hint());
    return SeriesElem(cfg, LazySeries(gen, sup, "(" + a.str() + ")^" + std::to_string(p)));
}

// Binomial-tail power bound for mixed characteristic:
//   a^k - aN^k = sum_{i>=1} C(k,i) aN^{k-i} (a-aN)^i
//   val >= min_i [ v_p(C(k,i)) + (k-i) val(aN) + i err ]
static SeriesElem pow_lazy_mixed(const SeriesElem& a, unsigned long k, int budget) {
    BackendCfg cfg = a.cfg();
    unsigned long p = cfg.p.get();
    auto av = a;
    auto bound = [k, p](const Value& van, const Value& err) {
        Value best = Value::infinity();
        for (unsigned long i = 1; i <= k; ++i) {
            Rational c = Rational::binomial(k, i);
            Value term = Value(Rational(c.adic_val(p)));
            if (i < k) {
                if (van.is_infinite()) continue;
                term = term + Value::scale(static_cast<long>(k - i), van);
            }
            term = term + Value::scale(static_cast<long>(i), err);
            best = Value::min(best, term);
        }
        return best;
    };
    auto gen = [av, k, cfg, bound](int n) -> Approx {
        Approx x = av.lazy().at(n);
        FiniteSum powd = FiniteSum::monomial(Rational(0), Coeff::one(cfg));
        for (unsigned long i = 0; i < k; ++i) powd = powd * x.sum;
        Value van = x.sum.val(cfg);
        return Approx{powd, bound(van, x.error)};
    };
    std::optional<Value> sup;
    if (a.lazy().sup_hint() && a.lazy().sup_hint()->is_finite()) {
        Value va = ser_val(a, budget);
        Value s = bound(va, *a.lazy().sup_hint());
        if (s.is_finite()) sup = s;
    }
    return SeriesElem(cfg, LazySeries(gen, sup, "(" + a.str() + ")^" + std::to_string(k)));
}

SeriesElem ser_pow(const SeriesElem& a, unsigned long k, int budget) {
    if (k == 0) return SeriesElem::one(a.cfg());
    if (a.is_exact()) {
        FiniteSum acc = FiniteSum::monomial(Rational(0), Coeff::one(a.cfg()));
        FiniteSum base = a.exact();
        unsigned long e = k;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return SeriesElem(a.cfg(), acc);
    }
    if (a.cfg().kind == FieldKind::equal_char) {
        unsigned long p = a.cfg().p.get();
        SeriesElem cur = a;
        unsigned long rem = k;
        while (rem % p == 0) {
            cur = frobenius_lazy(cur, budget);
            rem /= p;
        }
        SeriesElem out = cur;
        for (unsigned long i = 1; i < rem; ++i) out = ser_mul(out, cur, budget);
        return out;
    }
    return pow_lazy_mixed(a, k, budget);
}

Value ser_val(const SeriesElem& a, int budget) {
    if (a.is_exact()) return a.exact().val(a.cfg());
    if (auto c = a.lazy().cached_val()) return *c;
    for (int n = 1; n <= budget; ++n) {
        Approx x = a.lazy().at(n);
        if (!x.sum.is_zero()) {
            Value v = x.sum.val(a.cfg());
            if (v < x.error) {
                a.lazy().cache_val(v);
                return v;
            }
        }
    }
    throw precision_error("precision exhausted evaluating valuation of " + a.str());
}

Term ser_val_leading_term(const SeriesElem& a, int budget) {
    if (a.is_exact()) return a.exact().val_leading_term(a.cfg());
    for (int n = 1; n <= budget; ++n) {
        Approx x = a.lazy().at(n);
        if (!x.sum.is_zero()) {
            Value v = x.sum.val(a.cfg());
            if (v < x.error) return x.sum.val_leading_term(a.cfg());
        }
    }
    throw precision_error("precision exhausted extracting leading term of " + a.str());
}

FiniteSum ser_truncate(const SeriesElem& a, const Rational& cutoff, int budget) {
    if (a.is_exact()) return a.exact().truncate_below(cutoff);
    Value target(cutoff);
    for (int n = 1; n <= budget; ++n) {
        Approx x = a.lazy().at(n);
        if (!(x.error < target)) return x.sum.truncate_below(cutoff);
    }
    throw precision_error("precision exhausted truncating " + a.str() + " at " + cutoff.str());
}

SeriesElem ser_inv_exact(const SeriesElem& a) {
    if (!a.is_exact() || a.is_exact_zero())
        throw invariant_error("ser_inv_exact requires an exact nonzero element");
    if (a.cfg().kind != FieldKind::equal_char)
        throw invariant_error("ser_inv_exact implemented for equal characteristic only");
    const FiniteSum& s = a.exact();
    const Term& lead = s.terms().front();
    BackendCfg cfg = a.cfg();
    // a = c t^e (1 + w) with val(w) > 0; 1/a = c^{-1} t^{-e} sum (-w)^k
    FpElem cinv = lead.coeff.fp().inv();
    FiniteSum unit = FiniteSum::monomial(-lead.exponent, Coeff::from_fp(cinv));
    FiniteSum w = (s * unit) - FiniteSum::monomial(Rational(0), Coeff::one(cfg));
    if (w.is_zero()) return SeriesElem(cfg, unit);  // monomial inverse is exact
    Rational wval = w.terms().front().exponent;
    auto gen = [unit, w, cfg, wval](int n) -> Approx {
        FiniteSum acc = FiniteSum::monomial(Rational(0), Coeff::one(cfg));
        FiniteSum pw = FiniteSum::monomial(Rational(0), Coeff::one(cfg));
        for (int k = 1; k <= n; ++k) {
            pw = pw * (-w);
            acc = acc + pw;
        }
        FiniteSum approx = acc * unit;
        Value err = Value(wval * Rational(n + 1) + unit.terms().front().exponent);
        return Approx{approx, err};
    };
    return SeriesElem(cfg, LazySeries(gen, std::nullopt, "inv(" + a.str() + ")"));
}

bool ser_equal_exact(const SeriesElem& a, const SeriesElem& b) {
    if (!a.is_exact() || !b.is_exact())
        throw invariant_error("ser_equal_exact requires exact elements");
    return a.exact() == b.exact();
}

bool ser_probably_zero(const SeriesElem& a, int probes) {
    if (a.is_exact()) return a.exact().is_zero();
    for (int n = 1; n <= probes; ++n)
        if (!a.lazy().at(n).sum.is_zero()) return false;
    return true;
}

}  // namespace valdef
