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

#include "valdef/series_parse.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace valdef {

namespace {

std::map<std::string, BuiltinFn>& registry() {
    static std::map<std::string, BuiltinFn> reg;
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex mu;
    return mu;
}

// geo_tail(c, k0): the tail sum over k >= k0 of t^(c - 1/p^k), coefficient 1.
// Approximation n emits the first n terms; the error value is exactly the
// exponent of the next omitted term, increasing strictly toward c.
SeriesElem make_geo_tail(const std::vector<std::string>& args, const BackendCfg& cfg, int) {
    if (args.size() != 2) throw parse_error("geo_tail expects (c, k0)", 0);
    Rational c = Rational::parse(args[0]);
    long k0 = Rational::parse(args[1]).to_long();
    if (k0 < 0) throw parse_error("geo_tail start index must be >= 0", 0);
    long p = static_cast<long>(cfg.p.get());
    Rational pr(p);
    std::string label = "geo_tail(" + c.str_short() + ", " + std::to_string(k0) + ")";
    auto gen = [c, k0, pr, cfg](int n) -> Approx {
        std::vector<Term> terms;
        for (long k = k0; k < k0 + n; ++k)
            terms.push_back(Term{c - pr.pow_int(-k), Coeff::one(cfg)});
        Rational next = c - pr.pow_int(-(k0 + n));
        return Approx{FiniteSum::from_terms(std::move(terms)), Value(next)};
    };
    return SeriesElem(cfg, LazySeries(gen, Value(c), label));
}

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    BackendCfg cfg;
    bool allow_x;
    int budget;

    Parser(const std::string& text, BackendCfg c, bool ax, int b)
        : s(text), cfg(std::move(c)), allow_x(ax), budget(b) {}

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        ws();
        return i >= s.size();
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw parse_error(std::string("expected '") + c + "'", i);
    }

    std::string read_uint() {
        ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw parse_error("expected digits", i);
        return s.substr(start, i - start);
    }

    Rational read_signed_rational() {
        ws();
        std::string text;
        if (eat('-')) text = "-";
        text += read_uint();
        ws();
        if (i < s.size() && s[i] == '/') {
            ++i;
            text += "/" + read_uint();
        }
        return Rational::parse(text);
    }

    std::string read_ident() {
        ws();
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return s.substr(start, i - start);
    }

    // Balanced-paren argument list; args passed to builtins untouched.
    std::vector<std::string> read_args() {
        expect('(');
        std::vector<std::string> args;
        std::string cur;
        int depth = 0;
        while (true) {
            if (i >= s.size()) throw parse_error("unterminated builtin arguments", i);
            char c = s[i];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) {
                    ++i;
                    break;
                }
                --depth;
            }
            if (c == ',' && depth == 0) {
                args.push_back(cur);
                cur.clear();
                ++i;
                continue;
            }
            cur.push_back(c);
            ++i;
        }
        if (!cur.empty() || !args.empty()) args.push_back(cur);
        return args;
    }

    Poly parse_expr() {
        ws();
        bool neg = eat('-');
        Poly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) {
                acc = acc + parse_term();
            } else if (eat('-')) {
                acc = acc - parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (true) {
            if (eat('*')) {
                acc = acc * parse_factor();
                continue;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
                acc = acc * parse_factor();  // implicit multiplication
                continue;
            }
            break;
        }
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            ws();
            if (i < s.size() && s[i] == '(')
                throw parse_error("rational exponents are only valid on the series symbol", i);
            unsigned long k = std::stoul(read_uint());
            if (base.is_constant() && base.degree() == 0) {
                SeriesElem c = base.coeff(0);
                return Poly::constant(ser_pow(c, k, budget));
            }
            return base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    Poly parse_atom() {
        ws();
        if (i >= s.size()) throw parse_error("unexpected end of input", i);
        char c = s[i];
        if (c == '(') {
            ++i;
            Poly inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text = read_uint();
            ws();
            if (i < s.size() && s[i] == '/') {
                ++i;
                text += "/" + read_uint();
            }
            Rational r = Rational::parse(text);
            return Poly::constant(
                SeriesElem::monomial(cfg, Rational(0), Coeff::from_rational(cfg, r)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t save = i;
            std::string name = read_ident();
            if (name == "x") {
                if (!allow_x) throw parse_error("'x' is not valid in series text", save);
                return Poly::x(cfg);
            }
            if (name.size() == 1 && name[0] == cfg.monomial_symbol()) {
                // monomial symbol: requires ^(rational)
                ws();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    expect('(');
                    Rational e = read_signed_rational();
                    expect(')');
                    return Poly::constant(SeriesElem::monomial(cfg, e, Coeff::one(cfg)));
                }
                return Poly::constant(SeriesElem::monomial(cfg, Rational(1), Coeff::one(cfg)));
            }
            if (name.size() == 1 && (name[0] == 't' || name[0] == 'p'))
                throw parse_error(std::string("monomial symbol '") + name +
                                      "' does not match the backend (expected '" +
                                      cfg.monomial_symbol() + "')",
                                  save);
            // builtin
            auto args = read_args();
            BuiltinFn fn;
            {
                std::lock_guard<std::mutex> lock(registry_mutex());
                auto it = registry().find(name);
                if (it == registry().end())
                    throw parse_error("unknown builtin '" + name + "'", save);
                fn = it->second;
            }
            return Poly::constant(fn(args, cfg, budget));
        }
        throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
};

std::once_flag core_builtins_flag;

void ensure_core_builtins() {
    std::call_once(core_builtins_flag, [] { register_builtin("geo_tail", make_geo_tail); });
}

}  // namespace

void register_builtin(const std::string& name, BuiltinFn fn) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry()[name] = std::move(fn);
}

bool builtin_registered(const std::string& name) {
    ensure_core_builtins();
    std::lock_guard<std::mutex> lock(registry_mutex());
    return registry().count(name) > 0;
}

Poly parse_poly(const std::string& text, const BackendCfg& cfg, int budget) {
    ensure_core_builtins();
    Parser p(text, cfg, true, budget);
    Poly out = p.parse_expr();
    if (!p.eof()) throw parse_error("trailing input in '" + text + "'", p.i);
    return out;
}

SeriesElem parse_series(const std::string& text, const BackendCfg& cfg, int budget) {
    ensure_core_builtins();
    Parser p(text, cfg, false, budget);
    Poly out = p.parse_expr();
    if (!p.eof()) throw parse_error("trailing input in '" + text + "'", p.i);
    if (out.is_zero()) return SeriesElem::zero(cfg);
    if (out.degree() != 0) throw parse_error("series text must not involve 'x'", 0);
    return out.coeff(0);
}

}  // namespace valdef
