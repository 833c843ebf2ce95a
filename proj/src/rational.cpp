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

#include "valdef/rational.hpp"

#include <cctype>
#include <vector>

namespace valdef {

Rational::Rational(long n, long d) {
    if (d == 0) throw config_error("rational with zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
    Rational den;
    mpq_set_si(den.q_, d, 1);
    mpq_div(q_, q_, den.q_);
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty rational", 0);
    auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    auto check_int = [&](const std::string& part, bool sign_ok) {
        if (part.empty()) throw parse_error("malformed rational '" + text + "'", 0);
        std::size_t i = (sign_ok && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) throw parse_error("malformed rational '" + text + "'", 0);
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw parse_error("malformed rational '" + text + "'", 0);
    };
    check_int(num, true);
    check_int(den, false);
    Rational r;
    mpz_t n, d;
    mpz_init(n);
    mpz_init(d);
    mpz_set_str(n, num.c_str(), 10);
    mpz_set_str(d, den.c_str(), 10);
    if (mpz_sgn(d) == 0) {
        mpz_clear(n);
        mpz_clear(d);
        throw parse_error("rational with zero denominator '" + text + "'", 0);
    }
    mpq_set_num(r.q_, n);
    mpq_set_den(r.q_, d);
    mpq_canonicalize(r.q_);
    mpz_clear(n);
    mpz_clear(d);
    return r;
}

static std::string mpz_to_string(const mpz_t z) {
    char* raw = mpz_get_str(nullptr, 10, z);
    std::string s(raw);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(raw, s.size() + 1);
    return s;
}

std::string Rational::str() const {
    return mpz_to_string(mpq_numref(q_)) + "/" + mpz_to_string(mpq_denref(q_));
}

std::string Rational::str_short() const {
    if (is_integer()) return mpz_to_string(mpq_numref(q_));
    return str();
}

std::string Rational::decimal(int significant) const {
    if (is_zero()) return "0";
    mpz_t num, den, q, r;
    mpz_init(num);
    mpz_init(den);
    mpz_init(q);
    mpz_init(r);
    mpz_abs(num, mpq_numref(q_));
    mpz_set(den, mpq_denref(q_));
    std::string out = sgn() < 0 ? "-" : "";
    mpz_fdiv_qr(q, r, num, den);
    std::string ip = mpz_to_string(q);
    out += ip;
    int sig = (ip == "0") ? 0 : static_cast<int>(ip.size());
    if (mpz_sgn(r) != 0 && sig < significant) {
        out += ".";
        while (mpz_sgn(r) != 0 && sig < significant) {
            mpz_mul_ui(r, r, 10);
            mpz_fdiv_qr(q, r, r, den);
            std::string d = mpz_to_string(q);
            out += d;
            if (sig > 0 || d != "0") ++sig;
        }
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    mpz_clear(num);
    mpz_clear(den);
    mpz_clear(q);
    mpz_clear(r);
    return out;
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw config_error("division by zero rational");
    Rational r;
    mpq_div(r.q_, q_, o.q_);
    return r;
}

long Rational::to_long() const {
    if (!is_integer()) throw invariant_error("to_long on non-integer rational " + str());
    if (!mpz_fits_slong_p(mpq_numref(q_))) throw invariant_error("integer too large for long: " + str());
    return mpz_get_si(mpq_numref(q_));
}

unsigned long Rational::mod_ui(unsigned long m) const {
    if (!is_integer()) throw invariant_error("mod_ui on non-integer rational " + str());
    mpz_t r;
    mpz_init(r);
    mpz_mod_ui(r, mpq_numref(q_), m);
    unsigned long out = mpz_get_ui(r);
    mpz_clear(r);
    return out;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long a = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && is_zero()) throw config_error("zero to a negative power");
    Rational r;
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(q_), a);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(q_), a);
    // powers of a canonical fraction stay canonical
    if (invert) {
        Rational one(1);
        return one / r;
    }
    return r;
}

long Rational::adic_val(unsigned long p) const {
    if (is_zero()) throw invariant_error("adic_val of zero");
    mpz_t tmp, pz;
    mpz_init(tmp);
    mpz_init_set_ui(pz, p);
    long vn = static_cast<long>(mpz_remove(tmp, mpq_numref(q_), pz));
    long vd = static_cast<long>(mpz_remove(tmp, mpq_denref(q_), pz));
    mpz_clear(tmp);
    mpz_clear(pz);
    return vn - vd;
}

Rational Rational::floor() const {
    Rational r;
    mpz_t f;
    mpz_init(f);
    mpz_fdiv_q(f, mpq_numref(q_), mpq_denref(q_));
    mpq_set_z(r.q_, f);
    mpz_clear(f);
    return r;
}

bool Rational::nth_root(unsigned long n, Rational& out) const {
    if (n == 0) throw config_error("0-th root");
    if (is_zero()) {
        out = Rational(0);
        return true;
    }
    if (sgn() < 0 && n % 2 == 0) return false;
    mpz_t num, den, rn, rd;
    mpz_init(num);
    mpz_init(den);
    mpz_init(rn);
    mpz_init(rd);
    mpz_set(num, mpq_numref(q_));
    mpz_set(den, mpq_denref(q_));
    bool ok = mpz_root(rn, num, n) != 0;
    ok = ok && mpz_root(rd, den, n) != 0;
    if (ok) {
        mpq_set_num(out.q_, rn);
        mpq_set_den(out.q_, rd);
        mpq_canonicalize(out.q_);
    }
    mpz_clear(num);
    mpz_clear(den);
    mpz_clear(rn);
    mpz_clear(rd);
    return ok;
}

Rational Rational::binomial(unsigned long n, unsigned long k) {
    Rational r;
    mpz_t b;
    mpz_init(b);
    mpz_bin_uiui(b, n, k);
    mpq_set_z(r.q_, b);
    mpz_clear(b);
    return r;
}

std::size_t Rational::hash() const {
    // FNV-1a over the canonical string; only used for cache keys.
    std::string s = str();
    std::size_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace valdef
