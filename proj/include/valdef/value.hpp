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

#ifndef VALDEF_VALUE_HPP
#define VALDEF_VALUE_HPP

#include <string>

#include "valdef/rational.hpp"

namespace valdef {

// Element of the value set: a rational, or infinity.  Infinity absorbs
// addition and is larger than every finite value; the order is total.
class Value {
  public:
    Value() : inf_(false), r_(0) {}
    Value(Rational r) : inf_(false), r_(std::move(r)) {}
    Value(long n) : inf_(false), r_(n) {}
    static Value infinity() {
        Value v;
        v.inf_ = true;
        return v;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    const Rational& finite() const {
        if (inf_) throw invariant_error("finite() on infinite value");
        return r_;
    }

    Value operator+(const Value& o) const {
        if (inf_ || o.inf_) return infinity();
        return Value(r_ + o.r_);
    }
    Value operator-() const {
        if (inf_) throw invariant_error("negation of infinite value");
        return Value(-r_);
    }

    // n * a; n * infinity is only defined for n >= 1.
    static Value scale(long n, const Value& a) {
        if (a.inf_) {
            if (n >= 1) return infinity();
            throw invariant_error("scale of infinity by n <= 0 is undefined");
        }
        return Value(Rational(n) * a.r_);
    }

    // Division by a positive integer (finite values only).
    Value div(long n) const {
        if (n <= 0) throw invariant_error("division of value by non-positive integer");
        if (inf_) throw invariant_error("division of infinite value");
        return Value(r_ / Rational(n));
    }

    bool operator==(const Value& o) const {
        if (inf_ != o.inf_) return false;
        return inf_ || r_ == o.r_;
    }
    bool operator!=(const Value& o) const { return !(*this == o); }
    bool operator<(const Value& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return r_ < o.r_;
    }
    bool operator<=(const Value& o) const { return *this < o || *this == o; }
    bool operator>(const Value& o) const { return o < *this; }
    bool operator>=(const Value& o) const { return o <= *this; }

    std::string str() const { return inf_ ? "inf" : r_.str(); }

    static Value min(const Value& a, const Value& b) { return a < b ? a : b; }
    static Value max(const Value& a, const Value& b) { return a < b ? b : a; }

  private:
    bool inf_;
    Rational r_;
};

// Principal rank-one cut: (gamma, attained=false) is gamma^-, (gamma, true)
// is gamma-bar, (infinity, false) is infinity^-.
struct Cut {
    Value bound;
    bool attained = false;
};

enum class CutPosition { below, inside_lower_set };

// inside_lower_set iff v < bound, or v == bound with the bound attained.
inline CutPosition cut_compare(const Cut& c, const Value& v) {
    if (v < c.bound || (v == c.bound && c.attained)) return CutPosition::inside_lower_set;
    return CutPosition::below;
}

}  // namespace valdef

#endif
