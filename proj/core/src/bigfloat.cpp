/*
  ergo, a toolkit for invariant measures of noisy dynamical systems

  This library is licensed under the Apache License, Version 2.0 (the "License");
  you may not use this library except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "ergo/bigfloat.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ergo/errors.hpp"

namespace ergo {

mpz_class rshift_round(const mpz_class& z, int64_t k) {
    if (k <= 0) return z << (-k);
    mpz_class a = ::abs(z);
    a += mpz_class(1) << (k - 1);
    a >>= k;
    return mpz_sgn(z.get_mpz_t()) < 0 ? mpz_class(-a) : a;
}

mpz_class mpz_div_round(const mpz_class& a, const mpz_class& b, int64_t scale) {
    if (b == 0) throw DomainError("bigfloat", "division by zero");
    mpz_class num = ::abs(a), den = ::abs(b);
    if (scale >= 0)
        num <<= scale;
    else
        den <<= -scale;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    bool neg = (mpz_sgn(a.get_mpz_t()) < 0) != (mpz_sgn(b.get_mpz_t()) < 0);
    return neg ? mpz_class(-q) : q;
}

BigFloat BigFloat::from_double(double d) {
    if (!std::isfinite(d)) throw DomainError("bigfloat", "non-finite double");
    if (d == 0.0) return BigFloat();
    int e = 0;
    double m = std::frexp(d, &e);  // d = m * 2^e, |m| in [0.5, 1)
    // 53 bits of mantissa
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    return BigFloat(mpz_class(static_cast<long>(mi)), e - 53);
}

int64_t BigFloat::mag2() const {
    if (man_ == 0) return INT64_MIN;
    return static_cast<int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2)) - 1 + exp_;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp_ == b.exp_) return BigFloat(a.man_ + b.man_, a.exp_);
    if (a.exp_ > b.exp_) {
        mpz_class m = a.man_ << (a.exp_ - b.exp_);
        return BigFloat(m + b.man_, b.exp_);
    }
    mpz_class m = b.man_ << (b.exp_ - a.exp_);
    return BigFloat(a.man_ + m, a.exp_);
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) { return a + (-b); }

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    if (a.is_zero() || b.is_zero()) return BigFloat();
    return BigFloat(a.man_ * b.man_, a.exp_ + b.exp_);
}

BigFloat BigFloat::round_to(int64_t scale) const {
    if (is_zero()) return *this;
    int64_t k = -scale - exp_;
    if (k <= 0) return *this;  // already on a finer grid
    return BigFloat(rshift_round(man_, k), -scale);
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, int64_t scale) {
    if (b.is_zero()) throw DomainError("bigfloat", "division by zero");
    if (a.is_zero()) return BigFloat();
    // a/b = (ma/mb) * 2^(ea-eb); round result to 2^-scale.
    mpz_class m = mpz_div_round(a.man_, b.man_, scale + a.exp_ - b.exp_);
    return BigFloat(m, -scale);
}

int BigFloat::cmp(const BigFloat& o) const {
    BigFloat d = *this - o;
    return d.sign();
}

double BigFloat::to_double() const {
    if (is_zero()) return 0.0;
    // keep at most 64 significant bits to avoid huge intermediate doubles
    size_t bits = mpz_sizeinbase(man_.get_mpz_t(), 2);
    if (bits <= 1024) {
        double m = man_.get_d();
        return std::ldexp(m, static_cast<int>(exp_));
    }
    mpz_class top = man_ >> (bits - 64);
    return std::ldexp(top.get_d(), static_cast<int>(exp_ + static_cast<int64_t>(bits) - 64));
}

std::string BigFloat::to_decimal() const {
    if (is_zero()) return "0";
    mpz_class m = ::abs(man_);
    std::string sign_str = sign() < 0 ? "-" : "";
    if (exp_ >= 0) {
        mpz_class v = m << exp_;
        return sign_str + v.get_str();
    }
    // m / 2^k == m*5^k / 10^k : exact decimal
    int64_t k = -exp_;
    mpz_class five = 5;
    mpz_class p5;
    mpz_pow_ui(p5.get_mpz_t(), five.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_class digits = m * p5;
    std::string s = digits.get_str();
    if (static_cast<int64_t>(s.size()) <= k) s.insert(0, static_cast<size_t>(k + 1 - s.size()), '0');
    s.insert(s.size() - static_cast<size_t>(k), ".");
    // trim trailing zeros but keep at least one fractional digit
    size_t last = s.find_last_not_of('0');
    if (s[last] == '.') last++;
    s.erase(last + 1);
    return sign_str + s;
}

std::string BigFloat::to_decimal(int digits) const {
    // round to 10^-digits first
    mpz_class p10;
    mpz_class ten = 10;
    mpz_pow_ui(p10.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(digits));
    // v = round(x * 10^digits)
    mpz_class v;
    if (exp_ >= 0)
        v = man_ * p10 << exp_;
    else
        v = mpz_div_round(man_ * p10, mpz_class(1) << (-exp_), 0);
    bool neg = mpz_sgn(v.get_mpz_t()) < 0;
    mpz_class a = ::abs(v);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1 - s.size()), '0');
    if (digits > 0) s.insert(s.size() - static_cast<size_t>(digits), ".");
    return (neg ? "-" : "") + s;
}

BigFloat BigFloat::from_decimal(const std::string& s, int64_t scale) {
    // accepts [+-]ddd[.ddd][eE[+-]k]
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        i++;
    }
    mpz_class digits = 0;
    int64_t frac = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); i++) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_dot) frac++;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            throw InputError("decimal-parse", "bad character in number: " + s);
        }
    }
    int64_t ex10 = 0;
    if (i < s.size()) {
        ex10 = std::strtoll(s.c_str() + i + 1, nullptr, 10);
    }
    if (!seen_digit) throw InputError("decimal-parse", "no digits in number: " + s);
    int64_t e = ex10 - frac;  // value = digits * 10^e
    mpz_class ten = 10, p10;
    mpz_pow_ui(p10.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
    mpz_class m = e >= 0 ? mpz_div_round(digits * p10, mpz_class(1), scale)
                         : mpz_div_round(digits, p10, scale);
    return BigFloat(neg ? mpz_class(-m) : m, -scale);
}

mpz_class BigFloat::floor_mpz() const {
    if (exp_ >= 0) return man_ << exp_;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    return q;
}

}  // namespace ergo
