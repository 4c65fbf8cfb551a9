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

#ifndef ERGO_BIGFLOAT_HPP
#define ERGO_BIGFLOAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ergo {

// Dyadic rational: mantissa * 2^exponent, with an arbitrary-size integer
// mantissa. Addition, subtraction and multiplication are exact; division and
// rounding take an explicit scale. This is the substrate every module's
// arithmetic sits on.
class BigFloat {
public:
    BigFloat() : man_(0), exp_(0) {}
    explicit BigFloat(long v) : man_(v), exp_(0) { canonicalize(); }
    BigFloat(mpz_class man, int64_t exp) : man_(std::move(man)), exp_(exp) { canonicalize(); }

    static BigFloat from_double(double d);  // exact conversion
    // round(d * 2^scale) / 2^scale
    static BigFloat from_decimal(const std::string& s, int64_t scale);
    static BigFloat ulp(int64_t scale) { return BigFloat(mpz_class(1), -scale); }

    const mpz_class& mantissa() const { return man_; }
    int64_t exponent() const { return exp_; }

    bool is_zero() const { return man_ == 0; }
    int sign() const { return mpz_sgn(man_.get_mpz_t()); }

    // floor(log2 |x|); INT64_MIN for zero.
    int64_t mag2() const;

    BigFloat operator-() const { return BigFloat(-man_, exp_); }
    BigFloat abs() const { return BigFloat(::abs(man_), exp_); }
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);

    // Exact scaling by a power of two.
    BigFloat ldexp2(int64_t k) const { return BigFloat(man_, exp_ + k); }

    // Round to the grid 2^-scale (half away from zero). |error| <= 2^-(scale+1).
    BigFloat round_to(int64_t scale) const;
    // round(a/b * 2^scale) / 2^scale; b must be nonzero.
    static BigFloat div(const BigFloat& a, const BigFloat& b, int64_t scale);

    int cmp(const BigFloat& o) const;
    bool operator==(const BigFloat& o) const { return cmp(o) == 0; }
    bool operator!=(const BigFloat& o) const { return cmp(o) != 0; }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

    double to_double() const;
    // Exact decimal expansion of the dyadic value (possibly long); used for
    // reproducible file formats.
    std::string to_decimal() const;
    // Decimal rounded to the given number of fractional digits.
    std::string to_decimal(int digits) const;

    mpz_class floor_mpz() const;

private:
    void canonicalize() {
        if (man_ == 0) {
            exp_ = 0;
            return;
        }
        // strip trailing zero bits so the exponent reflects true resolution
        auto tz = mpz_scan1(man_.get_mpz_t(), 0);
        if (tz > 0) {
            man_ >>= tz;
            exp_ += static_cast<int64_t>(tz);
        }
    }

    mpz_class man_;
    int64_t exp_;
};

// round(z / 2^k), half away from zero; k >= 0.
mpz_class rshift_round(const mpz_class& z, int64_t k);
// round(a * 2^scale / b), half away from zero; b != 0.
mpz_class mpz_div_round(const mpz_class& a, const mpz_class& b, int64_t scale);

}  // namespace ergo

#endif
