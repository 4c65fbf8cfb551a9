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

#ifndef ERGO_FIXED_HPP
#define ERGO_FIXED_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "ergo/bigfloat.hpp"

// Fixed-point kernels at an explicit binary scale q (value = z / 2^q).
// The hot loops of the matrix and root-finding stages live here; the
// BigFloat/PrecisionReal layers convert at the boundaries.

namespace ergo::fx {

inline mpz_class from_bigfloat(const BigFloat& x, int64_t q) {
    if (x.is_zero()) return mpz_class(0);
    int64_t k = -q - x.exponent();
    if (k <= 0) return x.mantissa() << (-k);
    return rshift_round(x.mantissa(), k);
}

inline BigFloat to_bigfloat(const mpz_class& z, int64_t q) { return BigFloat(z, -q); }

// round((a*b) / 2^q)
inline mpz_class mul(const mpz_class& a, const mpz_class& b, int64_t q) {
    mpz_class t = a * b;
    return rshift_round(t, q);
}

// round(a * 2^q / b)
inline mpz_class div(const mpz_class& a, const mpz_class& b, int64_t q) {
    return mpz_div_round(a, b, q);
}

// floor(sqrt(a * 2^q)) as a scale-q value; a >= 0 at scale q.
mpz_class sqrt(const mpz_class& a, int64_t q);

struct Complex {
    mpz_class re, im;
};

inline Complex cadd(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex csub(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex cneg(const Complex& a) { return {-a.re, -a.im}; }
inline Complex cmul(const Complex& a, const Complex& b, int64_t q) {
    mpz_class re = a.re * b.re - a.im * b.im;
    mpz_class im = a.re * b.im + a.im * b.re;
    return {rshift_round(re, q), rshift_round(im, q)};
}
// a / b at scale q; |b| must be nonzero.
Complex cdiv(const Complex& a, const Complex& b, int64_t q);
// |z|^2 at scale q
inline mpz_class cnorm2(const Complex& z, int64_t q) {
    mpz_class t = z.re * z.re + z.im * z.im;
    return rshift_round(t, q);
}
// floor(log2 |z|_inf); INT64_MIN for 0.
int64_t cmag2(const Complex& z);
inline int64_t zmag2(const mpz_class& z) {
    if (z == 0) return INT64_MIN;
    return static_cast<int64_t>(mpz_sizeinbase(z.get_mpz_t(), 2)) - 1;
}

// Rescale a value from scale q_from to q_to (rounding when coarsening).
inline mpz_class rescale(const mpz_class& z, int64_t q_from, int64_t q_to) {
    if (q_to >= q_from) return z << (q_to - q_from);
    return rshift_round(z, q_from - q_to);
}

}  // namespace ergo::fx

#endif
