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

#include "ergo/fixed.hpp"

#include "ergo/errors.hpp"

namespace ergo::fx {

mpz_class sqrt(const mpz_class& a, int64_t q) {
    if (a < 0) throw DomainError("fixed-sqrt", "negative operand");
    mpz_class t = a << q;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    return r;
}

Complex cdiv(const Complex& a, const Complex& b, int64_t q) {
    mpz_class n2 = b.re * b.re + b.im * b.im;  // scale 2q
    if (n2 == 0) throw DomainError("fixed-cdiv", "division by zero");
    mpz_class re = a.re * b.re + a.im * b.im;  // scale 2q
    mpz_class im = a.im * b.re - a.re * b.im;
    return {mpz_div_round(re, n2, q), mpz_div_round(im, n2, q)};
}

int64_t cmag2(const Complex& z) {
    int64_t r = zmag2(z.re), i = zmag2(z.im);
    return r > i ? r : i;
}

}  // namespace ergo::fx
