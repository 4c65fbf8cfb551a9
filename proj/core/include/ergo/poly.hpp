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

#ifndef ERGO_POLY_HPP
#define ERGO_POLY_HPP

#include <cstdint>
#include <vector>

#include "ergo/bigfloat.hpp"

namespace ergo::poly {

// Dense real polynomial, ascending coefficients. Arithmetic rounds at an
// explicit binary scale.
using Poly = std::vector<BigFloat>;

size_t degree_cap();
void set_degree_cap(size_t cap);

Poly mul(const Poly& a, const Poly& b, int64_t scale);
// k-th power, k <= 2^16
Poly power(const Poly& a, long k, int64_t scale);
Poly compose(const Poly& f, const Poly& g, int64_t scale);
Poly antiderivative(const Poly& a, int64_t scale);
BigFloat eval(const Poly& a, const BigFloat& x, int64_t scale);
// coefficients of f(c + u) as a polynomial in u (exact binomial recentering,
// rounded at the scale)
Poly recenter(const Poly& f, const BigFloat& c, int64_t scale);
Poly add(const Poly& a, const Poly& b);
Poly scale_arg(const Poly& f, const BigFloat& r, int64_t scale);  // f(r*u)

}  // namespace ergo::poly

#endif
