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

#ifndef ERGO_FUNCTIONS_HPP
#define ERGO_FUNCTIONS_HPP

#include <functional>
#include <utility>
#include <variant>

#include "ergo/precision.hpp"

namespace ergo {

// Elementary functions with certified absolute error 2^-p. All series
// truncation indices come from explicit remainder bounds, never fixed
// constants.

// ln x for x > 0, by range reduction to [1, 1.5) and the alternating series
// for log(1+z).
PrecisionReal log_real(const PrecisionReal& x, int p);

// e^x for |x| <= 2^exp_arg_cap_log2, by Taylor summation with the Lagrange
// remainder choosing the truncation index.
PrecisionReal exp_real(const PrecisionReal& x, int p);

PrecisionReal pi_const(int p);

// arctan t for |t| <= 0.6 by the alternating odd series.
PrecisionReal arctan_small(const PrecisionReal& t, int p);

// (sin t, cos t); t reduced internally mod 2pi.
std::pair<PrecisionReal, PrecisionReal> sin_cos(const PrecisionReal& t, int p);

// Argument of z in [0, 2pi), for |z| >= 2^-(p/2), by unit-sector rotation
// and the arctan series.
PrecisionReal arg(const PrecisionComplex& z, int p);

using PowOutcome = std::variant<PrecisionReal, OverflowReport>;
using CPowOutcome = std::variant<PrecisionComplex, OverflowReport>;

// x^E for x > 0 and E >= 0 (E may have thousands of bits), via exp(E ln x).
// Returns the value when x^E <= bound, otherwise an OverflowReport without
// computing the power. Results below 2^-(p+2) collapse to exact zero.
PowOutcome pow_real(const PrecisionReal& x, const BigInt& E, int p, const BigFloat& bound);

// z^E via polar form r^E * (cos E0 + i sin E0) with the phase reduced mod 2pi.
CPowOutcome pow_complex(const PrecisionComplex& z, const BigInt& E, int p, const BigFloat& bound);

namespace detail {
// Fixed-point cores shared with other modules' internals.
// ln of z (scale q, z > 0), result at scale q.
mpz_class fx_log(const mpz_class& z, int64_t q);
// e^z at scale q; z at scale q with |z| <= cap.
mpz_class fx_exp(const mpz_class& z, int64_t q);
mpz_class fx_pi(int64_t q);
mpz_class fx_atan_small(const mpz_class& t, int64_t q);
std::pair<mpz_class, mpz_class> fx_sin_cos(const mpz_class& t, int64_t q);

// Classification of E*ln(x) against a bound and a vanishing threshold.
enum class PowClass { Overflow, Zero, Live };
struct PowClassification {
    PowClass cls;
    BigFloat e_ln_x;  // certified estimate of E*ln(x) (Live/Overflow)
};
// ln_x_at(q) must return ln x at scale q with error <= 2^-(q-8).
PowClassification classify_pow(const std::function<mpz_class(int64_t)>& ln_x_at, const BigInt& E,
                               const BigFloat& bound, int p);
}  // namespace detail

}  // namespace ergo

#endif
