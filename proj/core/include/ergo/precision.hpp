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

#ifndef ERGO_PRECISION_HPP
#define ERGO_PRECISION_HPP

#include <string>

#include "ergo/bigfloat.hpp"
#include "ergo/errors.hpp"

namespace ergo {

using BigInt = mpz_class;

struct NumericsConfig {
    int guard_bits = 32;
    // |x| cap for exp; larger arguments are meaningless under bounded powering.
    int64_t exp_arg_cap_log2 = 20;
    // magnitude cap B_max = 2^magnitude_cap_log2 for every stored value
    int64_t magnitude_cap_log2 = int64_t(1) << 21;
};

NumericsConfig& numerics_config();

// Scalar with an explicit accuracy budget: the stored dyadic value is
// guaranteed within 2^-precision_bits of the real it stands for. Arithmetic
// takes a target precision p and delivers a result within 2^-p of the exact
// result of the stored (exact dyadic) inputs.
class PrecisionReal {
public:
    PrecisionReal() : bits_(0) {}
    PrecisionReal(BigFloat v, int precision_bits);
    static PrecisionReal exact_int(long v, int bits) { return {BigFloat(v), bits}; }
    static PrecisionReal from_decimal(const std::string& s, int bits);

    const BigFloat& value() const { return v_; }
    int precision_bits() const { return bits_; }
    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }
    double to_double() const { return v_.to_double(); }

    static PrecisionReal add(const PrecisionReal& a, const PrecisionReal& b, int p);
    static PrecisionReal sub(const PrecisionReal& a, const PrecisionReal& b, int p);
    static PrecisionReal mul(const PrecisionReal& a, const PrecisionReal& b, int p);
    static PrecisionReal div(const PrecisionReal& a, const PrecisionReal& b, int p);
    PrecisionReal neg() const { return {-v_, bits_}; }
    PrecisionReal abs() const { return {v_.abs(), bits_}; }

    // "value@bits"
    std::string serialize() const;
    static PrecisionReal deserialize(const std::string& s);

private:
    BigFloat v_;
    int bits_;
};

struct PrecisionComplex {
    PrecisionReal re, im;
    int precision_bits() const { return re.precision_bits(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

// Result of a bounded powering that would exceed its bound. A distinguished
// success-shaped outcome, not an error.
struct OverflowReport {
    int witness = 0;            // offending eigenvalue index (0 for scalars)
    BigFloat log_norm_estimate; // estimated ln of the overflowing magnitude
};

}  // namespace ergo

#endif
