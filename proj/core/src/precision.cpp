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

#include "ergo/precision.hpp"

namespace ergo {

NumericsConfig& numerics_config() {
    static NumericsConfig cfg;
    return cfg;
}

namespace {
void check_magnitude(const BigFloat& v) {
    if (!v.is_zero() && v.mag2() > numerics_config().magnitude_cap_log2)
        throw MagnitudeError("precision-real",
                             "magnitude exceeds configured cap 2^" +
                                 std::to_string(numerics_config().magnitude_cap_log2));
}
}  // namespace

PrecisionReal::PrecisionReal(BigFloat v, int precision_bits) : v_(std::move(v)), bits_(precision_bits) {
    check_magnitude(v_);
}

PrecisionReal PrecisionReal::from_decimal(const std::string& s, int bits) {
    return {BigFloat::from_decimal(s, bits + numerics_config().guard_bits), bits};
}

PrecisionReal PrecisionReal::add(const PrecisionReal& a, const PrecisionReal& b, int p) {
    return {(a.v_ + b.v_).round_to(p + numerics_config().guard_bits), p};
}

PrecisionReal PrecisionReal::sub(const PrecisionReal& a, const PrecisionReal& b, int p) {
    return {(a.v_ - b.v_).round_to(p + numerics_config().guard_bits), p};
}

PrecisionReal PrecisionReal::mul(const PrecisionReal& a, const PrecisionReal& b, int p) {
    return {(a.v_ * b.v_).round_to(p + numerics_config().guard_bits), p};
}

PrecisionReal PrecisionReal::div(const PrecisionReal& a, const PrecisionReal& b, int p) {
    if (b.is_zero()) throw DomainError("precision-real", "division by zero");
    return {BigFloat::div(a.v_, b.v_, p + numerics_config().guard_bits), p};
}

std::string PrecisionReal::serialize() const {
    return v_.to_decimal() + "@" + std::to_string(bits_);
}

PrecisionReal PrecisionReal::deserialize(const std::string& s) {
    auto at = s.rfind('@');
    if (at == std::string::npos) throw InputError("precision-real", "missing @bits suffix: " + s);
    int bits = std::stoi(s.substr(at + 1));
    if (bits <= 0) throw InputError("precision-real", "non-positive precision: " + s);
    return from_decimal(s.substr(0, at), bits);
}

}  // namespace ergo
