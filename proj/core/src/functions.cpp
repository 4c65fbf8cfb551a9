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

#include "ergo/functions.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "ergo/fixed.hpp"

namespace ergo {

using fx::rescale;
using fx::zmag2;

namespace detail {

namespace {

std::mutex g_const_mutex;

// sqrt(2) - 1 at scale q
mpz_class fx_sqrt2m1(int64_t q) {
    mpz_class two = mpz_class(2) << q;
    return fx::sqrt(two, q) - (mpz_class(1) << q);
}

// alternating series log(1+z) = sum (-1)^(k+1) z^k / k, |z| <= 0.5 + slack.
// Error <= (#terms + 2) ulps at scale q.
mpz_class fx_log1p_small(const mpz_class& z, int64_t q) {
    mpz_class zp = z, sum = z;
    for (long k = 2;; k++) {
        zp = fx::mul(zp, z, q);
        if (zp == 0) break;
        mpz_class term = mpz_div_round(zp, mpz_class(k), 0);
        if (k % 2 == 0)
            sum -= term;
        else
            sum += term;
        // alternating tail below one ulp once |z^k| < k
        if (zmag2(zp) < zmag2(mpz_class(k)) + 1) break;
        if (k > 4 * (q + 16)) break;  // |z|<=0.56 guarantees earlier exit
    }
    return sum;
}

mpz_class fx_log_sqrt2(int64_t q) {
    static std::map<int64_t, mpz_class> cache;
    std::lock_guard<std::mutex> lk(g_const_mutex);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    mpz_class v = fx_log1p_small(fx_sqrt2m1(q), q);
    cache[q] = v;
    return v;
}

}  // namespace

mpz_class fx_log(const mpz_class& z, int64_t q) {
    if (z <= 0) throw DomainError("log", "non-positive argument");
    int64_t qw = q + 32;
    mpz_class x = rescale(z, q, qw);
    // find v with w = x * 2^(-v/2) in [1, 1.5)
    int64_t mag = zmag2(x) - qw;  // floor(log2 x)
    int64_t v = 2 * mag;
    mpz_class w = rescale(x, qw + mag, qw);  // x * 2^-mag, in [1, 2)
    mpz_class one = mpz_class(1) << qw;
    mpz_class thresh = (mpz_class(3) << qw) / 2;
    if (w >= thresh) {
        // divide by sqrt(2): w in [1.06, 1.415)
        mpz_class s2 = fx_sqrt2m1(qw) + one;
        w = fx::div(w, s2, qw);
        v += 1;
    }
    mpz_class series = fx_log1p_small(w - one, qw);
    mpz_class res = series + v * fx_log_sqrt2(qw);
    return rescale(res, qw, q);
}

mpz_class fx_exp(const mpz_class& z, int64_t q) {
    if (z == 0) return mpz_class(1) << q;
    if (z < 0) {
        // e^-x = 1 / e^x; result below half an ulp collapses to 0
        double xa = -fx::to_bigfloat(z, q).to_double();
        if (!(xa <= (static_cast<double>(q) + 2) * 0.6931471805599453 + 1)) return mpz_class(0);
        int64_t qw = q + 16;
        mpz_class e = fx_exp(rescale(-z, q, qw), qw);
        mpz_class num = mpz_class(1) << (qw + qw);
        mpz_class r = num / e;  // scale qw
        return rescale(r, qw, q);
    }
    double x = fx::to_bigfloat(z, q).to_double();
    if (x > std::ldexp(1.0, static_cast<int>(numerics_config().exp_arg_cap_log2)) + 1)
        throw MagnitudeError("exp", "argument above configured cap");
    // truncation index from the Lagrange remainder e^ceil(x) x^(k+1) / (k+1)!
    double target_bits = static_cast<double>(q) + 8;
    double lx = x > 0 ? std::log2(x) : 0.0;
    long k_max = 2;
    for (long k = 2;; k++) {
        double rem_bits = x * 1.4426950408889634 + (k + 1) * lx - std::lgamma(k + 2.0) * 1.4426950408889634;
        if (rem_bits < -target_bits) {
            k_max = k + 4;
            break;
        }
        if (k > 100000000) throw PrecisionError("exp", "truncation index out of range");
    }
    int64_t qw = q + 16 + static_cast<int64_t>(std::ceil(std::log2(static_cast<double>(k_max + 2))));
    mpz_class xw = rescale(z, q, qw);
    mpz_class term = mpz_class(1) << qw, sum = term;
    for (long k = 1; k <= k_max; k++) {
        term = fx::mul(term, xw, qw);
        term = mpz_div_round(term, mpz_class(k), 0);
        sum += term;
        if (term == 0 && k > static_cast<long>(x) + 1) break;
    }
    return rescale(sum, qw, q);
}

mpz_class fx_atan_small(const mpz_class& t, int64_t q) {
    // sum (-1)^k t^(2k+1)/(2k+1), |t| <= 0.61
    int64_t qw = q + 16;
    mpz_class tw = rescale(t, q, qw);
    mpz_class t2 = fx::mul(tw, tw, qw);
    mpz_class tp = tw, sum = tw;
    for (long k = 1;; k++) {
        tp = fx::mul(tp, t2, qw);
        if (tp == 0) break;
        mpz_class term = mpz_div_round(tp, mpz_class(2 * k + 1), 0);
        if (k % 2 == 1)
            sum -= term;
        else
            sum += term;
        if (zmag2(tp) < zmag2(mpz_class(2 * k + 1)) + 1) break;
    }
    return rescale(sum, qw, q);
}

mpz_class fx_pi(int64_t q) {
    static std::map<int64_t, mpz_class> cache;
    {
        std::lock_guard<std::mutex> lk(g_const_mutex);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239); both inside the series range
    int64_t qw = q + 24;
    mpz_class a5 = fx_atan_small(mpz_div_round(mpz_class(1), mpz_class(5), qw), qw);
    mpz_class a239 = fx_atan_small(mpz_div_round(mpz_class(1), mpz_class(239), qw), qw);
    mpz_class pi = 16 * a5 - 4 * a239;
    mpz_class r = rescale(pi, qw, q);
    std::lock_guard<std::mutex> lk(g_const_mutex);
    cache[q] = r;
    return r;
}

std::pair<mpz_class, mpz_class> fx_sin_cos(const mpz_class& t, int64_t q) {
    // reduce mod 2pi, then into a quadrant, then plain Taylor on [0, pi/4]
    int64_t qw = q + 24;
    mpz_class tw = rescale(t, q, qw);
    mpz_class pi = fx_pi(qw);
    mpz_class twopi = 2 * pi;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), tw.get_mpz_t(), twopi.get_mpz_t());  // r in [0, 2pi)
    mpz_class halfpi = pi / 2;
    int quadrant = 0;
    while (r >= halfpi && quadrant < 4) {
        r -= halfpi;
        quadrant++;
    }
    bool swap = false;
    if (2 * r > halfpi) {  // r > pi/4: use complement
        r = halfpi - r;
        swap = true;
    }
    mpz_class r2 = fx::mul(r, r, qw);
    // sin series
    mpz_class sp = r, s = r;
    for (long k = 1;; k++) {
        sp = fx::mul(sp, r2, qw);
        sp = mpz_div_round(sp, mpz_class(2 * k) * (2 * k + 1), 0);
        if (sp == 0) break;
        if (k % 2 == 1)
            s -= sp;
        else
            s += sp;
    }
    // cos series
    mpz_class cp = mpz_class(1) << qw, c = cp;
    for (long k = 1;; k++) {
        cp = fx::mul(cp, r2, qw);
        cp = mpz_div_round(cp, mpz_class(2 * k - 1) * (2 * k), 0);
        if (cp == 0) break;
        if (k % 2 == 1)
            c -= cp;
        else
            c += cp;
    }
    if (swap) std::swap(s, c);
    mpz_class sin_v, cos_v;
    switch (quadrant) {
        case 0: sin_v = s;  cos_v = c;  break;
        case 1: sin_v = c;  cos_v = -s; break;
        case 2: sin_v = -s; cos_v = -c; break;
        default: sin_v = -c; cos_v = s;  break;
    }
    return {rescale(sin_v, qw, q), rescale(cos_v, qw, q)};
}

PowClassification classify_pow(const std::function<mpz_class(int64_t)>& ln_x_at, const BigInt& E,
                               const BigFloat& bound, int p) {
    if (bound.sign() <= 0) throw DomainError("pow", "bound must be positive");
    int64_t bitsE = static_cast<int64_t>(mpz_sizeinbase(E.get_mpz_t(), 2));
    for (int64_t q0 = 96;; q0 *= 2) {
        mpz_class lnx = ln_x_at(q0);           // scale q0, error <= 2^-(q0-8)
        mpz_class elnx = E * lnx;              // scale q0, exact product
        // margin: E * 2^-(q0-8) plus ln-bound rounding
        mpz_class margin = (E + 1) << 9;       // (E+1)*2^9 at scale q0 = (E+1)*2^-(q0-9)
        // ln(bound) at scale q0
        mpz_class lnB;
        {
            int64_t bm = bound.mag2();
            // ln B = ln(B * 2^-bm) + bm * ln 2 keeps fx_log's input moderate
            mpz_class bshift = fx::from_bigfloat(bound.ldexp2(-bm), q0);
            mpz_class ln2 = 2 * fx_log_sqrt2(q0);
            lnB = fx_log(bshift, q0) + bm * ln2;
        }
        mpz_class death = -mpz_class(p + 2) * 2 * fx_log_sqrt2(q0);  // -(p+2) ln 2
        if (elnx - margin > lnB) {
            return {PowClass::Overflow, fx::to_bigfloat(elnx, q0)};
        }
        if (elnx + margin < lnB) {
            if (elnx + margin < death) return {PowClass::Zero, fx::to_bigfloat(elnx, q0)};
            if (elnx - margin > death) return {PowClass::Live, fx::to_bigfloat(elnx, q0)};
        }
        if (q0 > bitsE + 8192)
            // the power sits exactly on a threshold; treat as live
            return {PowClass::Live, fx::to_bigfloat(elnx, q0)};
    }
}

}  // namespace detail

namespace {

int64_t work_scale(int p) { return p + numerics_config().guard_bits; }

}  // namespace

PrecisionReal log_real(const PrecisionReal& x, int p) {
    if (x.sign() <= 0) throw DomainError("log", "non-positive argument");
    int64_t q = work_scale(p);
    // peel the power of two exactly so any magnitude is in reach
    int64_t mag = x.value().mag2();
    mpz_class lnm = detail::fx_log(fx::from_bigfloat(x.value().ldexp2(-mag), q), q);
    mpz_class ln2 = detail::fx_log(mpz_class(2) << q, q);
    return {fx::to_bigfloat(lnm + mag * ln2, q).round_to(q), p};
}

PrecisionReal exp_real(const PrecisionReal& x, int p) {
    int64_t cap = numerics_config().exp_arg_cap_log2;
    if (!x.is_zero() && x.value().mag2() > cap)
        throw MagnitudeError("exp", "|argument| exceeds 2^" + std::to_string(cap));
    int64_t q = work_scale(p);
    return {fx::to_bigfloat(detail::fx_exp(fx::from_bigfloat(x.value(), q + 8), q + 8), q + 8).round_to(q), p};
}

PrecisionReal pi_const(int p) {
    int64_t q = work_scale(p);
    return {fx::to_bigfloat(detail::fx_pi(q), q), p};
}

PrecisionReal arctan_small(const PrecisionReal& t, int p) {
    int64_t q = work_scale(p);
    mpz_class tw = fx::from_bigfloat(t.value(), q);
    mpz_class limit = mpz_class(78) << (q - 7);  // 0.609 * 2^q + slack
    if (::abs(tw) > limit) throw DomainError("arctan", "argument outside series range");
    return {fx::to_bigfloat(detail::fx_atan_small(tw, q), q), p};
}

std::pair<PrecisionReal, PrecisionReal> sin_cos(const PrecisionReal& t, int p) {
    int64_t q = work_scale(p);
    auto [s, c] = detail::fx_sin_cos(fx::from_bigfloat(t.value(), q + 8), q + 8);
    return {PrecisionReal{fx::to_bigfloat(s, q + 8).round_to(q), p},
            PrecisionReal{fx::to_bigfloat(c, q + 8).round_to(q), p}};
}

PrecisionReal arg(const PrecisionComplex& z, int p) {
    if (z.is_zero()) throw DomainError("arg", "zero argument");
    BigFloat n2 = z.re.value() * z.re.value() + z.im.value() * z.im.value();
    if (n2 < BigFloat::ulp(p))
        throw ConditioningError("arg", "|z| below 2^-(p/2), argument ill-conditioned");
    int64_t q = work_scale(p) + 16;
    // scale z to unit magnitude (power of two, exact; argument unchanged)
    int64_t m = std::max(z.re.value().mag2(), z.im.value().mag2());
    fx::Complex w{fx::from_bigfloat(z.re.value().ldexp2(-m), q),
                  fx::from_bigfloat(z.im.value().ldexp2(-m), q)};
    // rotate by omega = e^{-i pi/6} until the argument is in [0, arctan 0.58)
    mpz_class half = mpz_class(1) << (q - 1);
    mpz_class c6 = fx::sqrt(mpz_class(3) << q, q) / 2;  // cos(pi/6)
    fx::Complex omega{c6, -half};
    mpz_class slack = mpz_class(1) << (q / 2);
    int v = -1;
    fx::Complex zr = w;
    for (int i = 0; i < 12; i++) {
        if (zr.re > 0 && zr.im >= -slack && 100 * zr.im <= 58 * zr.re) {
            v = i;
            break;
        }
        zr = fx::cmul(zr, omega, q);
    }
    if (v < 0) throw ConvergenceError("arg", "sector rotation failed to land in window");
    mpz_class t = fx::div(zr.im, zr.re, q);
    mpz_class theta = detail::fx_atan_small(t, q) + v * mpz_div_round(detail::fx_pi(q), mpz_class(6), 0);
    mpz_class twopi = 2 * detail::fx_pi(q);
    if (theta < 0) theta += twopi;
    if (theta >= twopi) theta -= twopi;
    return {fx::to_bigfloat(theta, q).round_to(work_scale(p)), p};
}

PowOutcome pow_real(const PrecisionReal& x, const BigInt& E, int p, const BigFloat& bound) {
    if (x.sign() <= 0) throw DomainError("pow", "base must be positive");
    if (E < 0) throw DomainError("pow", "negative exponents unsupported");
    if (E == 0) return PrecisionReal::exact_int(1, p);
    if (x.value() == BigFloat(1)) return PrecisionReal::exact_int(1, p);
    if (E == 1) return PrecisionReal{x.value().round_to(work_scale(p)), p};

    auto ln_x_at = [&](int64_t q0) {
        int64_t mag = x.value().mag2();
        mpz_class lnm = detail::fx_log(fx::from_bigfloat(x.value().ldexp2(-mag), q0), q0);
        mpz_class ln2 = detail::fx_log(mpz_class(2) << q0, q0);
        return mpz_class(lnm + mag * ln2);
    };
    auto cls = detail::classify_pow(ln_x_at, E, bound, p);
    if (cls.cls == detail::PowClass::Overflow)
        return OverflowReport{0, cls.e_ln_x};
    if (cls.cls == detail::PowClass::Zero)
        return PrecisionReal{BigFloat(), p};

    // live: exp(E ln x) with ln x at a scale absorbing the amplification
    int64_t bitsE = static_cast<int64_t>(mpz_sizeinbase(E.get_mpz_t(), 2));
    int64_t amp = std::max<int64_t>(0, bound.mag2()) + 4;
    int64_t q1 = work_scale(p) + 16 + bitsE + amp;
    mpz_class y = E * ln_x_at(q1);  // scale q1
    int64_t qe = work_scale(p) + 8 + amp;
    mpz_class r = detail::fx_exp(fx::rescale(y, q1, qe), qe);
    return PrecisionReal{fx::to_bigfloat(r, qe).round_to(work_scale(p)), p};
}

CPowOutcome pow_complex(const PrecisionComplex& z, const BigInt& E, int p, const BigFloat& bound) {
    if (E < 0) throw DomainError("pow", "negative exponents unsupported");
    if (z.is_zero()) {
        if (E == 0) throw DomainError("pow", "0^0 undefined");
        return PrecisionComplex{PrecisionReal{BigFloat(), p}, PrecisionReal{BigFloat(), p}};
    }
    if (E == 0)
        return PrecisionComplex{PrecisionReal::exact_int(1, p), PrecisionReal::exact_int(0, p)};
    if (z.im.is_zero()) {
        // real axis: phase is 0 or pi, decided by the exponent's parity
        bool neg = z.re.sign() < 0;
        auto out = pow_real(z.re.abs(), E, p, bound);
        if (std::holds_alternative<OverflowReport>(out)) return std::get<OverflowReport>(out);
        PrecisionReal v = std::get<PrecisionReal>(out);
        if (neg && mpz_odd_p(E.get_mpz_t())) v = v.neg();
        return PrecisionComplex{v, PrecisionReal{BigFloat(), p}};
    }

    BigFloat r2 = z.re.value() * z.re.value() + z.im.value() * z.im.value();  // exact
    auto ln_r_at = [&](int64_t q0) {
        int64_t mag = r2.mag2();
        mpz_class lnm = detail::fx_log(fx::from_bigfloat(r2.ldexp2(-mag), q0 + 1), q0 + 1);
        mpz_class ln2 = detail::fx_log(mpz_class(2) << (q0 + 1), q0 + 1);
        // ln r = ln(r^2)/2
        return fx::rescale(lnm + mag * ln2, q0 + 2, q0);
    };
    auto cls = detail::classify_pow(ln_r_at, E, bound, p);
    if (cls.cls == detail::PowClass::Overflow)
        return OverflowReport{0, cls.e_ln_x};
    if (cls.cls == detail::PowClass::Zero)
        return PrecisionComplex{PrecisionReal{BigFloat(), p}, PrecisionReal{BigFloat(), p}};

    int64_t bitsE = static_cast<int64_t>(mpz_sizeinbase(E.get_mpz_t(), 2));
    int64_t amp = std::max<int64_t>(0, bound.mag2()) + 4;
    // modulus^E
    int64_t qe = work_scale(p) + 10 + amp;
    mpz_class y = E * ln_r_at(qe + bitsE + 8);
    mpz_class rE = detail::fx_exp(fx::rescale(y, qe + bitsE + 8, qe), qe);
    // phase: E * arg(z) reduced mod 2pi at a scale absorbing E, then sin/cos
    int pt = static_cast<int>(work_scale(p) + 8 + bitsE + amp);
    PrecisionReal theta = arg(z, pt);
    int64_t qt = work_scale(pt);
    mpz_class thetaE = E * fx::from_bigfloat(theta.value(), qt);
    mpz_class twopi = 2 * detail::fx_pi(qt);
    mpz_class thred;
    mpz_fdiv_r(thred.get_mpz_t(), thetaE.get_mpz_t(), twopi.get_mpz_t());
    auto [s, c] = detail::fx_sin_cos(fx::rescale(thred, qt, qe + 8), qe + 8);
    mpz_class re = fx::mul(rE, fx::rescale(c, qe + 8, qe), qe);
    mpz_class im = fx::mul(rE, fx::rescale(s, qe + 8, qe), qe);
    int64_t qout = work_scale(p);
    return PrecisionComplex{PrecisionReal{fx::to_bigfloat(re, qe).round_to(qout), p},
                            PrecisionReal{fx::to_bigfloat(im, qe).round_to(qout), p}};
}

}  // namespace ergo
