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

#include <cmath>

#include "ergo/errors.hpp"
#include "ergo/matrix.hpp"

namespace ergo::engine {

namespace {

// p and p' at z by Horner; monic coefficients at scale q
void eval_poly(const std::vector<mpz_class>& c, const fx::Complex& z, int64_t q, fx::Complex& p,
               fx::Complex& dp) {
    int n = static_cast<int>(c.size()) - 1;
    p = {c[static_cast<size_t>(n)], 0};
    dp = {0, 0};
    for (int k = n - 1; k >= 0; k--) {
        dp = fx::cmul(dp, z, q);
        dp = fx::cadd(dp, p);
        p = fx::cmul(p, z, q);
        p.re += c[static_cast<size_t>(k)];
    }
}

// initialization radius: the smaller of (1 + max |coeff|) and Fujiwara's
// 2 max_k |c_{n-k}|^{1/k}, both valid root bounds for monic polynomials
double init_radius(const std::vector<mpz_class>& c, int64_t q) {
    int n = static_cast<int>(c.size()) - 1;
    double maxc = 0, fuji = 0;
    for (int k = 0; k < n; k++) {
        double bits = c[static_cast<size_t>(k)] == 0
                          ? -1e9
                          : static_cast<double>(fx::zmag2(c[static_cast<size_t>(k)]) - q);
        maxc = std::max(maxc, bits);
        fuji = std::max(fuji, bits / static_cast<double>(n - k));
    }
    double r1 = 1.0 + std::exp2(std::min(maxc, 500.0));
    double r2 = 2.0 * std::exp2(std::min(fuji, 500.0));
    return std::min(r1, r2) * 1.05 + 1e-6;
}

}  // namespace

RootResult aberth(const std::vector<mpz_class>& monic, int64_t q, int64_t residual_mag2,
                  int64_t corr_freeze_mag2, int max_sweeps) {
    int n = static_cast<int>(monic.size()) - 1;
    RootResult out;
    out.roots.resize(static_cast<size_t>(n));
    if (n == 0) {
        out.converged = true;
        return out;
    }
    double R = init_radius(monic, q);
    for (int i = 0; i < n; i++) {
        double th = 2.0 * M_PI * i / n + 0.4;
        out.roots[static_cast<size_t>(i)] = {
            fx::from_bigfloat(BigFloat::from_double(R * std::cos(th)), q),
            fx::from_bigfloat(BigFloat::from_double(R * std::sin(th)), q)};
    }

    std::vector<bool> frozen(static_cast<size_t>(n), false);
    mpz_class resid_target = residual_mag2 + q >= 1 ? mpz_class(1) << (residual_mag2 + q) : mpz_class(1);
    mpz_class corr_target =
        corr_freeze_mag2 + q >= 1 ? mpz_class(1) << (corr_freeze_mag2 + q) : mpz_class(1);
    mpz_class tiny_step = mpz_class(1) << std::max<int64_t>(1, q / 8);  // collision escape

    for (int sweep = 0; sweep < max_sweeps; sweep++) {
        out.sweeps = sweep + 1;
        mpz_class max_resid = 0, max_corr = 0;
        int active = 0;
        for (int i = 0; i < n; i++) {
            fx::Complex& z = out.roots[static_cast<size_t>(i)];
            fx::Complex p, dp;
            eval_poly(monic, z, q, p, dp);
            mpz_class pr = ::abs(p.re) + ::abs(p.im);
            if (pr > max_resid) max_resid = pr;
            if (frozen[static_cast<size_t>(i)]) continue;
            active++;
            if (dp.re == 0 && dp.im == 0) {
                // stationary point: nudge deterministically and continue
                z.re += tiny_step;
                continue;
            }
            fx::Complex w = fx::cdiv(p, dp, q);  // Newton step
            // Aberth repulsion: w / (1 - w * sum_j 1/(z - z_j))
            fx::Complex s{0, 0};
            bool collide = false;
            for (int j = 0; j < n; j++) {
                if (j == i) continue;
                fx::Complex d = fx::csub(z, out.roots[static_cast<size_t>(j)]);
                if (d.re == 0 && d.im == 0) {
                    collide = true;
                    break;
                }
                mpz_class one = mpz_class(1) << q;
                s = fx::cadd(s, fx::cdiv({one, 0}, d, q));
            }
            if (collide) {
                z.re += tiny_step;
                continue;
            }
            fx::Complex denom = fx::csub({mpz_class(1) << q, 0}, fx::cmul(w, s, q));
            fx::Complex corr =
                (denom.re == 0 && denom.im == 0) ? w : fx::cdiv(w, denom, q);
            z = fx::csub(z, corr);
            mpz_class ca = ::abs(corr.re) + ::abs(corr.im);
            if (ca > max_corr) max_corr = ca;
            // a root is done when its residual meets the target and it has
            // stopped moving at the working resolution
            if (pr <= resid_target && ca <= corr_target) frozen[static_cast<size_t>(i)] = true;
        }
        out.max_residual = max_resid;
        out.max_correction = max_corr;
        if (active == 0) {
            out.converged = true;
            return out;
        }
    }
    // final residual scan
    mpz_class max_resid = 0;
    for (int i = 0; i < n; i++) {
        fx::Complex p, dp;
        eval_poly(monic, out.roots[static_cast<size_t>(i)], q, p, dp);
        mpz_class pr = ::abs(p.re) + ::abs(p.im);
        if (pr > max_resid) max_resid = pr;
    }
    out.max_residual = max_resid;
    out.converged = max_resid <= resid_target;
    return out;
}

}  // namespace ergo::engine
