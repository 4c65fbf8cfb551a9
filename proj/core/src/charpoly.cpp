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

namespace ergo {

namespace engine {

std::vector<mpz_class> charpoly_fx(const FxMat& M) {
    int n = M.n;
    int64_t q = M.q;
    std::vector<mpz_class> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = mpz_class(1) << q;
    FxMat Ak = M;
    for (int k = 1; k <= n; k++) {
        if (k > 1) {
            // Ak = M * (Ak + c_{n-k+1} I)
            FxMat T = Ak;
            for (int i = 0; i < n; i++) T.at(i, i) += c[static_cast<size_t>(n - k + 1)];
            Ak = matmul(M, T);
        }
        mpz_class tr = 0;
        for (int i = 0; i < n; i++) tr += Ak.at(i, i);
        c[static_cast<size_t>(n - k)] = -mpz_div_round(tr, mpz_class(k), 0);
    }
    return c;
}

}  // namespace engine

namespace {

// working scale for the FL recursion: target bits + headroom for coefficient
// growth C(n,k) (sqrt(n) norm)^k and the n-fold error amplification
int64_t fl_scale(const SquareMatrix& M, int p) {
    int n = M.n();
    BigFloat norm = M.max_norm();
    int64_t lognorm = norm.is_zero() ? 0 : std::max<int64_t>(0, norm.mag2() + 1);
    int64_t growth = static_cast<int64_t>(n) *
                     (lognorm + 1 + static_cast<int64_t>(std::log2(static_cast<double>(n) + 1)) + 1);
    return p + numerics_config().guard_bits + growth / 2 + 2 * n + 64;
}

}  // namespace

std::vector<PrecisionReal> char_poly(const SquareMatrix& M, int p) {
    if (p <= 0) p = M.precision_bits();
    int64_t q = fl_scale(M, p);
    auto c = engine::charpoly_fx(engine::to_fx(M, q));
    std::vector<PrecisionReal> out;
    out.reserve(c.size());
    for (auto& z : c) out.emplace_back(fx::to_bigfloat(z, q).round_to(p + numerics_config().guard_bits), p);
    return out;
}

PrecisionReal discriminant_curve_eval(const SquareMatrix& M, const BigFloat& t, int p) {
    int n = M.n();
    // M(t) = M(1-t) + D t with D = diag(1..n); exact when t is dyadic
    SquareMatrix Mt(n, M.precision_bits());
    BigFloat omt = BigFloat(1) - t;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            BigFloat v = M.at(i, j) * omt;
            if (i == j) v = v + BigFloat(static_cast<long>(i + 1)) * t;
            Mt.at(i, j) = v;
        }
    if (n == 1) return PrecisionReal::exact_int(1, p);  // empty product

    int64_t q = fl_scale(Mt, p) + 2 * n * (n + 2);
    auto c = engine::charpoly_fx(engine::to_fx(Mt, q));

    // derivative coefficients
    std::vector<mpz_class> d(static_cast<size_t>(n));
    for (int k = 1; k <= n; k++) d[static_cast<size_t>(k - 1)] = k * c[static_cast<size_t>(k)];

    // Sylvester matrix of (p, p'), size 2n-1
    int m = 2 * n - 1;
    engine::FxMat S;
    S.n = m;
    S.q = q;
    S.a.assign(static_cast<size_t>(m) * m, mpz_class(0));
    for (int r = 0; r < n - 1; r++)  // rows of p: degree n, n-1 rows
        for (int k = 0; k <= n; k++) S.at(r, r + (n - k)) = c[static_cast<size_t>(k)];
    for (int r = 0; r < n; r++)  // rows of p': degree n-1, n rows
        for (int k = 0; k < n; k++) S.at(n - 1 + r, r + (n - 1 - k)) = d[static_cast<size_t>(k)];

    mpz_class res = engine::determinant_fx(S);
    // disc = (-1)^{n(n-1)/2} Res(p, p') / lc(p), lc = 1
    bool flip = ((static_cast<int64_t>(n) * (n - 1) / 2) % 2) != 0;
    if (flip) res = -res;
    return {fx::to_bigfloat(res, q).round_to(p + numerics_config().guard_bits), p};
}

}  // namespace ergo
