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

#include "ergo/matrix.hpp"

#include "ergo/errors.hpp"

namespace ergo {

SquareMatrix SquareMatrix::identity(int n, int precision_bits) {
    SquareMatrix m(n, precision_bits);
    for (int i = 0; i < n; i++) m.at(i, i) = BigFloat(1);
    return m;
}

BigFloat SquareMatrix::max_norm() const {
    BigFloat best;
    for (const auto& v : e_) {
        BigFloat a = v.abs();
        if (a > best) best = a;
    }
    return best;
}

SquareMatrix SquareMatrix::round_to(int64_t scale) const {
    SquareMatrix r(n_, bits_);
    for (size_t i = 0; i < e_.size(); i++) r.e_[i] = e_[i].round_to(scale);
    return r;
}

namespace engine {

FxMat to_fx(const SquareMatrix& M, int64_t q) {
    FxMat m;
    m.n = M.n();
    m.q = q;
    m.a.resize(static_cast<size_t>(M.n()) * M.n());
    for (int i = 0; i < M.n(); i++)
        for (int j = 0; j < M.n(); j++) m.at(i, j) = fx::from_bigfloat(M.at(i, j), q);
    return m;
}

SquareMatrix from_fx(const FxMat& m, int bits) {
    SquareMatrix M(m.n, bits);
    for (int i = 0; i < m.n; i++)
        for (int j = 0; j < m.n; j++) M.at(i, j) = fx::to_bigfloat(m.at(i, j), m.q);
    return M;
}

FxMat matmul(const FxMat& A, const FxMat& B) {
    if (A.n != B.n || A.q != B.q) throw Error("matmul", "shape/scale mismatch");
    int n = A.n;
    FxMat C;
    C.n = n;
    C.q = A.q;
    C.a.resize(static_cast<size_t>(n) * n);
    mpz_class acc;
    for (int i = 0; i < n; i++) {
        const mpz_class* arow = &A.a[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; j++) {
            acc = 0;
            for (int k = 0; k < n; k++)
                mpz_addmul(acc.get_mpz_t(), arow[k].get_mpz_t(), B.at(k, j).get_mpz_t());
            C.at(i, j) = rshift_round(acc, A.q);
        }
    }
    return C;
}

FxCMat cmatmul(const FxCMat& A, const FxCMat& B) {
    if (A.n != B.n || A.q != B.q) throw Error("cmatmul", "shape/scale mismatch");
    int n = A.n;
    FxCMat C;
    C.n = n;
    C.q = A.q;
    C.a.resize(static_cast<size_t>(n) * n);
    mpz_class re, im;
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            re = 0;
            im = 0;
            for (int k = 0; k < n; k++) {
                const fx::Complex& x = A.at(i, k);
                const fx::Complex& y = B.at(k, j);
                mpz_addmul(re.get_mpz_t(), x.re.get_mpz_t(), y.re.get_mpz_t());
                mpz_submul(re.get_mpz_t(), x.im.get_mpz_t(), y.im.get_mpz_t());
                mpz_addmul(im.get_mpz_t(), x.re.get_mpz_t(), y.im.get_mpz_t());
                mpz_addmul(im.get_mpz_t(), x.im.get_mpz_t(), y.re.get_mpz_t());
            }
            C.at(i, j) = {rshift_round(re, A.q), rshift_round(im, A.q)};
        }
    }
    return C;
}

std::vector<mpz_class> matvec(const FxMat& A, const std::vector<mpz_class>& v) {
    int n = A.n;
    std::vector<mpz_class> r(static_cast<size_t>(n));
    mpz_class acc;
    for (int i = 0; i < n; i++) {
        acc = 0;
        for (int k = 0; k < n; k++)
            mpz_addmul(acc.get_mpz_t(), A.at(i, k).get_mpz_t(), v[static_cast<size_t>(k)].get_mpz_t());
        r[static_cast<size_t>(i)] = rshift_round(acc, A.q);
    }
    return r;
}

int64_t max_norm_mag2(const FxMat& m) {
    int64_t best = INT64_MIN;
    for (const auto& z : m.a) {
        int64_t b = fx::zmag2(z);
        if (b > best) best = b;
    }
    return best == INT64_MIN ? INT64_MIN : best - m.q;
}

mpz_class determinant_fx(FxMat m) {
    int n = m.n;
    int64_t q = m.q;
    mpz_class det = mpz_class(1) << q;
    int sign = 1;
    for (int c = 0; c < n; c++) {
        int piv = -1;
        mpz_class best = 0;
        for (int r = c; r < n; r++) {
            mpz_class a = ::abs(m.at(r, c));
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (piv < 0 || best == 0) return mpz_class(0);
        if (piv != c) {
            for (int j = c; j < n; j++) std::swap(m.at(piv, j), m.at(c, j));
            sign = -sign;
        }
        det = fx::mul(det, m.at(c, c), q);
        for (int r = c + 1; r < n; r++) {
            if (m.at(r, c) == 0) continue;
            mpz_class f = fx::div(m.at(r, c), m.at(c, c), q);
            for (int j = c; j < n; j++) {
                m.at(r, j) -= fx::mul(f, m.at(c, j), q);
            }
        }
    }
    return sign < 0 ? mpz_class(-det) : det;
}

}  // namespace engine

}  // namespace ergo
