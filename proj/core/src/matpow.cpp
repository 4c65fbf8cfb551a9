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

#include <algorithm>
#include <cmath>

#include "ergo/errors.hpp"
#include "ergo/matrix.hpp"

namespace ergo {

namespace {

int64_t guard() { return numerics_config().guard_bits; }

int64_t fl_growth(const SquareMatrix& M) {
    int n = M.n();
    BigFloat norm = M.max_norm();
    int64_t lognorm = norm.is_zero() ? 0 : std::max<int64_t>(0, norm.mag2() + 1);
    return static_cast<int64_t>(n) *
               (lognorm + 2 + static_cast<int64_t>(std::log2(static_cast<double>(n) + 1))) / 2 +
           2 * n + 64;
}

struct EigenFx {
    std::vector<fx::Complex> roots;
    int64_t q = 0;
    BigFloat separation;  // certified; zero when clusters stay unresolved
    BigFloat residual;
    bool separated = false;
};

EigenFx eigen_ladder(const SquareMatrix& M, int p, const EigenOptions& opt) {
    int n = M.n();
    int64_t growth = fl_growth(M);
    int64_t q = std::max<int64_t>(2 * (p + guard()), 256);
    // an n-fold eigenvalue structure at the entries' resolution needs about
    // n * resolution bits to split; honor that when it stays affordable
    int64_t res_bits = 0;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            const BigFloat& v = M.at(i, j);
            if (!v.is_zero()) res_bits = std::max<int64_t>(res_bits, -v.exponent());
        }
    int64_t split = static_cast<int64_t>(n) * res_bits + p + 64;
    if (split <= 4096) q = std::max(q, split);
    q = std::max(q, opt.min_scale);
    EigenFx best;
    bool have = false;
    for (int attempt = 0; attempt < opt.max_ladder; attempt++, q *= 2) {
        int64_t qfl = q + growth;
        auto cp = engine::charpoly_fx(engine::to_fx(M, qfl));
        // sweep budget covers the linear phase of cluster collapse (~0.4
        // bits/sweep) on top of the quadratic tail for simple roots
        int sweeps = static_cast<int>(std::min<int64_t>(64 + 24 * n + 3 * q, 40000));
        int64_t resid_mag = -(static_cast<int64_t>(p) / 2 + 1);
        int64_t corr_mag = -(q - 48);
        auto rr = engine::aberth(cp, qfl, resid_mag, corr_mag, sweeps);
        if (!rr.converged) continue;

        // per-root error estimate: one measured Newton step
        mpz_class err_max = 0;
        bool err_ok = true;
        for (auto& z : rr.roots) {
            fx::Complex pv, dp;
            // evaluate via a 1-sweep no-move probe
            {
                int deg = n;
                pv = {cp[static_cast<size_t>(deg)], 0};
                dp = {0, 0};
                for (int k = deg - 1; k >= 0; k--) {
                    dp = fx::cmul(dp, z, qfl);
                    dp = fx::cadd(dp, pv);
                    pv = fx::cmul(pv, z, qfl);
                    pv.re += cp[static_cast<size_t>(k)];
                }
            }
            if (dp.re == 0 && dp.im == 0) {
                err_ok = false;
                break;
            }
            fx::Complex w = fx::cdiv(pv, dp, qfl);
            // the residual can underflow the working scale; one ulp of |p|
            // over |p'| floors the root-location uncertainty
            mpz_class pabs = ::abs(pv.re) + ::abs(pv.im) + 1;
            mpz_class dpabs = ::abs(dp.re) + ::abs(dp.im);
            mpz_class floor_e = mpz_div_round(pabs, dpabs, qfl);
            mpz_class e = (::abs(w.re) + ::abs(w.im) + floor_e) * 4;
            if (e > err_max) err_max = e;
        }

        EigenFx cur;
        cur.roots = rr.roots;
        cur.q = qfl;
        cur.residual = fx::to_bigfloat(rr.max_residual, qfl);
        if (err_ok) {
            // min pairwise distance (max-metric lower bound |re|+|im| >= dist >= max(|re|,|im|))
            mpz_class min_d(-1);
            for (int i = 0; i < n; i++)
                for (int j = i + 1; j < n; j++) {
                    fx::Complex d = fx::csub(rr.roots[static_cast<size_t>(i)],
                                             rr.roots[static_cast<size_t>(j)]);
                    mpz_class dd = std::max(::abs(d.re), ::abs(d.im));
                    if (min_d < 0 || dd < min_d) min_d = dd;
                }
            mpz_class sep = (n > 1 && min_d > 0) ? mpz_class(min_d - 2 * err_max) : mpz_class(0);
            if (n == 1) {
                cur.separation = BigFloat(1);
                cur.separated = true;
            } else if (sep > 0) {
                cur.separation = fx::to_bigfloat(sep, qfl);
                cur.separated = true;
            }
        }
        if (cur.separated || !opt.require_separated) return cur;
        best = cur;
        have = true;
    }
    if (have) {
        throw ConditioningError("eigenvalues",
                                "near-degenerate spectrum: separation not certified; "
                                "call perturb_to_distinct first");
    }
    throw ConvergenceError("eigenvalues", "root iteration failed to reach the residual target");
}

Spectrum to_spectrum(const EigenFx& e, int p) {
    Spectrum s;
    s.eigenvalues.reserve(e.roots.size());
    for (const auto& z : e.roots)
        s.eigenvalues.push_back(PrecisionComplex{{fx::to_bigfloat(z.re, e.q), p},
                                                 {fx::to_bigfloat(z.im, e.q), p}});
    s.separation = PrecisionReal{e.separation, p};
    s.residual = PrecisionReal{e.residual, p};
    return s;
}

}  // namespace

Spectrum eigenvalues(const SquareMatrix& M, int p, const EigenOptions& opt) {
    return to_spectrum(eigen_ladder(M, p, opt), p);
}

namespace {

struct PerturbScanResult {
    SquareMatrix m;
    int64_t t_bits;  // -log2 of the step t0
};

// scan discriminant samples along M(t) and pick the largest
PerturbScanResult perturb_scan(const SquareMatrix& M, const BigInt& E, const BigFloat& delta) {
    int n = M.n();
    if (n > 48)
        throw ResourceError("perturb",
                            "discriminant scan infeasible at dimension " + std::to_string(n));
    // ||D - M|| for D = diag(1..n)
    SquareMatrix DM(n, M.precision_bits());
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            DM.at(i, j) = (i == j ? BigFloat(static_cast<long>(i + 1)) - M.at(i, j) : -M.at(i, j));
    BigFloat dmn = DM.max_norm();
    int64_t log_dm = dmn.is_zero() ? 0 : dmn.mag2() + 1;
    int64_t bitsE = static_cast<int64_t>(mpz_sizeinbase(E.get_mpz_t(), 2));
    int64_t nn1 = static_cast<int64_t>(n) * (n - 1);
    // t0 = 2^-e0 <= delta / (100 n(n-1) 2^n E^2 ||D-M||)
    int64_t e0 = (64 - __builtin_clzll(static_cast<unsigned long long>(100 * std::max<int64_t>(nn1, 1)))) +
                 n + 2 * bitsE + std::max<int64_t>(log_dm, 0) + 1 - delta.mag2();
    if (e0 < 1) e0 = 1;
    BigFloat t0 = BigFloat::ulp(e0);

    int pd = static_cast<int>(std::min<int64_t>(e0 * std::max<int64_t>(nn1, 2) + 96, 1 << 20));
    int best_k = -1;
    BigFloat best_abs;
    for (int k = 0; k <= nn1; k++) {
        BigFloat t = t0 * BigFloat(static_cast<long>(k));
        BigFloat d = discriminant_curve_eval(M, t, pd).value().abs();
        if (best_k < 0 || d > best_abs) {
            best_k = k;
            best_abs = d;
        }
    }
    if (best_abs.is_zero())
        throw Error("perturb",
                    "all discriminant samples vanished; arithmetic misconfiguration suspected");
    BigFloat tk = t0 * BigFloat(static_cast<long>(best_k));
    SquareMatrix M0(n, M.precision_bits());
    BigFloat omt = BigFloat(1) - tk;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            BigFloat v = M.at(i, j) * omt;
            if (i == j) v = v + BigFloat(static_cast<long>(i + 1)) * tk;
            M0.at(i, j) = v;
        }
    return {M0, e0};
}

struct DistinctResult {
    SquareMatrix m;
    EigenFx eigen;
};

DistinctResult distinct_spectrum(const SquareMatrix& M, const BigInt& E, const BigFloat& delta,
                                 int p) {
    EigenOptions probe;
    probe.max_ladder = 3;
    probe.require_separated = true;
    try {
        EigenFx e = eigen_ladder(M, p, probe);
        return {M, std::move(e)};
    } catch (const Error&) {
        // spectrum did not certify as distinct; perturb along the diagonal ray
    }
    PerturbScanResult ps = perturb_scan(M, E, delta);
    EigenOptions full;
    full.max_ladder = 6;
    full.require_separated = false;
    full.min_scale = static_cast<int64_t>(M.n()) * ps.t_bits + 2 * (p + guard());
    EigenFx e = eigen_ladder(ps.m, p, full);
    return {ps.m, std::move(e)};
}

}  // namespace

SquareMatrix perturb_to_distinct(const SquareMatrix& M, const BigInt& E, const BigFloat& delta) {
    int p = std::max(64, static_cast<int>(-delta.mag2()) + 16);
    return distinct_spectrum(M, E, delta, p).m;
}

InterpolantOutcome power_interpolant(const Spectrum& s, const BigInt& E, const BigFloat& bound,
                                     int p) {
    int n = static_cast<int>(s.eigenvalues.size());
    PowerPolynomial out;
    out.exponent = E;
    if (n == 0) return out;

    // node values
    std::vector<PrecisionComplex> vals;
    vals.reserve(static_cast<size_t>(n));
    std::vector<bool> live(static_cast<size_t>(n), false);
    BigFloat vmax;
    for (int i = 0; i < n; i++) {
        auto o = pow_complex(s.eigenvalues[static_cast<size_t>(i)], E, p + 16, bound);
        if (std::holds_alternative<OverflowReport>(o)) {
            OverflowReport rep = std::get<OverflowReport>(o);
            rep.witness = i;
            return rep;
        }
        PrecisionComplex v = std::get<PrecisionComplex>(o);
        live[static_cast<size_t>(i)] = !v.is_zero();
        BigFloat va = v.re.value().abs() + v.im.value().abs();
        if (va > vmax) vmax = va;
        vals.push_back(std::move(v));
    }

    int live_count = 0;
    for (bool b : live)
        if (b) live_count++;
    if (live_count == 0) {
        // every node power collapsed; the zero polynomial interpolates
        out.coeffs.assign(1, PrecisionComplex{PrecisionReal{BigFloat(), p}, PrecisionReal{BigFloat(), p}});
        return out;
    }
    if (!(s.separation.value() > BigFloat()) && live_count == n)
        throw ConditioningError("power-interpolant",
                                "separation not certified and all nodes live");

    BigFloat tol = BigFloat::ulp(p / 2) * (vmax > BigFloat(1) ? vmax : BigFloat(1));
    int64_t extra0 = 64 + 2 * n;
    for (int64_t extra = extra0; extra <= extra0 + 8192; extra *= 2) {
        int64_t q = p + guard() + extra + std::max<int64_t>(0, bound.mag2());
        std::vector<fx::Complex> z(static_cast<size_t>(n));
        for (int i = 0; i < n; i++)
            z[static_cast<size_t>(i)] = {fx::from_bigfloat(s.eigenvalues[static_cast<size_t>(i)].re.value(), q),
                                         fx::from_bigfloat(s.eigenvalues[static_cast<size_t>(i)].im.value(), q)};
        // full product F(x) = prod (x - z_j), ascending coefficients, scale q
        std::vector<fx::Complex> F(static_cast<size_t>(n) + 1, fx::Complex{mpz_class(0), mpz_class(0)});
        F[0] = {mpz_class(1) << q, 0};
        size_t deg = 0;
        for (int j = 0; j < n; j++) {
            std::vector<fx::Complex> G(deg + 2, fx::Complex{mpz_class(0), mpz_class(0)});
            for (size_t k = 0; k <= deg; k++) {
                fx::Complex t = fx::cmul(F[k], z[static_cast<size_t>(j)], q);
                G[k] = fx::csub(G[k], t);
                G[k + 1] = fx::cadd(G[k + 1], F[k]);
            }
            deg++;
            for (size_t k = 0; k <= deg; k++) F[k] = G[k];
        }

        std::vector<fx::Complex> acc(static_cast<size_t>(n), fx::Complex{mpz_class(0), mpz_class(0)});
        bool bad = false;
        for (int i = 0; i < n && !bad; i++) {
            if (!live[static_cast<size_t>(i)]) continue;  // zero value: no basis term
            // deflate F by (x - z_i): descending synthetic division
            std::vector<fx::Complex> Di(static_cast<size_t>(n));
            fx::Complex carry = F[static_cast<size_t>(n)];  // = 1
            for (int k = n - 1; k >= 0; k--) {
                Di[static_cast<size_t>(k)] = carry;
                carry = fx::cadd(F[static_cast<size_t>(k)],
                                 fx::cmul(carry, z[static_cast<size_t>(i)], q));
            }
            // denom = Di(z_i)
            fx::Complex denom{mpz_class(0), mpz_class(0)};
            for (int k = n - 1; k >= 0; k--) {
                denom = fx::cmul(denom, z[static_cast<size_t>(i)], q);
                denom = fx::cadd(denom, Di[static_cast<size_t>(k)]);
            }
            if (denom.re == 0 && denom.im == 0) {
                bad = true;
                break;
            }
            fx::Complex vi{fx::from_bigfloat(vals[static_cast<size_t>(i)].re.value(), q),
                           fx::from_bigfloat(vals[static_cast<size_t>(i)].im.value(), q)};
            fx::Complex w = fx::cdiv(vi, denom, q);
            for (int k = 0; k < n; k++)
                acc[static_cast<size_t>(k)] =
                    fx::cadd(acc[static_cast<size_t>(k)], fx::cmul(Di[static_cast<size_t>(k)], w, q));
        }
        if (bad) continue;

        // validate at the nodes
        BigFloat worst;
        for (int i = 0; i < n; i++) {
            fx::Complex pv{mpz_class(0), mpz_class(0)};
            for (int k = n - 1; k >= 0; k--) {
                pv = fx::cmul(pv, z[static_cast<size_t>(i)], q);
                pv = fx::cadd(pv, acc[static_cast<size_t>(k)]);
            }
            fx::Complex vi{fx::from_bigfloat(vals[static_cast<size_t>(i)].re.value(), q),
                           fx::from_bigfloat(vals[static_cast<size_t>(i)].im.value(), q)};
            fx::Complex d = fx::csub(pv, vi);
            BigFloat da = fx::to_bigfloat(::abs(d.re) + ::abs(d.im), q);
            if (da > worst) worst = da;
        }
        if (worst <= tol) {
            out.coeffs.reserve(static_cast<size_t>(n));
            BigFloat cb;
            int64_t qout = p + guard();
            for (int k = 0; k < n; k++) {
                BigFloat re = fx::to_bigfloat(acc[static_cast<size_t>(k)].re, q).round_to(qout + 64);
                BigFloat im = fx::to_bigfloat(acc[static_cast<size_t>(k)].im, q).round_to(qout + 64);
                BigFloat m = re.abs() + im.abs();
                if (m > cb) cb = m;
                out.coeffs.push_back(PrecisionComplex{{re, p}, {im, p}});
            }
            out.coeff_bound = cb;
            out.node_tolerance = worst;
            if (!cb.is_zero() && cb.mag2() > (int64_t(1) << 20))
                throw ConditioningError("power-interpolant", "coefficient bound exceeded");
            return out;
        }
    }
    throw ConditioningError("power-interpolant",
                            "node residuals above tolerance at every working precision");
}

namespace {

engine::FxCMat cmat_from_real(const SquareMatrix& M, int64_t q) {
    engine::FxCMat m;
    m.n = M.n();
    m.q = q;
    m.a.resize(static_cast<size_t>(M.n()) * M.n());
    for (int i = 0; i < M.n(); i++)
        for (int j = 0; j < M.n(); j++)
            m.at(i, j) = {fx::from_bigfloat(M.at(i, j), q), mpz_class(0)};
    return m;
}

int64_t horner_scale(const PowerPolynomial& p, const SquareMatrix& M, int pbits) {
    BigFloat norm = M.max_norm();
    int64_t lognorm = norm.is_zero() ? 1 : std::max<int64_t>(1, norm.mag2() + 1);
    int64_t cb = p.coeff_bound.is_zero() ? 0 : std::max<int64_t>(0, p.coeff_bound.mag2() + 1);
    return pbits + guard() + cb + static_cast<int64_t>(M.n()) * lognorm + 96;
}

}  // namespace

SquareMatrix poly_at_matrix(const PowerPolynomial& p, const SquareMatrix& M,
                            BigFloat* imag_residue) {
    int n = M.n();
    int d = static_cast<int>(p.coeffs.size()) - 1;
    if (d > n && n > 0) throw DomainError("poly-at-matrix", "degree exceeds n");
    int pbits = M.precision_bits();
    int64_t q = horner_scale(p, M, pbits);
    engine::FxCMat X;
    X.n = n;
    X.q = q;
    X.a.assign(static_cast<size_t>(n) * n, fx::Complex{mpz_class(0), mpz_class(0)});
    engine::FxCMat Mc = cmat_from_real(M, q);
    auto add_diag = [&](const PrecisionComplex& c) {
        mpz_class re = fx::from_bigfloat(c.re.value(), q);
        mpz_class im = fx::from_bigfloat(c.im.value(), q);
        for (int i = 0; i < n; i++) {
            X.at(i, i).re += re;
            X.at(i, i).im += im;
        }
    };
    add_diag(p.coeffs[static_cast<size_t>(d)]);
    for (int k = d - 1; k >= 0; k--) {
        X = engine::cmatmul(X, Mc);
        add_diag(p.coeffs[static_cast<size_t>(k)]);
    }
    // drop imaginary parts, tracking the residue
    BigFloat imax;
    SquareMatrix R(n, pbits);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            BigFloat im = fx::to_bigfloat(X.at(i, j).im, q).abs();
            if (im > imax) imax = im;
            R.at(i, j) = fx::to_bigfloat(X.at(i, j).re, q).round_to(pbits + guard());
        }
    if (imag_residue) *imag_residue = imax;
    if (imax > BigFloat::ulp(pbits / 4))
        throw ConditioningError("poly-at-matrix", "imaginary residue above 2^-(p/4)");
    return R;
}

std::vector<BigFloat> poly_at_matrix_vector(const PowerPolynomial& p, const SquareMatrix& M,
                                            const std::vector<BigFloat>& v,
                                            BigFloat* imag_residue) {
    int n = M.n();
    int d = static_cast<int>(p.coeffs.size()) - 1;
    if (d > n && n > 0) throw DomainError("poly-at-matrix", "degree exceeds n");
    int pbits = M.precision_bits();
    int64_t q = horner_scale(p, M, pbits);
    engine::FxMat Mf = engine::to_fx(M, q);
    std::vector<mpz_class> v0re(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) v0re[static_cast<size_t>(i)] = fx::from_bigfloat(v[static_cast<size_t>(i)], q);
    std::vector<mpz_class> wre(static_cast<size_t>(n)), wim(static_cast<size_t>(n));
    auto axpy_coeff = [&](const PrecisionComplex& c) {
        mpz_class cre = fx::from_bigfloat(c.re.value(), q);
        mpz_class cim = fx::from_bigfloat(c.im.value(), q);
        for (int i = 0; i < n; i++) {
            wre[static_cast<size_t>(i)] += fx::mul(cre, v0re[static_cast<size_t>(i)], q);
            wim[static_cast<size_t>(i)] += fx::mul(cim, v0re[static_cast<size_t>(i)], q);
        }
    };
    axpy_coeff(p.coeffs[static_cast<size_t>(d)]);
    for (int k = d - 1; k >= 0; k--) {
        wre = engine::matvec(Mf, wre);
        wim = engine::matvec(Mf, wim);
        axpy_coeff(p.coeffs[static_cast<size_t>(k)]);
    }
    BigFloat imax;
    std::vector<BigFloat> out(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        BigFloat im = fx::to_bigfloat(wim[static_cast<size_t>(i)], q).abs();
        if (im > imax) imax = im;
        out[static_cast<size_t>(i)] = fx::to_bigfloat(wre[static_cast<size_t>(i)], q).round_to(pbits + guard());
    }
    if (imag_residue) *imag_residue = imax;
    if (imax > BigFloat::ulp(pbits / 4))
        throw ConditioningError("poly-at-matrix", "imaginary residue above 2^-(p/4)");
    return out;
}

MatrixPowerOutcome matrix_power(const SquareMatrix& M, const BigInt& E, int p,
                                const BigFloat& bound) {
    int n = M.n();
    if (E < 0) throw DomainError("matrix-power", "negative exponent");
    if (E == 0) return SquareMatrix::identity(n, p);
    if (E == 1) return M.round_to(p + guard());
    auto dr = distinct_spectrum(M, E, BigFloat::ulp(p + 2), p + 8);
    Spectrum spec = to_spectrum(dr.eigen, p + 8);
    auto io = power_interpolant(spec, E, bound, p + 4);
    if (std::holds_alternative<OverflowReport>(io)) return std::get<OverflowReport>(io);
    SquareMatrix R = poly_at_matrix(std::get<PowerPolynomial>(io), dr.m);
    return R.round_to(p + guard());
}

SquareMatrix matrix_power_squaring(const SquareMatrix& M, const BigInt& E, const BigFloat& bound) {
    if (E < 0) throw DomainError("matrix-power-squaring", "negative exponent");
    int n = M.n();
    int pbits = M.precision_bits();
    if (E == 0) return SquareMatrix::identity(n, pbits);
    int64_t bitsE = static_cast<int64_t>(mpz_sizeinbase(E.get_mpz_t(), 2));
    int64_t q = pbits + guard() + 2 * bitsE + 2 * static_cast<int64_t>(std::log2(n + 1.0)) + 32;
    int64_t bmag = 2 * std::max<int64_t>(1, bound.mag2() + 1) + 1;
    engine::FxMat base = engine::to_fx(M, q);
    engine::FxMat acc;
    bool have_acc = false;
    mpz_class e = E;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            acc = have_acc ? engine::matmul(acc, base) : base;
            have_acc = true;
            if (engine::max_norm_mag2(acc) > bmag)
                throw MagnitudeError("matrix-power-squaring", "intermediate norm exceeds bound^2");
        }
        e >>= 1;
        if (e > 0) {
            base = engine::matmul(base, base);
            if (engine::max_norm_mag2(base) > bmag)
                throw MagnitudeError("matrix-power-squaring", "intermediate norm exceeds bound^2");
        }
    }
    return engine::from_fx(acc, pbits).round_to(pbits + guard());
}

}  // namespace ergo
