#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "ergo/matrix.hpp"
#include "oracles.hpp"

using namespace ergo;

namespace {

BigFloat tol2(int e) { return BigFloat::ulp(-e); }

SquareMatrix from_doubles(const std::vector<std::vector<double>>& rows, int bits = 128) {
    int n = static_cast<int>(rows.size());
    SquareMatrix m(n, bits);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) m.at(i, j) = BigFloat::from_double(rows[i][j]);
    return m;
}

BigFloat max_norm_diff(const SquareMatrix& a, const SquareMatrix& b) {
    BigFloat best;
    for (int i = 0; i < a.n(); i++)
        for (int j = 0; j < a.n(); j++) {
            BigFloat d = (a.at(i, j) - b.at(i, j)).abs();
            if (d > best) best = d;
        }
    return best;
}

// random dyadic matrix with entries k/2^6, k in [-64, 64]
SquareMatrix random_matrix(std::mt19937_64& rng, int n, int bits = 128) {
    SquareMatrix m(n, bits);
    std::uniform_int_distribution<long> U(-64, 64);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) m.at(i, j) = BigFloat(mpz_class(U(rng)), -6);
    return m;
}

// scale a matrix so its spectral radius (power-iteration estimate in double)
// is close to the target
SquareMatrix scaled_to_radius(const SquareMatrix& m, double target, int bits = 128) {
    int n = m.n();
    std::vector<std::complex<double>> v(static_cast<size_t>(n), {1.0, 0.3});
    std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j).to_double();
    double rho = 0;
    for (int it = 0; it < 200; it++) {
        std::vector<std::complex<double>> w(static_cast<size_t>(n));
        double nrm = 0;
        for (int i = 0; i < n; i++) {
            std::complex<double> s = 0;
            for (int j = 0; j < n; j++)
                s += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
            w[static_cast<size_t>(i)] = s;
            nrm = std::max(nrm, std::abs(s));
        }
        rho = nrm;
        for (auto& x : w) x /= nrm;
        v = w;
    }
    double s = target / rho;
    SquareMatrix r(n, bits);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            r.at(i, j) = (m.at(i, j) * BigFloat::from_double(s)).round_to(60);
    return r;
}

}  // namespace

TEST_CASE("char_poly examples") {
    // diag(1,2) -> x^2 - 3x + 2
    auto c = char_poly(from_doubles({{1, 0}, {0, 2}}), 96);
    CHECK((c[0].value() - BigFloat(2)).abs() <= tol2(-90));
    CHECK((c[1].value() + BigFloat(3)).abs() <= tol2(-90));
    CHECK(c[2].value() == BigFloat(1));

    // companion matrix of x^3 - x - 1 reproduces it exactly
    auto cc = char_poly(from_doubles({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}), 96);
    CHECK(cc[0].value() == BigFloat(-1));
    CHECK(cc[1].value() == BigFloat(-1));
    CHECK(cc[2].value().is_zero());
    CHECK(cc[3].value() == BigFloat(1));

    // random 6x6 integer matrix vs the exact integer oracle
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> U(-5, 5);
    for (int rep = 0; rep < 3; rep++) {
        std::vector<std::vector<long>> a(6, std::vector<long>(6));
        SquareMatrix M(6, 128);
        for (int i = 0; i < 6; i++)
            for (int j = 0; j < 6; j++) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = U(rng);
                M.at(i, j) = BigFloat(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            }
        auto ref = oracle::charpoly_int(a);
        auto got = char_poly(M, 96);
        for (int k = 0; k <= 6; k++)
            CHECK((got[static_cast<size_t>(k)].value() -
                   BigFloat(ref[static_cast<size_t>(k)], 0))
                      .abs() <= tol2(-90));
    }
}

TEST_CASE("eigenvalues examples") {
    int p = 96;
    // diag(1,2,3)
    auto s = eigenvalues(from_doubles({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}), p);
    REQUIRE(s.eigenvalues.size() == 3);
    CHECK(s.separation.value() > BigFloat());
    std::vector<double> got;
    for (auto& z : s.eigenvalues) {
        CHECK(z.im.value().abs() <= tol2(-40));
        got.push_back(z.re.to_double());
    }
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(1).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(2).epsilon(1e-12));
    CHECK(got[2] == doctest::Approx(3).epsilon(1e-12));

    // rotation-like matrix [c, -s; s, c] has eigenvalues c +- i s exactly
    BigFloat c0 = BigFloat::from_double(0.7648421872844885);
    BigFloat s0 = BigFloat::from_double(0.6442176872376911);
    SquareMatrix R(2, p);
    R.at(0, 0) = c0;
    R.at(0, 1) = -s0;
    R.at(1, 0) = s0;
    R.at(1, 1) = c0;
    auto sr = eigenvalues(R, p);
    for (auto& z : sr.eigenvalues) {
        CHECK((z.re.value() - c0).abs() <= tol2(-p / 2 + 4));
        CHECK((z.im.value().abs() - s0).abs() <= tol2(-p / 2 + 4));
    }

    // random 8x8: residual certified below 2^-(p/2), cross-checked by
    // evaluating the charpoly at the roots in double precision
    std::mt19937_64 rng(11);
    SquareMatrix M = random_matrix(rng, 8, p);
    auto sm = eigenvalues(M, p);
    CHECK(sm.residual.value() <= tol2(-p / 2));
    auto cp = char_poly(M, p);
    for (auto& z : sm.eigenvalues) {
        std::complex<double> zz(z.re.to_double(), z.im.to_double()), acc(0, 0);
        for (int k = 8; k >= 0; k--) acc = acc * zz + cp[static_cast<size_t>(k)].to_double();
        CHECK(std::abs(acc) < 1e-9);
    }
}

TEST_CASE("discriminant curve examples") {
    int p = 96;
    // n = 3, t = 1: M(1) = diag(1,2,3), disc = prod (i-j)^2 = 4
    auto d = discriminant_curve_eval(from_doubles({{0.3, 0.1, 0}, {0, 0.2, 0.4}, {0.5, 0, 0.1}}),
                                     BigFloat(1), p);
    CHECK((d.value() - BigFloat(4)).abs() <= tol2(-p / 2));

    // n = 2, M = I: eigenvalues of M(t) are 1 and 1+t, so disc = t^2
    for (double td : {0.25, 0.5, 0.0625}) {
        auto dd =
            discriminant_curve_eval(from_doubles({{1, 0}, {0, 1}}), BigFloat::from_double(td), p);
        CHECK((dd.value() - BigFloat::from_double(td * td)).abs() <= tol2(-p / 2));
    }

    // consistency with the eigenvalue-product oracle
    std::mt19937_64 rng(3);
    SquareMatrix M = random_matrix(rng, 4, p);
    BigFloat t = BigFloat::from_double(0.375);
    auto dv = discriminant_curve_eval(M, t, p);
    SquareMatrix Mt(4, p);
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) {
            Mt.at(i, j) = M.at(i, j) * (BigFloat(1) - t);
            if (i == j) Mt.at(i, j) = Mt.at(i, j) + BigFloat(i + 1) * t;
        }
    auto sp = eigenvalues(Mt, p);
    std::complex<double> prod(1, 0);
    for (size_t i = 0; i < 4; i++)
        for (size_t j = i + 1; j < 4; j++) {
            std::complex<double> zi(sp.eigenvalues[i].re.to_double(),
                                    sp.eigenvalues[i].im.to_double());
            std::complex<double> zj(sp.eigenvalues[j].re.to_double(),
                                    sp.eigenvalues[j].im.to_double());
            prod *= (zi - zj) * (zi - zj);
        }
    CHECK(std::abs(prod.imag()) < 1e-10);
    CHECK(dv.to_double() == doctest::Approx(prod.real()).epsilon(1e-6));
}

TEST_CASE("perturb_to_distinct") {
    // already-distinct diagonal: returned unchanged (k = 0)
    SquareMatrix D = from_doubles({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    SquareMatrix D0 = perturb_to_distinct(D, BigInt(1000), tol2(-20));
    CHECK(max_norm_diff(D, D0).is_zero());

    // 2x2 identity, E = 16, delta = 2^-20
    SquareMatrix I2 = SquareMatrix::identity(2, 128);
    BigFloat delta = tol2(-20);
    SquareMatrix M0 = perturb_to_distinct(I2, BigInt(16), delta);
    auto s = eigenvalues(M0, 96);
    CHECK(s.separation.value() > BigFloat());
    SquareMatrix P16 = matrix_power_squaring(M0, BigInt(16));
    CHECK(max_norm_diff(P16, I2) <= delta);

    // 6x6 with a repeated eigenvalue: U diag(...) U^-1 via integer shears
    {
        int n = 6, bits = 128;
        std::vector<std::vector<long>> U(static_cast<size_t>(n),
                                         std::vector<long>(static_cast<size_t>(n), 0));
        std::vector<std::vector<long>> V = U;
        for (int i = 0; i < n; i++)
            U[static_cast<size_t>(i)][static_cast<size_t>(i)] =
                V[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        U[0][3] = 2;
        U[2][4] = 1;
        V[0][3] = -2;
        V[2][4] = -1;
        double lam[6] = {0.5, 0.5, 0.5, 0.25, 0.75, 1.0};
        SquareMatrix M(n, bits);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                double s2 = 0;
                for (int k = 0; k < n; k++)
                    s2 += U[static_cast<size_t>(i)][static_cast<size_t>(k)] * lam[k] *
                          V[static_cast<size_t>(k)][static_cast<size_t>(j)];
                M.at(i, j) = BigFloat::from_double(s2);
            }
        SquareMatrix M6 = perturb_to_distinct(M, BigInt(16), tol2(-20));
        auto s6 = eigenvalues(M6, 80);
        CHECK(s6.separation.value() > BigFloat());
        CHECK(max_norm_diff(matrix_power_squaring(M6, BigInt(16)),
                            matrix_power_squaring(M, BigInt(16))) <= tol2(-20));
    }
}

TEST_CASE("power_interpolant examples") {
    int p = 96;
    BigFloat B = tol2(64);

    // single node {1}: constant polynomial 1
    Spectrum s1;
    s1.eigenvalues = {
        PrecisionComplex{PrecisionReal::exact_int(1, p), PrecisionReal::exact_int(0, p)}};
    s1.separation = PrecisionReal::exact_int(1, p);
    s1.residual = PrecisionReal::exact_int(0, p);
    auto o1 = std::get<PowerPolynomial>(power_interpolant(s1, BigInt(1) << 200, B, p));
    REQUIRE(o1.coeffs.size() == 1);
    CHECK((o1.coeffs[0].re.value() - BigFloat(1)).abs() <= tol2(-p / 2));

    // nodes {1/2, 1/3}, E = 4: linear interpolant hits 1/16 and 1/81
    Spectrum s2;
    s2.eigenvalues = {
        PrecisionComplex{{BigFloat::from_double(0.5), p}, PrecisionReal::exact_int(0, p)},
        PrecisionComplex{{BigFloat::div(BigFloat(1), BigFloat(3), 200), p},
                         PrecisionReal::exact_int(0, p)}};
    s2.separation = PrecisionReal{BigFloat::from_double(1.0 / 6), p};
    s2.residual = PrecisionReal::exact_int(0, p);
    auto o2 = std::get<PowerPolynomial>(power_interpolant(s2, BigInt(4), B, p));
    REQUIRE(o2.coeffs.size() == 2);
    double c0 = o2.coeffs[0].re.to_double(), c1 = o2.coeffs[1].re.to_double();
    CHECK(c0 + c1 * 0.5 == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(c0 + c1 / 3.0 == doctest::Approx(1.0 / 81).epsilon(1e-12));
    CHECK(o2.node_tolerance <= tol2(-p / 2));

    // random stochastic 6x6, E = 1e9: certified node residuals
    std::mt19937_64 rng(7);
    int n = 6;
    SquareMatrix M(n, p);
    for (int i = 0; i < n; i++) {
        std::vector<long> row(static_cast<size_t>(n));
        long sum = 0;
        for (auto& x : row) {
            x = 1 + static_cast<long>(rng() % 97);
            sum += x;
        }
        for (int j = 0; j < n; j++)
            M.at(i, j) = BigFloat::div(BigFloat(row[static_cast<size_t>(j)]), BigFloat(sum), 160);
    }
    auto sp = eigenvalues(M, p);
    auto io = power_interpolant(sp, BigInt(1000000000L), B, p);
    auto poly = std::get<PowerPolynomial>(io);
    CHECK(poly.node_tolerance <= tol2(-p / 2) * BigFloat(2));
}

TEST_CASE("poly_at_matrix examples") {
    int p = 128;
    // p(x) = x reproduces M
    SquareMatrix M = from_doubles({{0.25, 0.5}, {0.125, -0.75}}, p);
    PowerPolynomial ident;
    ident.coeffs = {
        PrecisionComplex{PrecisionReal::exact_int(0, p), PrecisionReal::exact_int(0, p)},
        PrecisionComplex{PrecisionReal::exact_int(1, p), PrecisionReal::exact_int(0, p)}};
    ident.exponent = 1;
    ident.coeff_bound = BigFloat(1);
    CHECK(max_norm_diff(poly_at_matrix(ident, M), M) <= tol2(-p + 8));

    // Cayley-Hamilton: x^2 - 3x + 2 annihilates diag(1,2)
    PowerPolynomial ch;
    ch.coeffs = {PrecisionComplex{PrecisionReal::exact_int(2, p), PrecisionReal::exact_int(0, p)},
                 PrecisionComplex{PrecisionReal::exact_int(-3, p), PrecisionReal::exact_int(0, p)},
                 PrecisionComplex{PrecisionReal::exact_int(1, p), PrecisionReal::exact_int(0, p)}};
    ch.exponent = 2;
    ch.coeff_bound = BigFloat(3);
    SquareMatrix Z = poly_at_matrix(ch, from_doubles({{1, 0}, {0, 2}}, p));
    CHECK(Z.max_norm() <= tol2(-p + 8));

    // interpolant at the matrix equals the squaring oracle for E = 12
    std::mt19937_64 rng(13);
    SquareMatrix A = scaled_to_radius(random_matrix(rng, 8, p), 0.9, p);
    auto dr = eigenvalues(A, p);
    auto io = power_interpolant(dr, BigInt(12), tol2(64), p);
    SquareMatrix got = poly_at_matrix(std::get<PowerPolynomial>(io), A);
    SquareMatrix ref = matrix_power_squaring(A, BigInt(12));
    CHECK(max_norm_diff(got, ref) <= tol2(-40));
}

TEST_CASE("matrix_power examples and oracle equivalence") {
    int p = 128;
    BigFloat B = tol2(64);

    // identity to an astronomically large power
    SquareMatrix I4 = SquareMatrix::identity(4, p);
    auto r1 = std::get<SquareMatrix>(matrix_power(I4, BigInt(1) << 200, p, B));
    CHECK(max_norm_diff(r1, I4) <= tol2(-p + 8));

    // diag(1/2, 1/3)^4 = diag(1/16, 1/81)
    SquareMatrix D(2, p);
    D.at(0, 0) = BigFloat::from_double(0.5);
    D.at(1, 1) = BigFloat::div(BigFloat(1), BigFloat(3), 200);
    auto r2 = std::get<SquareMatrix>(matrix_power(D, BigInt(4), p, B));
    CHECK((r2.at(0, 0) - BigFloat::from_double(1.0 / 16)).abs() <= tol2(-p + 8));
    CHECK((r2.at(1, 1) - BigFloat::div(BigFloat(1), BigFloat(81), 300)).abs() <= tol2(-90));

    // oracle equivalence on random 8x8 with spectral radius 0.9
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 2; rep++) {
        SquareMatrix M = scaled_to_radius(random_matrix(rng, 8, p), 0.9, p);
        for (long E : {3L, 1000L}) {
            auto got = std::get<SquareMatrix>(matrix_power(M, BigInt(E), p, B));
            SquareMatrix ref = matrix_power_squaring(M, BigInt(E));
            CHECK(max_norm_diff(got, ref) <= tol2(-p + 8));
        }
    }
}

TEST_CASE("matrix_power semigroup") {
    int p = 96;
    BigFloat B = tol2(64);
    std::mt19937_64 rng(23);
    SquareMatrix M = scaled_to_radius(random_matrix(rng, 6, p), 0.85, p);
    auto pa = std::get<SquareMatrix>(matrix_power(M, BigInt(7), p, B));
    auto pb = std::get<SquareMatrix>(matrix_power(M, BigInt(9), p, B));
    auto pab = std::get<SquareMatrix>(matrix_power(M, BigInt(16), p, B));
    auto A = engine::to_fx(pa, 200), Bm = engine::to_fx(pb, 200);
    SquareMatrix prod = engine::from_fx(engine::matmul(A, Bm), p);
    CHECK(max_norm_diff(prod, pab) <= tol2(-p + 10));
}

TEST_CASE("matrix_power_squaring basics") {
    std::mt19937_64 rng(29);
    SquareMatrix M = random_matrix(rng, 5, 96);
    CHECK(max_norm_diff(matrix_power_squaring(M, BigInt(0)), SquareMatrix::identity(5, 96))
              .is_zero());
    CHECK(max_norm_diff(matrix_power_squaring(M, BigInt(1)), M) <= tol2(-90));

    // overflow when the intermediate norm blows past bound^2
    SquareMatrix big(2, 64);
    big.at(0, 0) = BigFloat(3);
    big.at(1, 1) = BigFloat(3);
    CHECK_THROWS_AS(matrix_power_squaring(big, BigInt(1) << 20, tol2(32)), MagnitudeError);
}

TEST_CASE("perturbation contract under the squaring oracle") {
    // constructed repeated-eigenvalue matrices, E up to 2^20
    for (int rep = 0; rep < 2; rep++) {
        SquareMatrix M(4, 128);
        double lam = 0.5 + 0.1 * static_cast<double>(rep);
        for (int i = 0; i < 4; i++) M.at(i, i) = BigFloat::from_double(lam);
        M.at(0, 1) = BigFloat::from_double(0.25);  // Jordan-ish block
        BigFloat delta = tol2(-20);
        for (long E : {16L, 1L << 20}) {
            SquareMatrix M0 = perturb_to_distinct(M, BigInt(E), delta);
            CHECK(max_norm_diff(matrix_power_squaring(M0, BigInt(E)),
                                matrix_power_squaring(M, BigInt(E))) <= delta);
        }
    }
}

TEST_CASE("integer-matrix eigenvalue gaps respect the root-separation form") {
    // entries bounded by 2^b: distinct-root gaps stay above 2n (2^b)^(-n^2)
    std::mt19937_64 rng(37);
    int n = 4, b = 3;
    double bound = 2.0 * n * std::pow(std::exp2(b), -static_cast<double>(n) * n);
    for (int rep = 0; rep < 4; rep++) {
        SquareMatrix M(n, 96);
        std::uniform_int_distribution<long> U(-(1L << b), 1L << b);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) M.at(i, j) = BigFloat(U(rng));
        auto s = eigenvalues(M, 96);
        for (size_t i = 0; i < s.eigenvalues.size(); i++)
            for (size_t j = i + 1; j < s.eigenvalues.size(); j++) {
                double dre = s.eigenvalues[i].re.to_double() - s.eigenvalues[j].re.to_double();
                double dim = s.eigenvalues[i].im.to_double() - s.eigenvalues[j].im.to_double();
                double d = std::hypot(dre, dim);
                if (d > 1e-12)  // distinct roots only
                    CHECK(d >= bound);
            }
    }
}
