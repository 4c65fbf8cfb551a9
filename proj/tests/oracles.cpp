#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

using ergo::mpz_div_round;
using ergo::rshift_round;

Iv iv_add(const Iv& a, const Iv& b) { return {a.v + b.v, a.e + b.e}; }
Iv iv_sub(const Iv& a, const Iv& b) { return {a.v - b.v, a.e + b.e}; }

Iv iv_mul(const Iv& a, const Iv& b, int64_t q) {
    mpz_class v = rshift_round(a.v * b.v, q);
    // |d(ab)| <= |a| eb + |b| ea + ea eb, plus the rounding half-ulp
    mpz_class ea = rshift_round(::abs(a.v) * b.e + ::abs(b.v) * a.e + a.e * b.e, q) + 2;
    return {v, ea};
}

Iv iv_div_int(const Iv& a, long k) {
    return {mpz_div_round(a.v, mpz_class(k), 0), a.e / k + 1};
}

Iv iv_exact(const BigFloat& x, int64_t q) {
    Iv r;
    int64_t k = -q - x.exponent();
    if (x.is_zero()) return {mpz_class(0), mpz_class(0)};
    if (k <= 0) return {x.mantissa() << (-k), mpz_class(0)};
    return {rshift_round(x.mantissa(), k), mpz_class(1)};
}

Iv log_series(const BigFloat& x, int64_t q) {
    if (x.sign() <= 0) throw std::runtime_error("log_series: x <= 0");
    // u = (x-1)/(x+1) rounded at scale q
    BigFloat num = x - BigFloat(1), den = x + BigFloat(1);
    Iv u = iv_exact(BigFloat::div(num, den, q), q);
    u.e += 1;
    Iv u2 = iv_mul(u, u, q);
    Iv up = u, sum = u;
    for (long k = 3;; k += 2) {
        up = iv_mul(up, u2, q);
        Iv term = iv_div_int(up, k);
        sum = iv_add(sum, term);
        if (::abs(up.v) <= up.e + k) {
            sum.e += (::abs(up.v) + up.e) / k + 2;  // geometric-ish tail slack
            break;
        }
        if (k > 64 * (q + 64)) throw std::runtime_error("log_series: no convergence");
    }
    sum.v *= 2;
    sum.e *= 2;
    return sum;
}

Iv exp_series(const BigFloat& x, int64_t q) {
    Iv xw = iv_exact(x, q);
    Iv term{mpz_class(1) << q, mpz_class(0)};
    Iv sum = term;
    double xd = std::fabs(x.to_double());
    for (long k = 1;; k++) {
        term = iv_mul(term, xw, q);
        term = iv_div_int(term, k);
        sum = iv_add(sum, term);
        if (::abs(term.v) <= term.e + 1 && k > xd + 2) {
            sum.e += ::abs(term.v) + term.e + 2;
            break;
        }
        if (k > 1000000) throw std::runtime_error("exp_series: no convergence");
    }
    return sum;
}

Iv atan_series(const Iv& t, int64_t q) {
    Iv t2 = iv_mul(t, t, q);
    Iv tp = t, sum = t;
    for (long k = 1;; k++) {
        tp = iv_mul(tp, t2, q);
        Iv term = iv_div_int(tp, 2 * k + 1);
        if (k % 2 == 1)
            sum = iv_sub(sum, term);
        else
            sum = iv_add(sum, term);
        if (::abs(tp.v) <= tp.e + 2 * k + 1) {
            sum.e += (::abs(tp.v) + tp.e) / (2 * k + 1) + 2;
            break;
        }
        if (k > 64 * (q + 64)) throw std::runtime_error("atan_series: no convergence");
    }
    return sum;
}

Iv machin_pi(int64_t q) {
    Iv t5{mpz_div_round(mpz_class(1), mpz_class(5), q), mpz_class(1)};
    Iv t239{mpz_div_round(mpz_class(1), mpz_class(239), q), mpz_class(1)};
    Iv a5 = atan_series(t5, q);
    Iv a239 = atan_series(t239, q);
    Iv pi = iv_sub(Iv{16 * a5.v, 16 * a5.e}, Iv{4 * a239.v, 4 * a239.e});
    return pi;
}

BigFloat pow_binary(const BigFloat& x, const mpz_class& E, int64_t q) {
    BigFloat acc(1);
    BigFloat base = x.round_to(q);
    mpz_class e = E;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base).round_to(q);
        e >>= 1;
        if (e > 0) base = (base * base).round_to(q);
    }
    return acc;
}

C2 cpow_binary(const C2& z, const mpz_class& E, int64_t q) {
    C2 acc{BigFloat(1), BigFloat()};
    C2 base{z.re.round_to(q), z.im.round_to(q)};
    mpz_class e = E;
    auto cmul = [q](const C2& a, const C2& b) {
        return C2{(a.re * b.re - a.im * b.im).round_to(q), (a.re * b.im + a.im * b.re).round_to(q)};
    };
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = cmul(acc, base);
        e >>= 1;
        if (e > 0) base = cmul(base, base);
    }
    return acc;
}

namespace {
// Kronrod 15-point nodes/weights on [-1,1] and the embedded Gauss-7 weights.
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct GkResult {
    double value, err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3], resk = fc * kWgk[7];
    for (int j = 0; j < 7; j++) {
        double x = h * kXgk[j];
        double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::fabs((resk - resg) * h)};
}

double gk_adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    GkResult r = gk15(f, a, b);
    if (r.err < tol || depth <= 0) return r.value;
    double c = 0.5 * (a + b);
    return gk_adapt(f, a, c, tol / 2, depth - 1) + gk_adapt(f, c, b, tol / 2, depth - 1);
}
}  // namespace

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth) {
    return gk_adapt(f, a, b, tol, max_depth);
}

std::vector<mpz_class> charpoly_int(const std::vector<std::vector<long>>& m) {
    size_t n = m.size();
    std::vector<std::vector<mpz_class>> A(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; i++)
        for (size_t j = 0; j < n; j++) A[i][j] = m[i][j];
    std::vector<std::vector<mpz_class>> Mk = A;
    std::vector<mpz_class> c(n + 1);
    c[n] = 1;
    for (size_t k = 1; k <= n; k++) {
        if (k > 1) {
            // Mk = A * (Mk + c_{n-k+1} I)
            std::vector<std::vector<mpz_class>> T = Mk;
            for (size_t i = 0; i < n; i++) T[i][i] += c[n - k + 1];
            std::vector<std::vector<mpz_class>> R(n, std::vector<mpz_class>(n));
            for (size_t i = 0; i < n; i++)
                for (size_t j = 0; j < n; j++) {
                    mpz_class s = 0;
                    for (size_t l = 0; l < n; l++) s += A[i][l] * T[l][j];
                    R[i][j] = s;
                }
            Mk = R;
        }
        mpz_class tr = 0;
        for (size_t i = 0; i < n; i++) tr += Mk[i][i];
        mpz_class ck;
        mpz_divexact_ui(ck.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -ck;
    }
    return c;
}

}  // namespace oracle
