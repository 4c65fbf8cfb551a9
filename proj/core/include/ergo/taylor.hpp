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

#ifndef ERGO_TAYLOR_HPP
#define ERGO_TAYLOR_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ergo/poly.hpp"
#include "ergo/precision.hpp"

namespace ergo {

struct TaylorConfig {
    int degree_cap = 64;              // Taylor degree N cap for pieces
    int64_t max_eval_bits = 1 << 20;  // budget for stencil evaluations
};
TaylorConfig& taylor_config();

struct SigmoidTerm {
    BigFloat weight;
    BigFloat shift;
    long steepness;  // positive integer C
};

// Map f: [0,1] -> [0,1] together with the bound eta such that
// |f^(k)| <= k! eta^k everywhere; eta controls partition diameters and
// coefficient growth downstream.
class AnalyticMapSpec {
public:
    struct Polynomial {
        poly::Poly coeffs;
    };
    struct SigmoidSum {
        BigFloat base;
        std::vector<SigmoidTerm> terms;
    };
    struct BlackBox {
        std::function<PrecisionReal(const PrecisionReal&, int)> eval;
        std::function<double(double)> eval_d;
    };

    static AnalyticMapSpec polynomial(poly::Poly coeffs);
    // logistic lambda x (1-x), expanded to a polynomial
    static AnalyticMapSpec logistic(const BigFloat& lambda);
    static AnalyticMapSpec sigmoid_sum(BigFloat base, std::vector<SigmoidTerm> terms);
    static AnalyticMapSpec black_box(std::function<PrecisionReal(const PrecisionReal&, int)> f,
                                     std::function<double(double)> fd, BigFloat taylor_bound);

    PrecisionReal eval(const PrecisionReal& x, int p) const;
    double eval_d(double x) const;
    const BigFloat& taylor_bound() const { return eta_; }

    bool is_polynomial() const { return std::holds_alternative<Polynomial>(data_); }
    bool is_sigmoid_sum() const { return std::holds_alternative<SigmoidSum>(data_); }
    const Polynomial* as_polynomial() const { return std::get_if<Polynomial>(&data_); }
    const SigmoidSum* as_sigmoid_sum() const { return std::get_if<SigmoidSum>(&data_); }

    // Taylor coefficients a_0..a_N about x_c, each within delta: exact
    // recentering for polynomials, the logistic ODE recurrence for sigmoid
    // sums, the finite-difference stencil for black boxes.
    std::vector<BigFloat> taylor_coefficients(const BigFloat& x_c, int N, const BigFloat& delta) const;

    // check f([0,1]) within [0,1] by sampling at 2^-12 plus the Lipschitz
    // margin eta * 2^-13; throws DomainError on violation
    void validate_range() const;

private:
    AnalyticMapSpec() = default;
    std::variant<Polynomial, SigmoidSum, BlackBox> data_;
    BigFloat eta_;
};

struct TaylorPiece {
    BigFloat center;
    BigFloat lo, hi;
    std::vector<BigFloat> coeffs;  // about center
    BigFloat tail_bound;
};

// Probability density on [0,1] as per-interval Taylor expansions.
class PiecewiseTaylorDensity {
public:
    PiecewiseTaylorDensity() = default;
    explicit PiecewiseTaylorDensity(std::vector<TaylorPiece> pieces);
    static PiecewiseTaylorDensity uniform(int cells);

    const std::vector<TaylorPiece>& pieces() const { return pieces_; }
    std::vector<TaylorPiece>& pieces() { return pieces_; }
    int degree() const;

    // pieces must tile [0,1] exactly; throws otherwise
    void validate_partition() const;
    BigFloat mass(int64_t scale = 192) const;
    void scale_by(const BigFloat& factor, int64_t scale = 192);

private:
    std::vector<TaylorPiece> pieces_;
};

// k-th Taylor coefficient of f about x_c within delta via the forward
// difference stencil at step tau = delta eta^-(k+1) k^-(k+2) 2^-k (mirrored
// backward near the right edge).
PrecisionReal finite_diff_coefficient(const AnalyticMapSpec& f, const BigFloat& x_c, int k,
                                      const BigFloat& delta);

// Degree-M truncation with the geometric tail certificate 2^-M; requires
// diam * eta < 1/2.
TaylorPiece truncate_series(const TaylorPiece& source, const BigFloat& eta, int M);

// integral over [lo,hi] of (y - x_c)^m f(y)^k dy within delta
PrecisionReal moment_integral(const AnalyticMapSpec& f, const BigFloat& lo, const BigFloat& hi,
                              const BigFloat& x_c, int m, long k, const BigFloat& delta);

// Batched moments sharing the truncated power chain: result[k][m] =
// integral of ((y-x_c)/r)^m f(y)^k over [lo,hi], r = (hi-lo)/2.
std::vector<std::vector<BigFloat>> scaled_moment_table(const AnalyticMapSpec& f, const BigFloat& lo,
                                                       const BigFloat& hi, const BigFloat& x_c,
                                                       int m_max, long k_max,
                                                       const BigFloat& delta);

PrecisionReal density_eval(const PiecewiseTaylorDensity& d, const BigFloat& x, int p);

}  // namespace ergo

#endif
