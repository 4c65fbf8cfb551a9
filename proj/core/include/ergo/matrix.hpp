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

#ifndef ERGO_MATRIX_HPP
#define ERGO_MATRIX_HPP

#include <optional>
#include <variant>
#include <vector>

#include "ergo/fixed.hpp"
#include "ergo/functions.hpp"
#include "ergo/precision.hpp"

namespace ergo {

// Dense real square matrix in max-norm conventions (the norm is the largest
// absolute entry). All entries share one precision budget.
class SquareMatrix {
public:
    SquareMatrix() : n_(0), bits_(0) {}
    SquareMatrix(int n, int precision_bits)
        : n_(n), bits_(precision_bits), e_(static_cast<size_t>(n) * n) {}
    static SquareMatrix identity(int n, int precision_bits);

    int n() const { return n_; }
    int precision_bits() const { return bits_; }
    const BigFloat& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
    BigFloat& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }

    BigFloat max_norm() const;  // exact
    SquareMatrix round_to(int64_t scale) const;

private:
    int n_, bits_;
    std::vector<BigFloat> e_;
};

struct Spectrum {
    std::vector<PrecisionComplex> eigenvalues;
    // Certified lower bound on the minimum pairwise distance; zero when a
    // cluster stays unresolved at the working precision (see
    // power_interpolant for how zero-power nodes make that harmless).
    PrecisionReal separation;
    PrecisionReal residual;  // max |charpoly(lambda_i)| achieved
};

struct PowerPolynomial {
    std::vector<PrecisionComplex> coeffs;  // ascending powers, degree <= n-1
    BigInt exponent;
    BigFloat coeff_bound;     // largest coefficient magnitude
    BigFloat node_tolerance;  // certified max |p(node) - node^E| over the nodes
};

// --- matpow operations ------------------------------------------------------

// Monic characteristic polynomial (ascending, length n+1), the Faddeev-
// LeVerrier recursion; exact on integer inputs.
std::vector<PrecisionReal> char_poly(const SquareMatrix& M, int p = 0);

struct EigenOptions {
    int max_ladder = 6;       // precision doublings before giving up
    bool require_separated = false;
    // floor for the working scale; the perturbation path raises it so the
    // diagonal-ray splitting stays resolvable
    int64_t min_scale = 0;
};
Spectrum eigenvalues(const SquareMatrix& M, int p, const EigenOptions& opt = {});

// Discriminant of the characteristic polynomial of M(t) = M(1-t) + D t,
// D = diag(1..n), evaluated by a resultant determinant of the coefficients.
PrecisionReal discriminant_curve_eval(const SquareMatrix& M, const BigFloat& t, int p);

// Move M to a nearby matrix with certified-distinct eigenvalues while keeping
// ||M^E - M0^E|| <= delta. Returns M unchanged when its spectrum already
// certifies as distinct.
SquareMatrix perturb_to_distinct(const SquareMatrix& M, const BigInt& E, const BigFloat& delta);

using InterpolantOutcome = std::variant<PowerPolynomial, OverflowReport>;
// Lagrange interpolant of x -> x^E on the spectrum. Nodes whose powers
// collapse to zero contribute no Lagrange basis term, so only live-node
// separations enter denominators.
InterpolantOutcome power_interpolant(const Spectrum& s, const BigInt& E, const BigFloat& bound,
                                     int p);

// Horner evaluation of p at M; imaginary residue below 2^-(p/4) is dropped
// (reported through imag_residue when given).
SquareMatrix poly_at_matrix(const PowerPolynomial& p, const SquareMatrix& M,
                            BigFloat* imag_residue = nullptr);
// Same polynomial applied to a single vector (n matvec passes, no n^4 work).
std::vector<BigFloat> poly_at_matrix_vector(const PowerPolynomial& p, const SquareMatrix& M,
                                            const std::vector<BigFloat>& v,
                                            BigFloat* imag_residue = nullptr);

using MatrixPowerOutcome = std::variant<SquareMatrix, OverflowReport>;
// Spectral pipeline: perturb -> eigenvalues -> interpolant -> evaluate.
MatrixPowerOutcome matrix_power(const SquareMatrix& M, const BigInt& E, int p, const BigFloat& bound);

// Binary-exponentiation reference path (the validation oracle).
SquareMatrix matrix_power_squaring(const SquareMatrix& M, const BigInt& E,
                                   const BigFloat& bound = BigFloat::ulp(-64));

// --- fixed-scale engine (shared with the transfer solver) -------------------

namespace engine {

struct FxMat {
    int n = 0;
    int64_t q = 0;
    std::vector<mpz_class> a;  // row-major
    mpz_class& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

struct FxCMat {
    int n = 0;
    int64_t q = 0;
    std::vector<fx::Complex> a;
    fx::Complex& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const fx::Complex& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

FxMat to_fx(const SquareMatrix& M, int64_t q);
SquareMatrix from_fx(const FxMat& m, int bits);
FxMat matmul(const FxMat& A, const FxMat& B);
FxCMat cmatmul(const FxCMat& A, const FxCMat& B);
std::vector<mpz_class> matvec(const FxMat& A, const std::vector<mpz_class>& v);
int64_t max_norm_mag2(const FxMat& m);  // floor(log2 ||M||) or INT64_MIN

// Monic charpoly at scale q (ascending, length n+1).
std::vector<mpz_class> charpoly_fx(const FxMat& M);

struct RootResult {
    std::vector<fx::Complex> roots;
    mpz_class max_residual;    // scale q
    mpz_class max_correction;  // final sweep's largest Newton correction
    bool converged = false;
    int sweeps = 0;
};
// Aberth-Ehrlich simultaneous iteration on a monic polynomial at scale q.
// A root freezes when its residual is below 2^residual_mag2 and its update
// has shrunk below 2^corr_freeze_mag2 (both absolute).
RootResult aberth(const std::vector<mpz_class>& monic, int64_t q, int64_t residual_mag2,
                  int64_t corr_freeze_mag2, int max_sweeps);

// Determinant by Gaussian elimination with partial pivoting at scale q.
mpz_class determinant_fx(FxMat m);

}  // namespace engine

}  // namespace ergo

#endif
