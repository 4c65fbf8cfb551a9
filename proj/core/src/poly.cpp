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

#include "ergo/poly.hpp"

#include <atomic>

#include "ergo/errors.hpp"

namespace ergo::poly {

namespace {
std::atomic<size_t> g_degree_cap{16384};

void check_degree(size_t d, const char* what) {
    if (d > g_degree_cap.load())
        throw ResourceError("poly-ops", std::string(what) + ": degree cap exceeded (" +
                                            std::to_string(d) + " > " +
                                            std::to_string(g_degree_cap.load()) + ")");
}

void trim(Poly& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}
}  // namespace

size_t degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(size_t cap) { g_degree_cap.store(cap); }

Poly mul(const Poly& a, const Poly& b, int64_t scale) {
    if (a.empty() || b.empty()) return {BigFloat()};
    check_degree(a.size() + b.size() - 2, "product");
    Poly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); j++) {
            if (b[j].is_zero()) continue;
            c[i + j] = c[i + j] + a[i] * b[j];
        }
    }
    for (auto& v : c) v = v.round_to(scale);
    trim(c);
    return c;
}

Poly power(const Poly& a, long k, int64_t scale) {
    if (k < 0 || k > (1L << 16)) throw DomainError("poly-ops", "power exponent out of range");
    Poly acc{BigFloat(1)};
    Poly base = a;
    long e = k;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, scale);
        e >>= 1;
        if (e > 0) base = mul(base, base, scale);
    }
    return acc;
}

Poly compose(const Poly& f, const Poly& g, int64_t scale) {
    // Horner on polynomials
    Poly acc{BigFloat()};
    for (size_t i = f.size(); i-- > 0;) {
        acc = mul(acc, g, scale);
        if (acc.empty()) acc = {BigFloat()};
        acc[0] = (acc[0] + f[i]).round_to(scale);
    }
    return acc;
}

Poly antiderivative(const Poly& a, int64_t scale) {
    check_degree(a.size(), "antiderivative");
    Poly r(a.size() + 1);
    r[0] = BigFloat();
    for (size_t i = 0; i < a.size(); i++)
        r[i + 1] = BigFloat::div(a[i], BigFloat(static_cast<long>(i + 1)), scale);
    return r;
}

BigFloat eval(const Poly& a, const BigFloat& x, int64_t scale) {
    BigFloat acc;
    for (size_t i = a.size(); i-- > 0;) acc = (acc * x + a[i]).round_to(scale);
    return acc;
}

Poly recenter(const Poly& f, const BigFloat& c, int64_t scale) {
    // f(c + u) = sum_i f_i (c+u)^i, expanded by iterated multiplication
    Poly acc{BigFloat()};
    Poly shift{c, BigFloat(1)};
    for (size_t i = f.size(); i-- > 0;) {
        acc = mul(acc, shift, scale);
        if (acc.empty()) acc = {BigFloat()};
        acc[0] = (acc[0] + f[i]).round_to(scale);
    }
    return acc;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); i++) {
        BigFloat v;
        if (i < a.size()) v = v + a[i];
        if (i < b.size()) v = v + b[i];
        r[i] = v;
    }
    trim(r);
    return r;
}

Poly scale_arg(const Poly& f, const BigFloat& r, int64_t scale) {
    Poly out = f;
    BigFloat p(1);
    for (size_t i = 1; i < out.size(); i++) {
        p = (p * r).round_to(scale + 64);
        out[i] = (out[i] * p).round_to(scale);
    }
    return out;
}

}  // namespace ergo::poly
