/*
   Copyright 2026 The latstretch Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Model domain D = { x : x_1^w_1 + ... + x_d^w_d <= 1 } with even exponents,
// volume-preserving coordinate stretches, and certified lattice membership.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace latstretch {

class Exponents {
public:
    /// Throws InvalidArgument unless d >= 2 and every entry is even and >= 2.
    explicit Exponents(std::vector<int> omegas);

    std::size_t dim() const noexcept { return omegas_.size(); }
    int operator[](std::size_t j) const { return omegas_[j]; }
    std::span<const int> values() const noexcept { return omegas_; }
    int max() const noexcept { return max_; }

    /// The theorems about optimal stretching are stated for d >= 3 only.
    bool in_theorem_scope() const noexcept { return dim() >= 3; }

    friend bool operator==(const Exponents&, const Exponents&) = default;

private:
    std::vector<int> omegas_;
    int max_ = 0;
};

/// Throws InvalidArgument naming the first entry that is not an even
/// integer >= 2. Shared by Exponents and the measure formulas, which accept
/// exponent lists of any length >= 1.
void validate_exponent_list(std::span<const int> omegas);

/// Positive diagonal stretch with unit determinant.
class StretchFactors {
public:
    /// Accepts factors whose product is within `tolerance` of 1 and rescales
    /// every entry by (prod a_j)^(-1/d) so the product is 1 to rounding.
    static StretchFactors from_values(std::vector<double> a, double tolerance = 1e-9);

    /// a_j = exp(u_j) for j < d and a_d = exp(-(u_1 + ... + u_{d-1})).
    static StretchFactors from_log(std::span<const double> free_logs);

    static StretchFactors identity(std::size_t d);

    /// Takes the values verbatim; throws InvalidArgument unless they are
    /// positive with |prod a_j - 1| <= 1e-12. Used to restore serialized factors.
    static StretchFactors from_normalized(std::vector<double> a);

    std::size_t dim() const noexcept { return a_.size(); }
    double operator[](std::size_t j) const { return a_[j]; }
    std::span<const double> values() const noexcept { return a_; }
    double a_star() const noexcept { return a_star_; }

    /// max_j |a_j / a_j(input) - 1| applied by from_values; 0 otherwise.
    double renormalization() const noexcept { return renormalization_; }

    friend bool operator==(const StretchFactors& x, const StretchFactors& y)
    {
        return x.a_ == y.a_;
    }

private:
    explicit StretchFactors(std::vector<double> a);

    std::vector<double> a_;
    double a_star_ = 1.0;
    double renormalization_ = 0.0;
};

/// max_j 1/a_j.
double a_star(const StretchFactors& a);

enum class Membership { inside, outside, boundary_uncertain };

enum class Precision {
    /// Floating-point evaluation with a rigorous error bound; may report
    /// boundary_uncertain.
    certified_float,
    /// certified_float, escalating to exact rational arithmetic when the
    /// bound straddles 1. Never reports boundary_uncertain.
    exact,
};

/// Classifies k against tAD: inside iff sum_j (k_j/(a_j t))^w_j <= 1.
/// The domain is closed, so boundary points are inside.
Membership membership(const Exponents& omegas, const StretchFactors& a, double t,
                      std::span<const std::int64_t> k, Precision precision = Precision::exact);

/// b_j = |D_j| / (prod_k |D_k|)^(1/d), renormalized to unit product.
StretchFactors balanced_factors(const Exponents& omegas);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// min((d-1)/(2 w_max), (d-1)/(2d+2)) in lowest terms. Evaluated for any
/// d >= 2; only meaningful for d >= 3 (see Exponents::in_theorem_scope).
Rational gamma_rate(const Exponents& omegas);

} // namespace latstretch
