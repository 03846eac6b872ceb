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

// Certified evaluation of sum_j (k_j / (a_j t))^w_j against 1.
//
// Error model: the per-axis scale r = a*t and its reciprocal each carry one
// rounding, x = k * (1/r) one more, and x^w by repeated squaring at most
// 2*log2(w) multiplications. The computed power is therefore within 4*w*u
// relative of the exact one (u = 2^-53), and summing n nonnegative terms
// adds (n-1)*u. kRelSlack doubles that bound.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "latstretch/domain.hpp"

namespace latstretch::detail {

inline double ipow(double x, int n) noexcept
{
    double result = 1.0;
    while (n > 0) {
        if (n & 1) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

/// Floating-point root (1 - s)^(1/w), specialised for powers of two.
inline double root_of_remainder(double s, int omega) noexcept
{
    double rest = 1.0 - s;
    if (rest <= 0.0) return 0.0;
    switch (omega) {
    case 2: return std::sqrt(rest);
    case 4: return std::sqrt(std::sqrt(rest));
    case 8: return std::sqrt(std::sqrt(std::sqrt(rest)));
    default: return std::pow(rest, 1.0 / omega);
    }
}

class SumCertifier {
public:
    SumCertifier(int omega_max, std::size_t terms) noexcept
        : rel_(2.0 * (4.0 * omega_max + static_cast<double>(terms) + 2.0)
               * std::numeric_limits<double>::epsilon() * 0.5)
    {
    }

    /// Classifies a computed nonnegative sum against 1.
    Membership classify(double s) const noexcept
    {
        double err = s * rel_ + kAbsSlack;
        if (s + err < 1.0) return Membership::inside;
        if (s - err > 1.0) return Membership::outside;
        return Membership::boundary_uncertain;
    }

    /// True when the exact sum is certainly > 1.
    bool certainly_outside(double s) const noexcept { return s - (s * rel_ + kAbsSlack) > 1.0; }

private:
    static constexpr double kAbsSlack = 1e-300;
    double rel_;
};

/// Exact rational test of sum_j (k_j / (a_j t))^w_j <= 1, treating the
/// doubles a_j and t as the exact binary rationals they represent.
bool exact_sum_le_one(std::span<const int> omegas, std::span<const double> a, double t,
                      std::span<const std::int64_t> k);

} // namespace latstretch::detail
