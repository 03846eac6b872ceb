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

#include "certified.hpp"

#include <gmpxx.h>

namespace latstretch::detail {

bool exact_sum_le_one(std::span<const int> omegas, std::span<const double> a, double t,
                      std::span<const std::int64_t> k)
{
    const mpq_class scale_t(t);
    mpq_class sum(0);
    mpz_class num;
    mpz_class den;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        if (k[j] == 0) continue;
        mpq_class r = mpq_class(a[j]) * scale_t;
        r.canonicalize();
        const auto w = static_cast<unsigned long>(omegas[j]);
        const std::int64_t abs_k = k[j] < 0 ? -k[j] : k[j];
        mpz_class kz;
        mpz_import(kz.get_mpz_t(), 1, 1, sizeof(abs_k), 0, 0, &abs_k);
        // (k / (p/q))^w = (k q)^w / p^w
        mpz_class top = kz * r.get_den();
        mpz_pow_ui(num.get_mpz_t(), top.get_mpz_t(), w);
        mpz_pow_ui(den.get_mpz_t(), r.get_num().get_mpz_t(), w);
        mpq_class term(num, den);
        term.canonicalize();
        sum += term;
        if (sum > 1) return false;
    }
    return sum <= 1;
}

} // namespace latstretch::detail
