/* Copyright 2026 The dimquot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

// Small helpers shared by the unit tests: seeded randomness and brute-force
// oracles that do not go through the lattice code.

#pragma once

#include <random>
#include <set>
#include <vector>

#include "dimquot/linalg.hpp"

namespace dqtest {

    using dimquot::Integer;
    using dimquot::IntMatrix;
    using dimquot::IntVector;

    inline std::mt19937_64& rng() {
        static std::mt19937_64 g(20260101);
        return g;
    }

    inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

    inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, long lo, long hi) {
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
        return m;
    }

    /// Product of random elementary row operations; determinant +-1.
    inline IntMatrix random_unimodular(std::size_t n) {
        IntMatrix p = IntMatrix::identity(n);
        for (int step = 0; step < 12 && n > 1; ++step) {
            const std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
            std::size_t j = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 2));
            if (j >= i) ++j;
            const long s = uniform(-2, 2);
            for (std::size_t c = 0; c < n; ++c) p(i, c) += s * p(j, c);
            if (uniform(0, 3) == 0)
                for (std::size_t c = 0; c < n; ++c) std::swap(p(i, c), p(j, c));
        }
        return p;
    }

    /// Every integer combination of the rows with coefficients in [-bound, bound].
    inline std::set<std::vector<long>> combinations(const IntMatrix& m, long bound) {
        std::set<std::vector<long>> out;
        std::vector<long> coef(m.rows(), -bound);
        for (;;) {
            std::vector<long> v(m.cols(), 0);
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t c = 0; c < m.cols(); ++c) v[c] += coef[i] * m(i, c).get_si();
            out.insert(v);
            std::size_t k = 0;
            while (k < coef.size() && ++coef[k] > bound) coef[k++] = -bound;
            if (k == coef.size()) break;
        }
        return out;
    }

    inline IntVector to_int_vector(const std::vector<long>& v) {
        IntVector out;
        for (long x : v) out.emplace_back(x);
        return out;
    }

    /// Number of isomorphism types of abelian groups of order n.
    inline long partition_count(unsigned k) {
        std::vector<long> p(k + 1, 0);
        p[0] = 1;
        for (unsigned part = 1; part <= k; ++part)
            for (unsigned s = part; s <= k; ++s) p[s] += p[s - part];
        return p[k];
    }

    inline long abelian_type_count(unsigned long n) {
        long total = 1;
        for (unsigned long p = 2; n > 1; ++p) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            total *= partition_count(e);
        }
        return total;
    }

}  // namespace dqtest
