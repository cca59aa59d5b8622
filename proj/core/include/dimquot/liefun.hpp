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

// Homogeneous components of free Lie rings on abelian groups, in the Lyndon
// basis with standard bracketing, and their maps into tensor powers.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dimquot/abelian.hpp"

namespace dimquot {

    /// Largest degree supported for Lie components.
    inline constexpr unsigned kMaxLieDegree = 4;

    /// A word over the letters 0 .. r-1.
    using Word = std::vector<unsigned>;

    /// Lyndon words of length exactly n over r letters, in lexicographic order.
    std::vector<Word> lyndon_words(unsigned r, unsigned n);
    /// (1/n) sum_{d | n} mu(d) r^(n/d).
    Integer witt_number(unsigned r, unsigned n);
    /// w = u v with v the longest proper Lyndon suffix; requires |w| >= 2.
    std::pair<Word, Word> standard_factorization(const Word& w);

    /// Homogeneous degree-n elements of the free associative ring on r letters
    /// are dense vectors of length r^n, indexed by words read as base-r numbers.
    IntVector assoc_product(const IntVector& a, const IntVector& b, unsigned r);
    /// a b - b a.
    IntVector lie_bracket(const IntVector& a, const IntVector& b, unsigned r);

    /// The Lyndon basis of the degree-n part of the free Lie ring on r letters.
    class LyndonBasis {
    public:
        LyndonBasis(unsigned r, unsigned n);

        unsigned rank() const { return r_; }
        unsigned degree() const { return n_; }
        const std::vector<Word>& words() const { return words_; }
        std::size_t size() const { return words_.size(); }
        /// The standard bracketing of word i expanded in the free associative ring.
        IntVector expansion(std::size_t i) const;
        /// E.g. "[e1,[e1,e2]]" with letter i printed as labels[i].
        std::string bracketing(std::size_t i, const std::vector<std::string>& labels) const;
        /// Coordinates of a homogeneous Lie polynomial; nullopt if p is not one.
        std::optional<IntVector> coordinates(const IntVector& p) const;

    private:
        unsigned r_;
        unsigned n_;
        std::vector<Word> words_;
        std::vector<std::size_t> leading_;  // flat index of each word
        std::vector<std::vector<std::pair<std::size_t, Integer>>> sparse_;
    };

    /// L_n(A) with its map l_n into the n-th tensor power.
    struct LieComponent {
        FPAbGroup base;
        LyndonBasis basis;
        FPAbGroup group;
        AbHom l;

        /// Class in L_n(A) of a homogeneous Lie polynomial in the generators of A.
        IntVector from_polynomial(const IntVector& p) const;
    };

    /// Requires 1 <= n <= kMaxLieDegree.
    LieComponent lie_component(const FPAbGroup& a, unsigned n);
    /// L_n(f).
    AbHom lie_map(const LieComponent& source, const LieComponent& target, const AbHom& f);
    /// S_n(A) = Coker(l_n) with the projection from the n-th tensor power.
    TensorQuotient s_n(const FPAbGroup& a, unsigned n);

    /// Exactness of 0 -> L_3(A) + A (x) L_2(A) -> A(x)A(x)A -> SP^3(A) -> 0,
    /// where the first map is (l_3, 1 (x) l_2).
    struct PbwReport {
        bool injective = false;
        bool complex = false;
        bool exact_middle = false;
        bool surjective = false;
        bool exact() const { return injective && complex && exact_middle && surjective; }
    };
    PbwReport pbw_check(const FPAbGroup& a);

}  // namespace dimquot
