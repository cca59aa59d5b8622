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

// Free groups, Magnus expansions into the truncated free associative ring,
// and the ideal filtrations f^k and r(k) as lattices in its coefficient space.

#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "dimquot/linalg.hpp"
#include "dimquot/liefun.hpp"

namespace dimquot {

    inline constexpr unsigned kMaxMagnusDegree = 5;
    inline constexpr unsigned kMaxFiltrationDegree = 4;
    inline constexpr unsigned kMaxFreeRank = 4;

    /// A word in the free group on x_0 .. x_{r-1}. Letters are (index, +1 or -1);
    /// words are kept freely reduced.
    class FreeWord {
    public:
        struct Letter {
            unsigned index;
            int exponent;
            friend bool operator==(const Letter&, const Letter&) = default;
        };

        explicit FreeWord(unsigned rank = 0);
        FreeWord(unsigned rank, const std::vector<Letter>& letters);
        static FreeWord generator(unsigned rank, unsigned i);

        unsigned rank() const { return rank_; }
        const std::vector<Letter>& letters() const { return letters_; }
        std::size_t length() const { return letters_.size(); }
        bool is_identity() const { return letters_.empty(); }

        FreeWord inverse() const;
        FreeWord pow(long k) const;
        /// Exponent sum of each generator: the image in Z^r.
        std::vector<long> exponent_sums() const;
        /// Membership in F' (all exponent sums vanish).
        bool in_derived() const;
        /// E.g. "x1 x2 x1^-1", generators printed 1-based; "e" for the identity.
        std::string to_string() const;

        friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
        friend bool operator==(const FreeWord&, const FreeWord&) = default;

    private:
        void push(Letter l);

        unsigned rank_;
        std::vector<Letter> letters_;
    };

    /// a b a^-1 b^-1.
    FreeWord commutator(const FreeWord& a, const FreeWord& b);
    /// Left-normed [w_0, w_1, ..., w_k]; requires at least one word.
    FreeWord left_normed(const std::vector<FreeWord>& ws);

    /// Relator mini-language. Generators are 1-based integers, optionally
    /// written x1, x2, ...; "e" is the identity.
    ///   product := factor (('*' | space)? factor)*
    ///   factor  := primary ('^' integer)?
    ///   primary := generator | 'e' | '(' product ')' | '[' product (',' product)+ ']'
    /// Brackets are left-normed commutators. Throws ParseError.
    FreeWord parse_word(const std::string& text, unsigned rank);
    /// Several words separated by ';'. Empty entries are skipped.
    std::vector<FreeWord> parse_relators(const std::string& text, unsigned rank);

    /// Flat coordinates of the degree 1..d part: degree k starts at
    /// degree_offset(r, k) and holds r^k entries, words read as base-r numbers.
    std::size_t degree_offset(unsigned r, unsigned k);
    std::size_t flat_dimension(unsigned r, unsigned d);
    std::size_t power_of(unsigned r, unsigned k);

    /// An element of Z<X_0..X_{r-1}> modulo words of length > d, stored densely
    /// by degree.
    class TruncatedTensor {
    public:
        TruncatedTensor(unsigned rank, unsigned cap);
        static TruncatedTensor one(unsigned rank, unsigned cap);
        static TruncatedTensor letter(unsigned rank, unsigned cap, unsigned i);
        /// Constant term 0, degrees 1..cap taken from `flat`.
        static TruncatedTensor from_flat(unsigned rank, unsigned cap, const IntVector& flat);
        /// Homogeneous of degree k.
        static TruncatedTensor homogeneous(unsigned rank, unsigned cap, unsigned k, const IntVector& part);

        unsigned rank() const { return rank_; }
        unsigned cap() const { return cap_; }
        const IntVector& degree(unsigned k) const { return parts_.at(k); }
        IntVector& degree(unsigned k) { return parts_.at(k); }
        const Integer& constant() const { return parts_[0][0]; }
        Integer coefficient(const Word& w) const;
        /// Degrees 1..cap concatenated.
        IntVector flat() const;
        /// Smallest degree with a non-zero part; cap + 1 for zero.
        unsigned valuation() const;
        bool is_zero() const;
        TruncatedTensor truncate(unsigned d) const;
        /// this * X_i.
        TruncatedTensor times_letter(unsigned i) const;
        /// X_i * this.
        TruncatedTensor letter_times(unsigned i) const;
        std::string to_string() const;

        friend TruncatedTensor operator+(const TruncatedTensor& a, const TruncatedTensor& b);
        friend TruncatedTensor operator-(const TruncatedTensor& a, const TruncatedTensor& b);
        friend TruncatedTensor operator*(const TruncatedTensor& a, const TruncatedTensor& b);
        friend TruncatedTensor operator*(const Integer& s, const TruncatedTensor& a);
        friend bool operator==(const TruncatedTensor&, const TruncatedTensor&) = default;

    private:
        void check_shape(const TruncatedTensor& other) const;

        unsigned rank_;
        unsigned cap_;
        std::vector<IntVector> parts_;
    };

    /// x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ...; requires d <= kMaxMagnusDegree.
    TruncatedTensor magnus_expand(const FreeWord& w, unsigned d);
    /// Degree-k part of a left-normed commutator of the exponent-sum vectors of ws.
    IntVector lie_leading_term(const std::vector<FreeWord>& ws);

    /// Lattices inside the flat degree-(1..d) coefficient space.
    struct FiltrationLattices {
        unsigned rank = 0;
        unsigned cap = 0;
        /// f[k] for k = 0..d+1; f[0] = f[1] is everything.
        std::vector<Lattice> f;
        /// r[k] for k = 0..d-1.
        std::vector<Lattice> r;
    };

    /// The two-sided ideal generated by expand(rho) - 1, truncated at d.
    Lattice relator_ideal(const std::vector<FreeWord>& relators, unsigned r, unsigned d);
    /// f L + L f, for a two-sided ideal L.
    Lattice fox_step(const Lattice& l, unsigned r, unsigned d);
    /// Requires d <= kMaxFiltrationDegree. Chain inclusions are asserted.
    FiltrationLattices filtration_lattices(const std::vector<FreeWord>& relators, unsigned r, unsigned d);

    /// Containment of sampled elements of R(n-1) gamma_{n+1}(F) in r(n-1) + f^{n+1}.
    struct SjogrenReport {
        unsigned n = 0;
        std::size_t samples = 0;
        std::size_t passed = 0;
        std::string first_failure;
        bool ok() const { return passed == samples; }
    };
    /// Requires 1 <= n <= 3. The truncation is modulo f^{n+1}.
    SjogrenReport sjogren_inclusion_check(const std::vector<FreeWord>& relators, unsigned r, unsigned n,
                                          std::size_t samples, std::mt19937_64& rng);
    /// An element of R(n-1) gamma_{n+1}(F) built from random commutators.
    FreeWord sample_sjogren_element(const std::vector<FreeWord>& relators, unsigned r, unsigned n,
                                    std::mt19937_64& rng);

    /// Degree-3 part of (expand([x_i, x_j]) - 1) X_k.
    IntVector idlemma_generator(unsigned r, unsigned i, unsigned j, unsigned k);
    /// The lattice spanned by all idlemma generators in Z^(r^3).
    Lattice idlemma_lattice(unsigned r);
    /// Whether u mod f^4 lies in c L + f^4. u must be supported in degree 3.
    bool idlemma_check(const TruncatedTensor& u, const Integer& c);

    /// Both sides of the identification of [R, F] gamma_4(F) for R inside F',
    /// as lattices in L_3(Z^r) with the Lyndon basis.
    struct MsqReport {
        Lattice lhs;
        Lattice rhs;
        bool lhs_in_rhs = false;
        bool rhs_in_lhs = false;
        bool equal() const { return lhs_in_rhs && rhs_in_lhs; }
    };
    /// Requires every relator in F' and r <= 3.
    MsqReport msq_equality(const std::vector<FreeWord>& relators, unsigned r);
    /// The lattice (R-1)f + f(R-1) + r(2) mod f^4 in the flat degree-(1..3) space.
    Lattice msq_ideal(const std::vector<FreeWord>& relators, unsigned r);
    /// Random sanity checks of the finite generating sets used by msq_equality:
    /// (expand(w)-1) u and u (expand(w)-1) lie in msq_ideal for w in R, u in f,
    /// and [w, g] lands in the right-hand side. Returns the number of failures.
    std::size_t msq_generator_sanity(const std::vector<FreeWord>& relators, unsigned r, std::size_t samples,
                                     std::mt19937_64& rng);

    /// Uniform random freely reduced word of the given length.
    FreeWord random_word(unsigned r, std::size_t length, std::mt19937_64& rng);
    /// 1 to 3 relators, each a product of powers of commutators of short words.
    std::vector<FreeWord> random_commutator_relators(unsigned r, std::mt19937_64& rng);

}  // namespace dimquot
