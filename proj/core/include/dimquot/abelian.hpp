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

// Finitely presented abelian groups, homomorphisms between them, and the basic
// bifunctors built from presentations: tensor products, Tor, exterior and
// symmetric powers, and the Whitehead functor Gamma.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimquot/linalg.hpp"

namespace dimquot {

    /// Largest group order for which element enumeration is offered.
    inline constexpr unsigned long kMaxEnumeration = 1000000;

    /// A finitely presented abelian group Z^n / L with labelled generators.
    ///
    /// Values are immutable and cheap to copy. Elements are integer vectors in
    /// generator coordinates; two vectors denote the same element when their
    /// difference lies in the relation lattice. Smith data is computed once and
    /// gives canonical coordinates y = x*V, one per invariant factor, ordered
    /// torsion first (ascending) and then the free part.
    class FPAbGroup {
    public:
        /// The trivial group on no generators.
        FPAbGroup();
        FPAbGroup(std::vector<std::string> labels, const IntMatrix& relations);
        FPAbGroup(std::size_t generators, const IntMatrix& relations);
        FPAbGroup(std::vector<std::string> labels, Lattice relations);

        static FPAbGroup free(std::size_t rank);
        static FPAbGroup cyclic(const Integer& order);
        /// Z/d_1 + ... + Z/d_k, with d_i = 0 meaning Z.
        static FPAbGroup diagonal(const std::vector<Integer>& orders, std::vector<std::string> labels = {});
        /// Parses "Z/2+Z/4+Z", "Z^2", "(Z/2)^3" or "0".
        static FPAbGroup parse(const std::string& text);

        std::size_t generator_count() const;
        const std::vector<std::string>& labels() const;
        const Lattice& relations() const;

        const AbelianInvariants& invariants() const;
        std::string structure() const { return invariants().to_string(); }
        bool is_finite() const { return invariants().is_finite(); }
        bool is_trivial() const { return invariants().is_trivial(); }
        Integer order() const { return invariants().order(); }
        Integer exponent() const { return invariants().exponent(); }
        std::size_t free_rank() const { return invariants().free_rank; }
        /// Cyclic factors of prime power order as (p, p^e), sorted.
        std::vector<std::pair<Integer, Integer>> primary_decomposition() const;

        /// Orders of the canonical generators (0 for free ones).
        const std::vector<Integer>& canonical_orders() const;
        std::size_t canonical_rank() const { return canonical_orders().size(); }
        /// Canonical coordinates, torsion coordinates reduced into [0, d).
        IntVector to_canonical(const IntVector& x) const;
        IntVector from_canonical(const IntVector& y) const;
        /// Unique representative of the class of x.
        IntVector reduce(const IntVector& x) const;
        bool is_zero(const IntVector& x) const;
        bool equal(const IntVector& x, const IntVector& y) const;
        /// Order of x; 0 if x has infinite order.
        Integer element_order(const IntVector& x) const;
        /// All elements as reduced representatives; finite groups of order <= kMaxEnumeration only.
        std::vector<IntVector> elements() const;

        /// If every relation involves a single generator, the generator orders (0 = free).
        std::optional<std::vector<Integer>> diagonal_orders() const;
        /// The orders from diagonal_orders(); throws PreconditionError when not diagonal.
        std::vector<Integer> require_diagonal(const char* who) const;

        IntVector zero() const { return IntVector(generator_count()); }
        IntVector generator(std::size_t i) const { return unit_vector(generator_count(), i); }

        /// Same generators and the same relation lattice.
        friend bool operator==(const FPAbGroup& a, const FPAbGroup& b);

    private:
        struct Data;
        std::shared_ptr<const Data> d_;
    };

    /// An element of a specific group.
    struct AbElement {
        FPAbGroup parent;
        IntVector coords;

        AbElement(FPAbGroup g, IntVector c);
        friend bool operator==(const AbElement& a, const AbElement& b);
        friend AbElement operator+(const AbElement& a, const AbElement& b);
        friend AbElement operator-(const AbElement& a, const AbElement& b);
        friend AbElement operator*(const Integer& k, const AbElement& a);
    };

    /// A homomorphism given by an integer matrix acting on row vectors of
    /// generator coordinates. Well-definedness is checked on construction.
    class AbHom {
    public:
        AbHom(FPAbGroup domain, FPAbGroup codomain, IntMatrix matrix);

        static AbHom zero(FPAbGroup domain, FPAbGroup codomain);
        static AbHom identity(FPAbGroup g);
        /// Homomorphism determined by images of the domain generators.
        static AbHom from_images(FPAbGroup domain, FPAbGroup codomain, const std::vector<IntVector>& images);

        const FPAbGroup& domain() const { return domain_; }
        const FPAbGroup& codomain() const { return codomain_; }
        const IntMatrix& matrix() const { return matrix_; }

        /// Image of x, reduced in the codomain.
        IntVector operator()(const IntVector& x) const;
        bool is_zero() const;
        bool is_injective() const;
        bool is_surjective() const;

        friend bool operator==(const AbHom& f, const AbHom& g);
        friend AbHom operator+(const AbHom& f, const AbHom& g);
        friend AbHom operator-(const AbHom& f, const AbHom& g);
        friend AbHom operator*(const Integer& k, const AbHom& f);

    private:
        FPAbGroup domain_;
        FPAbGroup codomain_;
        IntMatrix matrix_;
    };

    /// g after f.
    AbHom compose(const AbHom& g, const AbHom& f);

    /// Preimages under a fixed homomorphism f: Z^n/R_A -> Z^m/R_B.
    class HomSolver {
    public:
        explicit HomSolver(const AbHom& f);
        /// Some x with f(x) = y, if y lies in the image.
        std::optional<IntVector> solve(const IntVector& y) const;
        /// Preimage of R_B in Z^n: the kernel lifted to generator coordinates.
        const Lattice& kernel_lattice() const { return kernel_; }
        /// Span of the images of the generators together with R_B.
        const Lattice& image_lattice() const { return image_; }

    private:
        AbHom f_;
        SplitHnf split_;
        Lattice kernel_;
        Lattice image_;
    };

    struct HomDecomposition {
        FPAbGroup kernel;
        AbHom kernel_inclusion;
        FPAbGroup image;
        AbHom image_inclusion;
        /// Domain onto image.
        AbHom coimage_projection;
        FPAbGroup cokernel;
        AbHom cokernel_projection;
    };
    HomDecomposition hom_decompose(const AbHom& f);

    /// The group with generators `labels` and relator rows `relations`.
    FPAbGroup canonicalize(std::vector<std::string> labels, const IntMatrix& relations);

    /// Subgroup of g generated by `elements`, with its inclusion.
    std::pair<FPAbGroup, AbHom> subgroup(const FPAbGroup& g, const std::vector<IntVector>& elements);
    /// Quotient of g by the subgroup generated by `elements`, with the projection.
    std::pair<FPAbGroup, AbHom> quotient(const FPAbGroup& g, const std::vector<IntVector>& elements);

    /// A group isomorphic to g presented diagonally by its invariant factors.
    struct CanonicalIso {
        FPAbGroup diagonal;
        AbHom to_diagonal;
        AbHom from_diagonal;
    };
    CanonicalIso canonical_form(const FPAbGroup& g);

    struct DirectSum {
        FPAbGroup group;
        std::vector<AbHom> inclusions;
        std::vector<AbHom> projections;
    };
    DirectSum direct_sum(const std::vector<FPAbGroup>& summands);
    AbHom direct_sum_map(const std::vector<AbHom>& maps);

    IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

    /// Generators e_i (x) f_j indexed i * |gens B| + j.
    FPAbGroup tensor(const FPAbGroup& a, const FPAbGroup& b);
    AbHom tensor_map(const AbHom& f, const AbHom& g);
    IntVector tensor_element(const IntVector& x, const IntVector& y);
    /// n-fold tensor power, generator tuples in lexicographic order (n >= 1).
    FPAbGroup tensor_power(const FPAbGroup& a, unsigned n);
    AbHom tensor_power_map(const AbHom& f, unsigned n);
    /// Coordinates of x_1 (x) ... (x) x_n.
    IntVector tensor_product_of(const std::vector<IntVector>& xs);

    /// A functor value realized as a quotient of a tensor power.
    struct TensorQuotient {
        FPAbGroup group;
        AbHom projection;
    };
    /// Exterior square, generators e_i ^ e_j for i < j in lexicographic order.
    TensorQuotient lambda2(const FPAbGroup& a);
    AbHom lambda2_map(const AbHom& f);
    /// n-th symmetric power, generators are sorted index tuples in lexicographic order.
    TensorQuotient sp(const FPAbGroup& a, unsigned n);
    AbHom sp_map(const AbHom& f, unsigned n);

    /// Tor(A, C) realized as ker(R (x) C -> Z^n (x) C) for R = basis of the
    /// relation lattice of A.
    class TorModel {
    public:
        TorModel(FPAbGroup a, FPAbGroup c);

        const FPAbGroup& group() const { return group_; }
        const FPAbGroup& left() const { return a_; }
        const FPAbGroup& right() const { return c_; }

        /// The symbol tau_m(a, c); requires m > 0, m*a = 0 and m*c = 0.
        IntVector tau(const IntVector& a, const Integer& m, const IntVector& c) const;

        /// For A presented diagonally: x = sum over the returned (i, c) of tau_{d_i}(e_i, c).
        std::vector<std::pair<std::size_t, IntVector>> symbols(const IntVector& x) const;
        /// The homomorphism Tor(A, C) -> target sending tau_{d_i}(e_i, c) to phi(i, c).
        /// phi must be additive in c. Requires A presented diagonally.
        AbHom hom_from_symbols(const FPAbGroup& target,
                               const std::function<IntVector(std::size_t, const IntVector&)>& phi) const;

    private:
        FPAbGroup a_;
        FPAbGroup c_;
        IntMatrix rel_basis_;
        Lattice kernel_;
        FPAbGroup group_;
    };

    /// Tor(f, g) between models; requires the domain models' left factors presented diagonally.
    AbHom tor_map(const TorModel& source, const TorModel& target, const AbHom& f, const AbHom& g);

    /// The Whitehead functor on a diagonally presented group Z/d_1 + ... + Z/d_k.
    ///
    /// Generators: g_i = gamma(e_i), then h_ij = w(e_i (x) e_j) for i < j. g_i has
    /// order d_i for odd d_i, 2 d_i for even d_i, and is free for d_i = 0; h_ij has
    /// order gcd(d_i, d_j).
    class GammaModel {
    public:
        explicit GammaModel(FPAbGroup a);

        const FPAbGroup& group() const { return group_; }
        const FPAbGroup& base() const { return a_; }
        std::size_t h_index(std::size_t i, std::size_t j) const;

        /// gamma(x) for an element of A.
        IntVector gamma(const IntVector& x) const;
        /// w: A (x) A -> Gamma(A), x (x) y -> gamma(x + y) - gamma(x) - gamma(y).
        AbHom w() const;
        /// delta: Gamma(A) -> A (x) A, gamma(x) -> x (x) x.
        AbHom delta() const;

    private:
        FPAbGroup a_;
        std::vector<Integer> orders_;
        FPAbGroup group_;
    };

    /// Gamma(f) for a map between diagonally presented groups.
    AbHom gamma_map(const GammaModel& source, const GammaModel& target, const AbHom& f);
    /// Gamma of an arbitrary presentation, evaluated on its canonical diagonal form.
    FPAbGroup gamma(const FPAbGroup& a);

    /// Gamma presented directly: generators gamma(x) for every element x, with
    /// gamma(-x) = gamma(x) and the three-variable quadratic identity. Finite groups only.
    FPAbGroup gamma_by_presentation(const FPAbGroup& a);

}  // namespace dimquot
