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

// Finite groups stored as full multiplication tables, subgroups as sorted
// element sets, and the group families used by the verification suites.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dimquot/abelian.hpp"

namespace dimquot {

    /// Hard cap on the order of a materialized group.
    inline constexpr std::size_t kMaxGroupOrder = 10000;

    /// A finite group given by its Cayley table. Elements are indices
    /// 0 .. order-1. Values are immutable and cheap to copy.
    class FiniteGroup {
    public:
        /// Validates the table: closure, identity, inverses, associativity
        /// (exhaustive up to order 128, sampled above) and that the
        /// generators generate.
        FiniteGroup(std::size_t order, std::vector<std::uint16_t> table, std::vector<std::size_t> generators,
                    std::vector<std::string> labels = {}, std::string name = {});

        static FiniteGroup trivial();
        static FiniteGroup cyclic(std::size_t m);
        /// Z/m_1 x ... x Z/m_k with mixed-radix element indices.
        static FiniteGroup abelian(const std::vector<std::size_t>& orders);
        /// Class-2 group of order m^3 on triples (a,b,c) meaning x^a y^b z^c,
        /// multiplied by (a,b,c)(a',b',c') = (a+a', b+b', c+c'-b*a').
        static FiniteGroup heisenberg(std::size_t m);
        /// Dihedral group of the given (even) order, generators r and s.
        static FiniteGroup dihedral(std::size_t order);
        /// Dicyclic group of order 4m: a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1.
        static FiniteGroup quaternion(std::size_t order);
        /// Semidihedral group of order 2^n >= 16: x a x^-1 = a^(2^(n-2)-1).
        static FiniteGroup semidihedral(std::size_t order);
        static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
        /// JSON object with fields order, table (row-major), identity,
        /// generators and optionally labels and name.
        static FiniteGroup from_json(const std::string& text);
        static FiniteGroup from_file(const std::string& path);
        std::string to_json() const;
        /// The same group under another name.
        FiniteGroup with_name(std::string name) const;

        std::size_t order() const;
        std::size_t identity() const;
        const std::string& name() const;
        const std::vector<std::size_t>& generators() const;
        const std::string& label(std::size_t g) const;

        std::size_t mul(std::size_t a, std::size_t b) const;
        std::size_t inv(std::size_t a) const;
        std::size_t pow(std::size_t a, long long k) const;
        /// a b a^-1 b^-1.
        std::size_t commutator(std::size_t a, std::size_t b) const;
        /// g a g^-1.
        std::size_t conjugate(std::size_t g, std::size_t a) const;
        std::size_t element_order(std::size_t a) const;
        std::size_t exponent() const;
        bool is_abelian() const;

        friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.d_ == b.d_; }

    private:
        struct Data;
        explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
        std::shared_ptr<const Data> d_;
    };

    /// A subgroup of a fixed parent group.
    class Subgroup {
    public:
        /// The elements must form a subgroup; this is checked.
        Subgroup(FiniteGroup parent, std::vector<std::size_t> elements);

        static Subgroup trivial(const FiniteGroup& g);
        static Subgroup whole(const FiniteGroup& g);

        const FiniteGroup& parent() const { return parent_; }
        const std::vector<std::size_t>& elements() const { return elements_; }
        std::size_t order() const { return elements_.size(); }
        bool contains(std::size_t g) const { return member_[g]; }
        bool is_trivial() const { return elements_.size() == 1; }
        bool is_normal() const;
        bool contains(const Subgroup& h) const;
        /// A small generating set, chosen greedily in index order.
        std::vector<std::size_t> generators() const;

        friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

    private:
        FiniteGroup parent_;
        std::vector<std::size_t> elements_;
        std::vector<bool> member_;
    };

    Subgroup closure(const FiniteGroup& g, const std::vector<std::size_t>& gens);
    Subgroup normal_closure(const FiniteGroup& g, const std::vector<std::size_t>& gens);
    /// [S, T], generated by all [s, t].
    Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& s, const Subgroup& t);
    /// Subgroup generated by two subgroups (their product when one is normal).
    Subgroup join(const Subgroup& a, const Subgroup& b);
    Subgroup intersection(const Subgroup& a, const Subgroup& b);
    /// gamma_1 = G, gamma_{n+1} = [gamma_n, G], up to the first repeated term.
    std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
    /// gamma_n(G) for n >= 1.
    Subgroup lower_central_term(const FiniteGroup& g, unsigned n);
    /// Nilpotency class, or nullopt when G is not nilpotent.
    std::optional<unsigned> nilpotency_class(const FiniteGroup& g);

    /// G/N with projection; coset i is represented by its least element.
    struct Quotient {
        FiniteGroup group;
        std::vector<std::size_t> projection;
        std::vector<std::size_t> representatives;
    };
    Quotient quotient(const FiniteGroup& g, const Subgroup& n);
    /// Preimage of a subgroup of G/N.
    Subgroup preimage(const FiniteGroup& g, const Quotient& q, const Subgroup& h);
    /// Image of a subgroup of G in G/N.
    Subgroup image(const Quotient& q, const Subgroup& h);

    /// A subgroup materialized as a group of its own.
    struct EmbeddedGroup {
        FiniteGroup group;
        std::vector<std::size_t> embedding;
    };
    EmbeddedGroup as_group(const Subgroup& h);

    /// G_ab presented on the images of the generators of G.
    struct Abelianization {
        FPAbGroup group;
        Subgroup derived;
        /// Coordinates of the image of each element of G.
        std::vector<IntVector> image;
    };
    Abelianization abelianization(const FiniteGroup& g);

    /// A group built from a family description, with the distinguished normal
    /// subgroup and named elements where the family defines them.
    struct FamilyGroup {
        FiniteGroup group;
        std::optional<Subgroup> distinguished;
        std::map<std::string, std::size_t> named;
    };
    /// E = heisenberg(p^(s+1)), N = <x^(p^r), y^(p^s), [x,y]> and
    /// named elements x, y and z = [x,y]^(p^s). Requires 0 < r <= s.
    FamilyGroup cex(unsigned p, unsigned r, unsigned s);
    /// Parses "cyclic:5", "abelian:4,2", "heisenberg:4", "cex:2,1,1",
    /// "dihedral:16", "quaternion:8", "semidihedral:16", "file:<path>" and
    /// products "A*B" of these.
    FamilyGroup build_family(const std::string& spec);

}  // namespace dimquot
