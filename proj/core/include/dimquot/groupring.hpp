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

// Lattices in the integral group ring of a finite group: powers of the
// augmentation ideal, the relative ideals n*e + e^n, and the dimension
// subgroups cut out by them.
//
// Ideals inside the augmentation ideal are stored in augmentation
// coordinates: the basis {g - 1 : g != 1} of the augmentation ideal, ordered
// by element index with the identity skipped.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dimquot/groups.hpp"
#include "dimquot/linalg.hpp"

namespace dimquot {

    /// Largest group order accepted by the group ring routines.
    inline constexpr std::size_t kMaxRingOrder = 1000;
    /// Largest augmentation power computed.
    inline constexpr unsigned kMaxRingDegree = 6;

    /// An element of Z[G], one coefficient per group element.
    struct GroupRingElement {
        FiniteGroup parent;
        IntVector coords;

        static GroupRingElement zero(const FiniteGroup& g);
        static GroupRingElement basis(const FiniteGroup& g, std::size_t x);
        /// x - 1.
        static GroupRingElement difference(const FiniteGroup& g, std::size_t x);

        Integer augmentation() const;
        friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
        friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
        friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
        friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.coords == b.coords; }
    };

    /// Augmentation coordinates of an element of augmentation zero.
    IntVector augmentation_coordinates(const GroupRingElement& x);
    GroupRingElement from_augmentation_coordinates(const FiniteGroup& g, const IntVector& v);

    /// Right and left multiplication by a group element in augmentation coordinates.
    IntVector right_multiply(const FiniteGroup& g, const IntVector& v, std::size_t x);
    IntVector left_multiply(const FiniteGroup& g, std::size_t x, const IntVector& v);
    /// Product of two elements of the augmentation ideal.
    IntVector ring_product(const FiniteGroup& g, const IntVector& a, const IntVector& b);

    /// A two-sided ideal of Z[G] contained in the augmentation ideal.
    class IdealLattice {
    public:
        /// Checks closure under left and right multiplication by the generators.
        IdealLattice(FiniteGroup parent, Lattice lattice);

        const FiniteGroup& parent() const { return parent_; }
        /// In augmentation coordinates, ambient rank |G| - 1.
        const Lattice& lattice() const { return lattice_; }
        bool two_sided() const { return true; }
        bool contains(const GroupRingElement& x) const;
        /// Whether x - 1 lies in the ideal.
        bool contains_difference(std::size_t x) const;
        /// Index in the augmentation ideal (0 when infinite).
        Integer index() const { return lattice_.determinant(); }

        friend bool operator==(const IdealLattice& a, const IdealLattice& b) { return a.lattice_ == b.lattice_; }

    private:
        FiniteGroup parent_;
        Lattice lattice_;
    };

    /// g^1, ..., g^n_max.
    std::vector<IdealLattice> aug_powers(const FiniteGroup& g, unsigned n_max);
    IdealLattice aug_power(const FiniteGroup& g, unsigned n);
    /// n*e + e^n for N normal in E, n >= 1, where n*e = (N-1)Z[E] * e.
    IdealLattice relative_ideal(const FiniteGroup& e, const Subgroup& n, unsigned deg);
    /// As above, reusing a precomputed e^deg.
    IdealLattice relative_ideal(const FiniteGroup& e, const Subgroup& n, const IdealLattice& power);

    /// {x in G : x - 1 in I}, checked to be a subgroup.
    Subgroup subgroup_from_ideal(const IdealLattice& ideal);
    Subgroup dimension_subgroup(const FiniteGroup& g, unsigned n);
    Subgroup relative_dimension_subgroup(const FiniteGroup& e, const Subgroup& n, unsigned deg);

    /// Order, exponent and (when abelian) invariant factors of upper/lower for
    /// normal subgroups lower <= upper.
    struct SectionInfo {
        std::size_t order = 1;
        std::size_t exponent = 1;
        bool abelian = true;
        std::string structure = "0";
    };
    SectionInfo section_info(const Subgroup& upper, const Subgroup& lower);

    struct DimensionRow {
        unsigned n = 0;
        Subgroup dimension;
        /// gamma_n(G), or N' gamma_n(E) in the relative case.
        Subgroup lower;
        SectionInfo quotient;
    };
    /// Rows n = 1 .. n_max.
    std::vector<DimensionRow> dimension_report(const FiniteGroup& g, unsigned n_max);
    /// Rows of D_n(E,N) against N' gamma_n(E).
    std::vector<DimensionRow> relative_dimension_report(const FiniteGroup& e, const Subgroup& n, unsigned n_max);

}  // namespace dimquot
