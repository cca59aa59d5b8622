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

// Class-2 nilpotent groups: the commutator map c2 on the exterior square of
// the abelianization, chosen lifts and roots, the maps delta_1, delta_2,
// delta_3 out of the exterior torsion square, the explicit description of
// D_3(E,N), and the bounds on the fourth dimension quotient.

#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <vector>

#include "dimquot/abelian.hpp"
#include "dimquot/groups.hpp"
#include "dimquot/liefun.hpp"
#include "dimquot/quadfun.hpp"

namespace dimquot {

    /// How lifts and roots are chosen. The default takes the least element of
    /// each coset and the reduced solution of c2(f) = target; the alternative
    /// takes the greatest element and shifts f by the first kernel generator.
    struct LiftChoice {
        bool greatest = false;
        bool shift_roots = false;
    };

    /// Data attached to a group G of class at most 2.
    class Class2Data {
    public:
        explicit Class2Data(FiniteGroup g, LiftChoice choice = {});

        const FiniteGroup& group() const { return g_; }
        /// G_ab presented diagonally by its invariant factors.
        const FPAbGroup& gab() const { return gab_; }
        /// G' presented diagonally by its invariant factors.
        const FPAbGroup& gprime() const { return gprime_; }
        const Subgroup& derived() const { return derived_; }
        const TensorQuotient& lambda2() const { return lambda2_; }
        /// c2(a ^ b) = [a, b].
        const AbHom& c2() const { return c2_; }
        const FPAbGroup& ker_c2() const { return ker_c2_; }
        const AbHom& ker_c2_inclusion() const { return ker_c2_inclusion_; }

        /// Image of an element of G in G_ab.
        const IntVector& project(std::size_t g) const { return gab_image_[g]; }
        /// Coordinates of an element of G' in gprime().
        IntVector prime_coords(std::size_t g) const;
        /// The chosen lift of x in G_ab.
        std::size_t lift(const IntVector& x) const;
        /// The chosen f with c2(f) = lift(x)^m; requires m x = 0.
        IntVector root(const Integer& m, const IntVector& x) const;
        /// Coordinates of a ^ b in lambda2().
        IntVector wedge(const IntVector& a, const IntVector& b) const;

    private:
        std::size_t index_of(const IntVector& x) const;

        FiniteGroup g_;
        LiftChoice choice_;
        FPAbGroup gab_;
        std::vector<IntVector> gab_image_;
        Subgroup derived_;
        FPAbGroup gprime_;
        std::vector<IntVector> prime_image_;
        TensorQuotient lambda2_;
        AbHom c2_;
        std::shared_ptr<const HomSolver> c2_solver_;
        FPAbGroup ker_c2_;
        AbHom ker_c2_inclusion_;
        std::vector<std::size_t> lifts_;
    };

    /// A symbol tau_m(x1, x2) with m x1 = m x2 = 0.
    struct TorSymbol {
        Integer m;
        IntVector x1;
        IntVector x2;
    };

    /// The three maps out of G_ab ^* G_ab and the bracket factorization beta.
    ///
    /// For A = Z/d_1 + ... + Z/d_k the exterior torsion square is the direct
    /// sum over i < j of cyclic groups of order g = gcd(d_i, d_j) generated by
    /// tau_g((d_i/g) e_i, (d_j/g) e_j). The maps are defined by their symbol
    /// formulas on these generators; `domain` is that sum and `to_ext` the
    /// (checked) isomorphism onto the Tor-based model.
    struct DeltaMaps {
        ExtTorSquare ext;
        FPAbGroup domain;
        std::vector<TorSymbol> generators;
        AbHom to_ext;
        AbHom from_ext;
        LieComponent l3;
        /// L_3(G_ab) / ([G_ab, Ker c2] + V + Im delta) and its projection.
        FPAbGroup l3_quotient;
        AbHom l3_projection;
        TensorQuotient sp3;
        FPAbGroup gab_tensor_prime;
        AbHom delta1;
        AbHom delta2;
        AbHom delta3;
        /// G_ab (x) G' -> l3_quotient, x (x) c2(w) -> [x, w].
        AbHom beta;
    };
    DeltaMaps delta_maps(const Class2Data& d);

    /// Symbol formulas evaluated directly on tau_m(x1, x2), for probing the maps.
    IntVector delta1_formula(const Class2Data& d, const DeltaMaps& maps, const Integer& m, const IntVector& x1,
                             const IntVector& x2);
    IntVector delta2_formula(const Class2Data& d, const DeltaMaps& maps, const Integer& m, const IntVector& x1,
                             const IntVector& x2);
    IntVector delta3_formula(const DeltaMaps& maps, const Integer& m, const IntVector& x1, const IntVector& x2);

    /// Mismatches between each map and its formula on random symbols. The
    /// formula for delta_3 is additive in both arguments; those for delta_1 and
    /// delta_2 are not in general, so mismatches there are reported, not errors.
    struct ProbeReport {
        std::size_t probes = 0;
        std::size_t delta1_mismatches = 0;
        std::size_t delta2_mismatches = 0;
        std::size_t delta3_mismatches = 0;
    };
    ProbeReport probe_delta_maps(const Class2Data& d, const DeltaMaps& maps, std::mt19937_64& rng, std::size_t count);

    /// delta_1(Ker delta_2 cap Ker delta_3) as a subgroup of the delta_1 target.
    FPAbGroup kerrho2_bound(const Class2Data& d);
    FPAbGroup kerrho2_bound(const DeltaMaps& maps);

    /// Kernel of delta_3 computed by enumeration against the subgroup generated
    /// by tau_m(x1, 2 x2) with m x1 = 2 m x2 = 0. A must be finite.
    struct Kerdel3Report {
        Integer domain_order;
        Integer kernel_order;
        Integer generated_order;
        bool equal = false;
    };
    /// delta_3 on the Tor-based model, defined from symbols tau_{d_i}(e_i, c);
    /// it depends only on A = G_ab.
    AbHom delta3_map(const ExtTorSquare& domain, const TensorQuotient& sp3);
    Kerdel3Report kerdel3_check(const FPAbGroup& a);

    /// N' gamma_3(E) together with all [a^k, b] where a^k and b^k lie in N E'.
    Subgroup d3rel_subgroup(const FiniteGroup& e, const Subgroup& n);

    struct D4Report {
        std::size_t quotient_order = 1;
        std::size_t quotient_exponent = 1;
        Integer bound_order;
        bool divides = false;
        bool exponent_divides_two = false;
        bool ok() const { return divides && exponent_divides_two; }
    };
    /// Compares D_4(E)/gamma_4(E) with the bound computed for E/gamma_3(E).
    /// Requires class at most 3.
    D4Report d4_check(const FiniteGroup& e);

}  // namespace dimquot
