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

// Quadratic functors of abelian groups: Omega, R, the exterior torsion square,
// the maps E and T between Tor(A, A) and Omega(A), cross-effects with their
// H and P operators, and the square functors on graded abelian groups.
//
// Functor values are built on diagonal presentations Z/d_1 + ... + Z/d_k
// (d_i = 0 allowed for free summands). Entry points taking an arbitrary
// group evaluate on its canonical diagonal form.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dimquot/abelian.hpp"

namespace dimquot {

    /// Omega of a diagonally presented group.
    ///
    /// Generators: u_i = w_{d_i}(e_i) of order d_i (order 1 for free summands),
    /// then t_ij = w_g(a + c) - w_g(a) - w_g(c) for i < j, with g = gcd(d_i, d_j),
    /// a = (d_i/g) e_i, c = (d_j/g) e_j; t_ij spans the cross term Tor(Z/d_i, Z/d_j).
    class OmegaModel {
    public:
        explicit OmegaModel(FPAbGroup a);

        const FPAbGroup& group() const { return group_; }
        const FPAbGroup& base() const { return a_; }
        const std::vector<Integer>& orders() const { return orders_; }
        std::size_t t_index(std::size_t i, std::size_t j) const;

        /// The symbol w_n(x); requires n > 0 and n*x = 0.
        IntVector w(const Integer& n, const IntVector& x) const;

    private:
        FPAbGroup a_;
        std::vector<Integer> orders_;
        FPAbGroup group_;
    };

    AbHom omega_map(const OmegaModel& source, const OmegaModel& target, const AbHom& f);
    FPAbGroup omega(const FPAbGroup& a);
    /// Omega from its defining presentation by symbols w_n(x). Finite groups only.
    FPAbGroup omega_by_presentation(const FPAbGroup& a);

    /// R(A) as a quotient of Tor(A, A) + Gamma(2A), A diagonal. 2A is
    /// presented by s_k = (d_i/2) e_i over the summands of positive even order.
    class RModel {
    public:
        explicit RModel(FPAbGroup a);

        const FPAbGroup& group() const { return group_; }
        const FPAbGroup& base() const { return a_; }
        const TorModel& tor() const { return tor_; }
        const GammaModel& gamma2() const { return gamma2_; }
        /// Indices i of the summands contributing a generator of 2A.
        const std::vector<std::size_t>& two_torsion_summands() const { return two_; }
        /// Class of an element of Tor(A, A).
        IntVector from_tor(const IntVector& t) const;
        /// Class of an element of Gamma(2A).
        IntVector from_gamma(const IntVector& g) const;

    private:
        FPAbGroup a_;
        TorModel tor_;
        std::vector<std::size_t> two_;
        GammaModel gamma2_;
        DirectSum sum_;
        FPAbGroup group_;
    };

    AbHom r_map(const RModel& source, const RModel& target, const AbHom& f);
    FPAbGroup r_functor(const FPAbGroup& a);

    /// Tor(A, A) modulo the symbols tau_{o(x)}(x, x), x torsion; A diagonal.
    class ExtTorSquare {
    public:
        explicit ExtTorSquare(FPAbGroup a);

        const FPAbGroup& group() const { return group_; }
        const FPAbGroup& base() const { return tor_.left(); }
        const TorModel& tor() const { return tor_; }
        const AbHom& projection() const { return projection_; }

    private:
        TorModel tor_;
        FPAbGroup group_;
        AbHom projection_;
    };

    AbHom ext_tor_square_map(const ExtTorSquare& source, const ExtTorSquare& target, const AbHom& f);
    FPAbGroup ext_tor_square(const FPAbGroup& a);

    /// E(tau_n(a, c)) = w_n(a + c) - w_n(a) - w_n(c) and T(w_n(x)) = tau_n(x, x).
    struct EmMaps {
        TorModel tor;
        OmegaModel omega;
        AbHom e;
        AbHom t;
    };
    /// Models are built on the canonical diagonal form of a.
    EmMaps em_maps(const FPAbGroup& a);

    enum class QuadFunctor { Gamma, Omega, R, TorSquare, Lambda2, SP2 };
    std::string to_string(QuadFunctor f);

    /// F(A) -H-> F(A|A) -P-> F(A), with F(A|A) = ker(F(A+A) -> F(A) + F(A)).
    struct QuadStructure {
        FPAbGroup f_of_a;
        FPAbGroup cross;
        AbHom h;
        AbHom p;
    };
    /// Evaluated on the canonical diagonal form of a, which must be finite.
    /// Checks |F(A+A)| = |F(A)|^2 |F(A|A)| and P H = F(2) - 2 before returning.
    QuadStructure quad_structure(QuadFunctor f, const FPAbGroup& a);

    /// Graded abelian group; unlisted degrees are zero.
    using GradedAbGroup = std::map<int, FPAbGroup>;

    enum class SquareVariant { Tensor, Torsion };
    GradedAbGroup square_functor(const GradedAbGroup& a, SquareVariant variant);

}  // namespace dimquot
