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

#include "dimquot/groupring.hpp"

#include "dimquot/errors.hpp"

namespace dimquot {

    namespace {

        void check_size(const FiniteGroup& g, unsigned n) {
            if (g.order() > kMaxRingOrder) {
                throw ResourceLimitError("group ring routines are capped at order " + std::to_string(kMaxRingOrder));
            }
            if (n == 0) throw PreconditionError("ideal powers start at 1");
            if (n > kMaxRingDegree) {
                throw ResourceLimitError("augmentation powers are capped at degree " + std::to_string(kMaxRingDegree));
            }
        }

        std::size_t dim(const FiniteGroup& g) { return g.order() - 1; }

        // Position of x - 1 in augmentation coordinates; x must not be the identity.
        std::size_t pos(const FiniteGroup& g, std::size_t x) { return x < g.identity() ? x : x - 1; }

        std::size_t element_at(const FiniteGroup& g, std::size_t i) { return i < g.identity() ? i : i + 1; }

        IntVector difference_coords(const FiniteGroup& g, std::size_t x) {
            IntVector v = zero_vector(dim(g));
            if (x != g.identity()) v[pos(g, x)] = 1;
            return v;
        }

        // e^(n-1) kills g/g^n, where e is the exponent of G_ab, so it is a valid
        // modulus for every lattice between g^n and g.
        Integer ring_modulus(const FiniteGroup& g, unsigned n) {
            Integer e = abelianization(g).group.exponent();
            Integer m = 1;
            for (unsigned i = 1; i < n; ++i) m *= e;
            return m;
        }

        // Closes the span under right multiplication by the generators.
        void right_close(const FiniteGroup& g, HnfBuilder& b) {
            for (bool grew = true; grew;) {
                grew = false;
                const Lattice l = b.lattice();
                for (const auto& row : l.basis().row_vectors()) {
                    for (auto s : g.generators()) grew = b.add_if_new(right_multiply(g, row, s)) || grew;
                }
            }
        }

    }  // namespace

    GroupRingElement GroupRingElement::zero(const FiniteGroup& g) { return {g, zero_vector(g.order())}; }

    GroupRingElement GroupRingElement::basis(const FiniteGroup& g, std::size_t x) { return {g, unit_vector(g.order(), x)}; }

    GroupRingElement GroupRingElement::difference(const FiniteGroup& g, std::size_t x) {
        return basis(g, x) - basis(g, g.identity());
    }

    Integer GroupRingElement::augmentation() const {
        Integer s = 0;
        for (const auto& c : coords) s += c;
        return s;
    }

    GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        return {a.parent, add(a.coords, b.coords)};
    }

    GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
        return {a.parent, sub(a.coords, b.coords)};
    }

    GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        const auto& g = a.parent;
        IntVector out = zero_vector(g.order());
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (a.coords[x] == 0) continue;
            for (std::size_t y = 0; y < g.order(); ++y) {
                if (b.coords[y] != 0) out[g.mul(x, y)] += a.coords[x] * b.coords[y];
            }
        }
        return {g, std::move(out)};
    }

    IntVector augmentation_coordinates(const GroupRingElement& x) {
        if (x.augmentation() != 0) throw PreconditionError("element is not in the augmentation ideal");
        const auto& g = x.parent;
        IntVector v = zero_vector(dim(g));
        for (std::size_t i = 0; i < g.order(); ++i) {
            if (i != g.identity()) v[pos(g, i)] = x.coords[i];
        }
        return v;
    }

    GroupRingElement from_augmentation_coordinates(const FiniteGroup& g, const IntVector& v) {
        if (v.size() != dim(g)) throw PreconditionError("augmentation coordinates have wrong length");
        IntVector c = zero_vector(g.order());
        for (std::size_t i = 0; i < v.size(); ++i) {
            c[element_at(g, i)] += v[i];
            c[g.identity()] -= v[i];
        }
        return {g, std::move(c)};
    }

    IntVector right_multiply(const FiniteGroup& g, const IntVector& v, std::size_t x) {
        // (y - 1) x = (yx - 1) - (x - 1).
        IntVector out = zero_vector(dim(g));
        const std::size_t e = g.identity();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const std::size_t yx = g.mul(element_at(g, i), x);
            if (yx != e) out[pos(g, yx)] += v[i];
            if (x != e) out[pos(g, x)] -= v[i];
        }
        return out;
    }

    IntVector left_multiply(const FiniteGroup& g, std::size_t x, const IntVector& v) {
        IntVector out = zero_vector(dim(g));
        const std::size_t e = g.identity();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const std::size_t xy = g.mul(x, element_at(g, i));
            if (xy != e) out[pos(g, xy)] += v[i];
            if (x != e) out[pos(g, x)] -= v[i];
        }
        return out;
    }

    IntVector ring_product(const FiniteGroup& g, const IntVector& a, const IntVector& b) {
        // sum_x a_x (x - 1) b = sum_x a_x (x b - b).
        IntVector out = zero_vector(dim(g));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            IntVector t = sub(left_multiply(g, element_at(g, i), b), b);
            axpy(out, a[i], t);
        }
        return out;
    }

    IdealLattice::IdealLattice(FiniteGroup parent, Lattice lattice) : parent_(std::move(parent)), lattice_(std::move(lattice)) {
        if (lattice_.ambient_rank() != dim(parent_)) throw PreconditionError("ideal lattice has wrong ambient rank");
        for (const auto& row : lattice_.basis().row_vectors()) {
            for (auto s : parent_.generators()) {
                if (!lattice_.contains(right_multiply(parent_, row, s)) || !lattice_.contains(left_multiply(parent_, s, row))) {
                    throw PreconditionError("lattice is not a two-sided ideal");
                }
            }
        }
    }

    bool IdealLattice::contains(const GroupRingElement& x) const {
        if (x.augmentation() != 0) return false;
        return lattice_.contains(augmentation_coordinates(x));
    }

    bool IdealLattice::contains_difference(std::size_t x) const {
        return x == parent_.identity() || lattice_.contains(difference_coords(parent_, x));
    }

    std::vector<IdealLattice> aug_powers(const FiniteGroup& g, unsigned n_max) {
        check_size(g, n_max);
        std::vector<IdealLattice> out;
        out.emplace_back(g, Lattice::full(dim(g)));
        const Integer e = ring_modulus(g, 2);
        Integer m = 1;
        for (unsigned n = 2; n <= n_max; ++n) {
            m *= e;
            HnfBuilder b(dim(g), std::vector<Integer>(dim(g), m));
            for (const auto& row : out.back().lattice().basis().row_vectors()) {
                for (auto s : g.generators()) b.add(sub(right_multiply(g, row, s), row));
            }
            right_close(g, b);
            out.emplace_back(g, b.lattice());
        }
        return out;
    }

    IdealLattice aug_power(const FiniteGroup& g, unsigned n) { return aug_powers(g, n).back(); }

    IdealLattice relative_ideal(const FiniteGroup& e, const Subgroup& n, unsigned deg) {
        return relative_ideal(e, n, aug_power(e, deg));
    }

    IdealLattice relative_ideal(const FiniteGroup& e, const Subgroup& n, const IdealLattice& power) {
        if (!(n.parent() == e) || !(power.parent() == e)) throw PreconditionError("subgroup and ideal must live in E");
        if (!n.is_normal()) throw PreconditionError("relative ideal needs a normal subgroup");
        const Lattice& pl = power.lattice();
        if (pl.is_full_rank() && pl.determinant() == 1) return power;
        HnfBuilder b(dim(e), std::vector<Integer>(dim(e), pl.is_full_rank() ? pl.determinant() : Integer(0)));
        b.add_rows(pl.basis());
        // (N-1)Z[E] is spanned by differences of elements in a common coset.
        Quotient q = quotient(e, n);
        for (std::size_t x = 0; x < e.order(); ++x) {
            const std::size_t rep = q.representatives[q.projection[x]];
            if (x == rep) continue;
            IntVector nv = sub(difference_coords(e, x), difference_coords(e, rep));
            for (auto s : e.generators()) b.add(sub(right_multiply(e, nv, s), nv));
        }
        right_close(e, b);
        return IdealLattice(e, b.lattice());
    }

    Subgroup subgroup_from_ideal(const IdealLattice& ideal) {
        const auto& g = ideal.parent();
        std::vector<std::size_t> elems;
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (ideal.contains_difference(x)) elems.push_back(x);
        }
        try {
            return Subgroup(g, std::move(elems));
        } catch (const PreconditionError& e) {
            throw InvariantError(std::string("dimension set is not a subgroup: ") + e.what());
        }
    }

    Subgroup dimension_subgroup(const FiniteGroup& g, unsigned n) {
        Subgroup d = subgroup_from_ideal(aug_power(g, n));
        if (!d.contains(lower_central_term(g, n))) throw InvariantError("D_n does not contain gamma_n");
        return d;
    }

    namespace {

        Subgroup relative_lower(const FiniteGroup& e, const Subgroup& n, unsigned deg) {
            return join(commutator_subgroup(e, n, n), lower_central_term(e, deg));
        }

    }  // namespace

    Subgroup relative_dimension_subgroup(const FiniteGroup& e, const Subgroup& n, unsigned deg) {
        Subgroup d = subgroup_from_ideal(relative_ideal(e, n, deg));
        if (!d.contains(relative_lower(e, n, deg))) throw InvariantError("D_n(E,N) does not contain N' gamma_n(E)");
        return d;
    }

    SectionInfo section_info(const Subgroup& upper, const Subgroup& lower) {
        if (!upper.contains(lower)) throw PreconditionError("section needs lower <= upper");
        EmbeddedGroup h = as_group(upper);
        std::vector<std::size_t> pos_of(upper.parent().order(), 0);
        for (std::size_t i = 0; i < h.embedding.size(); ++i) pos_of[h.embedding[i]] = i;
        std::vector<std::size_t> low;
        for (auto x : lower.elements()) low.push_back(pos_of[x]);
        Quotient q = quotient(h.group, Subgroup(h.group, low));
        SectionInfo info;
        info.order = q.group.order();
        info.exponent = q.group.exponent();
        info.abelian = q.group.is_abelian();
        info.structure = info.abelian ? abelianization(q.group).group.structure()
                                      : "nonabelian of order " + std::to_string(info.order);
        return info;
    }

    std::vector<DimensionRow> dimension_report(const FiniteGroup& g, unsigned n_max) {
        auto powers = aug_powers(g, n_max);
        std::vector<DimensionRow> rows;
        for (unsigned n = 1; n <= n_max; ++n) {
            Subgroup d = subgroup_from_ideal(powers[n - 1]);
            Subgroup low = lower_central_term(g, n);
            if (!d.contains(low)) throw InvariantError("D_n does not contain gamma_n");
            SectionInfo info = section_info(d, low);
            rows.push_back(DimensionRow{n, std::move(d), std::move(low), std::move(info)});
        }
        return rows;
    }

    std::vector<DimensionRow> relative_dimension_report(const FiniteGroup& e, const Subgroup& n, unsigned n_max) {
        auto powers = aug_powers(e, n_max);
        std::vector<DimensionRow> rows;
        for (unsigned k = 1; k <= n_max; ++k) {
            Subgroup d = subgroup_from_ideal(relative_ideal(e, n, powers[k - 1]));
            Subgroup low = relative_lower(e, n, k);
            if (!d.contains(low)) throw InvariantError("D_n(E,N) does not contain N' gamma_n(E)");
            SectionInfo info = section_info(d, low);
            rows.push_back(DimensionRow{k, std::move(d), std::move(low), std::move(info)});
        }
        return rows;
    }

}  // namespace dimquot
