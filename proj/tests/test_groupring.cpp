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

#include <doctest.h>

#include "dimquot/errors.hpp"
#include "dimquot/groupring.hpp"
#include "test_util.hpp"

using namespace dimquot;

namespace {

    // g^n by brute force: products of all n-fold differences (x_1 - 1)...(x_n - 1)
    // built up one factor at a time through the group ring product.
    Lattice naive_power(const FiniteGroup& g, unsigned n) {
        std::vector<GroupRingElement> cur;
        for (std::size_t x = 0; x < g.order(); ++x)
            if (x != g.identity()) cur.push_back(GroupRingElement::difference(g, x));
        std::vector<IntVector> rows;
        for (unsigned k = 1; k < n; ++k) {
            rows.clear();
            for (const auto& a : cur) rows.push_back(augmentation_coordinates(a));
            const Lattice l = span(rows, g.order() - 1);
            std::vector<GroupRingElement> next;
            for (const auto& b : l.basis().row_vectors())
                for (std::size_t x = 0; x < g.order(); ++x)
                    if (x != g.identity())
                        next.push_back(from_augmentation_coordinates(g, b) * GroupRingElement::difference(g, x));
            cur = std::move(next);
        }
        rows.clear();
        for (const auto& a : cur) rows.push_back(augmentation_coordinates(a));
        return span(rows, g.order() - 1);
    }

}  // namespace

TEST_CASE("group ring arithmetic") {
    const FiniteGroup g = FiniteGroup::cyclic(2);
    const GroupRingElement d = GroupRingElement::difference(g, 1);
    CHECK(d.augmentation() == 0);
    // (x - 1)^2 = -2 (x - 1) in Z[Z/2]
    CHECK(d * d == GroupRingElement::zero(g) - d - d);
    CHECK(augmentation_coordinates(d) == IntVector{1});
    const FiniteGroup s3 = FiniteGroup::dihedral(6);
    const GroupRingElement a = GroupRingElement::basis(s3, 1) + GroupRingElement::basis(s3, 2);
    CHECK(a.augmentation() == 2);
    CHECK((a * a).augmentation() == 4);
}

TEST_CASE("powers of the augmentation ideal of Z/2 and Z/3") {
    const auto p2 = aug_powers(FiniteGroup::cyclic(2), 5);
    for (unsigned n = 1; n <= 5; ++n) CHECK(p2[n - 1].index() == Integer(1) << (n - 1));
    const auto p3 = aug_powers(FiniteGroup::cyclic(3), 4);
    Integer expect = 1;
    for (unsigned n = 1; n <= 4; ++n, expect *= 3) CHECK(p3[n - 1].index() == expect);
}

TEST_CASE("augmentation powers against the naive construction") {
    for (const char* spec : {"cyclic:4", "abelian:2,2", "dihedral:8", "quaternion:8", "dihedral:6", "cyclic:6"}) {
        const FiniteGroup g = build_family(spec).group;
        const auto powers = aug_powers(g, 4);
        for (unsigned n = 1; n <= 4; ++n) CHECK_MESSAGE(powers[n - 1].lattice() == naive_power(g, n), spec << " n=" << n);
    }
}

TEST_CASE("ideals are two-sided and nested") {
    const FiniteGroup g = FiniteGroup::dihedral(16);
    const auto powers = aug_powers(g, 5);
    for (unsigned n = 1; n < 5; ++n) CHECK(powers[n - 1].lattice().contains(powers[n].lattice()));
    for (const auto& row : powers[2].lattice().basis().row_vectors()) {
        for (std::size_t x = 0; x < g.order(); ++x) {
            CHECK(powers[2].lattice().contains(left_multiply(g, x, row)));
            CHECK(powers[2].lattice().contains(right_multiply(g, row, x)));
        }
    }
    // a lattice that is not an ideal is rejected
    CHECK_THROWS_AS(IdealLattice(g, span({augmentation_coordinates(GroupRingElement::difference(g, 1))}, 15)),
                    PreconditionError);
}

TEST_CASE("lower central terms lie in dimension subgroups") {
    for (const char* spec : {"dihedral:16", "quaternion:16", "heisenberg:3", "semidihedral:16", "abelian:2,4"}) {
        const FiniteGroup g = build_family(spec).group;
        const auto powers = aug_powers(g, 5);
        for (unsigned n = 1; n <= 5; ++n) {
            const Subgroup d = subgroup_from_ideal(powers[n - 1]);
            CHECK_MESSAGE(d.contains(lower_central_term(g, n)), spec << " n=" << n);
            if (n <= 3) CHECK_MESSAGE(d == lower_central_term(g, n), spec << " n=" << n);
        }
    }
}

TEST_CASE("relative dimension subgroups at the extremes") {
    const FiniteGroup e = FiniteGroup::dihedral(16);
    for (unsigned n = 1; n <= 4; ++n) {
        CHECK(relative_dimension_subgroup(e, Subgroup::trivial(e), n) == dimension_subgroup(e, n));
        if (n >= 2) CHECK(relative_dimension_subgroup(e, Subgroup::whole(e), n) == lower_central_term(e, 2));
    }
    const Subgroup c4 = lower_central_term(e, 2);
    CHECK_THROWS_AS(relative_dimension_subgroup(e, closure(e, {e.generators().back()}), 2), PreconditionError);
    const auto rows = relative_dimension_report(e, c4, 4);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i].dimension.contains(rows[i + 1].dimension));
    for (const auto& r : rows) CHECK(r.dimension.contains(r.lower));
}

TEST_CASE("the distinguished pair has a relative dimension gap in degree 3") {
    const FamilyGroup c = build_family("cex:2,1,1");
    const Subgroup d3 = relative_dimension_subgroup(c.group, *c.distinguished, 3);
    CHECK(d3.contains(c.named.at("z")));
    CHECK(d3.order() == 2);
    const auto rows = relative_dimension_report(c.group, *c.distinguished, 3);
    CHECK(rows[2].lower.is_trivial());
    CHECK(rows[2].quotient.order == 2);
    CHECK(rows[2].quotient.structure == "Z/2");
}

TEST_CASE("section info") {
    const FiniteGroup g = FiniteGroup::dihedral(8);
    const SectionInfo top = section_info(Subgroup::whole(g), lower_central_term(g, 2));
    CHECK(top.order == 4);
    CHECK(top.exponent == 2);
    CHECK(top.abelian);
    CHECK(top.structure == "Z/2+Z/2");
    const SectionInfo all = section_info(Subgroup::whole(g), Subgroup::trivial(g));
    CHECK_FALSE(all.abelian);
    CHECK(all.order == 8);
    CHECK(all.exponent == 4);
    const auto rows = dimension_report(g, 3);
    CHECK(rows.back().dimension.is_trivial());
}

TEST_CASE("resource caps") {
    CHECK_THROWS_AS(aug_power(FiniteGroup::cyclic(1024), 2), ResourceLimitError);
    CHECK_THROWS_AS(aug_power(FiniteGroup::cyclic(4), kMaxRingDegree + 1), ResourceLimitError);
}
