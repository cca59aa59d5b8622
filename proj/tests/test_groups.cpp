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

#include <cstdio>
#include <fstream>

#include "dimquot/errors.hpp"
#include "dimquot/groups.hpp"
#include "test_util.hpp"

using namespace dimquot;

namespace {

    bool associative(const FiniteGroup& g) {
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b)
                for (std::size_t c = 0; c < g.order(); ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
        return true;
    }

    std::vector<std::size_t> series_orders(const FiniteGroup& g) {
        std::vector<std::size_t> out;
        for (const auto& s : lower_central_series(g)) out.push_back(s.order());
        return out;
    }

    // Index of x^a y^b z^c in heisenberg(m).
    std::size_t heis(std::size_t m, std::size_t a, std::size_t b, std::size_t c) {
        return (a % m) * m * m + (b % m) * m + (c % m);
    }

}  // namespace

TEST_CASE("family constructions are groups") {
    for (const char* spec : {"cyclic:6", "abelian:2,4", "heisenberg:3", "dihedral:12", "quaternion:8",
                             "quaternion:12", "semidihedral:16", "dihedral:8*cyclic:3"}) {
        const FiniteGroup g = build_family(spec).group;
        CHECK_MESSAGE(associative(g), spec);
        for (std::size_t a = 0; a < g.order(); ++a) {
            CHECK(g.mul(a, g.inv(a)) == g.identity());
            CHECK(g.pow(a, static_cast<long long>(g.element_order(a))) == g.identity());
        }
    }
    CHECK(build_family("dihedral:8*cyclic:3").group.order() == 24);
    CHECK(build_family("abelian:2,4").group.is_abelian());
    CHECK_FALSE(build_family("quaternion:8").group.is_abelian());
}

TEST_CASE("heisenberg multiplication rule") {
    const std::size_t m = 4;
    const FiniteGroup h = FiniteGroup::heisenberg(m);
    CHECK(h.order() == 64);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t a2 = 0; a2 < m; a2 += 3)
                for (std::size_t b2 = 0; b2 < m; ++b2) {
                    const std::size_t c = (a + b) % m;
                    const std::size_t c2 = (b2 + 1) % m;
                    const std::size_t expect = heis(m, a + a2, b + b2, c + c2 + m * m - (b * a2) % m);
                    CHECK(h.mul(heis(m, a, b, c), heis(m, a2, b2, c2)) == expect);
                }
}

TEST_CASE("lower central series") {
    CHECK(series_orders(FiniteGroup::dihedral(8)) == std::vector<std::size_t>{8, 2, 1});
    CHECK(series_orders(FiniteGroup::dihedral(16)) == std::vector<std::size_t>{16, 4, 2, 1});
    CHECK(series_orders(FiniteGroup::dihedral(32)) == std::vector<std::size_t>{32, 8, 4, 2, 1});
    CHECK(series_orders(FiniteGroup::quaternion(16)) == std::vector<std::size_t>{16, 4, 2, 1});
    CHECK(series_orders(FiniteGroup::semidihedral(16)) == std::vector<std::size_t>{16, 4, 2, 1});
    CHECK(series_orders(FiniteGroup::heisenberg(3)) == std::vector<std::size_t>{27, 3, 1});
    CHECK(nilpotency_class(FiniteGroup::heisenberg(5)) == 2u);
    CHECK(nilpotency_class(FiniteGroup::cyclic(7)) == 1u);
    CHECK(nilpotency_class(FiniteGroup::trivial()) == 0u);
    // S3 = dihedral of order 6 is not nilpotent
    CHECK_FALSE(nilpotency_class(FiniteGroup::dihedral(6)).has_value());
    CHECK_THROWS_AS(lower_central_term(FiniteGroup::cyclic(2), 0), PreconditionError);
}

TEST_CASE("abelianizations") {
    CHECK(abelianization(FiniteGroup::dihedral(8)).group.structure() == "Z/2+Z/2");
    CHECK(abelianization(FiniteGroup::quaternion(8)).group.structure() == "Z/2+Z/2");
    CHECK(abelianization(FiniteGroup::dihedral(6)).group.structure() == "Z/2");
    CHECK(abelianization(FiniteGroup::heisenberg(4)).group.structure() == "Z/4+Z/4");
    CHECK(abelianization(FiniteGroup::abelian({2, 6})).group.structure() == "Z/2+Z/6");
    CHECK(abelianization(FiniteGroup::trivial()).group.is_trivial());
    // the abelianization factors through G / gamma_2, and the image map is a homomorphism
    for (const char* spec : {"dihedral:16", "heisenberg:3", "quaternion:16", "semidihedral:16"}) {
        const FiniteGroup g = build_family(spec).group;
        const Abelianization ab = abelianization(g);
        CHECK(ab.derived == lower_central_term(g, 2));
        const Quotient q = quotient(g, ab.derived);
        CHECK(q.group.is_abelian());
        CHECK(ab.group.order() == q.group.order());
        CHECK(abelianization(q.group).group.invariants() == ab.group.invariants());
        for (std::size_t a = 0; a < g.order(); a += 3)
            for (std::size_t b = 0; b < g.order(); b += 5)
                CHECK(ab.group.equal(ab.image[g.mul(a, b)], add(ab.image[a], ab.image[b])));
    }
}

TEST_CASE("subgroups, quotients and preimages") {
    const FiniteGroup g = FiniteGroup::dihedral(16);
    const Subgroup z = lower_central_term(g, 3);
    CHECK(z.order() == 2);
    CHECK(z.is_normal());
    const Quotient q = quotient(g, z);
    CHECK(q.group.order() == 8);
    CHECK(series_orders(q.group) == std::vector<std::size_t>{8, 2, 1});
    CHECK(preimage(g, q, Subgroup::trivial(q.group)) == z);
    CHECK(image(q, Subgroup::whole(g)) == Subgroup::whole(q.group));
    const Subgroup s = closure(g, {g.generators().back()});
    CHECK(intersection(s, z).is_trivial());
    CHECK(join(s, z).order() == 4);
    CHECK(normal_closure(g, {g.generators().back()}).order() == 8);
    CHECK(as_group(z).group.order() == 2);
    CHECK_THROWS_AS(quotient(g, s), PreconditionError);
    CHECK_THROWS_AS(Subgroup(g, {0, 1}), PreconditionError);
}

TEST_CASE("the distinguished pair") {
    const FamilyGroup c = build_family("cex:2,1,1");
    CHECK(c.group.order() == 64);
    REQUIRE(c.distinguished.has_value());
    const Subgroup& n = *c.distinguished;
    CHECK(n.order() == 16);
    CHECK(n.is_normal());
    const std::size_t z = c.named.at("z");
    CHECK(z != c.group.identity());
    CHECK(c.group.element_order(z) == 2);
    CHECK(c.group.pow(c.group.commutator(c.named.at("x"), c.named.at("y")), 2) == z);
    // [N, N] is trivial: N is abelian
    CHECK(commutator_subgroup(c.group, n, n).is_trivial());
    CHECK_THROWS_AS(cex(4, 1, 1), PreconditionError);
    CHECK_THROWS_AS(cex(2, 2, 1), PreconditionError);
}

TEST_CASE("json round trip") {
    const FiniteGroup g = FiniteGroup::quaternion(8).with_name("q8");
    const FiniteGroup h = FiniteGroup::from_json(g.to_json());
    CHECK(h.order() == 8);
    CHECK(h.name() == "q8");
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) CHECK(h.mul(a, b) == g.mul(a, b));
    const std::string path = "dimquot_test_group.json";
    {
        std::ofstream out(path);
        out << g.to_json();
    }
    CHECK(build_family("file:" + path).group.order() == 8);
    std::remove(path.c_str());
}

TEST_CASE("invalid tables and specs") {
    // Z/3 with a broken row
    CHECK_THROWS_AS(FiniteGroup(3, {0, 1, 2, 1, 1, 0, 2, 0, 1}, {1}), PreconditionError);
    // a Latin square with identity that is not associative (order 5)
    const std::vector<std::uint16_t> latin{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup(5, latin, {1, 2}), PreconditionError);
    CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 0}, {0}), PreconditionError);
    CHECK_THROWS_AS(FiniteGroup::from_json("{\"order\": 2}"), ParseError);
    CHECK_THROWS_AS(FiniteGroup::from_json("not json"), ParseError);
    CHECK_THROWS_AS(build_family("sporadic:7"), ParseError);
    CHECK_THROWS_AS(build_family("cyclic:"), ParseError);
    CHECK_THROWS_AS(build_family("cyclic:2,3"), ParseError);
    CHECK_THROWS_AS(build_family("dihedral:7"), PreconditionError);
    CHECK_THROWS_AS(build_family("cyclic:20000"), ResourceLimitError);
    CHECK_THROWS_AS(build_family("heisenberg:30"), ResourceLimitError);
    CHECK_THROWS_AS(build_family("file:/nonexistent/group.json"), ParseError);
}
