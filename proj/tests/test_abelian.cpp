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

#include <numeric>

#include "dimquot/abelian.hpp"
#include "dimquot/errors.hpp"
#include "test_util.hpp"

using namespace dimquot;
using dqtest::uniform;

namespace {

    FPAbGroup diag(std::initializer_list<long> orders) {
        std::vector<Integer> v;
        for (long o : orders) v.emplace_back(o);
        return FPAbGroup::diagonal(v);
    }

    Integer gcd_product(const std::vector<Integer>& d) {
        Integer out = 1;
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) out *= gcd(d[i], d[j]);
        return out;
    }

    std::vector<Integer> random_orders(std::size_t k, long max) {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < k; ++i) d.emplace_back(uniform(1, max));
        return d;
    }

}  // namespace

TEST_CASE("parse and structure") {
    CHECK(FPAbGroup::parse("Z/2+Z/4+Z").structure() == "Z/2+Z/4+Z");
    CHECK(FPAbGroup::parse("Z/6").structure() == "Z/6");
    CHECK(FPAbGroup::parse("Z/2+Z/3").order() == 6);
    CHECK(FPAbGroup::parse("Z/2+Z/3").invariants().torsion == std::vector<Integer>{6});
    CHECK(FPAbGroup::parse("(Z/2)^3").order() == 8);
    CHECK(FPAbGroup::parse("Z^2").free_rank() == 2);
    CHECK(FPAbGroup::parse("0").is_trivial());
    CHECK_THROWS_AS(FPAbGroup::parse("Z/"), ParseError);
    CHECK_THROWS_AS(FPAbGroup::parse("Q"), ParseError);
}

TEST_CASE("element arithmetic") {
    const FPAbGroup g = diag({4, 6});
    CHECK(g.element_order({1, 0}) == 4);
    CHECK(g.element_order({1, 1}) == 12);
    CHECK(g.element_order({2, 3}) == 2);
    CHECK(g.is_zero({4, -6}));
    CHECK(g.elements().size() == 24);
    const std::vector<std::pair<Integer, Integer>> primary{{2, 2}, {2, 4}, {3, 3}};
    CHECK(g.primary_decomposition() == primary);
    const FPAbGroup z = FPAbGroup::free(1);
    CHECK(z.element_order({3}) == 0);
}

TEST_CASE("homomorphisms") {
    const FPAbGroup z4 = FPAbGroup::cyclic(4);
    const FPAbGroup z2 = FPAbGroup::cyclic(2);
    const AbHom proj = AbHom::from_images(z4, z2, {{1}});
    CHECK(proj.is_surjective());
    CHECK_FALSE(proj.is_injective());
    const AbHom incl = AbHom::from_images(z2, z4, {{2}});
    CHECK(incl.is_injective());
    CHECK(compose(proj, incl).is_zero());
    CHECK_THROWS_AS(AbHom::from_images(z2, z4, {{1}}), PreconditionError);
    const HomDecomposition d = hom_decompose(proj);
    CHECK(d.kernel.order() == 2);
    CHECK(d.cokernel.is_trivial());
    CHECK(d.image.order() == 2);
}

TEST_CASE("random homomorphism decompositions") {
    for (int trial = 0; trial < 30; ++trial) {
        const FPAbGroup a = FPAbGroup::diagonal(random_orders(static_cast<std::size_t>(uniform(1, 3)), 8));
        const FPAbGroup b = FPAbGroup::diagonal(random_orders(static_cast<std::size_t>(uniform(1, 3)), 8));
        // images of generators: scale a random element by the order bound so the map is defined
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < a.generator_count(); ++i) {
            IntVector y(b.generator_count());
            const Integer oi = a.require_diagonal("test")[i];
            for (std::size_t j = 0; j < y.size(); ++j) {
                const Integer oj = b.require_diagonal("test")[j];
                y[j] = Integer(uniform(0, 7)) * (oj / gcd(oi, oj));
            }
            images.push_back(y);
        }
        const AbHom f = AbHom::from_images(a, b, images);
        const HomDecomposition d = hom_decompose(f);
        // |A| = |ker| |im| and |B| = |im| |coker|
        CHECK(a.order() == d.kernel.order() * d.image.order());
        CHECK(b.order() == d.image.order() * d.cokernel.order());
        CHECK(compose(f, d.kernel_inclusion).is_zero());
        CHECK(compose(d.cokernel_projection, f).is_zero());
        // enumeration oracle for the image size
        std::set<IntVector> img;
        for (const auto& x : a.elements()) img.insert(b.reduce(f(x)));
        CHECK(Integer(static_cast<unsigned long>(img.size())) == d.image.order());
        const HomSolver solver(f);
        for (const auto& y : b.elements()) CHECK(solver.solve(y).has_value() == (img.count(b.reduce(y)) > 0));
    }
}

TEST_CASE("tensor and tor of cyclic groups") {
    for (long m = 1; m <= 12; ++m) {
        for (long n = 1; n <= 12; ++n) {
            const FPAbGroup a = FPAbGroup::cyclic(m);
            const FPAbGroup b = FPAbGroup::cyclic(n);
            const long g = std::gcd(m, n);
            CHECK(tensor(a, b).order() == g);
            CHECK(TorModel(a, b).group().order() == g);
        }
    }
    CHECK(tensor(FPAbGroup::free(2), FPAbGroup::cyclic(3)).structure() == "Z/3+Z/3");
    CHECK(TorModel(FPAbGroup::free(1), FPAbGroup::cyclic(3)).group().is_trivial());
}

TEST_CASE("tor symmetry and tau relations") {
    for (int trial = 0; trial < 15; ++trial) {
        const FPAbGroup a = FPAbGroup::diagonal(random_orders(static_cast<std::size_t>(uniform(1, 3)), 12));
        const FPAbGroup c = FPAbGroup::diagonal(random_orders(static_cast<std::size_t>(uniform(1, 3)), 12));
        const TorModel ac(a, c);
        const TorModel ca(c, a);
        CHECK(ac.group().invariants() == ca.group().invariants());
        // Tor(A, C) order is the product of pairwise gcds
        Integer expected = 1;
        for (const auto& x : a.require_diagonal("t"))
            for (const auto& y : c.require_diagonal("t")) expected *= gcd(x, y);
        CHECK(ac.group().order() == expected);
        // tau_n(a, c) is additive in each variable
        const Integer m = a.exponent();
        for (int s = 0; s < 5; ++s) {
            IntVector x(a.generator_count()), y(c.generator_count()), y2(c.generator_count());
            for (auto& v : x) v = uniform(0, 11);
            const Integer n = gcd(m, c.exponent());
            // pick y with n*y = 0
            for (std::size_t j = 0; j < y.size(); ++j) {
                const Integer oj = c.require_diagonal("t")[j];
                y[j] = Integer(uniform(0, 5)) * (oj / gcd(oj, n));
                y2[j] = Integer(uniform(0, 5)) * (oj / gcd(oj, n));
            }
            IntVector xn(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                const Integer oi = a.require_diagonal("t")[i];
                xn[i] = x[i] * (oi / gcd(oi, n));
            }
            const IntVector t1 = ac.tau(xn, n, y);
            const IntVector t2 = ac.tau(xn, n, y2);
            CHECK(ac.group().equal(ac.tau(xn, n, add(y, y2)), add(t1, t2)));
            CHECK(ac.group().equal(ac.tau(scale(2, xn), n, y), scale(2, t1)));
        }
    }
}

TEST_CASE("exterior and symmetric powers") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_orders(static_cast<std::size_t>(uniform(1, 4)), 9);
        const FPAbGroup a = FPAbGroup::diagonal(d);
        CHECK(lambda2(a).group.order() == gcd_product(d));
        // SP^2 of a diagonal group: Z/d_i on the squares and Z/gcd on mixed terms
        Integer sp2 = gcd_product(d);
        for (const auto& x : d) sp2 *= x;
        CHECK(sp(a, 2).group.order() == sp2);
    }
    CHECK(lambda2(FPAbGroup::free(3)).group.structure() == "Z+Z+Z");
    CHECK(sp(FPAbGroup::free(2), 3).group.structure() == "Z+Z+Z+Z");
    CHECK(sp(diag({2, 2}), 3).group.order() == 16);
    CHECK(sp(diag({3}), 3).group.structure() == "Z/3");
}

TEST_CASE("Whitehead functor") {
    CHECK(gamma(FPAbGroup::cyclic(2)).structure() == "Z/4");
    CHECK(gamma(FPAbGroup::cyclic(4)).structure() == "Z/8");
    CHECK(gamma(FPAbGroup::cyclic(3)).structure() == "Z/3");
    CHECK(gamma(FPAbGroup::free(2)).structure() == "Z+Z+Z");
    CHECK(gamma(FPAbGroup::parse("Z/2+Z/2")).structure() == "Z/2+Z/4+Z/4");
    for (const char* s : {"Z/2", "Z/3", "Z/4", "Z/2+Z/2", "Z/6", "Z/2+Z/4", "Z/8", "(Z/2)^3", "Z/3+Z/3"}) {
        const FPAbGroup a = FPAbGroup::parse(s);
        CHECK_MESSAGE(gamma(a).invariants() == gamma_by_presentation(a).invariants(), s);
    }
}

TEST_CASE("Whitehead delta composed with w is 1 + twist") {
    for (int trial = 0; trial < 10; ++trial) {
        const FPAbGroup a = FPAbGroup::diagonal(random_orders(static_cast<std::size_t>(uniform(1, 3)), 8));
        const GammaModel g(a);
        const AbHom dw = compose(g.delta(), g.w());
        const std::size_t k = a.generator_count();
        std::vector<IntVector> twist_images;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) twist_images.push_back(tensor_element(a.generator(j), a.generator(i)));
        const FPAbGroup t = tensor(a, a);
        const AbHom twist = AbHom::from_images(t, t, twist_images);
        CHECK(dw == AbHom::identity(t) + twist);
        // gamma(-x) = gamma(x) and gamma(kx) = k^2 gamma(x)
        for (int s = 0; s < 4; ++s) {
            IntVector x(k);
            for (auto& v : x) v = uniform(-5, 5);
            CHECK(g.group().equal(g.gamma(x), g.gamma(scale(-1, x))));
            CHECK(g.group().equal(g.gamma(scale(3, x)), scale(9, g.gamma(x))));
        }
    }
}

TEST_CASE("tensor functoriality") {
    const FPAbGroup a = diag({4, 2});
    const FPAbGroup b = diag({8});
    const AbHom f = AbHom::from_images(a, b, {{2}, {4}});
    const AbHom g = AbHom::from_images(b, a, {{1, 1}});
    CHECK(tensor_map(compose(g, f), compose(g, f)) == compose(tensor_map(g, g), tensor_map(f, f)));
    CHECK(lambda2_map(compose(g, f)) == compose(lambda2_map(g), lambda2_map(f)));
    CHECK(sp_map(compose(g, f), 2) == compose(sp_map(g, 2), sp_map(f, 2)));
}

TEST_CASE("tensor is right exact") {
    // Z -2-> Z -> Z/2 -> 0 tensored with Z/4 stays exact on the right
    const FPAbGroup z = FPAbGroup::free(1);
    const FPAbGroup z4 = FPAbGroup::cyclic(4);
    const AbHom times2 = AbHom::from_images(z, z, {{2}});
    const AbHom t = tensor_map(times2, AbHom::identity(z4));
    const HomDecomposition d = hom_decompose(t);
    CHECK(d.cokernel.invariants() == tensor(FPAbGroup::cyclic(2), z4).invariants());
}
