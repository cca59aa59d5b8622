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
#include "dimquot/liefun.hpp"
#include "test_util.hpp"

using namespace dimquot;

namespace {

    bool is_lyndon(const Word& w) {
        for (std::size_t k = 1; k < w.size(); ++k) {
            const Word suffix(w.begin() + static_cast<long>(k), w.end());
            if (!(w < suffix)) return false;
        }
        return !w.empty();
    }

    std::vector<Word> all_words(unsigned r, unsigned n) {
        std::vector<Word> out{{}};
        for (unsigned k = 0; k < n; ++k) {
            std::vector<Word> next;
            for (const auto& w : out)
                for (unsigned a = 0; a < r; ++a) {
                    Word v = w;
                    v.push_back(a);
                    next.push_back(v);
                }
            out = std::move(next);
        }
        return out;
    }

    std::size_t flat_index(const Word& w, unsigned r) {
        std::size_t i = 0;
        for (unsigned a : w) i = i * r + a;
        return i;
    }

    IntVector letter(unsigned r, unsigned a) { return unit_vector(r, a); }

}  // namespace

TEST_CASE("Lyndon words against enumeration") {
    for (unsigned r = 1; r <= 4; ++r) {
        for (unsigned n = 1; n <= 5; ++n) {
            std::vector<Word> expected;
            for (const auto& w : all_words(r, n))
                if (is_lyndon(w)) expected.push_back(w);
            CHECK(lyndon_words(r, n) == expected);
            CHECK(witt_number(r, n) == static_cast<unsigned long>(expected.size()));
        }
    }
    CHECK(witt_number(2, 6) == 9);
    CHECK(witt_number(3, 4) == 18);
}

TEST_CASE("standard factorization") {
    CHECK(standard_factorization({0, 1}) == std::pair<Word, Word>{{0}, {1}});
    CHECK(standard_factorization({0, 0, 1}) == std::pair<Word, Word>{{0}, {0, 1}});
    CHECK(standard_factorization({0, 1, 1}) == std::pair<Word, Word>{{0, 1}, {1}});
    CHECK(standard_factorization({0, 1, 0, 1, 1}) == std::pair<Word, Word>{{0, 1}, {0, 1, 1}});
    for (const auto& w : lyndon_words(3, 4)) {
        const auto [u, v] = standard_factorization(w);
        CHECK(is_lyndon(u));
        CHECK(is_lyndon(v));
        CHECK(u < v);
    }
}

TEST_CASE("bracket expansions") {
    const IntVector x = letter(2, 0);
    const IntVector y = letter(2, 1);
    // [x, y] = xy - yx
    CHECK(lie_bracket(x, y, 2) == IntVector{0, 1, -1, 0});
    // [x, [x, y]] = xxy - 2xyx + yxx
    CHECK(lie_bracket(x, lie_bracket(x, y, 2), 2) == IntVector{0, 1, -2, 0, 1, 0, 0, 0});
    const LyndonBasis b(2, 3);
    REQUIRE(b.size() == 2);
    CHECK(b.bracketing(0, {"x", "y"}) == "[x,[x,y]]");
    CHECK(b.bracketing(1, {"x", "y"}) == "[[x,y],y]");
    CHECK(b.expansion(0) == lie_bracket(x, lie_bracket(x, y, 2), 2));
    CHECK_FALSE(b.coordinates(IntVector{1, 0, 0, 0, 0, 0, 0, 0}).has_value());
}

TEST_CASE("Lyndon expansions are triangular") {
    for (unsigned r = 2; r <= 3; ++r) {
        for (unsigned n = 2; n <= 4; ++n) {
            const LyndonBasis b(r, n);
            for (std::size_t i = 0; i < b.size(); ++i) {
                const IntVector e = b.expansion(i);
                // the word itself appears with coefficient 1 and no smaller word occurs
                const std::size_t lead = flat_index(b.words()[i], r);
                CHECK(e[lead] == 1);
                for (std::size_t k = 0; k < lead; ++k) CHECK(e[k] == 0);
                IntVector unit(b.size());
                unit[i] = 1;
                CHECK(b.coordinates(e) == unit);
            }
            // Jacobi: brackets of Lie elements stay in the span
            if (n == 3) {
                const IntVector xy = lie_bracket(letter(r, 0), letter(r, 1), r);
                CHECK(b.coordinates(lie_bracket(xy, letter(r, r - 1), r)).has_value());
                CHECK(b.coordinates(lie_bracket(letter(r, 1), xy, r)).has_value());
            }
        }
    }
}

TEST_CASE("Lie components of abelian groups") {
    for (unsigned r = 1; r <= 3; ++r) {
        const FPAbGroup z = FPAbGroup::free(r);
        for (unsigned n = 1; n <= 4; ++n) {
            const LieComponent l = lie_component(z, n);
            CHECK(l.group.free_rank() == witt_number(r, n).get_ui());
            CHECK(l.group.is_finite() == (l.group.free_rank() == 0));
            CHECK(l.l.is_injective());
        }
        // odd torsion behaves like the free case
        const FPAbGroup a = FPAbGroup::diagonal(std::vector<Integer>(r, Integer(3)));
        Integer expected;
        mpz_ui_pow_ui(expected.get_mpz_t(), 3, witt_number(r, 3).get_ui());
        CHECK(lie_component(a, 3).group.order() == expected);
    }
    for (const char* s : {"Z/2", "Z/2+Z/4", "Z/3+Z/9", "Z^2", "Z/2+Z"}) {
        const FPAbGroup a = FPAbGroup::parse(s);
        CHECK_MESSAGE(lie_component(a, 1).group.invariants() == a.invariants(), s);
        CHECK_MESSAGE(lie_component(a, 2).group.invariants() == lambda2(a).group.invariants(), s);
        CHECK_MESSAGE(s_n(a, 2).group.invariants() == sp(a, 2).group.invariants(), s);
    }
    CHECK(lie_component(FPAbGroup::cyclic(2), 3).group.is_trivial());
    CHECK_THROWS_AS(lie_component(FPAbGroup::cyclic(2), kMaxLieDegree + 1), PreconditionError);
    CHECK_THROWS_AS(lie_component(FPAbGroup::cyclic(2), 0), PreconditionError);
}

TEST_CASE("Lie maps are natural") {
    const FPAbGroup a = FPAbGroup::parse("Z/4+Z/2");
    const FPAbGroup b = FPAbGroup::parse("Z/4+Z/4");
    const AbHom f = AbHom::from_images(a, b, {{1, 1}, {2, 0}});
    const AbHom g = AbHom::from_images(b, a, {{1, 0}, {1, 1}});
    for (unsigned n = 2; n <= 3; ++n) {
        const LieComponent la = lie_component(a, n);
        const LieComponent lb = lie_component(b, n);
        CHECK(compose(lb.l, lie_map(la, lb, f)) == compose(tensor_power_map(f, n), la.l));
        CHECK(lie_map(la, la, compose(g, f)) == compose(lie_map(lb, la, g), lie_map(la, lb, f)));
        CHECK(lie_map(la, la, AbHom::identity(a)) == AbHom::identity(la.group));
    }
}

TEST_CASE("PBW sequence") {
    for (const char* s : {"Z^2", "Z^3", "Z/2", "Z/2+Z/2", "Z/2+Z/4", "Z/3+Z/3", "Z/2+Z/2+Z/2"}) {
        const PbwReport r = pbw_check(FPAbGroup::parse(s));
        CHECK_MESSAGE(r.injective, s);
        CHECK_MESSAGE(r.complex, s);
        CHECK_MESSAGE(r.exact_middle, s);
        CHECK_MESSAGE(r.surjective, s);
        CHECK(r.exact());
    }
    CHECK_THROWS_AS(pbw_check(FPAbGroup::parse("Z/4+Z")), ResourceLimitError);
}
