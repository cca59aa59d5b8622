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

#include <map>

#include "dimquot/errors.hpp"
#include "dimquot/magnus.hpp"
#include "test_util.hpp"

using namespace dimquot;

namespace {

    // Sparse noncommutative polynomials truncated at a degree, as an oracle
    // independent of the dense TruncatedTensor storage.
    using Poly = std::map<Word, Integer>;

    Poly mul(const Poly& a, const Poly& b, unsigned d) {
        Poly out;
        for (const auto& [u, x] : a)
            for (const auto& [v, y] : b) {
                if (u.size() + v.size() > d) continue;
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out[w] += x * y;
            }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    Poly letter_poly(unsigned i, int exponent, unsigned d) {
        Poly p{{Word{}, 1}};
        if (exponent > 0) {
            p[Word{i}] = 1;
        } else {
            // 1 - X + X^2 - ...
            Word w;
            for (unsigned k = 1; k <= d; ++k) {
                w.push_back(i);
                p[w] = k % 2 == 1 ? -1 : 1;
            }
        }
        return p;
    }

    Poly expand_poly(const FreeWord& w, unsigned d) {
        Poly p{{Word{}, 1}};
        for (const auto& l : w.letters()) p = mul(p, letter_poly(l.index, l.exponent, d), d);
        return p;
    }

    IntVector to_flat(const Poly& p, unsigned r, unsigned d) {
        IntVector v(flat_dimension(r, d));
        for (const auto& [w, c] : p) {
            if (w.empty()) continue;
            std::size_t idx = 0;
            for (unsigned a : w) idx = idx * r + a;
            v[degree_offset(r, static_cast<unsigned>(w.size())) + idx] = c;
        }
        return v;
    }

    std::vector<Word> monomials(unsigned r, unsigned max_len) {
        std::vector<Word> out{{}};
        std::vector<Word> layer{{}};
        for (unsigned k = 1; k <= max_len; ++k) {
            std::vector<Word> next;
            for (const auto& w : layer)
                for (unsigned a = 0; a < r; ++a) {
                    Word v = w;
                    v.push_back(a);
                    next.push_back(v);
                }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }

    // Span of u (rho - 1) v over monomials u, v.
    Lattice naive_relator_ideal(const std::vector<FreeWord>& rels, unsigned r, unsigned d) {
        std::vector<IntVector> rows;
        const auto mons = monomials(r, d);
        for (const auto& rho : rels) {
            Poly p = expand_poly(rho, d);
            p.erase(Word{});
            for (const auto& u : mons)
                for (const auto& v : mons) {
                    if (u.size() + v.size() >= d) continue;
                    const Poly q = mul(mul(Poly{{u, 1}}, p, d), Poly{{v, 1}}, d);
                    rows.push_back(to_flat(q, r, d));
                }
        }
        return span(rows, flat_dimension(r, d));
    }

    FreeWord x(unsigned r, unsigned i) { return FreeWord::generator(r, i); }

}  // namespace

TEST_CASE("free words") {
    const FreeWord a = x(2, 0);
    const FreeWord b = x(2, 1);
    CHECK((a * a.inverse()).is_identity());
    CHECK((a * b * b.inverse() * a).to_string() == "x1 x1");
    CHECK(a.pow(-2).to_string() == "x1^-1 x1^-1");
    CHECK(commutator(a, b).to_string() == "x1 x2 x1^-1 x2^-1");
    CHECK(commutator(a, b).in_derived());
    CHECK_FALSE((a * b).in_derived());
    CHECK((a.pow(3) * b.inverse()).exponent_sums() == std::vector<long>{3, -1});
    CHECK(left_normed({a, b, a}) == commutator(commutator(a, b), a));
    CHECK(FreeWord(2).to_string() == "e");
    CHECK_THROWS_AS(a * x(3, 0), PreconditionError);
    CHECK_THROWS_AS(left_normed({}), PreconditionError);
}

TEST_CASE("relator parser") {
    CHECK(parse_word("[1,2]", 2) == commutator(x(2, 0), x(2, 1)));
    CHECK(parse_word("x1^2 x2^-1", 2) == x(2, 0).pow(2) * x(2, 1).inverse());
    CHECK(parse_word("1*2", 2) == x(2, 0) * x(2, 1));
    CHECK(parse_word("(1 2)^-1", 2) == (x(2, 0) * x(2, 1)).inverse());
    CHECK(parse_word("[1,2,3]", 3) == left_normed({x(3, 0), x(3, 1), x(3, 2)}));
    CHECK(parse_word("[1 2, 2]^2", 2) == commutator(x(2, 0) * x(2, 1), x(2, 1)).pow(2));
    CHECK(parse_word("e", 2).is_identity());
    CHECK(parse_word("  ", 2).is_identity());
    CHECK(parse_relators("[1,2]; x1^2;;", 2).size() == 2);
    for (const char* bad : {"x3", "[1]", "1^", "(1", "1 + 2", "0", "[1,2", "x"}) {
        CHECK_THROWS_AS_MESSAGE(parse_word(bad, 2), ParseError, std::string(bad));
    }
}

TEST_CASE("Magnus expansion examples") {
    const TruncatedTensor c = magnus_expand(commutator(x(2, 0), x(2, 1)), 2);
    CHECK(c.constant() == 1);
    CHECK(c.degree(1) == IntVector{0, 0});
    CHECK(c.degree(2) == IntVector{0, 1, -1, 0});
    CHECK(magnus_expand(x(2, 0) * x(2, 0).inverse(), 4) == TruncatedTensor::one(2, 4));
    const TruncatedTensor inv = magnus_expand(x(1, 0).inverse(), 4);
    CHECK(inv.coefficient({0, 0, 0}) == -1);
    CHECK(inv.coefficient({0, 0, 0, 0}) == 1);
    CHECK(magnus_expand(x(1, 0).pow(3), 3).coefficient({0, 0}) == 3);
    CHECK_THROWS_AS(magnus_expand(x(1, 0), kMaxMagnusDegree + 1), ResourceLimitError);
}

TEST_CASE("Magnus expansion against a sparse oracle") {
    std::mt19937_64 rng(11);
    for (unsigned r = 1; r <= 3; ++r) {
        for (int trial = 0; trial < 20; ++trial) {
            const FreeWord w = random_word(r, 1 + trial % 8, rng);
            for (unsigned d = 1; d <= 4; ++d) {
                const TruncatedTensor t = magnus_expand(w, d);
                const Poly p = expand_poly(w, d);
                CHECK(t.constant() == 1);
                CHECK(t.flat() == to_flat(p, r, d));
            }
        }
    }
}

TEST_CASE("Magnus expansion is multiplicative") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned r = 2 + trial % 3;
        const FreeWord u = random_word(r, static_cast<std::size_t>(trial % 8), rng);
        const FreeWord v = random_word(r, static_cast<std::size_t>((trial * 5) % 8), rng);
        for (unsigned d = 1; d <= 4; ++d) CHECK(magnus_expand(u * v, d) == magnus_expand(u, d) * magnus_expand(v, d));
        CHECK(magnus_expand(u, 4) * magnus_expand(u.inverse(), 4) == TruncatedTensor::one(r, 4));
    }
}

TEST_CASE("commutators start with their Lie leading term") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const unsigned r = 2 + trial % 2;
        const unsigned k = 2 + trial % 3;
        std::vector<FreeWord> ws;
        for (unsigned i = 0; i < k; ++i) ws.push_back(random_word(r, 1 + (trial + i) % 3, rng));
        const TruncatedTensor e = magnus_expand(left_normed(ws), k) - TruncatedTensor::one(r, k);
        const IntVector lead = lie_leading_term(ws);
        CHECK(e.valuation() >= k);
        CHECK(e.degree(k) == lead);
        // the leading term is a Lie element
        CHECK(LyndonBasis(r, k).coordinates(lead).has_value());
    }
    // [x1, x2, x2] leads with the bracket polynomial of letters
    const IntVector x1 = unit_vector(2, 0), x2 = unit_vector(2, 1);
    CHECK(lie_leading_term({x(2, 0), x(2, 1), x(2, 1)}) == lie_bracket(lie_bracket(x1, x2, 2), x2, 2));
}

TEST_CASE("truncated tensor arithmetic") {
    const TruncatedTensor a = TruncatedTensor::letter(2, 3, 0);
    const TruncatedTensor b = TruncatedTensor::letter(2, 3, 1);
    CHECK((a * b).coefficient({0, 1}) == 1);
    CHECK(a.times_letter(1) == a * b);
    CHECK(a.letter_times(1) == b * a);
    CHECK((a * a * a * a).is_zero());
    CHECK((a * b).valuation() == 2);
    CHECK(TruncatedTensor(2, 3).valuation() == 4);
    CHECK(TruncatedTensor::from_flat(2, 3, (a * b + Integer(3) * a).flat()) == a * b + Integer(3) * a);
    CHECK((a * b).truncate(1).is_zero());
    CHECK_THROWS_AS(a + TruncatedTensor::letter(3, 3, 0), PreconditionError);
    CHECK_THROWS_AS(TruncatedTensor::from_flat(2, 3, IntVector(5)), PreconditionError);
}

TEST_CASE("relator ideals") {
    // x^2 in rank 1: (1+X)^2 - 1 = 2X + X^2
    const Lattice l = relator_ideal({x(1, 0).pow(2)}, 1, 3);
    CHECK(l.basis() == IntMatrix{{2, 1, 0}, {0, 2, 1}, {0, 0, 2}});
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 12; ++trial) {
        const unsigned r = 1 + trial % 3;
        const unsigned d = 2 + trial % 2;
        std::vector<FreeWord> rels{random_word(r, 2 + trial % 4, rng)};
        if (trial % 2 == 0) rels.push_back(random_word(r, 3, rng));
        CHECK(relator_ideal(rels, r, d) == naive_relator_ideal(rels, r, d));
    }
}

TEST_CASE("filtration lattices") {
    const auto rels = parse_relators("[1,2]", 2);
    const FiltrationLattices fl = filtration_lattices(rels, 2, 4);
    REQUIRE(fl.f.size() == 6);
    REQUIRE(fl.r.size() == 4);
    CHECK(fl.f[1] == Lattice::full(flat_dimension(2, 4)));
    CHECK(fl.f[5].rank() == 0);
    for (unsigned k = 1; k <= 4; ++k) {
        CHECK(fl.f[k].rank() == flat_dimension(2, 4) - degree_offset(2, k));
        CHECK(fox_step(fl.f[k], 2, 4) == fl.f[k + 1]);
    }
    for (unsigned k = 0; k < 4; ++k) CHECK(fl.f[k + 1].contains(fl.r[k]));
    for (unsigned k = 1; k < 4; ++k) {
        CHECK(fl.r[k - 1].contains(fl.r[k]));
        CHECK(fl.r[k] == fox_step(fl.r[k - 1], 2, 4));
    }
    // the commutator relator generates nothing in degree 1
    CHECK_FALSE(fl.r[0].contains(TruncatedTensor::letter(2, 4, 0).flat()));
    CHECK_THROWS_AS(filtration_lattices(rels, 2, kMaxFiltrationDegree + 1), ResourceLimitError);
    CHECK_THROWS_AS(filtration_lattices(parse_relators("1", 1), 2, 3), PreconditionError);
}

TEST_CASE("sampled elements lie in the truncated ideals") {
    std::mt19937_64 rng(15);
    for (const char* rels : {"[1,2]", "1^2", "1^2; 2^4", "[1,2]^2", "1^2 2^-2"}) {
        const auto ws = parse_relators(rels, 2);
        for (unsigned n = 1; n <= 3; ++n) {
            const SjogrenReport rep = sjogren_inclusion_check(ws, 2, n, 6, rng);
            CHECK_MESSAGE(rep.ok(), rels << " n=" << n << " " << rep.first_failure);
            CHECK(rep.samples == 6);
        }
    }
    CHECK_THROWS_AS(sjogren_inclusion_check(parse_relators("1", 1), 1, 4, 1, rng), ResourceLimitError);
}

TEST_CASE("identification lemma lattice") {
    const IntVector g = idlemma_generator(3, 0, 1, 2);
    const Lattice l = idlemma_lattice(3);
    CHECK(l.contains(g));
    const TruncatedTensor u = TruncatedTensor::homogeneous(3, 3, 3, g);
    CHECK(idlemma_check(u, 1));
    CHECK_FALSE(idlemma_check(u, 2));
    CHECK(idlemma_check(Integer(2) * u, 2));
    // X3 (X1 X2 - X2 X1) is not a right multiple of a commutator
    const TruncatedTensor x1 = TruncatedTensor::letter(3, 3, 0);
    const TruncatedTensor x2 = TruncatedTensor::letter(3, 3, 1);
    const TruncatedTensor x3 = TruncatedTensor::letter(3, 3, 2);
    CHECK_FALSE(idlemma_check(x3 * (x1 * x2 - x2 * x1), 1));
    CHECK(idlemma_check(TruncatedTensor(3, 3), 5));
    CHECK_THROWS_AS(idlemma_check(x1, 1), PreconditionError);
    CHECK_THROWS_AS(idlemma_check(u, 0), PreconditionError);
}

TEST_CASE("the square of the relation ideal in degree three") {
    for (const char* rels : {"[1,2]", "[1,2]^2", "[1,2,1]", "[1,2]^3 [1,2,2]"}) {
        const MsqReport m = msq_equality(parse_relators(rels, 2), 2);
        CHECK_MESSAGE(m.equal(), rels);
    }
    CHECK(msq_equality(parse_relators("[1,2]; [2,3]", 3), 3).equal());
    CHECK_THROWS_AS(msq_equality(parse_relators("1^2", 2), 2), PreconditionError);
    CHECK_THROWS_AS(msq_equality(parse_relators("[1,2]", 4), 4), ResourceLimitError);
}

TEST_CASE("random relator sets") {
    std::mt19937_64 rng(16);
    for (unsigned r = 2; r <= 3; ++r) {
        for (int trial = 0; trial < 6; ++trial) {
            const auto rels = random_commutator_relators(r, rng);
            REQUIRE(!rels.empty());
            for (const auto& w : rels) {
                CHECK(w.in_derived());
                CHECK_FALSE(w.is_identity());
            }
            CHECK(msq_equality(rels, r).equal());
            CHECK(msq_generator_sanity(rels, r, 8, rng) == 0);
        }
    }
}
