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
#include "dimquot/linalg.hpp"
#include "test_util.hpp"

using namespace dimquot;
using dqtest::uniform;

TEST_CASE("hnf examples") {
    CHECK(hnf(IntMatrix{{0, 1}, {1, 0}}).basis() == IntMatrix{{1, 0}, {0, 1}});
    CHECK(hnf(IntMatrix{{2, 4}, {6, 8}}).basis() == IntMatrix{{2, 0}, {0, 4}});
    const Lattice z = hnf(IntMatrix{{0, 0}});
    CHECK(z.rank() == 0);
    CHECK(z.ambient_rank() == 2);
}

TEST_CASE("hnf is canonical under unimodular row operations") {
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = static_cast<std::size_t>(uniform(1, 5));
        const std::size_t cols = static_cast<std::size_t>(uniform(1, 6));
        const IntMatrix m = dqtest::random_matrix(rows, cols, -6, 6);
        const Lattice l = hnf(m);
        CHECK(hnf(dqtest::random_unimodular(rows) * m) == l);
        CHECK(hnf(l.basis()) == l);
        for (std::size_t i = 0; i < rows; ++i) CHECK(l.contains(m.row(i)));
        // pivots strictly increase and entries above pivots are reduced
        for (std::size_t i = 0; i < l.rank(); ++i) {
            const std::size_t p = l.pivots()[i];
            CHECK(l.basis()(i, p) > 0);
            if (i > 0) CHECK(l.pivots()[i - 1] < p);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(l.basis()(k, p) >= 0);
                CHECK(l.basis()(k, p) < l.basis()(i, p));
            }
        }
    }
}

TEST_CASE("modular hnf agrees with the plain algorithm") {
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(uniform(1, 5));
        IntMatrix m = dqtest::random_matrix(static_cast<std::size_t>(uniform(1, 6)), n, -9, 9);
        const Integer modulus = uniform(1, 30);
        IntMatrix stacked = m;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e = unit_vector(n, i);
            e[i] = modulus;
            stacked.append_row(e);
        }
        CHECK(hnf_modular(m, modulus) == hnf(stacked));
    }
}

TEST_CASE("arbitrary precision entries") {
    const Integer big = Integer(1) << 200;
    const Lattice l = hnf(IntMatrix::from_rows({IntVector{big, Integer(3)}, IntVector{Integer(0), Integer(big + 1)}}, 2));
    CHECK(l.determinant() == big * (big + 1));
    CHECK(l.contains(IntVector{Integer(big * 2), Integer(6)}));
}

TEST_CASE("snf examples and contract") {
    auto check = [](const IntMatrix& m) {
        const SmithForm s = snf(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(abs(determinant(s.u)) == 1);
        CHECK(abs(determinant(s.v)) == 1);
        CHECK(s.v * s.v_inv == IntMatrix::identity(m.cols()));
        const auto diag = s.diagonal();
        for (std::size_t i = 0; i < diag.size(); ++i) {
            CHECK(diag[i] >= 0);
            if (i + 1 < diag.size() && diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
            if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
        }
        for (std::size_t r = 0; r < s.d.rows(); ++r)
            for (std::size_t c = 0; c < s.d.cols(); ++c)
                if (r != c) CHECK(s.d(r, c) == 0);
        return diag;
    };
    CHECK(check(IntMatrix::identity(3)) == std::vector<Integer>{1, 1, 1});
    CHECK(check(IntMatrix{{2, 4}, {6, 8}}) == std::vector<Integer>{2, 4});
    CHECK(check(IntMatrix(2, 3)) == std::vector<Integer>{0, 0});
    for (int trial = 0; trial < 50; ++trial) {
        const IntMatrix m = dqtest::random_matrix(static_cast<std::size_t>(uniform(1, 5)),
                                                  static_cast<std::size_t>(uniform(1, 5)), -7, 7);
        const auto diag = check(m);
        // d_1 is the gcd of all entries
        Integer g = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) g = gcd(g, m(r, c));
        CHECK(diag[0] == g);
    }
}

TEST_CASE("lattice intersection examples") {
    const Lattice two = Lattice::scaled_full(2, 2);
    const Lattice three = Lattice::scaled_full(2, 3);
    CHECK(lattice_intersect(two, three) == Lattice::scaled_full(2, 6));
    CHECK(lattice_intersect(two, two) == two);
    const Lattice a = span({IntVector{1, 1}}, 2);
    const Lattice b = span({IntVector{1, -1}}, 2);
    // span{(1,1)} and span{(1,-1)} meet only in 0
    CHECK(lattice_intersect(a, b).rank() == 0);
    for (const auto& v : dqtest::combinations(IntMatrix{{1, 1}}, 10)) {
        if (dqtest::combinations(IntMatrix{{1, -1}}, 10).count(v)) CHECK(v == std::vector<long>{0, 0});
    }
    CHECK_THROWS_AS(lattice_intersect(two, Lattice::full(3)), PreconditionError);
}

TEST_CASE("lattice intersection against enumeration") {
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = static_cast<std::size_t>(uniform(1, 4));
        const IntMatrix m1 = dqtest::random_matrix(static_cast<std::size_t>(uniform(1, 3)), dim, -5, 5);
        const IntMatrix m2 = dqtest::random_matrix(static_cast<std::size_t>(uniform(1, 3)), dim, -5, 5);
        const Lattice l1 = hnf(m1);
        const Lattice l2 = hnf(m2);
        const Lattice meet = lattice_intersect(l1, l2);
        CHECK(meet == lattice_intersect(l2, l1));
        CHECK(l1.contains(meet));
        CHECK(l2.contains(meet));
        const auto s1 = dqtest::combinations(m1, 8);
        const auto s2 = dqtest::combinations(m2, 8);
        for (const auto& v : s1) {
            if (s2.count(v)) CHECK(meet.contains(dqtest::to_int_vector(v)));
        }
    }
}

TEST_CASE("membership") {
    const Lattice l = hnf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(lattice_member({4, 6}, l));
    CHECK(lattice_member({0, 0}, l));
    CHECK_FALSE(lattice_member({1, 0}, Lattice::scaled_full(2, 2)));
    CHECK(*l.coordinates({4, 6}) == IntVector{2, 2});
    CHECK_THROWS(lattice_member({1, 2, 3}, l));
}

TEST_CASE("quotient invariants") {
    const Lattice z2 = Lattice::full(2);
    CHECK(quotient_invariants(z2, z2).is_trivial());
    const AbelianInvariants a = quotient_invariants(Lattice::scaled_full(2, 2), z2);
    CHECK(a.torsion == std::vector<Integer>{2, 2});
    CHECK(a.free_rank == 0);
    const AbelianInvariants b = quotient_invariants(span({IntVector{2, 0}}, 2), z2);
    CHECK(b.torsion == std::vector<Integer>{2});
    CHECK(b.free_rank == 1);
    CHECK(b.to_string() == "Z/2+Z");
    for (std::size_t k = 1; k <= 5; ++k) {
        CHECK(quotient_invariants(Lattice::scaled_full(k, 2), Lattice::full(k)).torsion ==
              std::vector<Integer>(k, Integer(2)));
    }
    CHECK_THROWS_AS(quotient_invariants(z2, Lattice::scaled_full(2, 2)), PreconditionError);
}

TEST_CASE("left kernel") {
    for (int trial = 0; trial < 30; ++trial) {
        const IntMatrix m = dqtest::random_matrix(static_cast<std::size_t>(uniform(1, 5)),
                                                  static_cast<std::size_t>(uniform(1, 4)), -4, 4);
        const Lattice k = left_kernel(m);
        for (const auto& row : k.basis().row_vectors()) CHECK(is_zero(row * m));
        // the kernel is saturated and of the right rank
        const SmithForm s = snf(m);
        std::size_t r = 0;
        for (const auto& d : s.diagonal()) r += d != 0 ? 1 : 0;
        CHECK(k.rank() == m.rows() - r);
    }
}
