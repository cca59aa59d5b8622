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

// Exact integer matrices and lattices (subgroups of Z^k) kept in Hermite normal form.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace dimquot {

    using Integer = mpz_class;
    using IntVector = std::vector<Integer>;

    /// Dense row-major matrix of arbitrary-precision integers.
    class IntMatrix {
    public:
        IntMatrix() = default;
        IntMatrix(std::size_t rows, std::size_t cols);
        IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

        static IntMatrix identity(std::size_t n);
        /// Builds a matrix from row vectors; every row must have length `cols`.
        static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        bool empty() const { return rows_ == 0; }

        Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        IntVector row(std::size_t r) const;
        std::vector<IntVector> row_vectors() const;
        void append_row(const IntVector& v);

        IntMatrix transpose() const;
        bool is_zero() const;

        friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
        friend bool operator==(const IntMatrix& a, const IntMatrix& b);

        std::string to_string() const;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Integer> data_;
    };

    /// Row vector times matrix.
    IntVector operator*(const IntVector& v, const IntMatrix& m);

    IntVector zero_vector(std::size_t n);
    IntVector unit_vector(std::size_t n, std::size_t i);
    bool is_zero(const IntVector& v);
    IntVector add(const IntVector& a, const IntVector& b);
    IntVector sub(const IntVector& a, const IntVector& b);
    IntVector scale(const Integer& s, const IntVector& v);
    /// Concatenation of two vectors.
    IntVector concat(const IntVector& a, const IntVector& b);
    /// a := a + s*b
    void axpy(IntVector& a, const Integer& s, const IntVector& b);

    Integer determinant(const IntMatrix& m);

    /// A subgroup of Z^k, stored by its unique row-style Hermite normal form basis:
    /// pivots strictly increase by row, pivots are positive, and entries above a
    /// pivot lie in [0, pivot). Two lattices are equal iff their bases are equal.
    class Lattice {
    public:
        explicit Lattice(std::size_t ambient_rank = 0);

        /// Adopts a matrix that is already in canonical HNF. Checked.
        static Lattice from_hnf(IntMatrix basis);
        static Lattice full(std::size_t ambient_rank);
        static Lattice scaled_full(std::size_t ambient_rank, const Integer& s);

        std::size_t ambient_rank() const { return ambient_; }
        std::size_t rank() const { return basis_.rows(); }
        bool is_full_rank() const { return rank() == ambient_; }
        const IntMatrix& basis() const { return basis_; }
        const std::vector<std::size_t>& pivots() const { return pivots_; }

        /// Coordinates of v with respect to the basis rows, if v lies in the lattice.
        std::optional<IntVector> coordinates(const IntVector& v) const;
        bool contains(const IntVector& v) const;
        bool contains(const Lattice& other) const;

        /// |det| of the basis for a full-rank lattice (= index in Z^k); 0 otherwise.
        Integer determinant() const;

        friend bool operator==(const Lattice& a, const Lattice& b) {
            return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
        }

    private:
        std::size_t ambient_;
        IntMatrix basis_;
        std::vector<std::size_t> pivots_;
    };

    /// Incremental Hermite normal form.
    ///
    /// Rows are kept in echelon form indexed by pivot column. A column may carry
    /// a modulus m > 0; the vector m*e_col is then a member of the lattice, and all
    /// entries of that column are reduced mod m. Once the lattice reaches full rank
    /// without moduli, the determinant is adopted as a uniform modulus, which
    /// keeps entries bounded for large generating sets.
    class HnfBuilder {
    public:
        explicit HnfBuilder(std::size_t dim);
        /// `moduli[c] > 0` asserts moduli[c]*e_c lies in the lattice being generated.
        HnfBuilder(std::size_t dim, std::vector<Integer> moduli);

        void add(IntVector v);
        void add_rows(const IntMatrix& m);
        /// Adds v only if it is not yet a member; returns true if the lattice grew.
        bool add_if_new(const IntVector& v);

        std::size_t dim() const { return dim_; }
        std::size_t rank() const { return rank_; }
        bool contains(const IntVector& v) const;
        Lattice lattice() const;

    private:
        void reduce(Integer& x, std::size_t col) const;
        void reduce_tail(IntVector& v, std::size_t from) const;
        void maybe_adopt_modulus();

        std::size_t dim_;
        std::vector<IntVector> rows_;
        std::vector<Integer> moduli_;
        std::size_t rank_ = 0;
        bool auto_modulus_ = true;
    };

    /// Canonical HNF lattice spanned by the rows of m.
    Lattice hnf(const IntMatrix& m);
    /// As hnf(m) for the lattice rowspan(m) + modulus*Z^k. Bit-identical to the
    /// plain algorithm when modulus*Z^k is contained in rowspan(m).
    Lattice hnf_modular(const IntMatrix& m, const Integer& modulus);

    /// Smith normal form: u * m * v = d with d diagonal, d_1 | d_2 | ..., d_i >= 0,
    /// u and v unimodular. v_inv is the inverse of v.
    struct SmithForm {
        IntMatrix d;
        IntMatrix u;
        IntMatrix v;
        IntMatrix v_inv;
        /// The min(rows, cols) diagonal entries.
        std::vector<Integer> diagonal() const;
    };
    SmithForm snf(const IntMatrix& m);

    /// Joint HNF of rows [left | right]. Rows whose pivot lies in the left block
    /// project to the HNF of the left projection; rows with pivot in the right
    /// block have zero left part and give the HNF of the intersection of the lattice
    /// with 0 + Z^right.
    struct SplitHnf {
        IntMatrix rows;         // full normalized HNF rows (left_dim + right_dim columns)
        std::size_t left_dim = 0;
        std::size_t split = 0;  // number of rows with pivot in the left block
        Lattice left() const;
        Lattice right() const;
    };
    SplitHnf split_hnf(const std::vector<IntVector>& rows, std::size_t left_dim, std::size_t right_dim,
                       const Integer& left_modulus = 0, const Integer& right_modulus = 0);

    Lattice lattice_sum(const Lattice& a, const Lattice& b);
    Lattice lattice_intersect(const Lattice& a, const Lattice& b);
    bool lattice_member(const IntVector& v, const Lattice& l);
    /// Lattice spanned by `vectors` inside Z^dim.
    Lattice span(const std::vector<IntVector>& vectors, std::size_t dim);

    /// Left kernel {x : x * m = 0} as a lattice in Z^rows.
    Lattice left_kernel(const IntMatrix& m);

    /// Structure of a finitely generated abelian group: Z/t_1 + ... + Z/t_s + Z^free_rank
    /// with 1 < t_1 | t_2 | ... | t_s.
    struct AbelianInvariants {
        std::vector<Integer> torsion;
        std::size_t free_rank = 0;

        bool is_trivial() const { return torsion.empty() && free_rank == 0; }
        bool is_finite() const { return free_rank == 0; }
        /// Group order; 0 for infinite groups.
        Integer order() const;
        /// Exponent; 0 for infinite groups, 1 for the trivial group.
        Integer exponent() const;
        /// E.g. "Z/2+Z/4+Z", or "0" for the trivial group.
        std::string to_string() const;

        friend bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
            return a.torsion == b.torsion && a.free_rank == b.free_rank;
        }
    };

    /// Invariants of a diagonal matrix read off as generator orders (SNF of the input).
    AbelianInvariants invariants_from_relations(const IntMatrix& relations, std::size_t generators);

    /// Structure of sup / sub. Throws PreconditionError unless sub is contained in sup.
    AbelianInvariants quotient_invariants(const Lattice& sub, const Lattice& sup);

    Integer binomial(long n, long k);
    std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

}  // namespace dimquot
