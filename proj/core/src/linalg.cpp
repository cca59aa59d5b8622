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

#include "dimquot/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "dimquot/errors.hpp"

namespace dimquot {

    // ---------------------------------------------------------------- IntMatrix

    IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw PreconditionError("IntMatrix: ragged initializer");
            }
            for (long x : r) {
                data_.emplace_back(x);
            }
        }
    }

    IntMatrix IntMatrix::identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        IntMatrix m(0, cols);
        for (const auto& r : rows) {
            m.append_row(r);
        }
        return m;
    }

    IntVector IntMatrix::row(std::size_t r) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    std::vector<IntVector> IntMatrix::row_vectors() const {
        std::vector<IntVector> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out.push_back(row(r));
        }
        return out;
    }

    void IntMatrix::append_row(const IntVector& v) {
        if (v.size() != cols_) {
            throw PreconditionError("IntMatrix::append_row: length " + std::to_string(v.size()) + " != " +
                                    std::to_string(cols_));
        }
        data_.insert(data_.end(), v.begin(), v.end());
        ++rows_;
    }

    IntMatrix IntMatrix::transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    bool IntMatrix::is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
    }

    IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw PreconditionError("IntMatrix product: shape mismatch");
        }
        IntMatrix out(a.rows_, b.cols_);
        Integer tmp;
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) != 0) {
                        mpz_addmul(out(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
                    }
                }
            }
        }
        return out;
    }

    bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string IntMatrix::to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t r = 0; r < rows_; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t c = 0; c < cols_; ++c) {
                os << (c ? "," : "") << (*this)(r, c).get_str();
            }
            os << ']';
        }
        os << ']';
        return os.str();
    }

    IntVector operator*(const IntVector& v, const IntMatrix& m) {
        if (v.size() != m.rows()) {
            throw PreconditionError("vector-matrix product: shape mismatch");
        }
        IntVector out(m.cols());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(k, j) != 0) {
                    mpz_addmul(out[j].get_mpz_t(), v[k].get_mpz_t(), m(k, j).get_mpz_t());
                }
            }
        }
        return out;
    }

    // ---------------------------------------------------------------- vectors

    IntVector zero_vector(std::size_t n) { return IntVector(n); }

    IntVector unit_vector(std::size_t n, std::size_t i) {
        IntVector v(n);
        v.at(i) = 1;
        return v;
    }

    bool is_zero(const IntVector& v) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    }

    IntVector add(const IntVector& a, const IntVector& b) {
        IntVector out(a);
        axpy(out, 1, b);
        return out;
    }

    IntVector sub(const IntVector& a, const IntVector& b) {
        IntVector out(a);
        axpy(out, -1, b);
        return out;
    }

    IntVector scale(const Integer& s, const IntVector& v) {
        IntVector out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = s * v[i];
        }
        return out;
    }

    IntVector concat(const IntVector& a, const IntVector& b) {
        IntVector out(a);
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }

    void axpy(IntVector& a, const Integer& s, const IntVector& b) {
        if (a.size() != b.size()) {
            throw PreconditionError("axpy: length mismatch");
        }
        if (s == 0) {
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (b[i] != 0) {
                mpz_addmul(a[i].get_mpz_t(), s.get_mpz_t(), b[i].get_mpz_t());
            }
        }
    }

    Integer determinant(const IntMatrix& m) {
        if (m.rows() != m.cols()) {
            throw PreconditionError("determinant: matrix not square");
        }
        // Bareiss fraction-free elimination.
        const std::size_t n = m.rows();
        IntMatrix a = m;
        Integer prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k < n; ++k) {
            if (a(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n && a(p, k) == 0) {
                    ++p;
                }
                if (p == n) {
                    return 0;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(k, j), a(p, j));
                }
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
                }
            }
            prev = a(k, k);
        }
        return n == 0 ? Integer(1) : Integer(sign * a(n - 1, n - 1));
    }

    // ---------------------------------------------------------------- helpers

    namespace {

        std::size_t leading_index(const IntVector& v, std::size_t from = 0) {
            for (std::size_t i = from; i < v.size(); ++i) {
                if (v[i] != 0) {
                    return i;
                }
            }
            return v.size();
        }

        // Floor division remainder into [0, m).
        void mod_nonneg(Integer& x, const Integer& m) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

        Integer floor_div(const Integer& a, const Integer& b) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            return q;
        }

        // Puts a matrix whose rows are in echelon form (pivot columns strictly
        // increasing, pivots positive) into canonical reduced form.
        void reduce_above_pivots(std::vector<IntVector>& rows) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const std::size_t c = leading_index(rows[i]);
                const Integer p = rows[i][c];
                for (std::size_t k = 0; k < i; ++k) {
                    if (rows[k][c] < 0 || rows[k][c] >= p) {
                        axpy(rows[k], -floor_div(rows[k][c], p), rows[i]);
                    }
                }
            }
        }

    }  // namespace

    // ---------------------------------------------------------------- Lattice

    Lattice::Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

    Lattice Lattice::from_hnf(IntMatrix basis) {
        Lattice l(basis.cols());
        std::size_t prev = 0;
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            IntVector row = basis.row(r);
            const std::size_t c = leading_index(row);
            if (c == row.size() || (r > 0 && c <= prev) || row[c] <= 0) {
                throw InvariantError("Lattice::from_hnf: rows are not in echelon form");
            }
            for (std::size_t k = 0; k < r; ++k) {
                if (basis(k, c) < 0 || basis(k, c) >= row[c]) {
                    throw InvariantError("Lattice::from_hnf: entry above pivot not reduced");
                }
            }
            l.pivots_.push_back(c);
            prev = c;
        }
        l.basis_ = std::move(basis);
        return l;
    }

    Lattice Lattice::full(std::size_t ambient_rank) { return from_hnf(IntMatrix::identity(ambient_rank)); }

    Lattice Lattice::scaled_full(std::size_t ambient_rank, const Integer& s) {
        if (s == 0) {
            return Lattice(ambient_rank);
        }
        IntMatrix m(ambient_rank, ambient_rank);
        for (std::size_t i = 0; i < ambient_rank; ++i) {
            m(i, i) = abs(s);
        }
        return from_hnf(std::move(m));
    }

    std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
        if (v.size() != ambient_) {
            throw PreconditionError("Lattice::coordinates: length mismatch");
        }
        IntVector rem = v;
        IntVector coords(rank());
        for (std::size_t k = 0; k < rank(); ++k) {
            const std::size_t c = pivots_[k];
            if (rem[c] == 0) {
                continue;
            }
            if (!mpz_divisible_p(rem[c].get_mpz_t(), basis_(k, c).get_mpz_t())) {
                return std::nullopt;
            }
            coords[k] = rem[c] / basis_(k, c);
            for (std::size_t j = c; j < ambient_; ++j) {
                if (basis_(k, j) != 0) {
                    mpz_submul(rem[j].get_mpz_t(), coords[k].get_mpz_t(), basis_(k, j).get_mpz_t());
                }
            }
        }
        if (!is_zero(rem)) {
            return std::nullopt;
        }
        return coords;
    }

    bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

    bool Lattice::contains(const Lattice& other) const {
        if (other.ambient_ != ambient_) {
            throw PreconditionError("Lattice::contains: ambient rank mismatch");
        }
        for (std::size_t r = 0; r < other.rank(); ++r) {
            if (!contains(other.basis_.row(r))) {
                return false;
            }
        }
        return true;
    }

    Integer Lattice::determinant() const {
        if (!is_full_rank()) {
            return 0;
        }
        Integer d = 1;
        for (std::size_t k = 0; k < rank(); ++k) {
            d *= basis_(k, k);
        }
        return d;
    }

    // ---------------------------------------------------------------- HnfBuilder

    HnfBuilder::HnfBuilder(std::size_t dim) : dim_(dim), rows_(dim), moduli_(dim) {}

    HnfBuilder::HnfBuilder(std::size_t dim, std::vector<Integer> moduli) : HnfBuilder(dim) {
        if (moduli.size() != dim) {
            throw PreconditionError("HnfBuilder: moduli length mismatch");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const Integer m = abs(moduli[c]);
            if (m != 0) {
                add(scale(m, unit_vector(dim, c)));
                moduli_[c] = m;
            }
        }
    }

    void HnfBuilder::reduce(Integer& x, std::size_t col) const {
        if (moduli_[col] != 0) {
            mod_nonneg(x, moduli_[col]);
        }
    }

    void HnfBuilder::reduce_tail(IntVector& v, std::size_t from) const {
        for (std::size_t c = from; c < dim_; ++c) {
            reduce(v[c], c);
        }
    }

    void HnfBuilder::add(IntVector v) {
        if (v.size() != dim_) {
            throw PreconditionError("HnfBuilder::add: length " + std::to_string(v.size()) + " != " +
                                    std::to_string(dim_));
        }
        reduce_tail(v, 0);
        Integer g, s, t, a, b;
        for (std::size_t c = leading_index(v); c < dim_; c = leading_index(v, c + 1)) {
            IntVector& row = rows_[c];
            if (row.empty()) {
                if (v[c] < 0) {
                    for (auto& x : v) {
                        x = -x;
                    }
                    reduce_tail(v, c + 1);
                }
                row = std::move(v);
                ++rank_;
                maybe_adopt_modulus();
                return;
            }
            const Integer& p = row[c];
            if (mpz_divisible_p(v[c].get_mpz_t(), p.get_mpz_t())) {
                axpy(v, -(v[c] / p), row);
            } else {
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), v[c].get_mpz_t());
                a = p / g;
                b = v[c] / g;
                IntVector fresh(dim_);
                for (std::size_t j = c; j < dim_; ++j) {
                    fresh[j] = s * row[j] + t * v[j];
                    v[j] = a * v[j] - b * row[j];
                }
                row = std::move(fresh);
                reduce_tail(row, c + 1);
            }
            reduce_tail(v, c + 1);
        }
    }

    void HnfBuilder::maybe_adopt_modulus() {
        if (!auto_modulus_ || rank_ != dim_ || dim_ == 0) {
            return;
        }
        auto_modulus_ = false;
        Integer det = 1;
        for (std::size_t c = 0; c < dim_; ++c) {
            det *= rows_[c][c];
        }
        // det * e_c lies in any full-rank lattice of index det.
        for (std::size_t c = 0; c < dim_; ++c) {
            moduli_[c] = moduli_[c] == 0 ? det : Integer(gcd(moduli_[c], det));
        }
        for (std::size_t c = 0; c < dim_; ++c) {
            add(scale(moduli_[c], unit_vector(dim_, c)));
        }
    }

    void HnfBuilder::add_rows(const IntMatrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            add(m.row(r));
        }
    }

    bool HnfBuilder::contains(const IntVector& v) const {
        if (v.size() != dim_) {
            throw PreconditionError("HnfBuilder::contains: length mismatch");
        }
        IntVector rem = v;
        reduce_tail(rem, 0);
        for (std::size_t c = leading_index(rem); c < dim_; c = leading_index(rem, c + 1)) {
            const IntVector& row = rows_[c];
            if (row.empty() || !mpz_divisible_p(rem[c].get_mpz_t(), row[c].get_mpz_t())) {
                return false;
            }
            axpy(rem, -(rem[c] / row[c]), row);
            reduce_tail(rem, c + 1);
        }
        return true;
    }

    bool HnfBuilder::add_if_new(const IntVector& v) {
        if (contains(v)) {
            return false;
        }
        add(v);
        return true;
    }

    Lattice HnfBuilder::lattice() const {
        std::vector<IntVector> rows;
        rows.reserve(rank_);
        for (const auto& r : rows_) {
            if (!r.empty()) {
                rows.push_back(r);
            }
        }
        reduce_above_pivots(rows);
        return Lattice::from_hnf(IntMatrix::from_rows(rows, dim_));
    }

    Lattice hnf(const IntMatrix& m) {
        HnfBuilder b(m.cols());
        b.add_rows(m);
        return b.lattice();
    }

    Lattice hnf_modular(const IntMatrix& m, const Integer& modulus) {
        HnfBuilder b(m.cols(), std::vector<Integer>(m.cols(), modulus));
        b.add_rows(m);
        return b.lattice();
    }

    // ---------------------------------------------------------------- Smith form

    std::vector<Integer> SmithForm::diagonal() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
            out.push_back(d(i, i));
        }
        return out;
    }

    namespace {

        class SmithRunner {
        public:
            explicit SmithRunner(const IntMatrix& m)
                : a_(m), u_(IntMatrix::identity(m.rows())), v_(IntMatrix::identity(m.cols())),
                  vi_(IntMatrix::identity(m.cols())) {}

            SmithForm run() {
                const std::size_t n = std::min(a_.rows(), a_.cols());
                for (std::size_t t = 0; t < n; ++t) {
                    if (!place_pivot(t)) {
                        break;
                    }
                    for (;;) {
                        clear_cross(t);
                        std::optional<std::size_t> bad = find_non_divisible(t);
                        if (!bad) {
                            break;
                        }
                        add_row(t, *bad, 1);
                    }
                    if (a_(t, t) < 0) {
                        negate_row(t);
                    }
                }
                return SmithForm{std::move(a_), std::move(u_), std::move(v_), std::move(vi_)};
            }

        private:
            bool place_pivot(std::size_t t) {
                std::size_t bi = 0, bj = 0;
                bool found = false;
                for (std::size_t i = t; i < a_.rows(); ++i) {
                    for (std::size_t j = t; j < a_.cols(); ++j) {
                        if (a_(i, j) != 0 && (!found || mpz_cmpabs(a_(i, j).get_mpz_t(), a_(bi, bj).get_mpz_t()) < 0)) {
                            bi = i;
                            bj = j;
                            found = true;
                        }
                    }
                }
                if (!found) {
                    return false;
                }
                swap_rows(t, bi);
                swap_cols(t, bj);
                return true;
            }

            void clear_cross(std::size_t t) {
                bool dirty = true;
                while (dirty) {
                    dirty = false;
                    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
                        if (a_(i, t) != 0) {
                            row_gcd(t, i);
                        }
                    }
                    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
                        if (a_(t, j) != 0) {
                            col_gcd(t, j);
                        }
                    }
                    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
                        if (a_(i, t) != 0) {
                            dirty = true;
                        }
                    }
                }
            }

            std::optional<std::size_t> find_non_divisible(std::size_t t) const {
                for (std::size_t i = t + 1; i < a_.rows(); ++i) {
                    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
                        if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                            return i;
                        }
                    }
                }
                return std::nullopt;
            }

            // Eliminates a(i,t) against a(t,t) with a unimodular row transform.
            void row_gcd(std::size_t t, std::size_t i) {
                const Integer p = a_(t, t), q = a_(i, t);
                if (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
                    add_row(i, t, -(q / p));
                    return;
                }
                Integer g, s, r;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                const Integer x = p / g, y = q / g;
                combine_rows(a_, t, i, s, r, -y, x);
                combine_rows(u_, t, i, s, r, -y, x);
            }

            void col_gcd(std::size_t t, std::size_t j) {
                const Integer p = a_(t, t), q = a_(t, j);
                if (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
                    add_col(j, t, -(q / p));
                    return;
                }
                Integer g, s, r;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
                const Integer x = p / g, y = q / g;
                combine_cols(a_, t, j, s, r, -y, x);
                combine_cols(v_, t, j, s, r, -y, x);
                // The inverse of [[s, -y], [r, x]] (column action) is [[x, y], [-r, s]].
                combine_rows(vi_, t, j, x, y, -r, s);
            }

            // rows (t, i) := (s*t + r*i, y*t + x*i)
            static void combine_rows(IntMatrix& m, std::size_t t, std::size_t i, const Integer& s, const Integer& r,
                                     const Integer& y, const Integer& x) {
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    Integer nt = s * m(t, j) + r * m(i, j);
                    Integer ni = y * m(t, j) + x * m(i, j);
                    m(t, j) = std::move(nt);
                    m(i, j) = std::move(ni);
                }
            }

            // cols (t, j) := (s*t + r*j, y*t + x*j)
            static void combine_cols(IntMatrix& m, std::size_t t, std::size_t j, const Integer& s, const Integer& r,
                                     const Integer& y, const Integer& x) {
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    Integer nt = s * m(i, t) + r * m(i, j);
                    Integer nj = y * m(i, t) + x * m(i, j);
                    m(i, t) = std::move(nt);
                    m(i, j) = std::move(nj);
                }
            }

            // row i += k * row src
            void add_row(std::size_t i, std::size_t src, const Integer& k) {
                for (IntMatrix* m : {&a_, &u_}) {
                    for (std::size_t j = 0; j < m->cols(); ++j) {
                        (*m)(i, j) += k * (*m)(src, j);
                    }
                }
            }

            // col j += k * col src; inverse: row src -= k * row j
            void add_col(std::size_t j, std::size_t src, const Integer& k) {
                for (IntMatrix* m : {&a_, &v_}) {
                    for (std::size_t i = 0; i < m->rows(); ++i) {
                        (*m)(i, j) += k * (*m)(i, src);
                    }
                }
                for (std::size_t c = 0; c < vi_.cols(); ++c) {
                    vi_(src, c) -= k * vi_(j, c);
                }
            }

            void swap_rows(std::size_t i, std::size_t k) {
                if (i == k) {
                    return;
                }
                for (IntMatrix* m : {&a_, &u_}) {
                    for (std::size_t j = 0; j < m->cols(); ++j) {
                        std::swap((*m)(i, j), (*m)(k, j));
                    }
                }
            }

            void swap_cols(std::size_t j, std::size_t k) {
                if (j == k) {
                    return;
                }
                for (IntMatrix* m : {&a_, &v_}) {
                    for (std::size_t i = 0; i < m->rows(); ++i) {
                        std::swap((*m)(i, j), (*m)(i, k));
                    }
                }
                for (std::size_t c = 0; c < vi_.cols(); ++c) {
                    std::swap(vi_(j, c), vi_(k, c));
                }
            }

            void negate_row(std::size_t i) {
                for (IntMatrix* m : {&a_, &u_}) {
                    for (std::size_t j = 0; j < m->cols(); ++j) {
                        (*m)(i, j) = -(*m)(i, j);
                    }
                }
            }

            IntMatrix a_, u_, v_, vi_;
        };

    }  // namespace

    SmithForm snf(const IntMatrix& m) { return SmithRunner(m).run(); }

    // ---------------------------------------------------------------- split HNF

    Lattice SplitHnf::left() const {
        IntMatrix m(0, left_dim);
        for (std::size_t r = 0; r < split; ++r) {
            IntVector row = rows.row(r);
            row.resize(left_dim);
            m.append_row(row);
        }
        return Lattice::from_hnf(std::move(m));
    }

    Lattice SplitHnf::right() const {
        const std::size_t right_dim = rows.cols() - left_dim;
        IntMatrix m(0, right_dim);
        for (std::size_t r = split; r < rows.rows(); ++r) {
            IntVector row = rows.row(r);
            m.append_row(IntVector(row.begin() + static_cast<std::ptrdiff_t>(left_dim), row.end()));
        }
        return Lattice::from_hnf(std::move(m));
    }

    SplitHnf split_hnf(const std::vector<IntVector>& rows, std::size_t left_dim, std::size_t right_dim,
                       const Integer& left_modulus, const Integer& right_modulus) {
        std::vector<Integer> moduli(left_dim + right_dim);
        std::fill(moduli.begin(), moduli.begin() + static_cast<std::ptrdiff_t>(left_dim), left_modulus);
        std::fill(moduli.begin() + static_cast<std::ptrdiff_t>(left_dim), moduli.end(), right_modulus);
        HnfBuilder b(left_dim + right_dim, std::move(moduli));
        for (const auto& r : rows) {
            b.add(r);
        }
        SplitHnf out;
        Lattice l = b.lattice();
        out.rows = l.basis();
        out.left_dim = left_dim;
        out.split = static_cast<std::size_t>(
            std::count_if(l.pivots().begin(), l.pivots().end(), [&](std::size_t c) { return c < left_dim; }));
        return out;
    }

    Lattice span(const std::vector<IntVector>& vectors, std::size_t dim) {
        HnfBuilder b(dim);
        for (const auto& v : vectors) {
            b.add(v);
        }
        return b.lattice();
    }

    Lattice lattice_sum(const Lattice& a, const Lattice& b) {
        if (a.ambient_rank() != b.ambient_rank()) {
            throw PreconditionError("lattice_sum: ambient rank mismatch");
        }
        HnfBuilder builder(a.ambient_rank());
        builder.add_rows(a.basis());
        builder.add_rows(b.basis());
        return builder.lattice();
    }

    Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
        if (a.ambient_rank() != b.ambient_rank()) {
            throw PreconditionError("lattice_intersect: ambient rank mismatch");
        }
        const std::size_t k = a.ambient_rank();
        std::vector<IntVector> rows;
        for (std::size_t r = 0; r < a.rank(); ++r) {
            IntVector v = a.basis().row(r);
            rows.push_back(concat(v, v));
        }
        for (std::size_t r = 0; r < b.rank(); ++r) {
            rows.push_back(concat(b.basis().row(r), zero_vector(k)));
        }
        Integer lm = 0, rm = 0;
        if (a.is_full_rank() && b.is_full_rank()) {
            lm = b.determinant();
            rm = lcm(a.determinant(), b.determinant());
        }
        return split_hnf(rows, k, k, lm, rm).right();
    }

    bool lattice_member(const IntVector& v, const Lattice& l) { return l.contains(v); }

    Lattice left_kernel(const IntMatrix& m) {
        std::vector<IntVector> rows;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            rows.push_back(concat(m.row(r), unit_vector(m.rows(), r)));
        }
        return split_hnf(rows, m.cols(), m.rows()).right();
    }

    // ---------------------------------------------------------------- invariants

    Integer AbelianInvariants::order() const {
        if (free_rank > 0) {
            return 0;
        }
        Integer n = 1;
        for (const auto& t : torsion) {
            n *= t;
        }
        return n;
    }

    Integer AbelianInvariants::exponent() const {
        if (free_rank > 0) {
            return 0;
        }
        return torsion.empty() ? Integer(1) : torsion.back();
    }

    std::string AbelianInvariants::to_string() const {
        if (is_trivial()) {
            return "0";
        }
        std::string s;
        for (const auto& t : torsion) {
            s += (s.empty() ? "" : "+") + std::string("Z/") + t.get_str();
        }
        for (std::size_t i = 0; i < free_rank; ++i) {
            s += (s.empty() ? "" : "+") + std::string("Z");
        }
        return s;
    }

    AbelianInvariants invariants_from_relations(const IntMatrix& relations, std::size_t generators) {
        if (relations.cols() != generators) {
            throw PreconditionError("invariants_from_relations: column count mismatch");
        }
        AbelianInvariants inv;
        std::size_t nonzero = 0;
        if (relations.rows() > 0 && generators > 0) {
            // HNF first keeps the Smith step small and the entries bounded.
            Lattice l = hnf(relations);
            SmithForm s = snf(l.basis());
            for (const auto& d : s.diagonal()) {
                if (d != 0) {
                    ++nonzero;
                    if (d != 1) {
                        inv.torsion.push_back(d);
                    }
                }
            }
        }
        inv.free_rank = generators - nonzero;
        return inv;
    }

    AbelianInvariants quotient_invariants(const Lattice& sub, const Lattice& sup) {
        if (sub.ambient_rank() != sup.ambient_rank()) {
            throw PreconditionError("quotient_invariants: ambient rank mismatch");
        }
        IntMatrix coords(0, sup.rank());
        for (std::size_t r = 0; r < sub.rank(); ++r) {
            auto c = sup.coordinates(sub.basis().row(r));
            if (!c) {
                throw PreconditionError("quotient_invariants: sublattice not contained in superlattice");
            }
            coords.append_row(*c);
        }
        return invariants_from_relations(coords, sup.rank());
    }

    Integer binomial(long n, long k) {
        if (k < 0 || n < 0 || k > n) {
            return 0;
        }
        Integer r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }

    std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
        if (n <= 0) {
            throw PreconditionError("factorize: argument must be positive");
        }
        std::vector<std::pair<Integer, unsigned>> out;
        Integer m = n;
        for (Integer p = 2; p * p <= m; ++p) {
            unsigned e = 0;
            while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
                m /= p;
                ++e;
            }
            if (e > 0) {
                out.emplace_back(p, e);
            }
        }
        if (m > 1) {
            out.emplace_back(m, 1U);
        }
        return out;
    }

}  // namespace dimquot
