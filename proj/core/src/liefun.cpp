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

#include "dimquot/liefun.hpp"

#include <functional>

#include "dimquot/errors.hpp"

namespace dimquot {

    std::vector<Word> lyndon_words(unsigned r, unsigned n) {
        std::vector<Word> out;
        if (r == 0 || n == 0) {
            return out;
        }
        // Duval's generation of all Lyndon words of length <= n in lexicographic order.
        std::vector<long> w{-1};
        while (!w.empty()) {
            ++w.back();
            if (w.size() == n) {
                out.emplace_back(w.begin(), w.end());
            }
            const std::size_t m = w.size();
            while (w.size() < n) {
                w.push_back(w[w.size() - m]);
            }
            while (!w.empty() && w.back() == static_cast<long>(r) - 1) {
                w.pop_back();
            }
        }
        return out;
    }

    Integer witt_number(unsigned r, unsigned n) {
        if (n == 0) {
            throw PreconditionError("witt_number: degree must be positive");
        }
        auto mobius = [](unsigned d) {
            int mu = 1;
            for (unsigned p = 2; p * p <= d; ++p) {
                if (d % p == 0) {
                    d /= p;
                    if (d % p == 0) {
                        return 0;
                    }
                    mu = -mu;
                }
            }
            return d > 1 ? -mu : mu;
        };
        Integer sum = 0;
        for (unsigned d = 1; d <= n; ++d) {
            if (n % d == 0) {
                Integer power;
                mpz_ui_pow_ui(power.get_mpz_t(), r, n / d);
                sum += mobius(d) * power;
            }
        }
        return sum / n;
    }

    namespace {

        bool is_lyndon(const Word& w, std::size_t from) {
            const Word s(w.begin() + static_cast<std::ptrdiff_t>(from), w.end());
            for (std::size_t k = 1; k < s.size(); ++k) {
                if (!std::lexicographical_compare(s.begin(), s.end(), s.begin() + static_cast<std::ptrdiff_t>(k),
                                                  s.end())) {
                    return false;
                }
            }
            return !s.empty();
        }

        std::size_t flat_index(const Word& w, unsigned r) {
            std::size_t idx = 0;
            for (unsigned letter : w) {
                idx = idx * r + letter;
            }
            return idx;
        }

        // Standard bracketing of w with letter i evaluated as letters[i].
        IntVector bracket_value(const Word& w, const std::vector<IntVector>& letters, unsigned r) {
            if (w.size() == 1) {
                return letters.at(w[0]);
            }
            auto [u, v] = standard_factorization(w);
            return lie_bracket(bracket_value(u, letters, r), bracket_value(v, letters, r), r);
        }

        std::vector<IntVector> unit_letters(unsigned r) {
            std::vector<IntVector> out;
            for (unsigned i = 0; i < r; ++i) {
                out.push_back(unit_vector(r, i));
            }
            return out;
        }

    }  // namespace

    std::pair<Word, Word> standard_factorization(const Word& w) {
        if (w.size() < 2) {
            throw PreconditionError("standard_factorization: word too short");
        }
        for (std::size_t k = 1; k < w.size(); ++k) {
            if (is_lyndon(w, k)) {
                return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k)),
                        Word(w.begin() + static_cast<std::ptrdiff_t>(k), w.end())};
            }
        }
        throw InvariantError("standard_factorization: no Lyndon suffix");
    }

    IntVector assoc_product(const IntVector& a, const IntVector& b, unsigned r) {
        IntVector out(a.size() * b.size());
        (void)r;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] != 0) {
                    out[i * b.size() + j] = a[i] * b[j];
                }
            }
        }
        return out;
    }

    IntVector lie_bracket(const IntVector& a, const IntVector& b, unsigned r) {
        return sub(assoc_product(a, b, r), assoc_product(b, a, r));
    }

    // ---------------------------------------------------------------- LyndonBasis

    LyndonBasis::LyndonBasis(unsigned r, unsigned n) : r_(r), n_(n), words_(lyndon_words(r, n)) {
        if (n == 0 || n > kMaxLieDegree) {
            throw PreconditionError("LyndonBasis: degree " + std::to_string(n) + " outside 1.." +
                                    std::to_string(kMaxLieDegree));
        }
        const std::vector<IntVector> letters = unit_letters(r);
        for (const auto& w : words_) {
            const IntVector e = bracket_value(w, letters, r);
            std::vector<std::pair<std::size_t, Integer>> sparse;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] != 0) {
                    sparse.emplace_back(k, e[k]);
                }
            }
            const std::size_t lead = flat_index(w, r);
            if (sparse.empty() || sparse.front().first != lead || sparse.front().second != 1) {
                throw InvariantError("LyndonBasis: bracketing does not have its word as leading term");
            }
            leading_.push_back(lead);
            sparse_.push_back(std::move(sparse));
        }
    }

    IntVector LyndonBasis::expansion(std::size_t i) const {
        std::size_t total = 1;
        for (unsigned k = 0; k < n_; ++k) {
            total *= r_;
        }
        IntVector out(total);
        for (const auto& [k, c] : sparse_.at(i)) {
            out[k] = c;
        }
        return out;
    }

    std::string LyndonBasis::bracketing(std::size_t i, const std::vector<std::string>& labels) const {
        std::function<std::string(const Word&)> rec = [&](const Word& w) -> std::string {
            if (w.size() == 1) {
                return labels.at(w[0]);
            }
            auto [u, v] = standard_factorization(w);
            return "[" + rec(u) + "," + rec(v) + "]";
        };
        return rec(words_.at(i));
    }

    std::optional<IntVector> LyndonBasis::coordinates(const IntVector& p) const {
        IntVector rem = p;
        IntVector coords(words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const Integer c = rem.at(leading_[i]);
            if (c == 0) {
                continue;
            }
            coords[i] = c;
            for (const auto& [k, v] : sparse_[i]) {
                rem[k] -= c * v;
            }
        }
        if (!is_zero(rem)) {
            return std::nullopt;
        }
        return coords;
    }

    // ---------------------------------------------------------------- L_n(A)

    IntVector LieComponent::from_polynomial(const IntVector& p) const {
        auto c = basis.coordinates(p);
        if (!c) {
            throw PreconditionError("LieComponent: polynomial is not a Lie element");
        }
        return group.reduce(*c);
    }

    LieComponent lie_component(const FPAbGroup& a, unsigned n) {
        const auto r = static_cast<unsigned>(a.generator_count());
        LyndonBasis basis(r, n);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            labels.push_back(basis.bracketing(i, a.labels()));
        }
        // Brackets [rho, x_2, ..., x_n] with rho a relation span the degree-n part of the ideal.
        HnfBuilder rel(basis.size());
        std::size_t tuples = 1;
        for (unsigned k = 1; k < n; ++k) {
            tuples *= r;
        }
        for (std::size_t t = 0; t < tuples; ++t) {
            std::vector<unsigned> xs(n - 1);
            std::size_t rest = t;
            for (std::size_t q = n - 1; q > 0; --q) {
                xs[q - 1] = static_cast<unsigned>(rest % r);
                rest /= r;
            }
            for (std::size_t k = 0; k < a.relations().rank(); ++k) {
                IntVector p = a.relations().basis().row(k);
                for (unsigned x : xs) {
                    p = lie_bracket(p, unit_vector(r, x), r);
                }
                auto c = basis.coordinates(p);
                if (!c) {
                    throw InvariantError("lie_component: bracket outside Lie span");
                }
                rel.add(*c);
            }
        }
        FPAbGroup group(std::move(labels), rel.lattice());
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            images.push_back(basis.expansion(i));
        }
        AbHom l = AbHom::from_images(group, tensor_power(a, n), images);
        return LieComponent{a, std::move(basis), std::move(group), std::move(l)};
    }

    AbHom lie_map(const LieComponent& source, const LieComponent& target, const AbHom& f) {
        if (!(f.domain() == source.base) || !(f.codomain() == target.base) ||
            source.basis.degree() != target.basis.degree()) {
            throw PreconditionError("lie_map: map does not match the components");
        }
        const std::vector<IntVector> letters = f.matrix().row_vectors();
        std::vector<IntVector> images;
        for (const auto& w : source.basis.words()) {
            const IntVector p = bracket_value(w, letters, target.basis.rank());
            auto c = target.basis.coordinates(p);
            if (!c) {
                throw InvariantError("lie_map: image outside Lie span");
            }
            images.push_back(std::move(*c));
        }
        return AbHom::from_images(source.group, target.group, images);
    }

    TensorQuotient s_n(const FPAbGroup& a, unsigned n) {
        LieComponent lc = lie_component(a, n);
        auto [group, projection] = quotient(lc.l.codomain(), lc.l.matrix().row_vectors());
        return TensorQuotient{std::move(group), std::move(projection)};
    }

    PbwReport pbw_check(const FPAbGroup& a) {
        if (a.is_finite() ? a.order() > 256 : (a.free_rank() > 3 || a.invariants().torsion.size() > 0)) {
            throw ResourceLimitError("pbw_check: group must be finite of order <= 256 or free of rank <= 3");
        }
        const LieComponent l3 = lie_component(a, 3);
        const LieComponent l2 = lie_component(a, 2);
        const FPAbGroup t3 = tensor_power(a, 3);
        const FPAbGroup a_l2 = tensor(a, l2.group);
        const IntMatrix one_l2 = kronecker(IntMatrix::identity(a.generator_count()), l2.l.matrix());
        const DirectSum dom = direct_sum({l3.group, a_l2});
        IntMatrix fm = IntMatrix::from_rows(l3.l.matrix().row_vectors(), t3.generator_count());
        for (const auto& row : one_l2.row_vectors()) {
            fm.append_row(row);
        }
        const AbHom f(dom.group, t3, std::move(fm));
        const AbHom g = sp(a, 3).projection;

        PbwReport rep;
        const HomSolver fs(f), gs(g);
        rep.injective = fs.kernel_lattice() == dom.group.relations();
        rep.complex = compose(g, f).is_zero();
        rep.exact_middle = fs.image_lattice() == gs.kernel_lattice();
        rep.surjective = gs.image_lattice().determinant() == 1;
        return rep;
    }

}  // namespace dimquot
