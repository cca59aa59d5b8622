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

#include "dimquot/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dimquot/errors.hpp"

namespace dimquot {

    // ---------------------------------------------------------------- FPAbGroup

    struct FPAbGroup::Data {
        std::vector<std::string> labels;
        Lattice relations;
        AbelianInvariants invariants;
        IntMatrix v;
        IntMatrix v_inv;
        std::vector<std::size_t> kept;
        std::vector<Integer> orders;

        Data(std::vector<std::string> l, Lattice rel) : labels(std::move(l)), relations(std::move(rel)) {
            const std::size_t n = relations.ambient_rank();
            if (labels.size() != n) {
                throw PreconditionError("FPAbGroup: " + std::to_string(labels.size()) + " labels for " +
                                        std::to_string(n) + " generators");
            }
            SmithForm s = snf(relations.basis());
            v = std::move(s.v);
            v_inv = std::move(s.v_inv);
            for (std::size_t i = 0; i < n; ++i) {
                Integer d = i < relations.rank() ? Integer(s.d(i, i)) : Integer(0);
                if (d == 1) {
                    continue;
                }
                kept.push_back(i);
                orders.push_back(d);
                if (d == 0) {
                    ++invariants.free_rank;
                } else {
                    invariants.torsion.push_back(d);
                }
            }
        }
    };

    namespace {

        std::vector<std::string> default_labels(std::size_t n, const std::string& prefix = "e") {
            std::vector<std::string> out;
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(prefix + std::to_string(i + 1));
            }
            return out;
        }

    }  // namespace

    FPAbGroup::FPAbGroup() : FPAbGroup(std::vector<std::string>{}, Lattice(0)) {}

    FPAbGroup::FPAbGroup(std::vector<std::string> labels, const IntMatrix& relations)
        : FPAbGroup(std::move(labels), hnf(relations)) {
        if (relations.cols() != generator_count()) {
            throw PreconditionError("FPAbGroup: relator width does not match generator count");
        }
    }

    FPAbGroup::FPAbGroup(std::size_t generators, const IntMatrix& relations)
        : FPAbGroup(default_labels(generators), relations) {}

    FPAbGroup::FPAbGroup(std::vector<std::string> labels, Lattice relations)
        : d_(std::make_shared<const Data>(std::move(labels), std::move(relations))) {}

    FPAbGroup FPAbGroup::free(std::size_t rank) { return FPAbGroup(default_labels(rank), Lattice(rank)); }

    FPAbGroup FPAbGroup::cyclic(const Integer& order) { return diagonal({order}); }

    FPAbGroup FPAbGroup::diagonal(const std::vector<Integer>& orders, std::vector<std::string> labels) {
        const std::size_t n = orders.size();
        if (labels.empty()) {
            labels = default_labels(n);
        }
        IntMatrix rel(0, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (orders[i] < 0) {
                throw PreconditionError("FPAbGroup::diagonal: negative order");
            }
            if (orders[i] != 0) {
                rel.append_row(scale(orders[i], unit_vector(n, i)));
            }
        }
        return FPAbGroup(std::move(labels), Lattice::from_hnf(std::move(rel)));
    }

    FPAbGroup FPAbGroup::parse(const std::string& text) {
        std::string s;
        for (char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                s += ch;
            }
        }
        if (s.empty()) {
            throw ParseError("empty abelian group specification");
        }
        auto parse_count = [&](const std::string& digits) {
            if (digits.empty() || digits.size() > 9 ||
                !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                throw ParseError("bad number '" + digits + "' in group specification '" + text + "'");
            }
            return std::stol(digits);
        };
        std::vector<Integer> orders;
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t end = s.find('+', start);
            if (end == std::string::npos) {
                end = s.size();
            }
            std::string term = s.substr(start, end - start);
            start = end + 1;
            long copies = 1;
            Integer order = 0;
            if (term == "0") {
                copies = 0;
            } else if (term == "Z") {
                order = 0;
            } else if (term.rfind("Z^", 0) == 0) {
                copies = parse_count(term.substr(2));
            } else if (term.rfind("(Z/", 0) == 0) {
                std::size_t close = term.find(")^");
                if (close == std::string::npos) {
                    throw ParseError("bad term '" + term + "' in group specification '" + text + "'");
                }
                order = parse_count(term.substr(3, close - 3));
                copies = parse_count(term.substr(close + 2));
            } else if (term.rfind("Z/", 0) == 0) {
                order = parse_count(term.substr(2));
            } else {
                throw ParseError("bad term '" + term + "' in group specification '" + text + "'");
            }
            if (copies > 64) {
                throw ResourceLimitError("group specification has more than 64 cyclic factors");
            }
            if (order == 0 && term != "Z" && term.rfind("Z^", 0) != 0 && copies != 0) {
                throw ParseError("cyclic factor of order 0 in '" + text + "'");
            }
            for (long i = 0; i < copies; ++i) {
                orders.push_back(order);
            }
            if (end == s.size()) {
                break;
            }
        }
        return diagonal(orders);
    }

    std::size_t FPAbGroup::generator_count() const { return d_->relations.ambient_rank(); }
    const std::vector<std::string>& FPAbGroup::labels() const { return d_->labels; }
    const Lattice& FPAbGroup::relations() const { return d_->relations; }
    const AbelianInvariants& FPAbGroup::invariants() const { return d_->invariants; }
    const std::vector<Integer>& FPAbGroup::canonical_orders() const { return d_->orders; }

    std::vector<std::pair<Integer, Integer>> FPAbGroup::primary_decomposition() const {
        std::vector<std::pair<Integer, Integer>> out;
        for (const auto& t : invariants().torsion) {
            for (const auto& [p, e] : factorize(t)) {
                Integer q;
                mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
                out.emplace_back(p, q);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    IntVector FPAbGroup::to_canonical(const IntVector& x) const {
        if (x.size() != generator_count()) {
            throw PreconditionError("FPAbGroup: element has " + std::to_string(x.size()) + " coordinates, expected " +
                                    std::to_string(generator_count()));
        }
        IntVector y = x * d_->v;
        IntVector out(d_->kept.size());
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = y[d_->kept[k]];
            if (d_->orders[k] != 0) {
                mpz_fdiv_r(out[k].get_mpz_t(), out[k].get_mpz_t(), d_->orders[k].get_mpz_t());
            }
        }
        return out;
    }

    IntVector FPAbGroup::from_canonical(const IntVector& y) const {
        if (y.size() != d_->kept.size()) {
            throw PreconditionError("FPAbGroup::from_canonical: length mismatch");
        }
        IntVector z(generator_count());
        for (std::size_t k = 0; k < y.size(); ++k) {
            z[d_->kept[k]] = y[k];
        }
        return z * d_->v_inv;
    }

    IntVector FPAbGroup::reduce(const IntVector& x) const { return from_canonical(to_canonical(x)); }

    bool FPAbGroup::is_zero(const IntVector& x) const { return dimquot::is_zero(to_canonical(x)); }

    bool FPAbGroup::equal(const IntVector& x, const IntVector& y) const { return is_zero(sub(x, y)); }

    Integer FPAbGroup::element_order(const IntVector& x) const {
        IntVector y = to_canonical(x);
        Integer ord = 1;
        for (std::size_t k = 0; k < y.size(); ++k) {
            if (y[k] == 0) {
                continue;
            }
            if (d_->orders[k] == 0) {
                return 0;
            }
            ord = lcm(ord, Integer(d_->orders[k] / gcd(d_->orders[k], y[k])));
        }
        return ord;
    }

    std::vector<IntVector> FPAbGroup::elements() const {
        if (!is_finite()) {
            throw PreconditionError("FPAbGroup::elements: group is infinite");
        }
        if (order() > kMaxEnumeration) {
            throw ResourceLimitError("FPAbGroup::elements: order " + order().get_str() + " exceeds enumeration cap");
        }
        const std::size_t k = canonical_rank();
        std::vector<IntVector> out;
        IntVector y(k);
        for (;;) {
            out.push_back(from_canonical(y));
            std::size_t pos = k;
            while (pos > 0) {
                --pos;
                ++y[pos];
                if (y[pos] < d_->orders[pos]) {
                    break;
                }
                y[pos] = 0;
                if (pos == 0) {
                    return out;
                }
            }
            if (k == 0) {
                return out;
            }
        }
    }

    std::optional<std::vector<Integer>> FPAbGroup::diagonal_orders() const {
        const Lattice& rel = relations();
        std::vector<Integer> orders(generator_count());
        for (std::size_t r = 0; r < rel.rank(); ++r) {
            const std::size_t c = rel.pivots()[r];
            for (std::size_t j = c + 1; j < rel.ambient_rank(); ++j) {
                if (rel.basis()(r, j) != 0) {
                    return std::nullopt;
                }
            }
            orders[c] = rel.basis()(r, c);
        }
        return orders;
    }

    std::vector<Integer> FPAbGroup::require_diagonal(const char* who) const {
        auto d = diagonal_orders();
        if (!d) {
            throw PreconditionError(std::string(who) + ": group must be presented diagonally");
        }
        return *d;
    }

    bool operator==(const FPAbGroup& a, const FPAbGroup& b) {
        return a.d_ == b.d_ || a.relations() == b.relations();
    }

    // ---------------------------------------------------------------- AbElement

    AbElement::AbElement(FPAbGroup g, IntVector c) : parent(std::move(g)), coords(std::move(c)) {
        if (coords.size() != parent.generator_count()) {
            throw PreconditionError("AbElement: coordinate length does not match generator count");
        }
    }

    namespace {
        void require_same_parent(const AbElement& a, const AbElement& b) {
            if (!(a.parent == b.parent)) {
                throw PreconditionError("AbElement: elements of different groups");
            }
        }
    }  // namespace

    bool operator==(const AbElement& a, const AbElement& b) {
        require_same_parent(a, b);
        return a.parent.equal(a.coords, b.coords);
    }

    AbElement operator+(const AbElement& a, const AbElement& b) {
        require_same_parent(a, b);
        return AbElement(a.parent, add(a.coords, b.coords));
    }

    AbElement operator-(const AbElement& a, const AbElement& b) {
        require_same_parent(a, b);
        return AbElement(a.parent, sub(a.coords, b.coords));
    }

    AbElement operator*(const Integer& k, const AbElement& a) { return AbElement(a.parent, scale(k, a.coords)); }

    // ---------------------------------------------------------------- AbHom

    AbHom::AbHom(FPAbGroup domain, FPAbGroup codomain, IntMatrix matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != domain_.generator_count() || matrix_.cols() != codomain_.generator_count()) {
            throw PreconditionError("AbHom: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) + ", expected " +
                                    std::to_string(domain_.generator_count()) + "x" +
                                    std::to_string(codomain_.generator_count()));
        }
        const Lattice& rel = domain_.relations();
        for (std::size_t r = 0; r < rel.rank(); ++r) {
            if (!codomain_.is_zero(rel.basis().row(r) * matrix_)) {
                throw PreconditionError("AbHom: matrix does not respect relations");
            }
        }
    }

    AbHom AbHom::zero(FPAbGroup domain, FPAbGroup codomain) {
        IntMatrix m(domain.generator_count(), codomain.generator_count());
        return AbHom(std::move(domain), std::move(codomain), std::move(m));
    }

    AbHom AbHom::identity(FPAbGroup g) {
        IntMatrix m = IntMatrix::identity(g.generator_count());
        return AbHom(g, g, std::move(m));
    }

    AbHom AbHom::from_images(FPAbGroup domain, FPAbGroup codomain, const std::vector<IntVector>& images) {
        if (images.size() != domain.generator_count()) {
            throw PreconditionError("AbHom::from_images: one image per generator required");
        }
        IntMatrix m = IntMatrix::from_rows(images, codomain.generator_count());
        return AbHom(std::move(domain), std::move(codomain), std::move(m));
    }

    IntVector AbHom::operator()(const IntVector& x) const { return codomain_.reduce(x * matrix_); }

    bool AbHom::is_zero() const {
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            if (!codomain_.is_zero(matrix_.row(i))) {
                return false;
            }
        }
        return true;
    }

    bool AbHom::is_injective() const { return HomSolver(*this).kernel_lattice() == domain_.relations(); }

    bool AbHom::is_surjective() const { return HomSolver(*this).image_lattice().determinant() == 1; }

    namespace {
        void require_parallel(const AbHom& f, const AbHom& g) {
            if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain())) {
                throw PreconditionError("AbHom: maps have different domain or codomain");
            }
        }

        IntMatrix matrix_sum(const IntMatrix& a, const IntMatrix& b, int sign) {
            IntMatrix out = a;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    out(i, j) += sign * b(i, j);
                }
            }
            return out;
        }
    }  // namespace

    bool operator==(const AbHom& f, const AbHom& g) {
        require_parallel(f, g);
        return (f - g).is_zero();
    }

    AbHom operator+(const AbHom& f, const AbHom& g) {
        require_parallel(f, g);
        return AbHom(f.domain_, f.codomain_, matrix_sum(f.matrix_, g.matrix_, 1));
    }

    AbHom operator-(const AbHom& f, const AbHom& g) {
        require_parallel(f, g);
        return AbHom(f.domain_, f.codomain_, matrix_sum(f.matrix_, g.matrix_, -1));
    }

    AbHom operator*(const Integer& k, const AbHom& f) {
        IntMatrix m = f.matrix_;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                m(i, j) *= k;
            }
        }
        return AbHom(f.domain_, f.codomain_, std::move(m));
    }

    AbHom compose(const AbHom& g, const AbHom& f) {
        if (!(f.codomain() == g.domain())) {
            throw PreconditionError("compose: codomain of the first map is not the domain of the second");
        }
        return AbHom(f.domain(), g.codomain(), f.matrix() * g.matrix());
    }

    // ---------------------------------------------------------------- kernels and images

    HomSolver::HomSolver(const AbHom& f) : f_(f) {
        const FPAbGroup& a = f.domain();
        const FPAbGroup& b = f.codomain();
        const std::size_t n = a.generator_count(), m = b.generator_count();
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(concat(f.matrix().row(i), unit_vector(n, i)));
        }
        for (std::size_t r = 0; r < b.relations().rank(); ++r) {
            rows.push_back(concat(b.relations().basis().row(r), zero_vector(n)));
        }
        const Integer left_mod = b.is_finite() ? b.exponent() : Integer(0);
        // exp(A) e_i and, for finite B, exp(B) e_i lie in the kernel.
        Integer right_mod = 0;
        if (a.is_finite()) {
            right_mod = a.exponent();
        }
        if (b.is_finite()) {
            right_mod = gcd(right_mod, b.exponent());
        }
        split_ = split_hnf(rows, m, n, left_mod, right_mod);
        kernel_ = split_.right();
        image_ = split_.left();
    }

    std::optional<IntVector> HomSolver::solve(const IntVector& y) const {
        const std::size_t m = f_.codomain().generator_count();
        if (y.size() != m) {
            throw PreconditionError("HomSolver::solve: length mismatch");
        }
        IntVector v = concat(y, zero_vector(f_.domain().generator_count()));
        for (std::size_t k = 0; k < split_.split; ++k) {
            std::size_t c = 0;
            while (split_.rows(k, c) == 0) {
                ++c;
            }
            if (v[c] == 0) {
                continue;
            }
            if (!mpz_divisible_p(v[c].get_mpz_t(), split_.rows(k, c).get_mpz_t())) {
                return std::nullopt;
            }
            axpy(v, -(v[c] / split_.rows(k, c)), split_.rows.row(k));
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (v[c] != 0) {
                return std::nullopt;
            }
        }
        IntVector x(v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
        for (auto& e : x) {
            e = -e;
        }
        return f_.domain().reduce(x);
    }

    namespace {

        IntMatrix coordinates_in(const Lattice& sub, const Lattice& sup) {
            IntMatrix out(0, sup.rank());
            for (std::size_t r = 0; r < sub.rank(); ++r) {
                auto c = sup.coordinates(sub.basis().row(r));
                if (!c) {
                    throw InvariantError("coordinates_in: sublattice not contained");
                }
                out.append_row(*c);
            }
            return out;
        }

    }  // namespace

    HomDecomposition hom_decompose(const AbHom& f) {
        HomSolver solver(f);
        const Lattice& k = solver.kernel_lattice();
        const Lattice& im = solver.image_lattice();
        FPAbGroup kernel(default_labels(k.rank(), "k"), coordinates_in(f.domain().relations(), k));
        AbHom kernel_inclusion(kernel, f.domain(), k.basis());
        FPAbGroup image(default_labels(im.rank(), "i"), coordinates_in(f.codomain().relations(), im));
        AbHom image_inclusion(image, f.codomain(), im.basis());
        IntMatrix coimage(0, im.rank());
        for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
            auto c = im.coordinates(f.matrix().row(i));
            if (!c) {
                throw InvariantError("hom_decompose: generator image outside image lattice");
            }
            coimage.append_row(*c);
        }
        AbHom coimage_projection(f.domain(), image, std::move(coimage));
        FPAbGroup cokernel(f.codomain().labels(), im);
        AbHom cokernel_projection(f.codomain(), cokernel, IntMatrix::identity(f.codomain().generator_count()));
        return HomDecomposition{std::move(kernel),   std::move(kernel_inclusion), std::move(image),
                                std::move(image_inclusion), std::move(coimage_projection), std::move(cokernel),
                                std::move(cokernel_projection)};
    }

    FPAbGroup canonicalize(std::vector<std::string> labels, const IntMatrix& relations) {
        return FPAbGroup(std::move(labels), relations);
    }

    std::pair<FPAbGroup, AbHom> subgroup(const FPAbGroup& g, const std::vector<IntVector>& elements) {
        const std::size_t n = g.generator_count();
        HnfBuilder b(n, std::vector<Integer>(n, g.is_finite() ? g.exponent() : Integer(0)));
        b.add_rows(g.relations().basis());
        for (const auto& e : elements) {
            b.add(e);
        }
        const Lattice span = b.lattice();
        FPAbGroup sub(default_labels(span.rank(), "s"), coordinates_in(g.relations(), span));
        AbHom inclusion(sub, g, span.basis());
        return {std::move(sub), std::move(inclusion)};
    }

    std::pair<FPAbGroup, AbHom> quotient(const FPAbGroup& g, const std::vector<IntVector>& elements) {
        const std::size_t n = g.generator_count();
        HnfBuilder b(n, std::vector<Integer>(n, g.is_finite() ? g.exponent() : Integer(0)));
        b.add_rows(g.relations().basis());
        for (const auto& e : elements) {
            b.add(e);
        }
        FPAbGroup q(g.labels(), b.lattice());
        AbHom projection(g, q, IntMatrix::identity(n));
        return {std::move(q), std::move(projection)};
    }

    CanonicalIso canonical_form(const FPAbGroup& g) {
        FPAbGroup diag = FPAbGroup::diagonal(g.canonical_orders());
        const std::size_t n = g.generator_count(), k = g.canonical_rank();
        IntMatrix to(0, k), from(0, n);
        for (std::size_t i = 0; i < n; ++i) {
            to.append_row(g.to_canonical(g.generator(i)));
        }
        for (std::size_t j = 0; j < k; ++j) {
            from.append_row(g.from_canonical(unit_vector(k, j)));
        }
        AbHom to_diag(g, diag, std::move(to));
        AbHom from_diag(diag, g, std::move(from));
        return CanonicalIso{std::move(diag), std::move(to_diag), std::move(from_diag)};
    }

    DirectSum direct_sum(const std::vector<FPAbGroup>& summands) {
        std::size_t n = 0;
        std::vector<std::size_t> offsets;
        std::vector<std::string> labels;
        for (const auto& s : summands) {
            offsets.push_back(n);
            n += s.generator_count();
            labels.insert(labels.end(), s.labels().begin(), s.labels().end());
        }
        IntMatrix rel(0, n);
        for (std::size_t k = 0; k < summands.size(); ++k) {
            const Lattice& r = summands[k].relations();
            for (std::size_t i = 0; i < r.rank(); ++i) {
                IntVector row(n);
                for (std::size_t j = 0; j < r.ambient_rank(); ++j) {
                    row[offsets[k] + j] = r.basis()(i, j);
                }
                rel.append_row(row);
            }
        }
        DirectSum out{FPAbGroup(labels, rel), {}, {}};
        for (std::size_t k = 0; k < summands.size(); ++k) {
            const std::size_t nk = summands[k].generator_count();
            IntMatrix inc(nk, n), proj(n, nk);
            for (std::size_t j = 0; j < nk; ++j) {
                inc(j, offsets[k] + j) = 1;
                proj(offsets[k] + j, j) = 1;
            }
            out.inclusions.emplace_back(summands[k], out.group, std::move(inc));
            out.projections.emplace_back(out.group, summands[k], std::move(proj));
        }
        return out;
    }

    AbHom direct_sum_map(const std::vector<AbHom>& maps) {
        std::vector<FPAbGroup> doms, cods;
        for (const auto& f : maps) {
            doms.push_back(f.domain());
            cods.push_back(f.codomain());
        }
        DirectSum d = direct_sum(doms), c = direct_sum(cods);
        IntMatrix m(d.group.generator_count(), c.group.generator_count());
        std::size_t ro = 0, co = 0;
        for (const auto& f : maps) {
            for (std::size_t i = 0; i < f.matrix().rows(); ++i) {
                for (std::size_t j = 0; j < f.matrix().cols(); ++j) {
                    m(ro + i, co + j) = f.matrix()(i, j);
                }
            }
            ro += f.matrix().rows();
            co += f.matrix().cols();
        }
        return AbHom(d.group, c.group, std::move(m));
    }

    // ---------------------------------------------------------------- tensor products

    IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
        IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.rows(); ++j) {
                    for (std::size_t l = 0; l < b.cols(); ++l) {
                        if (b(j, l) != 0) {
                            out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
                        }
                    }
                }
            }
        }
        return out;
    }

    IntVector tensor_element(const IntVector& x, const IntVector& y) {
        IntVector out(x.size() * y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < y.size(); ++j) {
                out[i * y.size() + j] = x[i] * y[j];
            }
        }
        return out;
    }

    IntVector tensor_product_of(const std::vector<IntVector>& xs) {
        if (xs.empty()) {
            return IntVector{1};
        }
        IntVector out = xs.front();
        for (std::size_t k = 1; k < xs.size(); ++k) {
            out = tensor_element(out, xs[k]);
        }
        return out;
    }

    FPAbGroup tensor(const FPAbGroup& a, const FPAbGroup& b) {
        const std::size_t n = a.generator_count(), m = b.generator_count();
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                labels.push_back(a.labels()[i] + "*" + b.labels()[j]);
            }
        }
        HnfBuilder rel(n * m);
        for (std::size_t r = 0; r < a.relations().rank(); ++r) {
            IntVector row = a.relations().basis().row(r);
            for (std::size_t j = 0; j < m; ++j) {
                rel.add(tensor_element(row, unit_vector(m, j)));
            }
        }
        for (std::size_t r = 0; r < b.relations().rank(); ++r) {
            IntVector row = b.relations().basis().row(r);
            for (std::size_t i = 0; i < n; ++i) {
                rel.add(tensor_element(unit_vector(n, i), row));
            }
        }
        return FPAbGroup(std::move(labels), rel.lattice());
    }

    AbHom tensor_map(const AbHom& f, const AbHom& g) {
        return AbHom(tensor(f.domain(), g.domain()), tensor(f.codomain(), g.codomain()),
                     kronecker(f.matrix(), g.matrix()));
    }

    FPAbGroup tensor_power(const FPAbGroup& a, unsigned n) {
        if (n == 0) {
            throw PreconditionError("tensor_power: degree must be positive");
        }
        FPAbGroup out = a;
        for (unsigned k = 1; k < n; ++k) {
            out = tensor(out, a);
        }
        return out;
    }

    AbHom tensor_power_map(const AbHom& f, unsigned n) {
        if (n == 0) {
            throw PreconditionError("tensor_power_map: degree must be positive");
        }
        IntMatrix m = f.matrix();
        for (unsigned k = 1; k < n; ++k) {
            m = kronecker(m, f.matrix());
        }
        return AbHom(tensor_power(f.domain(), n), tensor_power(f.codomain(), n), std::move(m));
    }

    namespace {

        // Index of the pair (i, j), i < j, in lexicographic order of pairs from n.
        std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

        IntMatrix lambda2_projection(std::size_t n) {
            IntMatrix p(n * n, n * (n - (n > 0 ? 1 : 0)) / 2);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i < j) {
                        p(i * n + j, pair_index(n, i, j)) = 1;
                    } else if (i > j) {
                        p(i * n + j, pair_index(n, j, i)) = -1;
                    }
                }
            }
            return p;
        }

        // Sorted index tuples of length n from k letters, lexicographic order.
        std::vector<std::vector<std::size_t>> multisets(std::size_t k, unsigned n) {
            std::vector<std::vector<std::size_t>> out;
            if (k == 0) {
                return out;
            }
            std::vector<std::size_t> t(n, 0);
            for (;;) {
                out.push_back(t);
                std::size_t pos = n;
                while (pos > 0 && t[pos - 1] == k - 1) {
                    --pos;
                }
                if (pos == 0) {
                    return out;
                }
                std::size_t v = t[pos - 1] + 1;
                for (std::size_t q = pos - 1; q < n; ++q) {
                    t[q] = v;
                }
            }
        }

        struct SymmetricIndex {
            std::vector<std::vector<std::size_t>> tuples;
            std::map<std::vector<std::size_t>, std::size_t> index;
            IntMatrix projection;  // k^n x tuples
        };

        SymmetricIndex symmetric_index(std::size_t k, unsigned n) {
            SymmetricIndex s;
            s.tuples = multisets(k, n);
            for (std::size_t i = 0; i < s.tuples.size(); ++i) {
                s.index[s.tuples[i]] = i;
            }
            std::size_t total = 1;
            for (unsigned q = 0; q < n; ++q) {
                total *= k;
            }
            s.projection = IntMatrix(total, s.tuples.size());
            std::vector<std::size_t> t(n);
            for (std::size_t flat = 0; flat < total; ++flat) {
                std::size_t rest = flat;
                for (std::size_t q = n; q > 0; --q) {
                    t[q - 1] = rest % k;
                    rest /= k;
                }
                std::vector<std::size_t> sorted = t;
                std::sort(sorted.begin(), sorted.end());
                s.projection(flat, s.index.at(sorted)) = 1;
            }
            return s;
        }

    }  // namespace

    TensorQuotient lambda2(const FPAbGroup& a) {
        const std::size_t n = a.generator_count();
        IntMatrix proj = lambda2_projection(n);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                labels.push_back(a.labels()[i] + "^" + a.labels()[j]);
            }
        }
        HnfBuilder rel(proj.cols());
        for (std::size_t r = 0; r < a.relations().rank(); ++r) {
            IntVector row = a.relations().basis().row(r);
            for (std::size_t j = 0; j < n; ++j) {
                rel.add(tensor_element(row, unit_vector(n, j)) * proj);
            }
        }
        FPAbGroup group(std::move(labels), rel.lattice());
        AbHom projection(tensor(a, a), group, std::move(proj));
        return TensorQuotient{std::move(group), std::move(projection)};
    }

    AbHom lambda2_map(const AbHom& f) {
        TensorQuotient src = lambda2(f.domain()), dst = lambda2(f.codomain());
        const std::size_t n = f.domain().generator_count();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                images.push_back(tensor_element(f.matrix().row(i), f.matrix().row(j)) * dst.projection.matrix());
            }
        }
        return AbHom::from_images(src.group, dst.group, images);
    }

    TensorQuotient sp(const FPAbGroup& a, unsigned n) {
        if (n == 0) {
            throw PreconditionError("sp: degree must be positive");
        }
        const std::size_t k = a.generator_count();
        SymmetricIndex s = symmetric_index(k, n);
        std::vector<std::string> labels;
        for (const auto& t : s.tuples) {
            std::string l;
            for (std::size_t q = 0; q < t.size(); ++q) {
                l += (q ? "." : "") + a.labels()[t[q]];
            }
            labels.push_back(l);
        }
        HnfBuilder rel(s.tuples.size());
        std::vector<std::vector<std::size_t>> tails = n > 1 ? multisets(k, n - 1) : std::vector<std::vector<std::size_t>>{{}};
        for (std::size_t r = 0; r < a.relations().rank(); ++r) {
            IntVector row = a.relations().basis().row(r);
            for (const auto& tail : tails) {
                std::vector<IntVector> factors{row};
                for (std::size_t q : tail) {
                    factors.push_back(unit_vector(k, q));
                }
                rel.add(tensor_product_of(factors) * s.projection);
            }
        }
        FPAbGroup group(std::move(labels), rel.lattice());
        AbHom projection(tensor_power(a, n), group, std::move(s.projection));
        return TensorQuotient{std::move(group), std::move(projection)};
    }

    AbHom sp_map(const AbHom& f, unsigned n) {
        TensorQuotient src = sp(f.domain(), n), dst = sp(f.codomain(), n);
        SymmetricIndex s = symmetric_index(f.domain().generator_count(), n);
        std::vector<IntVector> images;
        for (const auto& t : s.tuples) {
            std::vector<IntVector> factors;
            for (std::size_t q : t) {
                factors.push_back(f.matrix().row(q));
            }
            images.push_back(tensor_product_of(factors) * dst.projection.matrix());
        }
        return AbHom::from_images(src.group, dst.group, images);
    }

    // ---------------------------------------------------------------- Tor

    TorModel::TorModel(FPAbGroup a, FPAbGroup c) : a_(std::move(a)), c_(std::move(c)) {
        rel_basis_ = a_.relations().basis();
        const std::size_t r = rel_basis_.rows();
        DirectSum src = direct_sum(std::vector<FPAbGroup>(r, c_));
        DirectSum dst = direct_sum(std::vector<FPAbGroup>(a_.generator_count(), c_));
        AbHom f(src.group, dst.group, kronecker(rel_basis_, IntMatrix::identity(c_.generator_count())));
        kernel_ = HomSolver(f).kernel_lattice();
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < kernel_.rank(); ++k) {
            labels.push_back("t" + std::to_string(k + 1));
        }
        group_ = FPAbGroup(std::move(labels), coordinates_in(src.group.relations(), kernel_));
    }

    IntVector TorModel::tau(const IntVector& a, const Integer& m, const IntVector& c) const {
        if (m <= 0) {
            throw PreconditionError("tau: m must be positive");
        }
        if (!a_.is_zero(scale(m, a)) || !c_.is_zero(scale(m, c))) {
            throw PreconditionError("tau: m must annihilate both arguments");
        }
        auto lambda = a_.relations().coordinates(scale(m, a));
        if (!lambda) {
            throw InvariantError("tau: m*a not in relation lattice");
        }
        auto coords = kernel_.coordinates(tensor_element(*lambda, c));
        if (!coords) {
            throw InvariantError("tau: symbol outside kernel lattice");
        }
        return group_.reduce(*coords);
    }

    std::vector<std::pair<std::size_t, IntVector>> TorModel::symbols(const IntVector& x) const {
        a_.require_diagonal("TorModel::symbols");
        const std::size_t nc = c_.generator_count();
        IntVector v = x * kernel_.basis();
        std::vector<std::pair<std::size_t, IntVector>> out;
        for (std::size_t k = 0; k < rel_basis_.rows(); ++k) {
            IntVector block(v.begin() + static_cast<std::ptrdiff_t>(k * nc),
                            v.begin() + static_cast<std::ptrdiff_t>((k + 1) * nc));
            if (!dimquot::is_zero(block)) {
                out.emplace_back(a_.relations().pivots()[k], std::move(block));
            }
        }
        return out;
    }

    AbHom TorModel::hom_from_symbols(const FPAbGroup& target,
                                     const std::function<IntVector(std::size_t, const IntVector&)>& phi) const {
        std::vector<IntVector> images;
        for (std::size_t g = 0; g < group_.generator_count(); ++g) {
            IntVector img(target.generator_count());
            for (const auto& [i, c] : symbols(group_.generator(g))) {
                img = add(img, phi(i, c));
            }
            images.push_back(std::move(img));
        }
        return AbHom::from_images(group_, target, images);
    }

    AbHom tor_map(const TorModel& source, const TorModel& target, const AbHom& f, const AbHom& g) {
        if (!(f.domain() == source.left()) || !(g.domain() == source.right()) || !(f.codomain() == target.left()) ||
            !(g.codomain() == target.right())) {
            throw PreconditionError("tor_map: maps do not match the models");
        }
        const auto orders = source.left().require_diagonal("tor_map");
        return source.hom_from_symbols(target.group(), [&](std::size_t i, const IntVector& c) {
            return target.tau(f.matrix().row(i), orders[i], c * g.matrix());
        });
    }

    // ---------------------------------------------------------------- Gamma

    GammaModel::GammaModel(FPAbGroup a) : a_(std::move(a)) {
        orders_ = a_.require_diagonal("GammaModel");
        const std::size_t n = orders_.size();
        std::vector<Integer> gens;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            const Integer& d = orders_[i];
            gens.push_back(d % 2 == 0 ? Integer(2 * d) : d);
            labels.push_back("gamma(" + a_.labels()[i] + ")");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                gens.push_back(gcd(orders_[i], orders_[j]));
                labels.push_back("w(" + a_.labels()[i] + "," + a_.labels()[j] + ")");
            }
        }
        group_ = FPAbGroup::diagonal(gens, std::move(labels));
    }

    std::size_t GammaModel::h_index(std::size_t i, std::size_t j) const {
        if (i >= j || j >= orders_.size()) {
            throw PreconditionError("GammaModel::h_index: need i < j < rank");
        }
        return orders_.size() + pair_index(orders_.size(), i, j);
    }

    IntVector GammaModel::gamma(const IntVector& x) const {
        const std::size_t n = orders_.size();
        if (x.size() != n) {
            throw PreconditionError("GammaModel::gamma: length mismatch");
        }
        IntVector out(group_.generator_count());
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = x[i] * x[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                out[h_index(i, j)] = x[i] * x[j];
            }
        }
        return group_.reduce(out);
    }

    AbHom GammaModel::w() const {
        const std::size_t n = orders_.size();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                IntVector img(group_.generator_count());
                if (i == j) {
                    img[i] = 2;
                } else {
                    img[h_index(std::min(i, j), std::max(i, j))] = 1;
                }
                images.push_back(std::move(img));
            }
        }
        return AbHom::from_images(tensor(a_, a_), group_, images);
    }

    AbHom GammaModel::delta() const {
        const std::size_t n = orders_.size();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < n; ++i) {
            images.push_back(tensor_element(a_.generator(i), a_.generator(i)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                images.push_back(add(tensor_element(a_.generator(i), a_.generator(j)),
                                     tensor_element(a_.generator(j), a_.generator(i))));
            }
        }
        return AbHom::from_images(group_, tensor(a_, a_), images);
    }

    AbHom gamma_map(const GammaModel& source, const GammaModel& target, const AbHom& f) {
        if (!(f.domain() == source.base()) || !(f.codomain() == target.base())) {
            throw PreconditionError("gamma_map: map does not match the models");
        }
        const std::size_t n = source.base().generator_count();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < n; ++i) {
            images.push_back(target.gamma(f.matrix().row(i)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const IntVector x = f.matrix().row(i), y = f.matrix().row(j);
                images.push_back(sub(sub(target.gamma(add(x, y)), target.gamma(x)), target.gamma(y)));
            }
        }
        return AbHom::from_images(source.group(), target.group(), images);
    }

    FPAbGroup gamma(const FPAbGroup& a) { return GammaModel(canonical_form(a).diagonal).group(); }

    FPAbGroup gamma_by_presentation(const FPAbGroup& a) {
        const std::vector<IntVector> elems = a.elements();
        const std::size_t n = elems.size();
        const std::vector<Integer>& orders = a.canonical_orders();
        auto index_of = [&](const IntVector& x) {
            IntVector y = a.to_canonical(x);
            std::size_t idx = 0;
            for (std::size_t k = 0; k < y.size(); ++k) {
                idx = idx * orders[k].get_ui() + y[k].get_ui();
            }
            return idx;
        };
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("gamma(x" + std::to_string(i) + ")");
        }
        HnfBuilder rel(n);
        for (std::size_t i = 0; i < n; ++i) {
            IntVector row(n);
            row[index_of(scale(-1, elems[i]))] += 1;
            row[i] -= 1;
            rel.add(row);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const IntVector xy = add(elems[i], elems[j]);
                for (std::size_t k = j; k < n; ++k) {
                    IntVector row(n);
                    row[index_of(add(xy, elems[k]))] += 1;
                    row[index_of(xy)] -= 1;
                    row[index_of(add(elems[i], elems[k]))] -= 1;
                    row[index_of(add(elems[j], elems[k]))] -= 1;
                    row[i] += 1;
                    row[j] += 1;
                    row[k] += 1;
                    rel.add(row);
                }
            }
        }
        return FPAbGroup(std::move(labels), rel.lattice());
    }

}  // namespace dimquot
