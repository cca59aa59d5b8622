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

#include "dimquot/nil2.hpp"

#include <algorithm>

#include "dimquot/errors.hpp"
#include "dimquot/groupring.hpp"

namespace dimquot {

    namespace {

        IntVector reduce_mod_orders(const std::vector<Integer>& orders, IntVector x) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (orders[i] != 0) {
                    x[i] %= orders[i];
                    if (x[i] < 0) x[i] += orders[i];
                }
            }
            return x;
        }

        long as_long(const Integer& m) {
            if (!m.fits_slong_p()) throw ResourceLimitError("integer too large for a group exponent");
            return m.get_si();
        }

        // [x, w] in L_3(A) for x in A and w in Lambda^2(A) = L_2(A).
        IntVector bracket3(const LieComponent& l3, const IntVector& x, const IntVector& w) {
            const unsigned r = l3.basis.rank();
            auto letter = [r](unsigned i) { return unit_vector(r, i); };
            IntVector poly = zero_vector(static_cast<std::size_t>(r) * r * r);
            std::size_t p = 0;
            for (unsigned i = 0; i < r; ++i) {
                for (unsigned j = i + 1; j < r; ++j, ++p) {
                    if (w[p] == 0) continue;
                    const IntVector inner = lie_bracket(letter(i), letter(j), r);
                    for (unsigned a = 0; a < r; ++a) {
                        if (x[a] == 0) continue;
                        axpy(poly, x[a] * w[p], lie_bracket(letter(a), inner, r));
                    }
                }
            }
            return l3.from_polynomial(poly);
        }

        // Elements of A killed by m.
        std::vector<IntVector> killed_by(const FPAbGroup& a, const std::vector<IntVector>& elements, const Integer& m) {
            std::vector<IntVector> out;
            for (const auto& x : elements) {
                if (a.is_zero(scale(m, x))) out.push_back(x);
            }
            return out;
        }

        std::vector<Integer> divisors(const Integer& n) {
            std::vector<Integer> out;
            for (Integer d = 1; d <= n; ++d) {
                if (n % d == 0) out.push_back(d);
            }
            return out;
        }

    }  // namespace

    Class2Data::Class2Data(FiniteGroup g, LiftChoice choice) : g_(std::move(g)), choice_(choice), derived_(Subgroup::trivial(g_)),
          lambda2_(dimquot::lambda2(FPAbGroup())), c2_(AbHom::zero(FPAbGroup(), FPAbGroup())), ker_c2_inclusion_(c2_) {
        auto cls = nilpotency_class(g_);
        if (!cls || *cls > 2) throw PreconditionError("Class2Data needs a group of nilpotency class at most 2");

        Abelianization ab = abelianization(g_);
        const auto& aorders = ab.group.canonical_orders();
        std::vector<std::string> alabels;
        for (std::size_t i = 0; i < aorders.size(); ++i) alabels.push_back("x" + std::to_string(i + 1));
        gab_ = FPAbGroup::diagonal(aorders, alabels);
        gab_image_.resize(g_.order());
        for (std::size_t x = 0; x < g_.order(); ++x) gab_image_[x] = ab.group.to_canonical(ab.image[x]);
        derived_ = ab.derived;

        EmbeddedGroup eg = as_group(derived_);
        Abelianization pab = abelianization(eg.group);
        const auto& porders = pab.group.canonical_orders();
        std::vector<std::string> plabels;
        for (std::size_t i = 0; i < porders.size(); ++i) plabels.push_back("c" + std::to_string(i + 1));
        gprime_ = FPAbGroup::diagonal(porders, plabels);
        prime_image_.assign(g_.order(), IntVector{});
        for (std::size_t i = 0; i < eg.embedding.size(); ++i) {
            prime_image_[eg.embedding[i]] = pab.group.to_canonical(pab.image[i]);
        }

        std::size_t count = 1;
        for (const auto& d : aorders) count *= static_cast<std::size_t>(as_long(d));
        lifts_.assign(count, g_.order());
        for (std::size_t k = 0; k < g_.order(); ++k) {
            const std::size_t x = choice_.greatest ? g_.order() - 1 - k : k;
            auto& slot = lifts_[index_of(gab_image_[x])];
            if (slot == g_.order()) slot = x;
        }

        lambda2_ = dimquot::lambda2(gab_);
        const std::size_t r = gab_.generator_count();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i + 1; j < r; ++j) {
                images.push_back(prime_coords(g_.commutator(lift(gab_.generator(i)), lift(gab_.generator(j)))));
            }
        }
        c2_ = AbHom::from_images(lambda2_.group, gprime_, images);
        for (auto a : g_.generators()) {
            for (auto b : g_.generators()) {
                if (!gprime_.equal(c2_(wedge(project(a), project(b))), prime_coords(g_.commutator(a, b)))) {
                    throw InvariantError("c2 disagrees with the commutator of generators");
                }
            }
        }
        if (!c2_.is_surjective()) throw InvariantError("c2 is not surjective");
        c2_solver_ = std::make_shared<const HomSolver>(c2_);
        HomDecomposition dec = hom_decompose(c2_);
        ker_c2_ = dec.kernel;
        ker_c2_inclusion_ = dec.kernel_inclusion;
    }

    std::size_t Class2Data::index_of(const IntVector& x) const {
        const auto& orders = gab_.canonical_orders();
        IntVector y = reduce_mod_orders(orders, x);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            idx = idx * static_cast<std::size_t>(as_long(orders[i])) + static_cast<std::size_t>(as_long(y[i]));
        }
        return idx;
    }

    IntVector Class2Data::prime_coords(std::size_t g) const {
        if (!derived_.contains(g)) throw PreconditionError("element does not lie in G'");
        return prime_image_[g];
    }

    std::size_t Class2Data::lift(const IntVector& x) const { return lifts_[index_of(x)]; }

    IntVector Class2Data::root(const Integer& m, const IntVector& x) const {
        if (!gab_.is_zero(scale(m, x))) throw PreconditionError("root: m must annihilate x");
        const IntVector target = prime_coords(g_.pow(lift(x), as_long(m)));
        auto sol = c2_solver_->solve(target);
        if (!sol) throw InvariantError("c2 is not surjective");
        IntVector f = lambda2_.group.reduce(*sol);
        if (choice_.shift_roots && ker_c2_.generator_count() > 0) {
            f = lambda2_.group.reduce(add(f, ker_c2_inclusion_(ker_c2_.generator(0))));
        }
        if (!gprime_.equal(c2_(f), target)) throw InvariantError("root does not solve c2(f) = x^m");
        return f;
    }

    IntVector Class2Data::wedge(const IntVector& a, const IntVector& b) const {
        return lambda2_.projection(tensor_element(a, b));
    }

    IntVector delta1_formula(const Class2Data& d, const DeltaMaps& maps, const Integer& m, const IntVector& x1,
                             const IntVector& x2) {
        return maps.l3_projection(bracket3(maps.l3, x2, d.root(m, x1)));
    }

    IntVector delta2_formula(const Class2Data& d, const DeltaMaps& maps, const Integer& m, const IntVector& x1,
                             const IntVector& x2) {
        const auto& g = d.group();
        const long k = as_long(m);
        IntVector v = sub(tensor_element(x1, d.prime_coords(g.pow(d.lift(x2), k))),
                          tensor_element(x2, d.prime_coords(g.pow(d.lift(x1), k))));
        return maps.gab_tensor_prime.reduce(v);
    }

    IntVector delta3_formula(const DeltaMaps& maps, const Integer& m, const IntVector& x1, const IntVector& x2) {
        IntVector t = sub(tensor_product_of({x1, x1, x2}), tensor_product_of({x1, x2, x2}));
        return maps.sp3.projection(scale(binomial(as_long(m), 2), t));
    }

    AbHom delta3_map(const ExtTorSquare& domain, const TensorQuotient& sp3) {
        const FPAbGroup& a = domain.base();
        const auto orders = a.require_diagonal("delta3_map");
        AbHom tor_hom = domain.tor().hom_from_symbols(sp3.group, [&](std::size_t i, const IntVector& c) {
            const IntVector e = a.generator(i);
            IntVector t = sub(tensor_product_of({e, e, c}), tensor_product_of({e, c, c}));
            return sp3.projection(scale(binomial(as_long(orders[i]), 2), t));
        });
        try {
            return AbHom(domain.group(), sp3.group, tor_hom.matrix());
        } catch (const PreconditionError&) {
            throw InvariantError("delta_3 does not vanish on the diagonal symbols");
        }
    }

    DeltaMaps delta_maps(const Class2Data& d) {
        const FPAbGroup& a = d.gab();
        if (!a.is_finite()) throw PreconditionError("delta maps need a finite abelianization");
        const auto orders = a.require_diagonal("delta_maps");
        const std::size_t r = a.generator_count();
        const auto elements = a.elements();

        ExtTorSquare ext(a);
        LieComponent l3 = lie_component(a, 3);

        std::vector<TorSymbol> gens;
        std::vector<Integer> gorders;
        std::vector<std::string> glabels;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = i + 1; j < r; ++j) {
                const Integer g = gcd(orders[i], orders[j]);
                gens.push_back({g, scale(orders[i] / g, a.generator(i)), scale(orders[j] / g, a.generator(j))});
                gorders.push_back(g);
                glabels.push_back("t" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            }
        }
        FPAbGroup dom = FPAbGroup::diagonal(gorders, glabels);
        std::vector<IntVector> ext_images;
        for (const auto& s : gens) ext_images.push_back(ext.projection()(ext.tor().tau(s.x1, s.m, s.x2)));
        AbHom to_ext = AbHom::from_images(dom, ext.group(), ext_images);
        if (!to_ext.is_injective() || !to_ext.is_surjective()) {
            throw InvariantError("cyclic decomposition of the exterior torsion square failed");
        }
        std::vector<IntVector> back;
        HomSolver inv(to_ext);
        for (std::size_t k = 0; k < ext.group().generator_count(); ++k) back.push_back(*inv.solve(ext.group().generator(k)));
        AbHom from_ext = AbHom::from_images(ext.group(), dom, back);

        std::vector<IntVector> rels;
        for (std::size_t y = 0; y < r; ++y) {
            for (std::size_t k = 0; k < d.ker_c2().generator_count(); ++k) {
                rels.push_back(bracket3(l3, a.generator(y), d.ker_c2_inclusion()(d.ker_c2().generator(k))));
            }
        }
        for (const auto& x : elements) rels.push_back(bracket3(l3, x, d.root(a.element_order(x), x)));
        for (std::size_t i = 0; i < r; ++i) {
            const IntVector e = a.generator(i);
            const Integer& m = orders[i];
            const Integer b = binomial(as_long(m), 2);
            for (const auto& c : killed_by(a, elements, m)) {
                IntVector v = add(bracket3(l3, e, d.root(m, c)), bracket3(l3, c, d.root(m, e)));
                axpy(v, b, bracket3(l3, add(e, c), d.wedge(e, c)));
                rels.push_back(std::move(v));
            }
        }
        auto [q, qproj] = quotient(l3.group, rels);

        TensorQuotient sp3 = sp(a, 3);
        FPAbGroup t2 = tensor(a, d.gprime());

        std::vector<IntVector> beta_images;
        HomSolver c2_solver(d.c2());
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < d.gprime().generator_count(); ++j) {
                auto w = c2_solver.solve(d.gprime().generator(j));
                if (!w) throw InvariantError("c2 is not surjective");
                beta_images.push_back(qproj(bracket3(l3, a.generator(i), *w)));
            }
        }
        AbHom beta = AbHom::from_images(t2, q, beta_images);

        DeltaMaps maps{std::move(ext), dom, gens, std::move(to_ext), std::move(from_ext), std::move(l3), q, qproj,
                       std::move(sp3), t2, AbHom::zero(dom, q), AbHom::zero(dom, t2), AbHom::zero(dom, FPAbGroup()),
                       std::move(beta)};
        std::vector<IntVector> i1, i2, i3;
        for (const auto& s : gens) {
            i1.push_back(delta1_formula(d, maps, s.m, s.x1, s.x2));
            i2.push_back(delta2_formula(d, maps, s.m, s.x1, s.x2));
            i3.push_back(delta3_formula(maps, s.m, s.x1, s.x2));
        }
        maps.delta1 = AbHom::from_images(dom, q, i1);
        maps.delta2 = AbHom::from_images(dom, t2, i2);
        maps.delta3 = AbHom::from_images(dom, maps.sp3.group, i3);
        return maps;
    }

    ProbeReport probe_delta_maps(const Class2Data& d, const DeltaMaps& maps, std::mt19937_64& rng, std::size_t count) {
        ProbeReport rep;
        const FPAbGroup& a = d.gab();
        if (a.is_trivial()) return rep;
        const auto elements = a.elements();
        const auto ms = divisors(a.exponent());
        for (std::size_t k = 0; k < count; ++k) {
            const Integer m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
            const auto pool = killed_by(a, elements, m);
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            const IntVector& x1 = pool[pick(rng)];
            const IntVector& x2 = pool[pick(rng)];
            const IntVector sym = maps.from_ext(maps.ext.projection()(maps.ext.tor().tau(x1, m, x2)));
            ++rep.probes;
            if (!maps.l3_quotient.equal(maps.delta1(sym), delta1_formula(d, maps, m, x1, x2))) ++rep.delta1_mismatches;
            if (!maps.gab_tensor_prime.equal(maps.delta2(sym), delta2_formula(d, maps, m, x1, x2))) ++rep.delta2_mismatches;
            if (!maps.sp3.group.equal(maps.delta3(sym), delta3_formula(maps, m, x1, x2))) ++rep.delta3_mismatches;
        }
        return rep;
    }

    FPAbGroup kerrho2_bound(const DeltaMaps& maps) {
        const Lattice k2 = HomSolver(maps.delta2).kernel_lattice();
        const Lattice k3 = HomSolver(maps.delta3).kernel_lattice();
        const Lattice both = lattice_intersect(k2, k3);
        std::vector<IntVector> images;
        for (const auto& row : both.basis().row_vectors()) images.push_back(maps.delta1(row));
        return subgroup(maps.l3_quotient, images).first;
    }

    FPAbGroup kerrho2_bound(const Class2Data& d) { return kerrho2_bound(delta_maps(d)); }

    Kerdel3Report kerdel3_check(const FPAbGroup& a_in) {
        if (!a_in.is_finite()) throw PreconditionError("kerdel3_check needs a finite group");
        const FPAbGroup a = FPAbGroup::diagonal(a_in.canonical_orders());
        ExtTorSquare ext(a);
        TensorQuotient sp3 = sp(a, 3);
        AbHom d3 = delta3_map(ext, sp3);
        const FPAbGroup& dom = ext.group();

        Kerdel3Report rep;
        rep.domain_order = dom.order();
        std::vector<IntVector> kernel;
        for (const auto& x : dom.elements()) {
            if (sp3.group.is_zero(d3(x))) kernel.push_back(x);
        }
        rep.kernel_order = kernel.size();

        const auto elements = a.elements();
        std::vector<IntVector> generated;
        for (const auto& m : divisors(a.exponent())) {
            std::vector<IntVector> doubles;
            for (const auto& x2 : killed_by(a, elements, 2 * m)) {
                IntVector y = a.reduce(scale(2, x2));
                if (std::find(doubles.begin(), doubles.end(), y) == doubles.end()) doubles.push_back(std::move(y));
            }
            for (const auto& x1 : killed_by(a, elements, m)) {
                for (const auto& y : doubles) generated.push_back(ext.projection()(ext.tor().tau(x1, m, y)));
            }
        }
        auto gen_sub = subgroup(dom, generated);
        rep.generated_order = gen_sub.first.order();

        HnfBuilder kb(dom.generator_count());
        HnfBuilder gb(dom.generator_count());
        kb.add_rows(dom.relations().basis());
        gb.add_rows(dom.relations().basis());
        for (const auto& x : kernel) kb.add(x);
        for (const auto& x : generated) gb.add(x);
        rep.equal = kb.lattice() == gb.lattice();
        return rep;
    }

    Subgroup d3rel_subgroup(const FiniteGroup& e, const Subgroup& n) {
        if (!n.is_normal()) throw PreconditionError("d3rel_subgroup needs a normal subgroup");
        const Subgroup all = Subgroup::whole(e);
        const Subgroup ne = join(n, commutator_subgroup(e, all, all));
        const Subgroup base = join(commutator_subgroup(e, n, n), lower_central_term(e, 3));
        std::vector<bool> seen(e.order(), false);
        std::vector<std::size_t> gens = base.generators();
        const std::size_t exp = e.exponent();
        for (std::size_t k = 1; k <= exp; ++k) {
            std::vector<std::size_t> ok;
            for (std::size_t a = 0; a < e.order(); ++a) {
                if (ne.contains(e.pow(a, static_cast<long long>(k)))) ok.push_back(a);
            }
            for (auto a : ok) {
                const std::size_t ak = e.pow(a, static_cast<long long>(k));
                for (auto b : ok) {
                    const std::size_t c = e.commutator(ak, b);
                    if (!seen[c]) {
                        seen[c] = true;
                        gens.push_back(c);
                    }
                }
            }
        }
        return closure(e, gens);
    }

    D4Report d4_check(const FiniteGroup& e) {
        auto cls = nilpotency_class(e);
        if (!cls || *cls > 3) throw PreconditionError("d4_check needs a group of nilpotency class at most 3");
        D4Report rep;
        auto rows = dimension_report(e, 4);
        rep.quotient_order = rows[3].quotient.order;
        rep.quotient_exponent = rows[3].quotient.exponent;
        Quotient g = quotient(e, lower_central_term(e, 3));
        rep.bound_order = kerrho2_bound(Class2Data(g.group)).order();
        rep.divides = rep.bound_order != 0 && rep.bound_order % Integer(static_cast<unsigned long>(rep.quotient_order)) == 0;
        rep.exponent_divides_two = rep.quotient_exponent <= 2;
        return rep;
    }

}  // namespace dimquot
