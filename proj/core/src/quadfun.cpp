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

#include "dimquot/quadfun.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "dimquot/errors.hpp"

namespace dimquot {

    namespace {

        // Torsion elements of a diagonally presented group, free coordinates zero.
        std::vector<IntVector> torsion_elements(const std::vector<Integer>& orders) {
            Integer count = 1;
            for (const auto& d : orders) {
                if (d > 0) {
                    count *= d;
                }
            }
            if (count > kMaxEnumeration) {
                throw ResourceLimitError("torsion subgroup of order " + count.get_str() + " exceeds enumeration cap");
            }
            std::vector<IntVector> out;
            IntVector x(orders.size());
            for (;;) {
                out.push_back(x);
                std::size_t pos = orders.size();
                bool carried = true;
                while (carried && pos > 0) {
                    --pos;
                    if (orders[pos] <= 0) {
                        continue;
                    }
                    ++x[pos];
                    if (x[pos] < orders[pos]) {
                        carried = false;
                    } else {
                        x[pos] = 0;
                    }
                }
                if (carried) {
                    return out;
                }
            }
        }

        Integer mod(const Integer& a, const Integer& m);

        Integer order_in(const std::vector<Integer>& orders, const IntVector& x) {
            Integer o = 1;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                if (orders[i] == 0) {
                    if (x[i] != 0) {
                        return 0;
                    }
                    continue;
                }
                const Integer r = mod(x[i], orders[i]);
                if (r != 0) {
                    o = lcm(o, Integer(orders[i] / gcd(orders[i], r)));
                }
            }
            return o;
        }

        Integer mod(const Integer& a, const Integer& m) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
            return r;
        }

        std::size_t pair_offset(std::size_t n, std::size_t i, std::size_t j) {
            return i * n - i * (i + 1) / 2 + (j - i - 1);
        }

        std::vector<std::size_t> even_summands(const std::vector<Integer>& orders) {
            std::vector<std::size_t> out;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                if (orders[i] > 0 && orders[i] % 2 == 0) {
                    out.push_back(i);
                }
            }
            return out;
        }

        FPAbGroup diagonal_of(const FPAbGroup& a) { return FPAbGroup::diagonal(a.canonical_orders()); }

    }  // namespace

    // ---------------------------------------------------------------- Omega

    OmegaModel::OmegaModel(FPAbGroup a) : a_(std::move(a)) {
        orders_ = a_.require_diagonal("OmegaModel");
        const std::size_t n = orders_.size();
        std::vector<Integer> gens;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) {
            gens.push_back(orders_[i] == 0 ? Integer(1) : orders_[i]);
            labels.push_back("w(" + a_.labels()[i] + ")");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool free = orders_[i] == 0 || orders_[j] == 0;
                gens.push_back(free ? Integer(1) : Integer(gcd(orders_[i], orders_[j])));
                labels.push_back("t(" + a_.labels()[i] + "," + a_.labels()[j] + ")");
            }
        }
        group_ = FPAbGroup::diagonal(gens, std::move(labels));
    }

    std::size_t OmegaModel::t_index(std::size_t i, std::size_t j) const {
        if (i >= j || j >= orders_.size()) {
            throw PreconditionError("OmegaModel::t_index: need i < j < rank");
        }
        return orders_.size() + pair_offset(orders_.size(), i, j);
    }

    IntVector OmegaModel::w(const Integer& n, const IntVector& x) const {
        if (n <= 0) {
            throw PreconditionError("w: n must be positive");
        }
        if (!a_.is_zero(scale(n, x))) {
            throw PreconditionError("w: n must annihilate x");
        }
        const std::size_t k = orders_.size();
        IntVector a(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = orders_[i] == 0 ? x[i] : mod(x[i], orders_[i]);
        }
        IntVector out(group_.generator_count());
        for (std::size_t i = 0; i < k; ++i) {
            if (a[i] == 0 || orders_[i] == 0) {
                continue;
            }
            // In Omega(Z/d): a = h b with h = d / gcd(n, d), and w_n(a) = b^2 (n / gcd(n, d)) h w_d(1).
            const Integer& d = orders_[i];
            const Integer g0 = gcd(n, d);
            const Integer h = d / g0;
            const Integer b = a[i] / h;
            out[i] = b * b * (n / g0) * h;
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (a[i] == 0 || a[j] == 0 || orders_[i] == 0 || orders_[j] == 0) {
                    continue;
                }
                // tau_n(alpha, gamma) in Tor(Z/p, Z/q) = tau_p(1, beta (n/g1) gamma) with
                // alpha = beta p / g1, g1 = gcd(n, p); tau_p(1, (q/g) s) = s t_ij.
                const Integer& p = orders_[i];
                const Integer& q = orders_[j];
                const Integer g1 = gcd(n, p);
                const Integer beta = a[i] / (p / g1);
                const Integer c = mod(beta * (n / g1) * a[j], q);
                const Integer g = gcd(p, q);
                out[t_index(i, j)] = c / (q / g);
            }
        }
        return group_.reduce(out);
    }

    AbHom omega_map(const OmegaModel& source, const OmegaModel& target, const AbHom& f) {
        if (!(f.domain() == source.base()) || !(f.codomain() == target.base())) {
            throw PreconditionError("omega_map: map does not match the models");
        }
        const auto& d = source.orders();
        const std::size_t n = d.size();
        std::vector<IntVector> images;
        for (std::size_t i = 0; i < n; ++i) {
            images.push_back(d[i] == 0 ? target.group().zero() : target.w(d[i], f.matrix().row(i)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (d[i] == 0 || d[j] == 0) {
                    images.push_back(target.group().zero());
                    continue;
                }
                const Integer g = gcd(d[i], d[j]);
                const IntVector a = scale(d[i] / g, f.matrix().row(i));
                const IntVector c = scale(d[j] / g, f.matrix().row(j));
                images.push_back(sub(sub(target.w(g, add(a, c)), target.w(g, a)), target.w(g, c)));
            }
        }
        return AbHom::from_images(source.group(), target.group(), images);
    }

    FPAbGroup omega(const FPAbGroup& a) { return OmegaModel(diagonal_of(a)).group(); }

    FPAbGroup omega_by_presentation(const FPAbGroup& a) {
        if (!a.is_finite()) {
            throw PreconditionError("omega_by_presentation: group must be finite");
        }
        const std::vector<IntVector> elems = a.elements();
        const std::vector<Integer>& orders = a.canonical_orders();
        auto index_of = [&](const IntVector& x) {
            IntVector y = a.to_canonical(x);
            std::size_t idx = 0;
            for (std::size_t k = 0; k < y.size(); ++k) {
                idx = idx * orders[k].get_ui() + y[k].get_ui();
            }
            return idx;
        };
        const unsigned long e = a.exponent().get_ui();
        std::vector<unsigned long> divisors;
        for (unsigned long n = 1; n <= e; ++n) {
            if (e % n == 0) {
                divisors.push_back(n);
            }
        }
        // Generator w_n(x) for n | e and n x = 0.
        std::map<std::pair<unsigned long, std::size_t>, std::size_t> gen;
        std::vector<std::string> labels;
        for (unsigned long n : divisors) {
            for (std::size_t x = 0; x < elems.size(); ++x) {
                if (a.is_zero(scale(Integer(n), elems[x]))) {
                    gen[{n, x}] = labels.size();
                    labels.push_back("w" + std::to_string(n) + "(x" + std::to_string(x) + ")");
                }
            }
        }
        const std::size_t width = labels.size();
        // w_N(x) = (N / g) w_g(x) for g = gcd(N, e).
        auto add_w = [&](IntVector& row, long coeff, unsigned long big_n, const IntVector& x) {
            const unsigned long g = std::gcd(big_n, e);
            row[gen.at({g, index_of(x)})] += coeff * static_cast<long>(big_n / g);
        };
        HnfBuilder rel(width);
        auto annihilates = [&](unsigned long n, const IntVector& x) { return a.is_zero(scale(Integer(n), x)); };
        for (unsigned long n : divisors) {
            for (unsigned long k = 1; k <= e; ++k) {
                for (const auto& x : elems) {
                    if (annihilates(n, x)) {
                        IntVector row(width);
                        add_w(row, 1, n * k, x);
                        add_w(row, -static_cast<long>(k), n, x);
                        rel.add(row);
                    }
                    if (annihilates(n * k, x)) {
                        IntVector row(width);
                        add_w(row, static_cast<long>(k), n * k, x);
                        add_w(row, -1, n, scale(Integer(k), x));
                        rel.add(row);
                        const IntVector kx = scale(Integer(k), x);
                        for (const auto& y : elems) {
                            if (!annihilates(n, y)) {
                                continue;
                            }
                            IntVector r3(width);
                            add_w(r3, 1, n, add(kx, y));
                            add_w(r3, -1, n, kx);
                            add_w(r3, -1, n, y);
                            add_w(r3, -1, n * k, add(x, y));
                            add_w(r3, 1, n * k, x);
                            add_w(r3, 1, n * k, y);
                            rel.add(r3);
                        }
                    }
                }
            }
            std::vector<std::size_t> killed;
            for (std::size_t x = 0; x < elems.size(); ++x) {
                if (annihilates(n, elems[x])) {
                    killed.push_back(x);
                }
            }
            for (std::size_t i = 0; i < killed.size(); ++i) {
                for (std::size_t j = i; j < killed.size(); ++j) {
                    for (std::size_t k = j; k < killed.size(); ++k) {
                        const IntVector& x = elems[killed[i]];
                        const IntVector& y = elems[killed[j]];
                        const IntVector& z = elems[killed[k]];
                        IntVector row(width);
                        add_w(row, 1, n, add(add(x, y), z));
                        add_w(row, -1, n, add(x, y));
                        add_w(row, -1, n, add(x, z));
                        add_w(row, -1, n, add(y, z));
                        add_w(row, 1, n, x);
                        add_w(row, 1, n, y);
                        add_w(row, 1, n, z);
                        rel.add(row);
                    }
                }
            }
        }
        return FPAbGroup(std::move(labels), rel.lattice());
    }

    // ---------------------------------------------------------------- R

    namespace {
        FPAbGroup two_torsion_group(const std::vector<std::size_t>& idx) {
            return FPAbGroup::diagonal(std::vector<Integer>(idx.size(), Integer(2)));
        }
    }  // namespace

    RModel::RModel(FPAbGroup a)
        : a_(std::move(a)), tor_(a_, a_), two_(even_summands(a_.require_diagonal("RModel"))),
          gamma2_(two_torsion_group(two_)), sum_(direct_sum({tor_.group(), gamma2_.group()})) {
        const std::vector<Integer> orders = a_.require_diagonal("RModel");
        std::vector<IntVector> rels;
        for (const auto& x : torsion_elements(orders)) {
            const Integer o = order_in(orders, x);
            rels.push_back(from_tor(tor_.tau(x, o, x)));
        }
        const std::size_t k = two_.size();
        const AbHom w = gamma2_.w();
        for (std::size_t s = 0; s < k; ++s) {
            for (std::size_t t = 0; t < k; ++t) {
                const IntVector ws = w(tensor_element(unit_vector(k, s), unit_vector(k, t)));
                const IntVector xs = scale(orders[two_[s]] / 2, a_.generator(two_[s]));
                const IntVector xt = scale(orders[two_[t]] / 2, a_.generator(two_[t]));
                rels.push_back(sub(from_gamma(ws), from_tor(tor_.tau(xs, 2, xt))));
            }
        }
        group_ = quotient(sum_.group, rels).first;
    }

    IntVector RModel::from_tor(const IntVector& t) const { return t * sum_.inclusions[0].matrix(); }

    IntVector RModel::from_gamma(const IntVector& g) const { return g * sum_.inclusions[1].matrix(); }

    AbHom r_map(const RModel& source, const RModel& target, const AbHom& f) {
        if (!(f.domain() == source.base()) || !(f.codomain() == target.base())) {
            throw PreconditionError("r_map: map does not match the models");
        }
        const AbHom tf = tor_map(source.tor(), target.tor(), f, f);
        const auto src_orders = source.base().require_diagonal("r_map");
        const auto dst_orders = target.base().require_diagonal("r_map");
        const auto& src_two = source.two_torsion_summands();
        const auto& dst_two = target.two_torsion_summands();
        // Restriction of f to 2-torsion, in the s-generators of both sides.
        std::vector<IntVector> images;
        for (std::size_t s : src_two) {
            const IntVector y = scale(src_orders[s] / 2, f.matrix().row(s));
            IntVector img(dst_two.size());
            for (std::size_t k = 0; k < dst_two.size(); ++k) {
                const Integer& d = dst_orders[dst_two[k]];
                const Integer yk = mod(y[dst_two[k]], d);
                img[k] = yk / (d / 2);
            }
            images.push_back(std::move(img));
        }
        const AbHom f2 = AbHom::from_images(source.gamma2().base(), target.gamma2().base(), images);
        const AbHom gf = gamma_map(source.gamma2(), target.gamma2(), f2);
        return AbHom(source.group(), target.group(), direct_sum_map({tf, gf}).matrix());
    }

    FPAbGroup r_functor(const FPAbGroup& a) { return RModel(diagonal_of(a)).group(); }

    // ---------------------------------------------------------------- exterior torsion square

    ExtTorSquare::ExtTorSquare(FPAbGroup a) : tor_(a, a), projection_(AbHom::identity(tor_.group())) {
        const std::vector<Integer> orders = a.require_diagonal("ExtTorSquare");
        std::vector<IntVector> rels;
        for (const auto& x : torsion_elements(orders)) {
            rels.push_back(tor_.tau(x, order_in(orders, x), x));
        }
        auto q = quotient(tor_.group(), rels);
        group_ = std::move(q.first);
        projection_ = std::move(q.second);
    }

    AbHom ext_tor_square_map(const ExtTorSquare& source, const ExtTorSquare& target, const AbHom& f) {
        return AbHom(source.group(), target.group(), tor_map(source.tor(), target.tor(), f, f).matrix());
    }

    FPAbGroup ext_tor_square(const FPAbGroup& a) { return ExtTorSquare(diagonal_of(a)).group(); }

    // ---------------------------------------------------------------- E and T

    EmMaps em_maps(const FPAbGroup& a) {
        const FPAbGroup d = diagonal_of(a);
        TorModel tor(d, d);
        OmegaModel om(d);
        const auto& orders = om.orders();
        const std::size_t n = orders.size();
        std::vector<IntVector> t_images;
        for (std::size_t i = 0; i < n; ++i) {
            t_images.push_back(orders[i] == 0 ? tor.group().zero() : tor.tau(d.generator(i), orders[i], d.generator(i)));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (orders[i] == 0 || orders[j] == 0) {
                    t_images.push_back(tor.group().zero());
                    continue;
                }
                const Integer g = gcd(orders[i], orders[j]);
                const IntVector x = scale(orders[i] / g, d.generator(i));
                const IntVector y = scale(orders[j] / g, d.generator(j));
                t_images.push_back(add(tor.tau(x, g, y), tor.tau(y, g, x)));
            }
        }
        AbHom t = AbHom::from_images(om.group(), tor.group(), t_images);
        AbHom e = tor.hom_from_symbols(om.group(), [&](std::size_t i, const IntVector& c) {
            const IntVector ei = d.generator(i);
            return sub(sub(om.w(orders[i], add(ei, c)), om.w(orders[i], ei)), om.w(orders[i], c));
        });
        return EmMaps{std::move(tor), std::move(om), std::move(e), std::move(t)};
    }

    // ---------------------------------------------------------------- cross effects

    std::string to_string(QuadFunctor f) {
        switch (f) {
            case QuadFunctor::Gamma:
                return "gamma";
            case QuadFunctor::Omega:
                return "omega";
            case QuadFunctor::R:
                return "r";
            case QuadFunctor::TorSquare:
                return "tor";
            case QuadFunctor::Lambda2:
                return "lambda2";
            case QuadFunctor::SP2:
                return "sp2";
        }
        return "?";
    }

    namespace {

        struct TorSquareModel {
            TorModel tor;
            explicit TorSquareModel(const FPAbGroup& a) : tor(a, a) {}
            const FPAbGroup& group() const { return tor.group(); }
        };

        struct TensorQuotientModel {
            TensorQuotient q;
            const FPAbGroup& group() const { return q.group; }
        };

        template <class Model, class Make, class Map>
        QuadStructure build_quad(const FPAbGroup& d, Make make, Map map) {
            DirectSum s = direct_sum({d, d});
            const Model md = make(d);
            const Model ms = make(s.group);
            const AbHom& i1 = s.inclusions[0];
            const AbHom& i2 = s.inclusions[1];
            const AbHom& p1 = s.projections[0];
            const AbHom& p2 = s.projections[1];

            const AbHom fp1 = map(ms, md, p1);
            const AbHom fp2 = map(ms, md, p2);
            DirectSum target = direct_sum({md.group(), md.group()});
            IntMatrix both(fp1.matrix().rows(), 2 * md.group().generator_count());
            for (std::size_t r = 0; r < both.rows(); ++r) {
                for (std::size_t c = 0; c < md.group().generator_count(); ++c) {
                    both(r, c) = fp1.matrix()(r, c);
                    both(r, c + md.group().generator_count()) = fp2.matrix()(r, c);
                }
            }
            HomDecomposition dec = hom_decompose(AbHom(ms.group(), target.group, std::move(both)));
            const FPAbGroup& cross = dec.kernel;
            const AbHom& i12 = dec.kernel_inclusion;
            const Lattice kernel = Lattice::from_hnf(i12.matrix());

            const AbHom diff = map(md, ms, i1 + i2) - map(md, ms, i1) - map(md, ms, i2);
            std::vector<IntVector> h_images;
            for (std::size_t g = 0; g < diff.matrix().rows(); ++g) {
                auto c = kernel.coordinates(diff.matrix().row(g));
                if (!c) {
                    throw InvariantError("quad_structure: F(i1+i2) - F(i1) - F(i2) leaves the cross effect");
                }
                h_images.push_back(std::move(*c));
            }
            AbHom h = AbHom::from_images(md.group(), cross, h_images);
            AbHom p = compose(map(ms, md, p1 + p2), i12);

            if (ms.group().is_finite() && ms.group().order() != md.group().order() * md.group().order() * cross.order()) {
                throw InvariantError("quad_structure: |F(A+A)| != |F(A)|^2 |F(A|A)|");
            }
            if (!(compose(i12, h) == diff)) {
                throw InvariantError("quad_structure: i12 H != F(i1+i2) - F(i1) - F(i2)");
            }
            const AbHom id = AbHom::identity(d);
            const AbHom two = map(md, md, Integer(2) * id);
            if (!(compose(p, h) == two - Integer(2) * AbHom::identity(md.group()))) {
                throw InvariantError("quad_structure: P H != F(2) - 2");
            }
            return QuadStructure{md.group(), cross, std::move(h), std::move(p)};
        }

    }  // namespace

    QuadStructure quad_structure(QuadFunctor f, const FPAbGroup& a) {
        if (!a.is_finite()) {
            throw PreconditionError("quad_structure: group must be finite");
        }
        const FPAbGroup d = diagonal_of(a);
        switch (f) {
            case QuadFunctor::Gamma:
                return build_quad<GammaModel>(
                    d, [](const FPAbGroup& g) { return GammaModel(g); },
                    [](const GammaModel& s, const GammaModel& t, const AbHom& m) { return gamma_map(s, t, m); });
            case QuadFunctor::Omega:
                return build_quad<OmegaModel>(
                    d, [](const FPAbGroup& g) { return OmegaModel(g); },
                    [](const OmegaModel& s, const OmegaModel& t, const AbHom& m) { return omega_map(s, t, m); });
            case QuadFunctor::R:
                return build_quad<RModel>(
                    d, [](const FPAbGroup& g) { return RModel(g); },
                    [](const RModel& s, const RModel& t, const AbHom& m) { return r_map(s, t, m); });
            case QuadFunctor::TorSquare:
                return build_quad<TorSquareModel>(
                    d, [](const FPAbGroup& g) { return TorSquareModel(g); },
                    [](const TorSquareModel& s, const TorSquareModel& t, const AbHom& m) {
                        return tor_map(s.tor, t.tor, m, m);
                    });
            case QuadFunctor::Lambda2:
                return build_quad<TensorQuotientModel>(
                    d, [](const FPAbGroup& g) { return TensorQuotientModel{lambda2(g)}; },
                    [](const TensorQuotientModel&, const TensorQuotientModel&, const AbHom& m) {
                        return lambda2_map(m);
                    });
            case QuadFunctor::SP2:
                return build_quad<TensorQuotientModel>(
                    d, [](const FPAbGroup& g) { return TensorQuotientModel{sp(g, 2)}; },
                    [](const TensorQuotientModel&, const TensorQuotientModel&, const AbHom& m) {
                        return sp_map(m, 2);
                    });
        }
        throw PreconditionError("quad_structure: unknown functor");
    }

    // ---------------------------------------------------------------- square functors

    GradedAbGroup square_functor(const GradedAbGroup& a, SquareVariant variant) {
        int top = 0;
        for (const auto& [deg, g] : a) {
            if (deg < 0) {
                throw PreconditionError("square_functor: negative degree");
            }
            top = std::max(top, deg);
        }
        auto component = [&](int deg) -> std::optional<FPAbGroup> {
            auto it = a.find(deg);
            if (it == a.end() || it->second.is_trivial()) {
                return std::nullopt;
            }
            return diagonal_of(it->second);
        };
        const FPAbGroup z2 = FPAbGroup::cyclic(2);
        auto product = [&](const FPAbGroup& x, const FPAbGroup& y) {
            return variant == SquareVariant::Tensor ? tensor(x, y) : TorModel(x, y).group();
        };
        GradedAbGroup out;
        for (int n = 0; n <= 2 * top; ++n) {
            std::vector<FPAbGroup> parts;
            for (int i = n; i >= 0; --i) {
                const int j = n - i;
                if (i <= j) {
                    break;
                }
                auto ai = component(i);
                if (!ai) {
                    continue;
                }
                if (auto aj = component(j)) {
                    parts.push_back(product(*ai, *aj));
                }
                if (j % 2 == 1) {
                    parts.push_back(product(*ai, z2));
                }
            }
            if (n % 2 == 0) {
                const int m = n / 2;
                if (auto am = component(m)) {
                    if (variant == SquareVariant::Tensor) {
                        parts.push_back(m % 2 == 1 ? gamma(*am) : lambda2(*am).group);
                    } else {
                        parts.push_back(m % 2 == 0 ? omega(*am) : r_functor(*am));
                    }
                }
            }
            if (parts.empty()) {
                continue;
            }
            FPAbGroup sum = diagonal_of(direct_sum(parts).group);
            if (!sum.is_trivial()) {
                out.emplace(n, std::move(sum));
            }
        }
        return out;
    }

}  // namespace dimquot
