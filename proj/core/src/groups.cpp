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

#include "dimquot/groups.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "dimquot/errors.hpp"

namespace dimquot {

    struct FiniteGroup::Data {
        std::size_t n = 0;
        std::vector<std::uint16_t> table;
        std::size_t identity = 0;
        std::vector<std::size_t> inverses;
        std::vector<std::size_t> generators;
        std::vector<std::string> labels;
        std::string name;
    };

    namespace {

        constexpr std::size_t kExhaustiveAssociativity = 128;
        constexpr std::size_t kAssociativitySamples = 20000;

        template <class Mul>
        std::vector<std::uint16_t> build_table(std::size_t n, Mul mul) {
            if (n == 0 || n > kMaxGroupOrder) {
                throw ResourceLimitError("group order " + std::to_string(n) + " outside 1.." +
                                         std::to_string(kMaxGroupOrder));
            }
            std::vector<std::uint16_t> t(n * n);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>(mul(a, b));
            }
            return t;
        }

        std::size_t checked_product(std::size_t a, std::size_t b) {
            if (a != 0 && b > kMaxGroupOrder / a) {
                throw ResourceLimitError("group order exceeds " + std::to_string(kMaxGroupOrder));
            }
            return a * b;
        }

        std::size_t mod(long long a, std::size_t m) {
            long long r = a % static_cast<long long>(m);
            return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(m) : r);
        }

        std::string power_label(const std::string& base, std::size_t e) {
            if (e == 0) return "";
            return e == 1 ? base : base + "^" + std::to_string(e);
        }

        std::string join_labels(const std::vector<std::string>& parts) {
            std::string out;
            for (const auto& p : parts) {
                if (p.empty()) continue;
                if (!out.empty()) out += ' ';
                out += p;
            }
            return out.empty() ? "1" : out;
        }

        bool is_prime(unsigned p) {
            if (p < 2) return false;
            for (unsigned d = 2; d * d <= p; ++d) {
                if (p % d == 0) return false;
            }
            return true;
        }

        std::size_t ipow(std::size_t b, unsigned e) {
            std::size_t r = 1;
            for (unsigned i = 0; i < e; ++i) r = checked_product(r, b);
            return r;
        }

    }  // namespace

    FiniteGroup::FiniteGroup(std::size_t order, std::vector<std::uint16_t> table, std::vector<std::size_t> generators,
                             std::vector<std::string> labels, std::string name) {
        if (order == 0 || order > kMaxGroupOrder) {
            throw ResourceLimitError("group order " + std::to_string(order) + " outside 1.." +
                                     std::to_string(kMaxGroupOrder));
        }
        const std::size_t n = order;
        if (table.size() != n * n) throw PreconditionError("table has wrong size");
        for (auto v : table) {
            if (v >= n) throw PreconditionError("table entry out of range");
        }
        // Every row and column must be a permutation.
        std::vector<std::size_t> seen(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t v = table[a * n + b];
                if (seen[v] == a) throw PreconditionError("table row is not a permutation");
                seen[v] = a;
            }
        }
        std::fill(seen.begin(), seen.end(), n);
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a = 0; a < n; ++a) {
                std::size_t v = table[a * n + b];
                if (seen[v] == b) throw PreconditionError("table column is not a permutation");
                seen[v] = b;
            }
        }
        std::size_t e = n;
        for (std::size_t a = 0; a < n && e == n; ++a) {
            bool id = true;
            for (std::size_t b = 0; b < n && id; ++b) id = table[a * n + b] == b && table[b * n + a] == b;
            if (id) e = a;
        }
        if (e == n) throw PreconditionError("table has no identity");
        std::vector<std::size_t> inverses(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (table[a * n + b] == e) {
                    inverses[a] = b;
                    break;
                }
            }
            if (table[inverses[a] * n + a] != e) throw PreconditionError("left and right inverses differ");
        }
        auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
            return table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
        };
        if (n <= kExhaustiveAssociativity) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c)
                        if (!assoc(a, b, c)) throw PreconditionError("table is not associative");
        } else {
            std::mt19937_64 rng(n);
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
                if (!assoc(pick(rng), pick(rng), pick(rng))) throw PreconditionError("table is not associative");
            }
        }
        for (auto g : generators) {
            if (g >= n) throw PreconditionError("generator index out of range");
        }
        if (labels.empty()) {
            labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
        }
        if (labels.size() != n) throw PreconditionError("label count differs from order");

        auto d = std::make_shared<Data>();
        d->n = n;
        d->table = std::move(table);
        d->identity = e;
        d->inverses = std::move(inverses);
        d->generators = std::move(generators);
        d->labels = std::move(labels);
        d->name = std::move(name);
        d_ = d;
        if (closure(*this, d_->generators).order() != n) throw PreconditionError("generators do not generate the group");
    }

    FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

    FiniteGroup FiniteGroup::cyclic(std::size_t m) {
        auto t = build_table(m, [m](std::size_t a, std::size_t b) { return (a + b) % m; });
        std::vector<std::string> labels(m);
        for (std::size_t i = 0; i < m; ++i) labels[i] = i == 0 ? "1" : power_label("a", i);
        std::vector<std::size_t> gens;
        if (m > 1) gens.push_back(1);
        return FiniteGroup(m, std::move(t), gens, labels, "cyclic:" + std::to_string(m));
    }

    FiniteGroup FiniteGroup::abelian(const std::vector<std::size_t>& orders) {
        std::size_t n = 1;
        for (auto m : orders) {
            if (m == 0) throw PreconditionError("abelian factor orders must be positive");
            n = checked_product(n, m);
        }
        const std::size_t k = orders.size();
        auto digits = [&](std::size_t x) {
            std::vector<std::size_t> d(k);
            for (std::size_t i = k; i-- > 0;) {
                d[i] = x % orders[i];
                x /= orders[i];
            }
            return d;
        };
        auto index = [&](const std::vector<std::size_t>& d) {
            std::size_t x = 0;
            for (std::size_t i = 0; i < k; ++i) x = x * orders[i] + d[i];
            return x;
        };
        auto t = build_table(n, [&](std::size_t a, std::size_t b) {
            auto da = digits(a);
            auto db = digits(b);
            for (std::size_t i = 0; i < k; ++i) da[i] = (da[i] + db[i]) % orders[i];
            return index(da);
        });
        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i < k; ++i) {
            if (orders[i] == 1) continue;
            std::vector<std::size_t> d(k, 0);
            d[i] = 1;
            gens.push_back(index(d));
        }
        std::vector<std::string> labels(n);
        std::string name = "abelian:";
        for (std::size_t i = 0; i < k; ++i) name += (i ? "," : "") + std::to_string(orders[i]);
        for (std::size_t x = 0; x < n; ++x) {
            auto d = digits(x);
            std::string s = "(";
            for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(d[i]);
            labels[x] = s + ")";
        }
        return FiniteGroup(n, std::move(t), gens, labels, name);
    }

    FiniteGroup FiniteGroup::heisenberg(std::size_t m) {
        if (m == 0) throw PreconditionError("heisenberg modulus must be positive");
        const std::size_t n = checked_product(checked_product(m, m), m);
        auto t = build_table(n, [m](std::size_t u, std::size_t v) {
            std::size_t a = u / (m * m), b = (u / m) % m, c = u % m;
            std::size_t a2 = v / (m * m), b2 = (v / m) % m, c2 = v % m;
            std::size_t ra = (a + a2) % m, rb = (b + b2) % m;
            std::size_t rc = mod(static_cast<long long>(c + c2) - static_cast<long long>((b * a2) % m), m);
            return (ra * m + rb) * m + rc;
        });
        std::vector<std::string> labels(n);
        for (std::size_t u = 0; u < n; ++u) {
            labels[u] = join_labels({power_label("x", u / (m * m)), power_label("y", (u / m) % m), power_label("z", u % m)});
        }
        std::vector<std::size_t> gens;
        if (m > 1) gens = {m * m, m};
        FiniteGroup g(n, std::move(t), gens, labels, "heisenberg:" + std::to_string(m));
        if (m > 1) {
            const std::size_t x = m * m, y = m, e = g.identity();
            const std::size_t xy = g.commutator(x, y);
            if (g.pow(x, m) != e || g.pow(y, m) != e || g.commutator(x, xy) != e || g.commutator(y, xy) != e ||
                xy != 1 || g.element_order(xy) != m) {
                throw InvariantError("heisenberg presentation relations fail");
            }
        }
        return g;
    }

    FiniteGroup FiniteGroup::dihedral(std::size_t order) {
        if (order < 2 || order % 2 != 0) throw PreconditionError("dihedral order must be even and positive");
        const std::size_t m = order / 2;
        // r^i s^j has index j*m + i.
        auto t = build_table(order, [m](std::size_t u, std::size_t v) {
            std::size_t i = u % m, j = u / m, k = v % m, l = v / m;
            std::size_t ri = mod(static_cast<long long>(i) + (j ? -static_cast<long long>(k) : static_cast<long long>(k)), m);
            return (j ^ l) * m + ri;
        });
        std::vector<std::string> labels(order);
        for (std::size_t u = 0; u < order; ++u) labels[u] = join_labels({power_label("r", u % m), power_label("s", u / m)});
        std::vector<std::size_t> gens;
        if (m > 1) gens.push_back(1);
        gens.push_back(m);
        return FiniteGroup(order, std::move(t), gens, labels, "dihedral:" + std::to_string(order));
    }

    FiniteGroup FiniteGroup::quaternion(std::size_t order) {
        if (order < 4 || order % 4 != 0) throw PreconditionError("quaternion order must be a positive multiple of 4");
        const std::size_t m = order / 4, n = 2 * m;
        // a^i x^j has index j*n + i.
        auto t = build_table(order, [m, n](std::size_t u, std::size_t v) {
            long long i = static_cast<long long>(u % n), k = static_cast<long long>(v % n);
            std::size_t j = u / n, l = v / n;
            long long ri = i + (j ? -k : k);
            if (j && l) ri += static_cast<long long>(m);
            return (j ^ l) * n + mod(ri, n);
        });
        std::vector<std::string> labels(order);
        for (std::size_t u = 0; u < order; ++u) labels[u] = join_labels({power_label("a", u % n), power_label("x", u / n)});
        FiniteGroup g(order, std::move(t), {1, n}, labels, "quaternion:" + std::to_string(order));
        const std::size_t a = 1, x = n;
        if (g.pow(a, static_cast<long long>(n)) != g.identity() || g.pow(x, 2) != g.pow(a, static_cast<long long>(m)) ||
            g.conjugate(x, a) != g.inv(a)) {
            throw InvariantError("quaternion presentation relations fail");
        }
        return g;
    }

    FiniteGroup FiniteGroup::semidihedral(std::size_t order) {
        if (order < 16 || (order & (order - 1)) != 0) {
            throw PreconditionError("semidihedral order must be a power of 2, at least 16");
        }
        const std::size_t n = order / 2, tw = n / 2 - 1;
        auto t = build_table(order, [n, tw](std::size_t u, std::size_t v) {
            std::size_t i = u % n, j = u / n, k = v % n, l = v / n;
            return (j ^ l) * n + (i + (j ? tw * k : k)) % n;
        });
        std::vector<std::string> labels(order);
        for (std::size_t u = 0; u < order; ++u) labels[u] = join_labels({power_label("a", u % n), power_label("x", u / n)});
        FiniteGroup g(order, std::move(t), {1, n}, labels, "semidihedral:" + std::to_string(order));
        if (g.conjugate(n, 1) != g.pow(1, static_cast<long long>(tw)) || g.pow(n, 2) != g.identity()) {
            throw InvariantError("semidihedral presentation relations fail");
        }
        return g;
    }

    FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        const std::size_t na = a.order(), nb = b.order();
        const std::size_t n = checked_product(na, nb);
        auto t = build_table(n, [&](std::size_t u, std::size_t v) {
            return a.mul(u / nb, v / nb) * nb + b.mul(u % nb, v % nb);
        });
        std::vector<std::size_t> gens;
        for (auto s : a.generators()) gens.push_back(s * nb + b.identity());
        for (auto s : b.generators()) gens.push_back(a.identity() * nb + s);
        std::vector<std::string> labels(n);
        for (std::size_t u = 0; u < n; ++u) labels[u] = "(" + a.label(u / nb) + "," + b.label(u % nb) + ")";
        return FiniteGroup(n, std::move(t), gens, labels, a.name() + "*" + b.name());
    }

    FiniteGroup FiniteGroup::from_json(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("group file: ") + e.what());
        }
        try {
            const auto n = j.at("order").get<std::size_t>();
            if (n == 0 || n > kMaxGroupOrder) {
                throw ResourceLimitError("group order " + std::to_string(n) + " outside 1.." +
                                         std::to_string(kMaxGroupOrder));
            }
            const auto flat = j.at("table").get<std::vector<std::size_t>>();
            std::vector<std::uint16_t> t;
            t.reserve(flat.size());
            for (auto v : flat) {
                if (v >= n) throw PreconditionError("group file: table entry out of range");
                t.push_back(static_cast<std::uint16_t>(v));
            }
            auto gens = j.at("generators").get<std::vector<std::size_t>>();
            std::vector<std::string> labels;
            if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
            std::string name = j.value("name", std::string("file"));
            FiniteGroup g(n, std::move(t), std::move(gens), std::move(labels), std::move(name));
            if (j.contains("identity") && j.at("identity").get<std::size_t>() != g.identity()) {
                throw PreconditionError("group file: declared identity is not the identity of the table");
            }
            return g;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("group file: ") + e.what());
        }
    }

    FiniteGroup FiniteGroup::from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open group file " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_json(ss.str());
    }

    std::string FiniteGroup::to_json() const {
        nlohmann::json j;
        j["name"] = d_->name;
        j["order"] = d_->n;
        j["identity"] = d_->identity;
        j["generators"] = d_->generators;
        j["labels"] = d_->labels;
        std::vector<std::size_t> flat(d_->table.begin(), d_->table.end());
        j["table"] = flat;
        return j.dump();
    }

    FiniteGroup FiniteGroup::with_name(std::string name) const {
        auto d = std::make_shared<Data>(*d_);
        d->name = std::move(name);
        return FiniteGroup(std::shared_ptr<const Data>(std::move(d)));
    }

    std::size_t FiniteGroup::order() const { return d_->n; }
    std::size_t FiniteGroup::identity() const { return d_->identity; }
    const std::string& FiniteGroup::name() const { return d_->name; }
    const std::vector<std::size_t>& FiniteGroup::generators() const { return d_->generators; }
    const std::string& FiniteGroup::label(std::size_t g) const { return d_->labels.at(g); }
    std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const { return d_->table[a * d_->n + b]; }
    std::size_t FiniteGroup::inv(std::size_t a) const { return d_->inverses[a]; }

    std::size_t FiniteGroup::pow(std::size_t a, long long k) const {
        if (k < 0) {
            a = inv(a);
            k = -k;
        }
        std::size_t r = identity();
        while (k > 0) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    std::size_t FiniteGroup::commutator(std::size_t a, std::size_t b) const {
        return mul(mul(a, b), mul(inv(a), inv(b)));
    }

    std::size_t FiniteGroup::conjugate(std::size_t g, std::size_t a) const { return mul(mul(g, a), inv(g)); }

    std::size_t FiniteGroup::element_order(std::size_t a) const {
        std::size_t k = 1;
        for (std::size_t x = a; x != identity(); x = mul(x, a)) ++k;
        return k;
    }

    std::size_t FiniteGroup::exponent() const {
        std::size_t e = 1;
        for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
        return e;
    }

    bool FiniteGroup::is_abelian() const {
        for (auto a : generators())
            for (auto b : generators())
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    Subgroup::Subgroup(FiniteGroup parent, std::vector<std::size_t> elements)
        : parent_(std::move(parent)), elements_(std::move(elements)), member_(parent_.order(), false) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
        for (auto g : elements_) {
            if (g >= parent_.order()) throw PreconditionError("subgroup element out of range");
            member_[g] = true;
        }
        if (!member_[parent_.identity()]) throw PreconditionError("subgroup lacks the identity");
        for (auto a : generators()) {
            for (auto b : elements_) {
                if (!member_[parent_.mul(a, b)]) throw PreconditionError("element set is not closed under products");
            }
        }
    }

    Subgroup Subgroup::trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

    Subgroup Subgroup::whole(const FiniteGroup& g) {
        std::vector<std::size_t> all(g.order());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return Subgroup(g, std::move(all));
    }

    bool Subgroup::is_normal() const {
        for (auto t : parent_.generators())
            for (auto h : generators())
                if (!member_[parent_.conjugate(t, h)]) return false;
        return true;
    }

    bool Subgroup::contains(const Subgroup& h) const {
        return std::all_of(h.elements().begin(), h.elements().end(), [&](std::size_t g) { return member_[g]; });
    }

    std::vector<std::size_t> Subgroup::generators() const {
        // Greedy: walk elements in index order, keep those outside the span so far.
        std::vector<std::size_t> gens;
        std::vector<bool> in(parent_.order(), false);
        std::vector<std::size_t> span{parent_.identity()};
        in[parent_.identity()] = true;
        for (auto g : elements_) {
            if (in[g]) continue;
            gens.push_back(g);
            // Extend the span: new span is closed under right multiplication by all gens.
            std::deque<std::size_t> queue(span.begin(), span.end());
            while (!queue.empty()) {
                auto x = queue.front();
                queue.pop_front();
                for (auto s : gens) {
                    auto y = parent_.mul(x, s);
                    if (!in[y]) {
                        in[y] = true;
                        span.push_back(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        return gens;
    }

    Subgroup closure(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
        std::vector<bool> in(g.order(), false);
        std::vector<std::size_t> elems{g.identity()};
        in[g.identity()] = true;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (auto s : gens) {
                if (s >= g.order()) throw PreconditionError("element index out of range");
                auto y = g.mul(elems[i], s);
                if (!in[y]) {
                    in[y] = true;
                    elems.push_back(y);
                }
            }
        }
        return Subgroup(g, std::move(elems));
    }

    namespace {

        // Smallest subgroup containing gens and normalized by every element of conj.
        Subgroup closure_under_conjugation(const FiniteGroup& g, std::vector<std::size_t> gens,
                                           const std::vector<std::size_t>& conj) {
            Subgroup h = closure(g, gens);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    for (auto t : conj) {
                        auto c = g.conjugate(t, gens[i]);
                        if (!h.contains(c)) {
                            gens.push_back(c);
                            h = closure(g, gens);
                            changed = true;
                        }
                    }
                }
            }
            return h;
        }

    }  // namespace

    Subgroup normal_closure(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
        return closure_under_conjugation(g, gens, g.generators());
    }

    Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& s, const Subgroup& t) {
        // [<X>,<Y>] is the normal closure of {[x,y]} in <X,Y>.
        auto xs = s.generators();
        auto ys = t.generators();
        std::vector<std::size_t> comms;
        for (auto x : xs)
            for (auto y : ys) comms.push_back(g.commutator(x, y));
        std::vector<std::size_t> conj = xs;
        conj.insert(conj.end(), ys.begin(), ys.end());
        return closure_under_conjugation(g, comms, conj);
    }

    Subgroup join(const Subgroup& a, const Subgroup& b) {
        auto gens = a.generators();
        auto more = b.generators();
        gens.insert(gens.end(), more.begin(), more.end());
        return closure(a.parent(), gens);
    }

    Subgroup intersection(const Subgroup& a, const Subgroup& b) {
        std::vector<std::size_t> e;
        for (auto x : a.elements())
            if (b.contains(x)) e.push_back(x);
        return Subgroup(a.parent(), std::move(e));
    }

    std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
        std::vector<Subgroup> series{Subgroup::whole(g)};
        const Subgroup all = series.front();
        while (true) {
            Subgroup next = commutator_subgroup(g, series.back(), all);
            if (next == series.back()) break;
            series.push_back(std::move(next));
        }
        return series;
    }

    Subgroup lower_central_term(const FiniteGroup& g, unsigned n) {
        if (n == 0) throw PreconditionError("lower central series starts at 1");
        auto series = lower_central_series(g);
        return series[std::min<std::size_t>(n, series.size()) - 1];
    }

    std::optional<unsigned> nilpotency_class(const FiniteGroup& g) {
        auto series = lower_central_series(g);
        if (!series.back().is_trivial()) return std::nullopt;
        return static_cast<unsigned>(series.size() - 1);
    }

    Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
        if (!n.is_normal()) throw PreconditionError("quotient by a non-normal subgroup");
        const std::size_t none = g.order();
        std::vector<std::size_t> proj(g.order(), none);
        std::vector<std::size_t> reps;
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (proj[x] != none) continue;
            for (auto h : n.elements()) proj[g.mul(x, h)] = reps.size();
            reps.push_back(x);
        }
        const std::size_t k = reps.size();
        auto t = build_table(k, [&](std::size_t a, std::size_t b) { return proj[g.mul(reps[a], reps[b])]; });
        std::vector<std::size_t> gens;
        for (auto s : g.generators()) {
            if (std::find(gens.begin(), gens.end(), proj[s]) == gens.end()) gens.push_back(proj[s]);
        }
        std::vector<std::string> labels(k);
        for (std::size_t i = 0; i < k; ++i) labels[i] = g.label(reps[i]);
        FiniteGroup q(k, std::move(t), gens, labels, g.name() + "/N");
        return Quotient{std::move(q), std::move(proj), std::move(reps)};
    }

    Subgroup preimage(const FiniteGroup& g, const Quotient& q, const Subgroup& h) {
        std::vector<std::size_t> e;
        for (std::size_t x = 0; x < g.order(); ++x)
            if (h.contains(q.projection[x])) e.push_back(x);
        return Subgroup(g, std::move(e));
    }

    Subgroup image(const Quotient& q, const Subgroup& h) {
        std::vector<std::size_t> e;
        for (auto x : h.elements()) e.push_back(q.projection[x]);
        return Subgroup(q.group, std::move(e));
    }

    EmbeddedGroup as_group(const Subgroup& h) {
        const auto& g = h.parent();
        const auto& el = h.elements();
        std::vector<std::size_t> pos(g.order(), 0);
        for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = i;
        auto t = build_table(el.size(), [&](std::size_t a, std::size_t b) { return pos[g.mul(el[a], el[b])]; });
        std::vector<std::size_t> gens;
        for (auto s : h.generators()) gens.push_back(pos[s]);
        std::vector<std::string> labels(el.size());
        for (std::size_t i = 0; i < el.size(); ++i) labels[i] = g.label(el[i]);
        return EmbeddedGroup{FiniteGroup(el.size(), std::move(t), gens, labels, g.name() + "|H"), el};
    }

    Abelianization abelianization(const FiniteGroup& g) {
        const Subgroup all = Subgroup::whole(g);
        Subgroup derived = commutator_subgroup(g, all, all);
        Quotient q = quotient(g, derived);
        const auto& gens = g.generators();
        const std::size_t k = gens.size();
        // Spanning tree of the Cayley graph of G/G' gives coordinates; every
        // edge closes a cycle that is a relation.
        std::vector<std::optional<IntVector>> coord(q.group.order());
        coord[q.group.identity()] = zero_vector(k);
        std::deque<std::size_t> queue{q.group.identity()};
        while (!queue.empty()) {
            auto c = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < k; ++i) {
                auto d = q.group.mul(c, q.projection[gens[i]]);
                if (coord[d]) continue;
                IntVector v = *coord[c];
                v[i] += 1;
                coord[d] = v;
                queue.push_back(d);
            }
        }
        IntMatrix rels(0, k);
        for (std::size_t c = 0; c < q.group.order(); ++c) {
            for (std::size_t i = 0; i < k; ++i) {
                auto d = q.group.mul(c, q.projection[gens[i]]);
                IntVector v = *coord[c];
                v[i] += 1;
                v = sub(v, *coord[d]);
                if (!is_zero(v)) rels.append_row(v);
            }
        }
        std::vector<std::string> labels;
        for (auto s : gens) labels.push_back(g.label(s));
        FPAbGroup ab(labels, rels);
        std::vector<IntVector> img(g.order());
        for (std::size_t x = 0; x < g.order(); ++x) img[x] = ab.reduce(*coord[q.projection[x]]);
        return Abelianization{std::move(ab), std::move(derived), std::move(img)};
    }

    FamilyGroup cex(unsigned p, unsigned r, unsigned s) {
        if (!is_prime(p)) throw PreconditionError("cex: p must be prime");
        if (r == 0 || r > s) throw PreconditionError("cex: need 0 < r <= s");
        const std::size_t m = ipow(p, s + 1);
        checked_product(checked_product(m, m), m);
        FiniteGroup e = FiniteGroup::heisenberg(m).with_name("cex:" + std::to_string(p) + "," + std::to_string(r) + "," +
                                                             std::to_string(s));
        const std::size_t x = m * m, y = m;
        const std::size_t xy = e.commutator(x, y);
        Subgroup n = closure(e, {e.pow(x, static_cast<long long>(ipow(p, r))), e.pow(y, static_cast<long long>(ipow(p, s))), xy});
        const std::size_t z = e.pow(xy, static_cast<long long>(ipow(p, s)));
        return FamilyGroup{e, n, {{"x", x}, {"y", y}, {"z", z}}};
    }

    namespace {

        std::vector<std::size_t> parse_args(const std::string& text, const std::string& spec) {
            std::vector<std::size_t> out;
            std::stringstream ss(text);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty() || tok.find_first_not_of("0123456789 ") != std::string::npos) {
                    throw ParseError("bad argument list in group spec '" + spec + "'");
                }
                unsigned long v = std::stoul(tok);
                if (v > kMaxGroupOrder) throw ResourceLimitError("group spec argument too large in '" + spec + "'");
                out.push_back(v);
            }
            return out;
        }

        FamilyGroup build_factor(const std::string& spec) {
            static const std::regex form(R"(^\s*([a-z_]+)\s*(?::\s*(.*?)|\((.*)\))\s*$)");
            std::smatch m;
            if (!std::regex_match(spec, m, form)) throw ParseError("unrecognized group spec '" + spec + "'");
            const std::string family = m[1];
            const std::string args = m[2].matched ? std::string(m[2]) : std::string(m[3]);
            if (family == "file") return FamilyGroup{FiniteGroup::from_file(args), std::nullopt, {}};
            auto a = parse_args(args, spec);
            auto need = [&](std::size_t k) {
                if (a.size() != k) throw ParseError("wrong number of arguments in group spec '" + spec + "'");
            };
            if (family == "cyclic") {
                need(1);
                return FamilyGroup{FiniteGroup::cyclic(a[0]), std::nullopt, {}};
            }
            if (family == "abelian") {
                if (a.empty()) throw ParseError("abelian needs at least one factor order");
                return FamilyGroup{FiniteGroup::abelian(a), std::nullopt, {}};
            }
            if (family == "heisenberg") {
                need(1);
                auto g = FiniteGroup::heisenberg(a[0]);
                std::size_t n = a[0];
                return FamilyGroup{g, std::nullopt, {{"x", n * n}, {"y", n}, {"z", 1 % g.order()}}};
            }
            if (family == "cex") {
                need(3);
                return cex(static_cast<unsigned>(a[0]), static_cast<unsigned>(a[1]), static_cast<unsigned>(a[2]));
            }
            if (family == "dihedral") {
                need(1);
                return FamilyGroup{FiniteGroup::dihedral(a[0]), std::nullopt, {}};
            }
            if (family == "quaternion") {
                need(1);
                return FamilyGroup{FiniteGroup::quaternion(a[0]), std::nullopt, {}};
            }
            if (family == "semidihedral") {
                need(1);
                return FamilyGroup{FiniteGroup::semidihedral(a[0]), std::nullopt, {}};
            }
            throw ParseError("unknown group family '" + family + "'");
        }

    }  // namespace

    FamilyGroup build_family(const std::string& spec) {
        std::vector<std::string> parts;
        if (spec.rfind("file:", 0) == 0) {
            parts.push_back(spec);
        } else {
            std::stringstream ss(spec);
            std::string tok;
            while (std::getline(ss, tok, '*')) parts.push_back(tok);
        }
        if (parts.empty()) throw ParseError("empty group spec");
        if (parts.size() == 1) return build_factor(parts[0]);
        FiniteGroup g = build_factor(parts[0]).group;
        for (std::size_t i = 1; i < parts.size(); ++i) g = FiniteGroup::direct_product(g, build_factor(parts[i]).group);
        return FamilyGroup{g, std::nullopt, {}};
    }

}  // namespace dimquot
