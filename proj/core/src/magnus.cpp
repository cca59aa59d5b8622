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

#include "dimquot/magnus.hpp"

#include <cctype>
#include <deque>
#include <sstream>

#include "dimquot/errors.hpp"

namespace dimquot {

    // ---------------------------------------------------------------- FreeWord

    FreeWord::FreeWord(unsigned rank) : rank_(rank) {
        if (rank > kMaxFreeRank) {
            throw ResourceLimitError("free group rank " + std::to_string(rank) + " exceeds cap " +
                                     std::to_string(kMaxFreeRank));
        }
    }

    FreeWord::FreeWord(unsigned rank, const std::vector<Letter>& letters) : FreeWord(rank) {
        for (const auto& l : letters) {
            if (l.index >= rank || (l.exponent != 1 && l.exponent != -1)) {
                throw PreconditionError("FreeWord: bad letter");
            }
            push(l);
        }
    }

    FreeWord FreeWord::generator(unsigned rank, unsigned i) { return FreeWord(rank, {{i, 1}}); }

    void FreeWord::push(Letter l) {
        if (!letters_.empty() && letters_.back().index == l.index && letters_.back().exponent == -l.exponent) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }

    FreeWord FreeWord::inverse() const {
        FreeWord out(rank_);
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
            out.letters_.push_back({it->index, -it->exponent});
        }
        return out;
    }

    FreeWord FreeWord::pow(long k) const {
        const FreeWord base = k < 0 ? inverse() : *this;
        FreeWord out(rank_);
        for (long i = 0; i < (k < 0 ? -k : k); ++i) {
            out = out * base;
        }
        return out;
    }

    std::vector<long> FreeWord::exponent_sums() const {
        std::vector<long> out(rank_, 0);
        for (const auto& l : letters_) {
            out[l.index] += l.exponent;
        }
        return out;
    }

    bool FreeWord::in_derived() const {
        for (long s : exponent_sums()) {
            if (s != 0) {
                return false;
            }
        }
        return true;
    }

    std::string FreeWord::to_string() const {
        if (letters_.empty()) {
            return "e";
        }
        std::string out;
        for (const auto& l : letters_) {
            if (!out.empty()) {
                out += ' ';
            }
            out += "x" + std::to_string(l.index + 1);
            if (l.exponent < 0) {
                out += "^-1";
            }
        }
        return out;
    }

    FreeWord operator*(const FreeWord& a, const FreeWord& b) {
        if (a.rank_ != b.rank_) {
            throw PreconditionError("FreeWord: rank mismatch");
        }
        FreeWord out = a;
        for (const auto& l : b.letters_) {
            out.push(l);
        }
        return out;
    }

    FreeWord commutator(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

    FreeWord left_normed(const std::vector<FreeWord>& ws) {
        if (ws.empty()) {
            throw PreconditionError("left_normed: no words");
        }
        FreeWord out = ws[0];
        for (std::size_t i = 1; i < ws.size(); ++i) {
            out = commutator(out, ws[i]);
        }
        return out;
    }

    // ---------------------------------------------------------------- parser

    namespace {

        class WordParser {
        public:
            WordParser(const std::string& text, unsigned rank) : s_(text), rank_(rank) {}

            FreeWord parse() {
                FreeWord w = product();
                skip_space();
                if (pos_ != s_.size()) {
                    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
                }
                return w;
            }

        private:
            [[noreturn]] void fail(const std::string& what) const {
                throw ParseError("word \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
            }

            void skip_space() {
                while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                    ++pos_;
                }
            }

            bool at_stop() const { return pos_ >= s_.size() || s_[pos_] == ',' || s_[pos_] == ']' || s_[pos_] == ')'; }

            FreeWord product() {
                FreeWord out(rank_);
                for (;;) {
                    skip_space();
                    if (pos_ < s_.size() && s_[pos_] == '*') {
                        ++pos_;
                        skip_space();
                    }
                    if (at_stop()) {
                        return out;
                    }
                    out = out * factor();
                }
            }

            long integer() {
                skip_space();
                const std::size_t start = pos_;
                if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
                    ++pos_;
                }
                const std::size_t digits = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    ++pos_;
                }
                if (pos_ == digits || pos_ - digits > 6) {
                    pos_ = start;
                    fail("expected an integer");
                }
                return std::stol(s_.substr(start, pos_ - start));
            }

            FreeWord factor() {
                FreeWord base = primary();
                skip_space();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    base = base.pow(integer());
                }
                return base;
            }

            FreeWord primary() {
                skip_space();
                if (pos_ >= s_.size()) {
                    fail("unexpected end");
                }
                const char c = s_[pos_];
                if (c == '(') {
                    ++pos_;
                    FreeWord w = product();
                    expect(')');
                    return w;
                }
                if (c == '[') {
                    ++pos_;
                    std::vector<FreeWord> parts{product()};
                    skip_space();
                    while (pos_ < s_.size() && s_[pos_] == ',') {
                        ++pos_;
                        parts.push_back(product());
                        skip_space();
                    }
                    expect(']');
                    if (parts.size() < 2) {
                        fail("commutator needs two entries");
                    }
                    return left_normed(parts);
                }
                if (c == 'e') {
                    ++pos_;
                    return FreeWord(rank_);
                }
                if (c == 'x') {
                    ++pos_;
                }
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    fail("expected a generator");
                }
                const long i = integer();
                if (i < 1 || i > static_cast<long>(rank_)) {
                    fail("generator " + std::to_string(i) + " outside 1.." + std::to_string(rank_));
                }
                return FreeWord::generator(rank_, static_cast<unsigned>(i - 1));
            }

            void expect(char c) {
                skip_space();
                if (pos_ >= s_.size() || s_[pos_] != c) {
                    fail(std::string("expected '") + c + "'");
                }
                ++pos_;
            }

            std::string s_;
            unsigned rank_;
            std::size_t pos_ = 0;
        };

    }  // namespace

    FreeWord parse_word(const std::string& text, unsigned rank) { return WordParser(text, rank).parse(); }

    std::vector<FreeWord> parse_relators(const std::string& text, unsigned rank) {
        std::vector<FreeWord> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.find_first_not_of(" \t\n") == std::string::npos) {
                continue;
            }
            out.push_back(parse_word(item, rank));
        }
        return out;
    }

    // ---------------------------------------------------------------- TruncatedTensor

    std::size_t power_of(unsigned r, unsigned k) {
        std::size_t p = 1;
        for (unsigned i = 0; i < k; ++i) {
            p *= r;
        }
        return p;
    }

    std::size_t degree_offset(unsigned r, unsigned k) {
        std::size_t off = 0;
        for (unsigned j = 1; j < k; ++j) {
            off += power_of(r, j);
        }
        return off;
    }

    std::size_t flat_dimension(unsigned r, unsigned d) { return degree_offset(r, d + 1); }

    TruncatedTensor::TruncatedTensor(unsigned rank, unsigned cap) : rank_(rank), cap_(cap) {
        if (cap > kMaxMagnusDegree) {
            throw ResourceLimitError("degree cap " + std::to_string(cap) + " exceeds " +
                                     std::to_string(kMaxMagnusDegree));
        }
        if (rank > kMaxFreeRank) {
            throw ResourceLimitError("free rank " + std::to_string(rank) + " exceeds " + std::to_string(kMaxFreeRank));
        }
        for (unsigned k = 0; k <= cap; ++k) {
            parts_.push_back(zero_vector(power_of(rank, k)));
        }
    }

    TruncatedTensor TruncatedTensor::one(unsigned rank, unsigned cap) {
        TruncatedTensor t(rank, cap);
        t.parts_[0][0] = 1;
        return t;
    }

    TruncatedTensor TruncatedTensor::letter(unsigned rank, unsigned cap, unsigned i) {
        TruncatedTensor t(rank, cap);
        if (i >= rank) {
            throw PreconditionError("TruncatedTensor::letter: index out of range");
        }
        if (cap >= 1) {
            t.parts_[1][i] = 1;
        }
        return t;
    }

    TruncatedTensor TruncatedTensor::from_flat(unsigned rank, unsigned cap, const IntVector& flat) {
        TruncatedTensor t(rank, cap);
        if (flat.size() != flat_dimension(rank, cap)) {
            throw PreconditionError("TruncatedTensor::from_flat: length mismatch");
        }
        for (unsigned k = 1; k <= cap; ++k) {
            const std::size_t off = degree_offset(rank, k);
            for (std::size_t i = 0; i < t.parts_[k].size(); ++i) {
                t.parts_[k][i] = flat[off + i];
            }
        }
        return t;
    }

    TruncatedTensor TruncatedTensor::homogeneous(unsigned rank, unsigned cap, unsigned k, const IntVector& part) {
        TruncatedTensor t(rank, cap);
        if (k > cap || part.size() != power_of(rank, k)) {
            throw PreconditionError("TruncatedTensor::homogeneous: shape mismatch");
        }
        t.parts_[k] = part;
        return t;
    }

    Integer TruncatedTensor::coefficient(const Word& w) const {
        if (w.size() > cap_) {
            return 0;
        }
        std::size_t idx = 0;
        for (unsigned c : w) {
            if (c >= rank_) {
                throw PreconditionError("TruncatedTensor::coefficient: letter out of range");
            }
            idx = idx * rank_ + c;
        }
        return parts_[w.size()][idx];
    }

    IntVector TruncatedTensor::flat() const {
        IntVector out;
        out.reserve(flat_dimension(rank_, cap_));
        for (unsigned k = 1; k <= cap_; ++k) {
            out.insert(out.end(), parts_[k].begin(), parts_[k].end());
        }
        return out;
    }

    unsigned TruncatedTensor::valuation() const {
        for (unsigned k = 0; k <= cap_; ++k) {
            if (!dimquot::is_zero(parts_[k])) {
                return k;
            }
        }
        return cap_ + 1;
    }

    bool TruncatedTensor::is_zero() const { return valuation() > cap_; }

    TruncatedTensor TruncatedTensor::truncate(unsigned d) const {
        TruncatedTensor t(rank_, d);
        for (unsigned k = 0; k <= std::min(d, cap_); ++k) {
            t.parts_[k] = parts_[k];
        }
        return t;
    }

    TruncatedTensor TruncatedTensor::times_letter(unsigned i) const {
        TruncatedTensor t(rank_, cap_);
        for (unsigned k = 0; k < cap_; ++k) {
            for (std::size_t w = 0; w < parts_[k].size(); ++w) {
                if (parts_[k][w] != 0) {
                    t.parts_[k + 1][w * rank_ + i] = parts_[k][w];
                }
            }
        }
        return t;
    }

    TruncatedTensor TruncatedTensor::letter_times(unsigned i) const {
        TruncatedTensor t(rank_, cap_);
        for (unsigned k = 0; k < cap_; ++k) {
            const std::size_t shift = i * parts_[k].size();
            for (std::size_t w = 0; w < parts_[k].size(); ++w) {
                if (parts_[k][w] != 0) {
                    t.parts_[k + 1][shift + w] = parts_[k][w];
                }
            }
        }
        return t;
    }

    std::string TruncatedTensor::to_string() const {
        std::string out;
        for (unsigned k = 0; k <= cap_; ++k) {
            for (std::size_t w = 0; w < parts_[k].size(); ++w) {
                const Integer& c = parts_[k][w];
                if (c == 0) {
                    continue;
                }
                std::string mono;
                std::size_t rest = w;
                std::vector<unsigned> letters(k);
                for (unsigned p = k; p-- > 0;) {
                    letters[p] = static_cast<unsigned>(rest % rank_);
                    rest /= rank_;
                }
                for (unsigned l : letters) {
                    mono += "X" + std::to_string(l + 1);
                }
                const bool neg = c < 0;
                const Integer a = neg ? Integer(-c) : c;
                out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
                if (k == 0 || a != 1) {
                    out += a.get_str();
                }
                out += mono;
            }
        }
        return out.empty() ? "0" : out;
    }

    void TruncatedTensor::check_shape(const TruncatedTensor& other) const {
        if (rank_ != other.rank_ || cap_ != other.cap_) {
            throw PreconditionError("TruncatedTensor: shape mismatch");
        }
    }

    TruncatedTensor operator+(const TruncatedTensor& a, const TruncatedTensor& b) {
        a.check_shape(b);
        TruncatedTensor t = a;
        for (unsigned k = 0; k <= a.cap_; ++k) {
            t.parts_[k] = add(a.parts_[k], b.parts_[k]);
        }
        return t;
    }

    TruncatedTensor operator-(const TruncatedTensor& a, const TruncatedTensor& b) {
        a.check_shape(b);
        TruncatedTensor t = a;
        for (unsigned k = 0; k <= a.cap_; ++k) {
            t.parts_[k] = sub(a.parts_[k], b.parts_[k]);
        }
        return t;
    }

    TruncatedTensor operator*(const TruncatedTensor& a, const TruncatedTensor& b) {
        a.check_shape(b);
        TruncatedTensor t(a.rank_, a.cap_);
        for (unsigned i = 0; i <= a.cap_; ++i) {
            if (dimquot::is_zero(a.parts_[i])) {
                continue;
            }
            for (unsigned j = 0; i + j <= a.cap_; ++j) {
                if (!dimquot::is_zero(b.parts_[j])) {
                    t.parts_[i + j] = add(t.parts_[i + j], assoc_product(a.parts_[i], b.parts_[j], a.rank_));
                }
            }
        }
        return t;
    }

    TruncatedTensor operator*(const Integer& s, const TruncatedTensor& a) {
        TruncatedTensor t = a;
        for (auto& p : t.parts_) {
            p = scale(s, p);
        }
        return t;
    }

    TruncatedTensor magnus_expand(const FreeWord& w, unsigned d) {
        TruncatedTensor acc = TruncatedTensor::one(w.rank(), d);
        for (const auto& l : w.letters()) {
            if (l.exponent > 0) {
                acc = acc + acc.times_letter(l.index);
                continue;
            }
            TruncatedTensor term = acc;
            for (unsigned k = 1; k <= d; ++k) {
                term = Integer(-1) * term.times_letter(l.index);
                acc = acc + term;
            }
        }
        return acc;
    }

    IntVector lie_leading_term(const std::vector<FreeWord>& ws) {
        if (ws.empty()) {
            throw PreconditionError("lie_leading_term: no words");
        }
        auto linear = [](const FreeWord& w) {
            IntVector v;
            for (long s : w.exponent_sums()) {
                v.emplace_back(s);
            }
            return v;
        };
        const unsigned r = ws[0].rank();
        IntVector acc = linear(ws[0]);
        for (std::size_t i = 1; i < ws.size(); ++i) {
            acc = lie_bracket(acc, linear(ws[i]), r);
        }
        return acc;
    }

    // ---------------------------------------------------------------- filtrations

    namespace {

        void check_degree(unsigned r, unsigned d, unsigned max_d) {
            if (d > max_d) {
                throw ResourceLimitError("degree " + std::to_string(d) + " exceeds cap " + std::to_string(max_d));
            }
            if (r > kMaxFreeRank) {
                throw ResourceLimitError("free rank " + std::to_string(r) + " exceeds cap " +
                                         std::to_string(kMaxFreeRank));
            }
        }

        Lattice coordinate_tail(unsigned r, unsigned d, unsigned k) {
            const std::size_t dim = flat_dimension(r, d);
            HnfBuilder b(dim);
            for (std::size_t i = std::min(degree_offset(r, std::max(k, 1u)), dim); i < dim; ++i) {
                b.add(unit_vector(dim, i));
            }
            return b.lattice();
        }

        void check_relators(const std::vector<FreeWord>& relators, unsigned r) {
            for (const auto& w : relators) {
                if (w.rank() != r) {
                    throw PreconditionError("relator rank " + std::to_string(w.rank()) + " differs from " +
                                            std::to_string(r));
                }
            }
        }

    }  // namespace

    Lattice relator_ideal(const std::vector<FreeWord>& relators, unsigned r, unsigned d) {
        check_degree(r, d, kMaxMagnusDegree);
        check_relators(relators, r);
        HnfBuilder b(flat_dimension(r, d));
        std::deque<TruncatedTensor> queue;
        for (const auto& rho : relators) {
            queue.push_back(magnus_expand(rho, d) - TruncatedTensor::one(r, d));
        }
        // Closing span{expand(rho) - 1} under left and right letter
        // multiplication gives the two-sided ideal.
        while (!queue.empty()) {
            const TruncatedTensor t = std::move(queue.front());
            queue.pop_front();
            if (t.is_zero() || !b.add_if_new(t.flat())) {
                continue;
            }
            if (t.valuation() < d) {
                for (unsigned i = 0; i < r; ++i) {
                    queue.push_back(t.letter_times(i));
                    queue.push_back(t.times_letter(i));
                }
            }
        }
        return b.lattice();
    }

    Lattice fox_step(const Lattice& l, unsigned r, unsigned d) {
        check_degree(r, d, kMaxMagnusDegree);
        if (l.ambient_rank() != flat_dimension(r, d)) {
            throw PreconditionError("fox_step: ambient rank mismatch");
        }
        HnfBuilder b(l.ambient_rank());
        for (const auto& row : l.basis().row_vectors()) {
            const TruncatedTensor t = TruncatedTensor::from_flat(r, d, row);
            for (unsigned i = 0; i < r; ++i) {
                b.add(t.letter_times(i).flat());
                b.add(t.times_letter(i).flat());
            }
        }
        return b.lattice();
    }

    FiltrationLattices filtration_lattices(const std::vector<FreeWord>& relators, unsigned r, unsigned d) {
        check_degree(r, d, kMaxFiltrationDegree);
        if (d == 0) {
            throw PreconditionError("filtration_lattices: degree cap must be positive");
        }
        FiltrationLattices out;
        out.rank = r;
        out.cap = d;
        for (unsigned k = 0; k <= d + 1; ++k) {
            out.f.push_back(coordinate_tail(r, d, k));
        }
        out.r.push_back(relator_ideal(relators, r, d));
        for (unsigned k = 1; k < d; ++k) {
            out.r.push_back(fox_step(out.r.back(), r, d));
        }
        for (unsigned k = 0; k < d; ++k) {
            if (!out.f[k + 1].contains(out.r[k])) {
                throw InvariantError("filtration_lattices: r(" + std::to_string(k) + ") not inside f^" +
                                     std::to_string(k + 1));
            }
            if (k > 0 && !out.r[k - 1].contains(out.r[k])) {
                throw InvariantError("filtration_lattices: r(" + std::to_string(k) + ") not inside r(" +
                                     std::to_string(k - 1) + ")");
            }
        }
        return out;
    }

    // ---------------------------------------------------------------- sampling

    FreeWord random_word(unsigned r, std::size_t length, std::mt19937_64& rng) {
        FreeWord w(r);
        if (r == 0) {
            return w;
        }
        std::uniform_int_distribution<unsigned> gen(0, r - 1);
        std::uniform_int_distribution<int> sign(0, 1);
        while (w.length() < length) {
            w = w * FreeWord(r, {{gen(rng), sign(rng) ? 1 : -1}});
        }
        return w;
    }

    std::vector<FreeWord> random_commutator_relators(unsigned r, std::mt19937_64& rng) {
        std::uniform_int_distribution<int> count(1, 3);
        std::uniform_int_distribution<int> factors(1, 2);
        std::uniform_int_distribution<int> len(1, 2);
        std::uniform_int_distribution<int> shape(0, 3);
        static const long kExponents[] = {-2, -1, 1, 1, 2, 3};
        std::uniform_int_distribution<int> expo(0, 5);
        std::vector<FreeWord> out;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            FreeWord rho(r);
            const int f = factors(rng);
            for (int j = 0; j < f; ++j) {
                FreeWord c = commutator(random_word(r, len(rng), rng), random_word(r, len(rng), rng));
                if (shape(rng) == 0) {
                    c = commutator(c, random_word(r, len(rng), rng));
                }
                rho = rho * c.pow(kExponents[expo(rng)]);
            }
            if (rho.is_identity()) {
                --i;
                continue;
            }
            out.push_back(rho);
        }
        return out;
    }

    FreeWord sample_sjogren_element(const std::vector<FreeWord>& relators, unsigned r, unsigned n,
                                    std::mt19937_64& rng) {
        std::uniform_int_distribution<int> factors(1, 3);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_int_distribution<int> len(1, 2);
        std::uniform_int_distribution<int> conj_len(0, 2);
        FreeWord out(r);
        const int f = factors(rng);
        for (int i = 0; i < f; ++i) {
            FreeWord factor(r);
            if (!relators.empty() && coin(rng)) {
                std::uniform_int_distribution<std::size_t> pick(0, relators.size() - 1);
                const FreeWord h = random_word(r, conj_len(rng), rng);
                factor = h * relators[pick(rng)].pow(coin(rng) ? 1 : -1) * h.inverse();
                for (unsigned t = 1; t < n; ++t) {
                    factor = commutator(factor, random_word(r, len(rng), rng));
                }
            } else {
                std::vector<FreeWord> ws;
                for (unsigned t = 0; t <= n; ++t) {
                    ws.push_back(random_word(r, len(rng), rng));
                }
                factor = left_normed(ws);
            }
            out = out * (coin(rng) ? factor : factor.inverse());
        }
        return out;
    }

    SjogrenReport sjogren_inclusion_check(const std::vector<FreeWord>& relators, unsigned r, unsigned n,
                                          std::size_t samples, std::mt19937_64& rng) {
        if (n < 1 || n > 3) {
            throw ResourceLimitError("sjogren_inclusion_check: n must lie in 1..3");
        }
        const FiltrationLattices fl = filtration_lattices(relators, r, n);
        const Lattice& target = fl.r[n - 1];
        SjogrenReport rep;
        rep.n = n;
        for (std::size_t s = 0; s < samples; ++s) {
            const FreeWord w = sample_sjogren_element(relators, r, n, rng);
            ++rep.samples;
            const TruncatedTensor t = magnus_expand(w, n) - TruncatedTensor::one(r, n);
            if (target.contains(t.flat())) {
                ++rep.passed;
            } else if (rep.first_failure.empty()) {
                rep.first_failure = w.to_string();
            }
        }
        return rep;
    }

    // ---------------------------------------------------------------- idlemma

    IntVector idlemma_generator(unsigned r, unsigned i, unsigned j, unsigned k) {
        const FreeWord c = commutator(FreeWord::generator(r, i), FreeWord::generator(r, j));
        const TruncatedTensor t = (magnus_expand(c, 3) - TruncatedTensor::one(r, 3)).times_letter(k);
        return t.degree(3);
    }

    Lattice idlemma_lattice(unsigned r) {
        check_degree(r, 3, kMaxMagnusDegree);
        HnfBuilder b(power_of(r, 3));
        for (unsigned i = 0; i < r; ++i) {
            for (unsigned j = 0; j < r; ++j) {
                for (unsigned k = 0; k < r; ++k) {
                    b.add(idlemma_generator(r, i, j, k));
                }
            }
        }
        return b.lattice();
    }

    bool idlemma_check(const TruncatedTensor& u, const Integer& c) {
        if (c <= 0) {
            throw PreconditionError("idlemma_check: c must be positive");
        }
        for (unsigned k = 0; k <= u.cap(); ++k) {
            if (k != 3 && !is_zero(u.degree(k))) {
                throw PreconditionError("idlemma_check: degree violation, u has a degree " + std::to_string(k) +
                                        " part");
            }
        }
        if (u.cap() < 3) {
            return true;
        }
        const Lattice l = idlemma_lattice(u.rank());
        HnfBuilder b(l.ambient_rank());
        for (const auto& row : l.basis().row_vectors()) {
            b.add(scale(c, row));
        }
        return b.contains(u.degree(3));
    }

    // ---------------------------------------------------------------- msq

    namespace {

        void check_msq_input(const std::vector<FreeWord>& relators, unsigned r) {
            if (r > 3) {
                throw ResourceLimitError("msq: rank " + std::to_string(r) + " exceeds 3");
            }
            check_relators(relators, r);
            for (const auto& w : relators) {
                if (!w.in_derived()) {
                    throw PreconditionError("msq: relator " + w.to_string() + " is not in F'");
                }
            }
        }

        Lattice lie_coordinates(const LyndonBasis& basis, const std::vector<IntVector>& polys) {
            std::vector<IntVector> coords;
            for (const auto& p : polys) {
                auto c = basis.coordinates(p);
                if (!c) {
                    throw InvariantError("msq: degree-3 part is not a Lie element");
                }
                coords.push_back(*c);
            }
            return span(coords, basis.size());
        }

        Lattice msq_rhs(const std::vector<FreeWord>& relators, unsigned r, const LyndonBasis& basis) {
            std::vector<IntVector> polys;
            for (const auto& rho : relators) {
                for (unsigned j = 0; j < r; ++j) {
                    const TruncatedTensor t = magnus_expand(commutator(rho, FreeWord::generator(r, j)), 3);
                    if (!is_zero(t.degree(1)) || !is_zero(t.degree(2))) {
                        throw InvariantError("msq: [rho, x] not in gamma_3");
                    }
                    polys.push_back(t.degree(3));
                }
            }
            return lie_coordinates(basis, polys);
        }

    }  // namespace

    Lattice msq_ideal(const std::vector<FreeWord>& relators, unsigned r) {
        check_msq_input(relators, r);
        const unsigned d = 3;
        HnfBuilder b(flat_dimension(r, d));
        for (const auto& rho : relators) {
            const TruncatedTensor lead =
                TruncatedTensor::homogeneous(r, d, 2, (magnus_expand(rho, d) - TruncatedTensor::one(r, d)).degree(2));
            for (unsigned k = 0; k < r; ++k) {
                b.add(lead.times_letter(k).flat());
                b.add(lead.letter_times(k).flat());
            }
        }
        const FiltrationLattices fl = filtration_lattices(relators, r, d);
        b.add_rows(fl.r[2].basis());
        return b.lattice();
    }

    MsqReport msq_equality(const std::vector<FreeWord>& relators, unsigned r) {
        const Lattice m = msq_ideal(relators, r);
        const std::size_t off = degree_offset(r, 3);
        const std::size_t n3 = power_of(r, 3);
        // Rows of the HNF with pivot in the degree-3 block span m intersected
        // with the degree-3 subspace.
        std::vector<IntVector> deg3;
        for (std::size_t i = 0; i < m.rank(); ++i) {
            if (m.pivots()[i] >= off) {
                const IntVector row = m.basis().row(i);
                deg3.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(off), row.end());
            }
        }
        const LyndonBasis basis(r, 3);
        std::vector<IntVector> lie;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            lie.push_back(basis.expansion(i));
        }
        const Lattice meet = lattice_intersect(span(deg3, n3), span(lie, n3));
        MsqReport rep;
        rep.lhs = lie_coordinates(basis, meet.basis().row_vectors());
        rep.rhs = msq_rhs(relators, r, basis);
        rep.lhs_in_rhs = rep.rhs.contains(rep.lhs);
        rep.rhs_in_lhs = rep.lhs.contains(rep.rhs);
        return rep;
    }

    std::size_t msq_generator_sanity(const std::vector<FreeWord>& relators, unsigned r, std::size_t samples,
                                     std::mt19937_64& rng) {
        const Lattice m = msq_ideal(relators, r);
        const LyndonBasis basis(r, 3);
        const Lattice rhs = msq_rhs(relators, r, basis);
        const TruncatedTensor one = TruncatedTensor::one(r, 3);
        std::uniform_int_distribution<int> len(0, 3);
        std::uniform_int_distribution<int> coin(0, 1);
        std::size_t failures = 0;
        if (relators.empty()) {
            return 0;
        }
        std::uniform_int_distribution<std::size_t> pick(0, relators.size() - 1);
        for (std::size_t s = 0; s < samples; ++s) {
            FreeWord w(r);
            for (int f = 0; f < 2; ++f) {
                const FreeWord h = random_word(r, static_cast<std::size_t>(len(rng)), rng);
                w = w * h * relators[pick(rng)].pow(coin(rng) ? 1 : -1) * h.inverse();
            }
            const TruncatedTensor ew = magnus_expand(w, 3) - one;
            TruncatedTensor u = magnus_expand(random_word(r, 1 + static_cast<std::size_t>(len(rng)), rng), 3) - one;
            if (u.is_zero()) {
                u = TruncatedTensor::letter(r, 3, 0);
            }
            if (!m.contains((ew * u).flat()) || !m.contains((u * ew).flat())) {
                ++failures;
                continue;
            }
            const TruncatedTensor c = magnus_expand(commutator(w, random_word(r, 1 + len(rng), rng)), 3);
            const auto coords = basis.coordinates(c.degree(3));
            if (!is_zero(c.degree(1)) || !is_zero(c.degree(2)) || !coords || !rhs.contains(*coords)) {
                ++failures;
            }
        }
        return failures;
    }

}  // namespace dimquot
