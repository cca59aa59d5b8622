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

// dimquot: command-line front end for functor values, dimension subgroups,
// free group ring lattices and the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 resource cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <random>
#include <string>
#include <vector>

#include "dimquot/abelian.hpp"
#include "dimquot/errors.hpp"
#include "dimquot/groupring.hpp"
#include "dimquot/groups.hpp"
#include "dimquot/liefun.hpp"
#include "dimquot/magnus.hpp"
#include "dimquot/quadfun.hpp"
#include "dimquot/verify.hpp"

namespace {

    using namespace dimquot;
    using ojson = nlohmann::ordered_json;

    constexpr int kExitOk = 0;
    constexpr int kExitFailure = 1;
    constexpr int kExitUsage = 2;
    constexpr int kExitResource = 3;

    // Human-readable output; silenced when the JSON report goes to stdout.
    bool g_quiet = false;

    std::ostream& text() {
        static std::ostream null(nullptr);
        return g_quiet ? null : std::cout;
    }

    void write_json(const std::string& path, const std::string& text) {
        if (path.empty()) return;
        if (path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw PreconditionError("cannot write '" + path + "'");
        out << text;
    }

    ojson invariants_json(const FPAbGroup& g) {
        ojson j;
        j["structure"] = g.structure();
        std::vector<std::string> t;
        for (const auto& d : g.invariants().torsion) t.push_back(d.get_str());
        j["torsion"] = t;
        j["free_rank"] = g.free_rank();
        return j;
    }

    const std::map<std::string, std::string>& functor_help() {
        static const std::map<std::string, std::string> m{
            {"omega", "Omega(A)"},
            {"r", "R(A)"},
            {"ext-tor", "exterior torsion square A ^* A"},
            {"tor", "Tor(A, A)"},
            {"gamma", "Whitehead Gamma(A)"},
            {"tensor", "A (x) A"},
            {"lambda2", "exterior square"},
            {"sp2", "symmetric square"},
            {"sp3", "symmetric cube"},
            {"l2", "L_2(A)"},
            {"l3", "L_3(A)"},
            {"sq-tensor", "tensor square functor on a graded group"},
            {"sq-star", "torsion square functor on a graded group"},
        };
        return m;
    }

    FPAbGroup evaluate_functor(const std::string& name, const FPAbGroup& a) {
        if (name == "omega") return omega(a);
        if (name == "r") return r_functor(a);
        if (name == "ext-tor") return ext_tor_square(a);
        if (name == "tor") return TorModel(a, a).group();
        if (name == "gamma") return gamma(a);
        if (name == "tensor") return tensor(a, a);
        if (name == "lambda2") return lambda2(a).group;
        if (name == "sp2") return sp(a, 2).group;
        if (name == "sp3") return sp(a, 3).group;
        if (name == "l2") return lie_component(a, 2).group;
        if (name == "l3") return lie_component(a, 3).group;
        throw ParseError("unknown functor '" + name + "'");
    }

    // Accepts "Z/2+Z/4" style text as well as the family specs "abelian:2,4" and "cyclic:6".
    FPAbGroup parse_abelian(const std::string& text) {
        for (const std::string prefix : {"abelian:", "cyclic:"}) {
            if (text.rfind(prefix, 0) != 0) continue;
            std::vector<Integer> orders;
            std::stringstream ss(text.substr(prefix.size()));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty() || tok.size() > 18 || tok.find_first_not_of("0123456789") != std::string::npos ||
                    std::stoull(tok) == 0) {
                    throw ParseError("bad factor '" + tok + "' in '" + text + "'");
                }
                orders.emplace_back(tok);
            }
            if (orders.empty() || (prefix == "cyclic:" && orders.size() != 1)) {
                throw ParseError("bad group spec '" + text + "'");
            }
            return FPAbGroup::diagonal(orders);
        }
        return FPAbGroup::parse(text);
    }

    // "1:Z; 2:Z/2" -> degree 1 is Z, degree 2 is Z/2.
    GradedAbGroup parse_graded(const std::string& text) {
        GradedAbGroup g;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            const auto colon = item.find(':');
            const std::string deg = colon == std::string::npos ? "" : item.substr(0, colon);
            const auto first = deg.find_first_not_of(' ');
            const std::string d = first == std::string::npos ? "" : deg.substr(first, deg.find_last_not_of(' ') - first + 1);
            if (d.empty() || d.size() > 4 || d.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("graded group entries look like \"<degree>:<group>\", got '" + item + "'");
            }
            g[std::stoi(d)] = parse_abelian(item.substr(colon + 1));
        }
        return g;
    }

    int cmd_square(const std::string& name, const std::string& group, const std::string& json) {
        const GradedAbGroup a = parse_graded(group);
        const GradedAbGroup sq = square_functor(a, name == "sq-tensor" ? SquareVariant::Tensor : SquareVariant::Torsion);
        ojson j;
        j["schema"] = kReportSchemaVersion;
        j["functor"] = name;
        j["group"] = group;
        j["value"] = ojson::array();
        for (const auto& [deg, g] : sq) {
            if (g.is_trivial()) continue;
            text() << "degree " << deg << ": " << g.structure() << "\n";
            ojson v = invariants_json(g);
            v["degree"] = deg;
            j["value"].push_back(std::move(v));
        }
        if (j["value"].empty()) text() << "0\n";
        write_json(json, j.dump(2) + "\n");
        return kExitOk;
    }

    int cmd_functor(const std::string& name, const std::string& group, bool generators, const std::string& json) {
        if (name == "sq-tensor" || name == "sq-star") return cmd_square(name, group, json);
        const FPAbGroup a = parse_abelian(group);
        const FPAbGroup f = evaluate_functor(name, a);
        text() << name << "(" << a.structure() << ") = " << f.structure() << "\n";
        if (generators) {
            text() << "generators:";
            for (const auto& l : f.labels()) text() << " " << l;
            text() << "\nrelations:\n" << f.relations().basis().to_string() << "\n";
        }
        ojson j;
        j["schema"] = kReportSchemaVersion;
        j["functor"] = name;
        j["group"] = a.structure();
        j["value"] = invariants_json(f);
        write_json(json, j.dump(2) + "\n");
        return kExitOk;
    }

    Subgroup relative_subgroup(const FamilyGroup& f, const std::string& which) {
        const FiniteGroup& g = f.group;
        if (which == "N") {
            if (!f.distinguished) throw ParseError("group has no distinguished subgroup N");
            return *f.distinguished;
        }
        if (which == "1") return Subgroup::trivial(g);
        if (which == "E") return Subgroup::whole(g);
        if (which.rfind("gamma", 0) == 0) {
            const std::string k = which.substr(5);
            if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("bad subgroup '" + which + "'");
            }
            return lower_central_term(g, static_cast<unsigned>(std::stoul(k)));
        }
        if (which.rfind("ncl:", 0) == 0) {
            std::vector<std::size_t> gens;
            std::stringstream ss(which.substr(4));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                auto it = f.named.find(tok);
                if (it != f.named.end()) {
                    gens.push_back(it->second);
                } else if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos &&
                           std::stoul(tok) < g.order()) {
                    gens.push_back(std::stoul(tok));
                } else {
                    throw ParseError("unknown element '" + tok + "'");
                }
            }
            return normal_closure(g, gens);
        }
        throw ParseError("bad subgroup '" + which + "' (use N, 1, E, gamma<k> or ncl:<elements>)");
    }

    int cmd_dims(const std::string& spec, unsigned n, const std::string& relative, const std::string& json) {
        const FamilyGroup f = build_family(spec);
        const FiniteGroup& g = f.group;
        if (g.order() > kMaxRingOrder) {
            throw ResourceLimitError("group order " + std::to_string(g.order()) + " exceeds the group ring cap " +
                                     std::to_string(kMaxRingOrder));
        }
        std::vector<DimensionRow> rows;
        std::optional<Subgroup> nsub;
        if (relative.empty()) {
            rows = dimension_report(g, n);
        } else {
            nsub = relative_subgroup(f, relative);
            rows = relative_dimension_report(g, *nsub, n);
        }
        const std::string lower = relative.empty() ? "gamma_n" : "N'gamma_n";
        text() << "group " << spec << " of order " << g.order();
        if (nsub) text() << ", N = " << relative << " of order " << nsub->order();
        text() << "\n";
        ojson j;
        j["schema"] = kReportSchemaVersion;
        j["group"] = spec;
        j["order"] = g.order();
        if (nsub) {
            j["relative"] = relative;
            j["relative_order"] = nsub->order();
        }
        j["rows"] = ojson::array();
        for (const auto& r : rows) {
            std::vector<std::string> members;
            for (const auto& [name, x] : f.named) {
                if (r.dimension.contains(x)) members.push_back(name);
            }
            text() << "n=" << r.n << "  |D|=" << r.dimension.order() << "  |" << lower << "|=" << r.lower.order()
                      << "  quotient " << r.quotient.structure << "  exponent " << r.quotient.exponent;
            if (!members.empty()) {
                text() << "  contains";
                for (const auto& m : members) text() << " " << m;
            }
            text() << "\n";
            ojson row;
            row["n"] = r.n;
            row["dimension_order"] = r.dimension.order();
            row["lower_order"] = r.lower.order();
            row["quotient_order"] = r.quotient.order;
            row["quotient_exponent"] = r.quotient.exponent;
            row["quotient_structure"] = r.quotient.structure;
            row["named_members"] = members;
            j["rows"].push_back(std::move(row));
        }
        write_json(json, j.dump(2) + "\n");
        return kExitOk;
    }

    ojson lattice_json(const Lattice& l) {
        ojson rows = ojson::array();
        for (const auto& r : l.basis().row_vectors()) {
            std::vector<std::string> v;
            for (const auto& x : r) v.push_back(x.get_str());
            rows.push_back(v);
        }
        return rows;
    }

    int cmd_free(const std::string& op, unsigned rank, const std::string& relators, const std::string& word,
                 unsigned n, std::size_t samples, std::uint64_t seed, const std::string& json) {
        const std::vector<FreeWord> rels = parse_relators(relators, rank);
        ojson j;
        j["schema"] = kReportSchemaVersion;
        j["operation"] = op;
        j["rank"] = rank;
        j["relators"] = relators;
        int code = kExitOk;
        if (op == "msq") {
            MsqReport m = msq_equality(rels, rank);
            text() << "lhs rank " << m.lhs.rank() << ", rhs rank " << m.rhs.rank() << "\n"
                      << "lhs in rhs: " << (m.lhs_in_rhs ? "yes" : "no") << "\n"
                      << "rhs in lhs: " << (m.rhs_in_lhs ? "yes" : "no") << "\n"
                      << (m.equal() ? "equal" : "NOT equal") << "\n";
            j["lhs"] = lattice_json(m.lhs);
            j["rhs"] = lattice_json(m.rhs);
            j["lhs_in_rhs"] = m.lhs_in_rhs;
            j["rhs_in_lhs"] = m.rhs_in_lhs;
            code = m.equal() ? kExitOk : kExitFailure;
        } else if (op == "sjogren") {
            std::mt19937_64 rng(seed);
            SjogrenReport r = sjogren_inclusion_check(rels, rank, n, samples, rng);
            text() << "n=" << n << ": " << r.passed << "/" << r.samples << " samples contained\n";
            if (!r.first_failure.empty()) text() << "first failure: " << r.first_failure << "\n";
            j["n"] = n;
            j["samples"] = r.samples;
            j["passed"] = r.passed;
            code = r.ok() ? kExitOk : kExitFailure;
        } else if (op == "expand") {
            const TruncatedTensor t = magnus_expand(parse_word(word, rank), n);
            text() << t.to_string() << "\n";
            j["word"] = word;
            j["degree"] = n;
            j["expansion"] = t.to_string();
        } else if (op == "filtration") {
            FiltrationLattices fl = filtration_lattices(rels, rank, n);
            j["degree"] = n;
            j["r"] = ojson::array();
            for (std::size_t k = 0; k < fl.r.size(); ++k) {
                text() << "r(" << k << "): rank " << fl.r[k].rank() << " in Z^" << fl.r[k].ambient_rank() << "\n";
                j["r"].push_back({{"k", k}, {"rank", fl.r[k].rank()}, {"basis", lattice_json(fl.r[k])}});
            }
        } else {
            throw ParseError("unknown free operation '" + op + "' (msq, sjogren, expand, filtration)");
        }
        write_json(json, j.dump(2) + "\n");
        return code;
    }

    int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& corpus_path,
                   const std::string& group, unsigned jobs, bool timings, const std::string& json) {
        Corpus corpus = corpus_path.empty() ? builtin_corpus() : load_corpus(corpus_path);
        if (!group.empty()) corpus.groups = {group};
        std::vector<std::string> suites;
        if (suite == "all") {
            suites = suite_names();
        } else if (is_suite(suite)) {
            suites.push_back(suite);
        } else {
            throw ParseError("unknown suite '" + suite + "'");
        }
        ojson all;
        all["schema"] = kReportSchemaVersion;
        all["seed"] = seed;
        all["suites"] = ojson::array();
        bool ok = true;
        for (const auto& s : suites) {
            VerificationReport r = run_suite(s, corpus, SuiteOptions{seed, jobs});
            text() << (r.ok() ? "PASS " : "FAIL ") << s << ": " << r.passed() << "/" << r.checks.size() << "\n";
            for (const auto& c : r.checks) {
                if (!c.pass) text() << "  failed " << c.id << ": " << c.computed << "\n";
            }
            ok = ok && r.ok();
            all["suites"].push_back(ojson::parse(r.to_json(timings)));
        }
        write_json(json, suites.size() == 1 ? all["suites"][0].dump(2) + "\n" : all.dump(2) + "\n");
        return ok ? kExitOk : kExitFailure;
    }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimquot: dimension subgroups, quadratic functors and free group ring lattices"};
    app.require_subcommand(1);
    std::string json;
    app.add_option("--json", json, "Write a JSON report to this path ('-' for stdout)");

    std::string group;
    auto* functor = app.add_subcommand("functor", "Evaluate a functor on a finitely generated abelian group");
    std::string functor_name;
    bool generators = false;
    std::string names;
    for (const auto& [k, v] : functor_help()) names += "\n  " + k + ": " + v;
    functor->add_option("name", functor_name, "Functor:" + names)->required();
    functor->add_option("--group", group,
                        "Abelian group, e.g. \"Z/2+Z/4\" or abelian:2,4; for sq-tensor and sq-star a graded group \"1:Z; 2:Z/2\"")
        ->required();
    functor->add_flag("--generators", generators, "Print the generators and relations of the value");

    auto* dims = app.add_subcommand("dims", "Dimension subgroups of a finite group");
    unsigned n = 4;
    std::string relative;
    dims->add_option("--group", group, "Group spec, e.g. dihedral:16, cex:2,1,1, abelian:2,4, file:table.json")
        ->required();
    dims->add_option("--n", n, "Largest degree")->check(CLI::Range(1u, kMaxRingDegree));
    dims->add_option("--relative", relative, "Relative version with N = N, 1, E, gamma<k> or ncl:<elements>");

    auto* free = app.add_subcommand("free", "Magnus expansions and lattices in the free group ring");
    std::string op;
    unsigned rank = 2;
    std::string relators;
    std::string word;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    unsigned free_n = 3;
    free->add_option("operation", op, "msq, sjogren, expand or filtration")->required();
    free->add_option("--rank", rank, "Free rank")->check(CLI::Range(1u, kMaxFreeRank));
    free->add_option("--relators", relators, "Relators separated by ';', e.g. \"[1,2]^2; [1,2,3]\"");
    free->add_option("--word", word, "Word for expand");
    free->add_option("--n", free_n, "n for sjogren; degree cap for expand and filtration");
    free->add_option("--samples", samples, "Samples for sjogren");
    free->add_option("--seed", seed, "Random seed");

    auto* verify = app.add_subcommand("verify", "Run verification suites over the corpus");
    std::string suite;
    std::string corpus;
    unsigned jobs = 0;
    bool timings = false;
    std::string suites = "all";
    for (const auto& s : suite_names()) suites += ", " + s;
    verify->add_option("suite", suite, "One of: " + suites)->required();
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--corpus", corpus, "Corpus manifest (JSON); defaults to the built-in corpus");
    verify->add_option("--group", group, "Restrict the corpus to this one group spec");
    verify->add_option("--jobs", jobs, "Worker threads (0 = all cores); results do not depend on it");
    verify->add_flag("--timings", timings, "Include wall times in the JSON report");

    for (auto* sub : {functor, dims, free, verify}) sub->add_option("--json", json, "Write a JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    g_quiet = json == "-";
    try {
        if (*functor) return cmd_functor(functor_name, group, generators, json);
        if (*dims) return cmd_dims(group, n, relative, json);
        if (*free) return cmd_free(op, rank, relators, word, free_n, samples, seed, json);
        return cmd_verify(suite, seed, corpus, group, jobs, timings, json);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFailure;
    }
}
