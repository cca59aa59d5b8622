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

// Verification suites over a pinned corpus of finite groups and relator sets,
// with deterministic JSON reports.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dimquot {

    inline constexpr int kReportSchemaVersion = 1;

    struct CheckRecord {
        std::string id;
        /// The statement being exercised, e.g. "D_n = gamma_n, n <= 3".
        std::string reference;
        std::string inputs;
        std::string expected;
        std::string computed;
        bool pass = false;
        double seconds = 0.0;
    };

    struct VerificationReport {
        std::string suite;
        std::uint64_t seed = 0;
        std::vector<CheckRecord> checks;

        std::size_t passed() const;
        std::size_t failed() const { return checks.size() - passed(); }
        bool ok() const { return failed() == 0; }
        double seconds() const;
        /// Deterministic for a fixed seed unless `timings` is set.
        std::string to_json(bool timings = false) const;
    };

    /// Group specs understood by build_family.
    struct Corpus {
        std::vector<std::string> groups;
    };

    /// Every abelian group of order <= max_order, one spec per isomorphism type,
    /// in the form "abelian:d1,d2,..." with invariant factors d1 | d2 | ....
    std::vector<std::string> abelian_specs(std::size_t max_order);
    /// The built-in corpus; data/corpus.json holds the same list.
    Corpus builtin_corpus();
    /// Reads {"schema": 1, "groups": [...]}; throws ParseError.
    Corpus load_corpus(const std::string& path);
    std::string corpus_to_json(const Corpus& c);

    const std::vector<std::string>& suite_names();
    bool is_suite(const std::string& name);

    struct SuiteOptions {
        std::uint64_t seed = 0;
        /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
        unsigned jobs = 0;
    };

    /// Throws PreconditionError for an unknown suite name.
    VerificationReport run_suite(const std::string& name, const Corpus& corpus, const SuiteOptions& options);

}  // namespace dimquot
