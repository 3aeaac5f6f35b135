/*
 * Copyright 2026 The rtmpi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rtmpi/equivalence.hpp"
#include "rtmpi/lts.hpp"
#include "rtmpi/rtm.hpp"

namespace rtmpi::workbench {

/// How pi-calculus systems treat private link handshakes (see NameUniverse).
enum class Links { automatic, eager, full };

struct RunConfig {
    std::vector<std::string> inputs;
    std::size_t max_states = 20000;
    std::size_t max_depth = 200;
    std::set<std::string> free_data;
    equiv::Mode mode = equiv::Mode::dpbb;
    std::string out;
    bool allow_frontier = false;
    std::set<std::string> names;            ///< restrict: allowed input data
    std::optional<std::size_t> max_visible; ///< truncate at this many visible steps
    Links links = Links::automatic;         ///< explore: full, roundtrip: eager
};

enum ExitCode : int { exit_ok = 0, exit_inequivalent = 1, exit_indeterminate = 2, exit_error = 3 };

/// What a command prints; exit_code is the only machine-readable verdict.
struct Outcome {
    int exit_code = exit_ok;
    std::string out; ///< stdout
    std::string err; ///< stderr
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
/// `.rtm` files, or any text starting with a machine declaration.
bool looks_like_rtm(const std::string& path, const std::string& text);

/// Explores a machine or a pi-calculus term (inputs over cfg.free_data).
lts::Lts explore_source(const std::string& path, const RunConfig& cfg);

struct Roundtrip {
    equiv::EquivResult result;
    lts::Lts native;
    lts::Lts compiled; ///< restricted and relabelled to machine actions
    double seconds = 0;
};

/// Native and compiled systems of m under matched bounds, then compared.
Roundtrip roundtrip(const rtm::Rtm& m, const RunConfig& cfg);

Outcome cmd_explore(const RunConfig& cfg);
Outcome cmd_compile(const RunConfig& cfg);
Outcome cmd_check(const RunConfig& cfg);
Outcome cmd_restrict(const RunConfig& cfg);
Outcome cmd_degree(const RunConfig& cfg);
Outcome cmd_roundtrip(const RunConfig& cfg);

} // namespace rtmpi::workbench
