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

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "workbench.hpp"

namespace wb = rtmpi::workbench;

namespace {

std::set<std::string> split(const std::string& list)
{
    std::set<std::string> out;
    std::istringstream in(list);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.insert(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rtmpi: reactive Turing machines, pi-calculus and branching bisimilarity"};
    app.require_subcommand(1);

    wb::RunConfig cfg;
    std::string free_data, names, mode = "dpbb", links = "auto";
    std::size_t max_visible = 0;

    auto common = [&](CLI::App* cmd, const char* inputs_help, int inputs) {
        cmd->add_option("inputs", cfg.inputs, inputs_help)->required()->expected(inputs);
        cmd->add_option("--out", cfg.out, "Output path");
        cmd->add_option("--max-states", cfg.max_states, "State bound for exploration")->capture_default_str();
        cmd->add_option("--max-depth", cfg.max_depth, "Breadth-first depth bound")->capture_default_str();
        cmd->add_option("--free-data", free_data, "Comma-separated names pi inputs may receive");
        cmd->add_option("--mode", mode, "Equivalence: bb or dpbb")->check(CLI::IsMember({"bb", "dpbb"}))
            ->capture_default_str();
        cmd->add_flag("--allow-frontier", cfg.allow_frontier, "Accept truncated systems");
        cmd->add_option("--max-visible", max_visible, "Truncate systems after this many visible steps");
        cmd->add_option("--links", links, "Private link handshakes: auto, eager or full")
            ->check(CLI::IsMember({"auto", "eager", "full"}))
            ->capture_default_str();
        return cmd;
    };

    auto* explore = common(app.add_subcommand("explore", "Explore an .rtm or .pi file into .aut"), "Input file", 1);
    auto* compile = common(app.add_subcommand("compile", "Compile an .rtm file to a pi-calculus term"), "Machine", 1);
    auto* check = common(app.add_subcommand("check", "Compare two .aut files"), "Two .aut files", 2);
    auto* restrict = common(app.add_subcommand("restrict", "Restrict an .aut file to finitely many inputs"),
                            ".aut file", 1);
    restrict->add_option("--names", names, "Comma-separated input data to keep");
    auto* degree = common(app.add_subcommand("degree", "Branching degree report of an .aut file"), ".aut file", 1);
    auto* roundtrip =
        common(app.add_subcommand("roundtrip", "Compare a machine with its compiled term"), "Machine", 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0; usage errors share the error exit code
        return app.exit(e) == 0 ? wb::exit_ok : wb::exit_error;
    }

    cfg.free_data = split(free_data);
    cfg.names = split(names);
    cfg.mode = rtmpi::equiv::parse_mode(mode);
    if (max_visible > 0) cfg.max_visible = max_visible;
    cfg.links = links == "eager" ? wb::Links::eager : links == "full" ? wb::Links::full : wb::Links::automatic;

    try {
        wb::Outcome o;
        if (*explore) o = wb::cmd_explore(cfg);
        else if (*compile) o = wb::cmd_compile(cfg);
        else if (*check) o = wb::cmd_check(cfg);
        else if (*restrict) o = wb::cmd_restrict(cfg);
        else if (*degree) o = wb::cmd_degree(cfg);
        else if (*roundtrip) o = wb::cmd_roundtrip(cfg);
        std::cout << o.out;
        std::cerr << o.err;
        return o.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return wb::exit_error;
    }
}
