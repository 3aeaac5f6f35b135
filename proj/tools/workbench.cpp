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

#include "workbench.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "rtmpi/compiler.hpp"
#include "rtmpi/pi.hpp"

namespace rtmpi::workbench {

namespace {

lts::ExploreBounds bounds(const RunConfig& cfg)
{
    if (cfg.max_states == 0) throw PreconditionError("--max-states must be positive");
    return {cfg.max_states, cfg.max_depth};
}

const std::string& input(const RunConfig& cfg, std::size_t i, const char* what)
{
    if (cfg.inputs.size() <= i) throw PreconditionError(std::string("missing ") + what);
    return cfg.inputs[i];
}

lts::StepGenerator truncated(lts::StepGenerator g, const RunConfig& cfg)
{
    return cfg.max_visible ? lts::unfold_visible(std::move(g), *cfg.max_visible) : g;
}

std::string summary(const lts::Lts& l)
{
    std::ostringstream os;
    os << "states: " << l.num_states() << "\ntransitions: " << l.num_transitions() << "\nfrontier: " << l.frontier_size()
       << "\nlabels:";
    for (const auto& a : lts::labels(l)) os << ' ' << a.render();
    os << '\n';
    return os.str();
}

std::string join(const std::set<std::string>& names)
{
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
    return s;
}

void emit_aut(const lts::Lts& l, const RunConfig& cfg, Outcome& o)
{
    auto text = lts::write_aut(l, cfg.allow_frontier);
    if (cfg.out.empty()) {
        o.out += text;
    } else {
        write_file(cfg.out, text);
        o.out += "wrote " + cfg.out + "\n";
    }
}

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + path);
    out << text;
}

bool looks_like_rtm(const std::string& path, const std::string& text)
{
    if (path.ends_with(".rtm")) return true;
    if (path.ends_with(".pi")) return false;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        return line.compare(b, 7, "states:") == 0;
    }
    return false;
}

lts::Lts explore_source(const std::string& path, const RunConfig& cfg)
{
    auto text = read_file(path);
    if (looks_like_rtm(path, text))
        return lts::explore(truncated(rtm::rtm_generator(rtm::parse_rtm(text)), cfg), bounds(cfg));
    pi::NameUniverse u{cfg.free_data, cfg.links == Links::eager};
    return lts::explore(truncated(pi::pi_generator(pi::parse_pi(text), u), cfg), bounds(cfg));
}

Roundtrip roundtrip(const rtm::Rtm& m, const RunConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    Roundtrip rt;
    rt.native = lts::explore(truncated(rtm::rtm_generator(m), cfg), bounds(cfg));

    auto co = compiler::compile(m);
    // compiled terms never receive external data: no free data, no inputs allowed
    pi::NameUniverse u{{}, cfg.links != Links::full};
    auto gen = lts::restrict_generator(pi::pi_generator(co.normalized, u), {});
    rt.compiled = lts::relabel(lts::explore(truncated(std::move(gen), cfg), bounds(cfg)),
                               co.names.action_relabelling());

    if (rt.native.has_frontier() || rt.compiled.has_frontier()) rt.result.verdict = equiv::Verdict::indeterminate_frontier;
    else rt.result = equiv::check(rt.native, rt.compiled, cfg.mode);
    rt.seconds = since(t0);
    return rt;
}

Outcome cmd_explore(const RunConfig& cfg)
{
    Outcome o;
    auto l = explore_source(input(cfg, 0, "input file"), cfg);
    if (l.has_frontier() && !cfg.allow_frontier) {
        o.err = summary(l) + "exploration hit the bounds; raise --max-states/--max-depth or pass --allow-frontier\n";
        o.exit_code = exit_indeterminate;
        return o;
    }
    emit_aut(l, cfg, o);
    (cfg.out.empty() ? o.err : o.out) += summary(l);
    return o;
}

Outcome cmd_compile(const RunConfig& cfg)
{
    Outcome o;
    auto m = rtm::parse_rtm(read_file(input(cfg, 0, "machine file")));
    auto co = compiler::compile(m);
    std::ostringstream os;
    os << "# compiled from " << cfg.inputs[0] << "\n# name map:\n";
    for (const auto* part : {&co.names.states, &co.names.data, &co.names.actions})
        for (const auto& [from, to] : *part) os << "#   " << from << " -> " << to << '\n';
    os << pi::render(co.term) << '\n';
    if (cfg.out.empty()) {
        o.out = os.str();
    } else {
        write_file(cfg.out, os.str());
        o.out = "wrote " + cfg.out + "\n";
    }
    return o;
}

Outcome cmd_check(const RunConfig& cfg)
{
    Outcome o;
    auto a = lts::read_aut(read_file(input(cfg, 0, "first .aut file")));
    auto b = lts::read_aut(read_file(input(cfg, 1, "second .aut file")));
    auto r = equiv::check(a, b, cfg.mode, cfg.allow_frontier);
    o.out = "verdict: " + equiv::to_string(r.verdict) + " (" + equiv::to_string(cfg.mode) + ")\n";
    std::string detail;
    if (r.verdict == equiv::Verdict::equivalent) {
        for (auto [x, y] : r.witness) detail += "(" + std::to_string(x) + "," + std::to_string(y) + ")\n";
        o.out += "witness pairs: " + std::to_string(r.witness.size()) + "\n";
    } else if (r.evidence) {
        detail = r.evidence->describe() + "\n";
        o.out += "evidence: " + detail;
    }
    if (!cfg.out.empty()) write_file(cfg.out, detail);
    o.exit_code = r.verdict == equiv::Verdict::equivalent     ? exit_ok
                  : r.verdict == equiv::Verdict::inequivalent ? exit_inequivalent
                                                              : exit_indeterminate;
    return o;
}

Outcome cmd_restrict(const RunConfig& cfg)
{
    Outcome o;
    auto l = lts::read_aut(read_file(input(cfg, 0, ".aut file")));
    auto r = lts::restrict(l, cfg.names, cfg.allow_frontier);
    emit_aut(r, cfg, o);
    (cfg.out.empty() ? o.err : o.out) += "allowed inputs: {" + join(cfg.names) + "}\n" + summary(r);
    return o;
}

Outcome cmd_degree(const RunConfig& cfg)
{
    Outcome o;
    auto l = lts::read_aut(read_file(input(cfg, 0, ".aut file")));
    auto rep = equiv::branching_degree(l);
    auto part = equiv::coarsest_partition(l, equiv::Mode::dpbb);
    std::map<std::size_t, std::size_t> histogram;
    for (auto d : rep.degree) ++histogram[d];
    std::ostringstream os;
    os << "states: " << l.num_states() << "\nclasses: " << part.num_blocks
       << "\ndivergent states: " << equiv::divergence_classes(l, part).size() << "\nsupremum: " << rep.supremum
       << "\nattained at state: " << rep.witness_state << "\nhistogram (degree: states):";
    for (auto [d, n] : histogram) os << ' ' << d << ':' << n;
    os << '\n';
    o.out = os.str();
    if (!cfg.out.empty()) {
        std::string per_state;
        for (std::size_t s = 0; s < rep.degree.size(); ++s)
            per_state += std::to_string(s) + " " + std::to_string(rep.degree[s]) + "\n";
        write_file(cfg.out, per_state);
    }
    return o;
}

Outcome cmd_roundtrip(const RunConfig& cfg)
{
    Outcome o;
    auto m = rtm::parse_rtm(read_file(input(cfg, 0, "machine file")));
    auto rt = roundtrip(m, cfg);
    std::ostringstream os;
    os << "native: " << rt.native.num_states() << " states, " << rt.native.num_transitions() << " transitions, "
       << rt.native.frontier_size() << " frontier\n"
       << "compiled: " << rt.compiled.num_states() << " states, " << rt.compiled.num_transitions()
       << " transitions, " << rt.compiled.frontier_size() << " frontier ("
       << (cfg.links == Links::full ? "full" : "eager") << " links)\n"
       << "verdict: " << equiv::to_string(rt.result.verdict) << " (" << equiv::to_string(cfg.mode) << ")\n";
    if (rt.result.evidence) os << "evidence: " << rt.result.evidence->describe() << '\n';
    if (rt.result.verdict == equiv::Verdict::indeterminate_frontier)
        os << "hint: raise --max-states/--max-depth, or compare bounded prefixes with --max-visible\n";
    os << "time: " << rt.seconds << " s\n";
    o.out = os.str();
    o.exit_code = rt.result.verdict == equiv::Verdict::equivalent     ? exit_ok
                  : rt.result.verdict == equiv::Verdict::inequivalent ? exit_inequivalent
                                                                      : exit_indeterminate;
    return o;
}

} // namespace rtmpi::workbench
