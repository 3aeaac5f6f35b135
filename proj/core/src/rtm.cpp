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

#include <algorithm>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include "rtmpi/rtm.hpp"

namespace rtmpi::rtm {

namespace {

bool valid_name(std::string_view s)
{
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; });
}

std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

void validate(const Rtm& m)
{
    if (m.states.empty()) throw PreconditionError("machine declares no states");
    std::set<std::string> states, actions, data;
    for (const auto& s : m.states) {
        if (!valid_name(s)) throw PreconditionError("invalid state name '" + s + "'");
        if (!states.insert(s).second) throw PreconditionError("state " + s + " declared twice");
    }
    for (const auto& a : m.actions) {
        if (!valid_name(a) || a == tau || a == "nu") throw PreconditionError("invalid action name '" + a + "'");
        if (!actions.insert(a).second) throw PreconditionError("action " + a + " declared twice");
    }
    for (const auto& d : m.data) {
        if (!valid_name(d) || d == blank) throw PreconditionError("invalid datum '" + d + "'");
        if (!data.insert(d).second) throw PreconditionError("datum " + d + " declared twice");
    }
    if (m.initial.empty()) throw PreconditionError("missing initial state");
    if (!states.contains(m.initial)) throw PreconditionError("undeclared state " + m.initial);

    auto symbol_ok = [&](const std::string& d) { return d == blank || data.contains(d); };
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
        const auto& r = m.rules[i];
        if (!states.contains(r.state)) throw PreconditionError("undeclared state " + r.state);
        if (!states.contains(r.target)) throw PreconditionError("undeclared state " + r.target);
        if (r.action != tau && !actions.contains(r.action)) throw PreconditionError("undeclared action " + r.action);
        if (!symbol_ok(r.read)) throw PreconditionError("undeclared datum " + r.read);
        if (!symbol_ok(r.write)) throw PreconditionError("undeclared datum " + r.write);
        for (std::size_t j = 0; j < i; ++j)
            if (m.rules[j] == r) throw PreconditionError("duplicate rule for state " + r.state);
    }
}

Rtm parse_rtm(std::string_view text)
{
    static const std::regex rule_re(R"(^(\S+)\s+(\S+)\s+\[\s*([^/\s\]]+)\s*/\s*([^\]\s]+)\s*\]\s*([LR])\s+(\S+)$)");
    Rtm m;
    bool have_init = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto colon = line.find(':');
        auto header = colon == std::string::npos ? std::string() : trim(line.substr(0, colon));
        if (header == "states" || header == "actions" || header == "data" || header == "init") {
            auto ws = words(std::string_view(line).substr(colon + 1));
            if (header == "states") m.states.insert(m.states.end(), ws.begin(), ws.end());
            else if (header == "actions") m.actions.insert(m.actions.end(), ws.begin(), ws.end());
            else if (header == "data") m.data.insert(m.data.end(), ws.begin(), ws.end());
            else {
                if (ws.size() != 1) throw ParseError("init takes exactly one state", line_no, 1);
                if (have_init) throw ParseError("init declared twice", line_no, 1);
                m.initial = ws[0];
                have_init = true;
            }
            continue;
        }
        std::smatch g;
        if (!std::regex_match(line, g, rule_re))
            throw ParseError("expected a declaration or a rule 's a [d/e] M t'", line_no, 1);
        m.rules.push_back(Rule{g[1], g[3], g[2], g[4], g[5] == "L" ? Move::left : Move::right, g[6]});
    }
    try {
        validate(m);
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return m;
}

std::string render_rtm(const Rtm& m)
{
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += " " + x;
        return s;
    };
    std::string out = "states:" + join(m.states) + "\nactions:" + join(m.actions) + "\ndata:" + join(m.data) +
                      "\ninit: " + m.initial + "\n";
    for (const auto& r : m.rules)
        out += r.state + " " + r.action + " [" + r.read + "/" + r.write + "] " + (r.move == Move::left ? "L" : "R") +
               " " + r.target + "\n";
    return out;
}

TapeInstance canonical_tape(TapeInstance tape)
{
    if (tape.cells.empty()) return TapeInstance{};
    if (tape.head >= tape.cells.size()) throw PreconditionError("tape head out of range");
    std::size_t lo = 0;
    while (lo < tape.head && tape.cells[lo] == blank) ++lo;
    std::size_t hi = tape.cells.size();
    while (hi > tape.head + 1 && tape.cells[hi - 1] == blank) --hi;
    TapeInstance out;
    out.cells.assign(tape.cells.begin() + static_cast<std::ptrdiff_t>(lo),
                     tape.cells.begin() + static_cast<std::ptrdiff_t>(hi));
    out.head = tape.head - lo;
    return out;
}

Configuration initial_config(const Rtm& m) { return Configuration{m.initial, TapeInstance{}}; }

std::string config_key(const Configuration& c)
{
    std::string out = c.state + ":";
    for (std::size_t i = 0; i < c.tape.cells.size(); ++i) {
        if (i) out += ',';
        if (i == c.tape.head) out += "[" + c.tape.cells[i] + "]";
        else out += c.tape.cells[i];
    }
    return out;
}

Configuration parse_config_key(std::string_view key)
{
    auto colon = key.find(':');
    if (colon == std::string_view::npos) throw ParseError("configuration key lacks ':'");
    Configuration c;
    c.state = std::string(key.substr(0, colon));
    c.tape.cells.clear();
    bool have_head = false;
    std::string_view rest = key.substr(colon + 1);
    for (std::size_t start = 0;;) {
        auto comma = rest.find(',', start);
        auto cell = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (cell.size() >= 2 && cell.front() == '[' && cell.back() == ']') {
            if (have_head) throw ParseError("configuration key has two heads");
            have_head = true;
            c.tape.head = c.tape.cells.size();
            cell = cell.substr(1, cell.size() - 2);
        }
        if (cell.empty()) throw ParseError("empty tape cell in configuration key");
        c.tape.cells.emplace_back(cell);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (!have_head) throw ParseError("configuration key has no head marker");
    return c;
}

std::vector<std::pair<lts::ActionLabel, Configuration>> rtm_out(const Rtm& m, const Configuration& c)
{
    std::vector<std::pair<lts::ActionLabel, Configuration>> out;
    const auto& under = c.tape.cells.at(c.tape.head);
    for (const auto& r : m.rules) {
        if (r.state != c.state || r.read != under) continue;
        TapeInstance t = c.tape;
        t.cells[t.head] = r.write;
        if (r.move == Move::left) {
            if (t.head == 0) t.cells.insert(t.cells.begin(), blank);
            else --t.head;
        } else {
            if (t.head + 1 == t.cells.size()) t.cells.push_back(blank);
            ++t.head;
        }
        auto label = r.action == tau ? lts::ActionLabel::tau() : lts::ActionLabel::plain(r.action);
        out.emplace_back(std::move(label), Configuration{r.target, canonical_tape(std::move(t))});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return config_key(a.second) < config_key(b.second);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

lts::StepGenerator rtm_generator(const Rtm& m, Configuration start)
{
    auto machine = std::make_shared<const Rtm>(m);
    start.tape = canonical_tape(std::move(start.tape));
    lts::StepGenerator g;
    g.initial = config_key(start);
    g.successors = [machine](const std::string& key) {
        std::vector<lts::Successor> out;
        for (auto& [label, c] : rtm_out(*machine, parse_config_key(key)))
            out.push_back(lts::Successor{std::move(label), config_key(c)});
        return out;
    };
    return g;
}

lts::StepGenerator rtm_generator(const Rtm& m) { return rtm_generator(m, initial_config(m)); }

} // namespace rtmpi::rtm
