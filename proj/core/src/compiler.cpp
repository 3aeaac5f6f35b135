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

#include "rtmpi/compiler.hpp"

namespace rtmpi::compiler {

using pi::TermPtr;

namespace {

TermPtr parse(const std::string& text) { return pi::parse_pi(text); }

TermPtr sum_of(std::vector<TermPtr> summands)
{
    if (summands.empty()) return pi::nil();
    if (summands.size() == 1) return summands[0];
    return pi::sum(std::move(summands));
}

// Instantiates a parameterised body; parameters are single letters that no
// instance name ever equals, so sequential substitution is simultaneous.
TermPtr instantiate(TermPtr body, const std::vector<std::pair<std::string, std::string>>& args)
{
    for (const auto& [param, value] : args) body = pi::substitute(body, param, value);
    return body;
}

const char* const kCellBody = "u?(e).c!<t,l,r,u,e>.0 + t!<l,r,u,d>.c!<t,l,r,u,d>.0";
const char* const kHeadBody = "read!d.h!<t,l,r,u,d>.0"
                              " + write?(e).u!e.h!<t,l,r,u,e>.0"
                              " + left?().l?(l',r',u',d').h!<l,l',r',u',d'>.0"
                              " + right?().r?(l',r',u',d').h!<r,l',r',u',d'>.0";

std::string blank_name() { return "dt_" + rtm::blank; }

std::string left_gen_text() { return "t!<l,r,u," + blank_name() + ">.(c!<t,l,r,u," + blank_name() + ">.0 | b_l!<l,t>.0)"; }
std::string right_gen_text() { return "t!<l,r,u," + blank_name() + ">.(c!<t,l,r,u," + blank_name() + ">.0 | b_r!<r,t>.0)"; }

std::vector<std::string> symbols(const rtm::Rtm& m)
{
    std::vector<std::string> out{rtm::blank};
    out.insert(out.end(), m.data.begin(), m.data.end());
    return out;
}

// Link names of a tape laid out as [left generator, cells..., right generator].
struct Links {
    std::size_t n; ///< number of cells
    std::string t(std::size_t k) const { return "t" + std::to_string(k); }
    std::string u(std::size_t k) const { return "u" + std::to_string(k); }
};

} // namespace

NameMap NameMap::of(const rtm::Rtm& m)
{
    NameMap nm;
    for (const auto& s : m.states) nm.states[s] = "st_" + s;
    for (const auto& d : symbols(m)) nm.data[d] = "dt_" + d;
    for (const auto& a : m.actions) nm.actions[a] = "act_" + a;
    return nm;
}

std::map<lts::ActionLabel, lts::ActionLabel> NameMap::action_relabelling() const
{
    std::map<lts::ActionLabel, lts::ActionLabel> out;
    for (const auto& [a, name] : actions) out.emplace(lts::ActionLabel::nu_output(name), lts::ActionLabel::plain(a));
    return out;
}

TermPtr cell_body(const std::string& t, const std::string& l, const std::string& r, const std::string& u,
                  const std::string& d)
{
    return instantiate(parse(kCellBody), {{"t", t}, {"l", l}, {"r", r}, {"u", u}, {"d", d}});
}

TermPtr cell_template() { return parse(std::string("c?(t,l,r,u,d).(") + kCellBody + ")"); }

TermPtr left_generator(const std::string& t, const std::string& l, const std::string& r, const std::string& u)
{
    return instantiate(parse(left_gen_text()), {{"t", t}, {"l", l}, {"r", r}, {"u", u}});
}

TermPtr right_generator(const std::string& t, const std::string& l, const std::string& r, const std::string& u)
{
    return instantiate(parse(right_gen_text()), {{"t", t}, {"l", l}, {"r", r}, {"u", u}});
}

TermPtr generator_template()
{
    return parse("b_l?(t,r).(v u,l)" + left_gen_text() + " + b_r?(t,l).(v u,r)" + right_gen_text());
}

TermPtr head_body(const std::string& t, const std::string& l, const std::string& r, const std::string& u,
                  const std::string& d)
{
    return instantiate(parse(kHeadBody), {{"t", t}, {"l", l}, {"r", r}, {"u", u}, {"d", d}});
}

TermPtr head_template() { return parse(std::string("h?(t,l,r,u,d).(") + kHeadBody + ")"); }

TermPtr control_step(const rtm::Rtm& m, const std::string& state, const std::string& datum)
{
    auto nm = NameMap::of(m);
    std::vector<TermPtr> summands;
    for (const auto& r : m.rules) {
        if (r.state != state || r.read != datum) continue;
        std::string move = r.move == rtm::Move::left ? "left" : "right";
        std::string tail = "write!" + nm.data.at(r.write) + "." + move + "!<>.read?(f)." + nm.states.at(r.target) +
                           "!<>.f!<>.0";
        std::string head = r.action == rtm::tau ? "tau" : nm.actions.at(r.action) + "!<>";
        summands.push_back(parse(head + "." + tail));
    }
    return sum_of(std::move(summands));
}

TermPtr control_template(const rtm::Rtm& m)
{
    auto nm = NameMap::of(m);
    std::vector<TermPtr> by_state;
    for (const auto& s : m.states) {
        std::vector<TermPtr> by_datum;
        for (const auto& d : symbols(m)) by_datum.push_back(pi::poly_in(nm.data.at(d), {}, control_step(m, s, d)));
        by_state.push_back(pi::poly_in(nm.states.at(s), {}, sum_of(std::move(by_datum))));
    }
    return sum_of(std::move(by_state));
}

TermPtr control_term(const rtm::Rtm& m, const std::string& state, const std::string& datum)
{
    auto nm = NameMap::of(m);
    std::vector<std::string> st;
    for (const auto& s : m.states) st.push_back(nm.states.at(s));
    return pi::res(st, pi::par({control_step(m, state, datum), pi::bang(control_template(m))}));
}

TermPtr cells_term(const rtm::Rtm& m, const rtm::TapeInstance& tape)
{
    auto nm = NameMap::of(m);
    Links k{tape.cells.size()};
    std::vector<TermPtr> parts;
    // B_{l,m-1}: its own update channel and further-left link are private
    parts.push_back(pi::res(std::vector<std::string>{"ug", "lg"}, left_generator(k.t(0), "lg", k.t(1), "ug")));
    for (std::size_t i = 1; i <= k.n; ++i)
        parts.push_back(cell_body(k.t(i), k.t(i - 1), k.t(i + 1), k.u(i), nm.data.at(tape.cells[i - 1])));
    parts.push_back(pi::res(std::vector<std::string>{"ug", "rg"}, right_generator(k.t(k.n + 1), k.t(k.n), "rg", "ug")));
    parts.push_back(pi::bang(cell_template()));
    parts.push_back(pi::bang(generator_template()));
    return pi::res(std::vector<std::string>{"b_l", "b_r", "c"}, pi::par(std::move(parts)));
}

TermPtr tape_snapshot(const rtm::Rtm& m, const rtm::TapeInstance& tape)
{
    if (tape.cells.empty() || tape.head >= tape.cells.size()) throw PreconditionError("tape head out of range");
    auto nm = NameMap::of(m);
    for (const auto& d : tape.cells)
        if (!nm.data.contains(d)) throw PreconditionError("tape symbol " + d + " is not a datum of the machine");
    Links k{tape.cells.size()};
    const std::size_t i = tape.head + 1;
    auto head = pi::res("h", pi::par({head_body(k.t(i), k.t(i - 1), k.t(i + 1), k.u(i), nm.data.at(tape.cells[tape.head])),
                                      pi::bang(head_template())}));
    std::vector<std::string> links;
    for (std::size_t j = 0; j <= k.n + 1; ++j) links.push_back(k.t(j));
    for (std::size_t j = 1; j <= k.n; ++j) links.push_back(k.u(j));
    return pi::res(links, pi::par({head, cells_term(m, tape)}));
}

TermPtr configuration_term(const rtm::Rtm& m, const rtm::Configuration& c)
{
    auto nm = NameMap::of(m);
    const auto& under = c.tape.cells.at(c.tape.head);
    // Data names are bound here rather than inside the control so that the
    // control and the tape agree on them.
    std::vector<std::string> outer{"read", "write", "left", "right"};
    for (const auto& [d, name] : nm.data) outer.push_back(name);
    return pi::res(outer, pi::par({control_term(m, c.state, under), tape_snapshot(m, c.tape)}));
}

CompilationOutput compile(const rtm::Rtm& m)
{
    rtm::validate(m);
    CompilationOutput out;
    out.names = NameMap::of(m);
    auto start = rtm::initial_config(m);
    out.term = configuration_term(m, start);
    out.normalized = pi::normalize(out.term);
    out.templates["C"] = cell_template();
    out.templates["B"] = generator_template();
    out.templates["H"] = head_template();
    out.templates["S"] = control_template(m);
    out.templates["Cells"] = cells_term(m, start.tape);
    out.templates["Tape"] = tape_snapshot(m, start.tape);
    out.templates["Control"] = control_term(m, start.state, start.tape.cells[start.tape.head]);
    out.templates["M"] = out.term;
    return out;
}

} // namespace rtmpi::compiler
