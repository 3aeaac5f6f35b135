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

#include "doctest.h"
#include "support.hpp"

using namespace rtmpi;
using lts::ActionLabel;
using rtmpi::testing::make_lts;

TEST_CASE("labels render and parse back")
{
    for (const auto& a : {ActionLabel::tau(), ActionLabel::plain("inc"), ActionLabel::input("x", "y"),
                          ActionLabel::output("x", "y"), ActionLabel::bound_output("x", "_f0"),
                          ActionLabel::nu_output("act_a")}) {
        auto b = ActionLabel::parse(a.render());
        CHECK(b == a);
        CHECK(b.kind() == a.kind());
        CHECK(b.channel() == a.channel());
        CHECK(b.datum() == a.datum());
    }
    CHECK(ActionLabel::output("x", "y").render() == "x!y");
    CHECK(ActionLabel::bound_output("x", "_f0").render() == "x!(_f0)");
    CHECK(ActionLabel::nu_output("a").render() == "nu!a");
    CHECK_THROWS_AS(ActionLabel::parse("x!"), ParseError);
    CHECK_THROWS_AS(ActionLabel::parse(""), ParseError);
}

TEST_CASE("explicit systems reject duplicate keys and frontier successors")
{
    lts::Lts l;
    auto s = l.add_state("s");
    CHECK_THROWS_AS(l.add_state("s"), PreconditionError);
    CHECK(l.intern_state("s") == s);
    auto t = l.add_state("t");
    l.mark_frontier(t);
    CHECK_THROWS_AS(l.add_transition(t, ActionLabel::tau(), s), PreconditionError);
    CHECK(l.frontier_states() == std::vector<std::size_t>{t});
}

namespace {

// Counts upward without bound: state k steps to k+1.
lts::StepGenerator counter()
{
    return {"0", [](const std::string& k) {
                return std::vector<lts::Successor>{{ActionLabel::plain("up"), std::to_string(std::stoi(k) + 1)}};
            }};
}

} // namespace

TEST_CASE("explore marks states beyond the bounds as frontier")
{
    auto by_states = lts::explore(counter(), {5, 100});
    CHECK(by_states.num_states() == 5);
    CHECK(by_states.has_frontier());
    CHECK(by_states.is_frontier(4));
    auto by_depth = lts::explore(counter(), {100, 3});
    CHECK(by_depth.num_states() == 4);
    CHECK(by_depth.frontier_size() == 1);
    CHECK(by_depth.key(by_depth.frontier_states()[0]) == "3");
}

TEST_CASE("explore wraps generator failures with the state key")
{
    lts::StepGenerator g{"0", [](const std::string& k) -> std::vector<lts::Successor> {
                             if (k == "1") throw std::runtime_error("boom");
                             return {{ActionLabel::tau(), "1"}};
                         }};
    try {
        lts::explore(g, {});
        FAIL("expected an exploration error");
    } catch (const lts::ExplorationError& e) {
        CHECK(e.state_key() == "1");
    }
}

TEST_CASE("explore sorts successors by label then target")
{
    lts::StepGenerator g{"s", [](const std::string& k) -> std::vector<lts::Successor> {
                             if (k != "s") return {};
                             return {{ActionLabel::plain("b"), "y"}, {ActionLabel::plain("a"), "z"},
                                     {ActionLabel::plain("a"), "x"}};
                         }};
    auto l = lts::explore(g, {});
    std::vector<std::string> order;
    for (auto i : l.outgoing(l.initial()))
        order.push_back(l.transitions()[i].label.render() + l.key(l.transitions()[i].target));
    CHECK(order == std::vector<std::string>{"ax", "az", "by"});
}

TEST_CASE("unfold_visible truncates after k visible steps but keeps tau")
{
    lts::StepGenerator g{"p", [](const std::string& k) -> std::vector<lts::Successor> {
                             if (k == "p") return {{ActionLabel::tau(), "q"}};
                             return {{ActionLabel::plain("a"), "p"}};
                         }};
    auto l = lts::explore(lts::unfold_visible(g, 2), {});
    std::size_t visible = 0;
    for (const auto& t : l.transitions()) visible += !t.label.is_tau();
    CHECK(visible == 2);
    CHECK_FALSE(l.has_frontier());
    CHECK(l.num_states() == 5); // p q p' q' p''
}

TEST_CASE("restrict drops foreign inputs, anonymises bound outputs and prunes")
{
    lts::Lts l;
    for (const char* k : {"0", "1", "2", "3"}) l.add_state(k);
    l.add_transition(0, ActionLabel::input("x", "a"), 1);
    l.add_transition(0, ActionLabel::input("x", "c"), 2);
    l.add_transition(1, ActionLabel::bound_output("y", "_f0"), 3);
    l.add_transition(2, ActionLabel::tau(), 3);
    auto r = lts::restrict(l, {"a"});
    CHECK(r.num_states() == 3);
    CHECK(lts::labels(r) == lts::LabelSet{ActionLabel::input("x", "a"), ActionLabel::nu_output("y")});
    l.mark_frontier(3);
    CHECK_THROWS_AS(lts::restrict(l, {"a"}), PreconditionError);
    CHECK(lts::restrict(l, {"a"}, true).has_frontier());
}

TEST_CASE("restrict_generator agrees with restrict on the explored system")
{
    lts::StepGenerator g{"0", [](const std::string& k) -> std::vector<lts::Successor> {
                             if (k == "0") return {{ActionLabel::input("x", "a"), "1"}, {ActionLabel::input("x", "b"), "2"}};
                             if (k == "1") return {{ActionLabel::bound_output("y", "_f0"), "0"}};
                             return {};
                         }};
    auto eager = lts::explore(lts::restrict_generator(g, {"a"}), {});
    auto late = lts::restrict(lts::explore(g, {}), {"a"});
    CHECK(lts::isomorphic(eager, late));
}

TEST_CASE(".aut round trip")
{
    auto l = make_lts(3, "0 a 1; 1 tau 2; 2 x!(_f0) 0; 1 nu!b 1");
    auto text = lts::write_aut(l);
    CHECK(text.rfind("des (0, 4, 3)", 0) == 0);
    auto back = lts::read_aut(text);
    CHECK(lts::isomorphic(l, back));
    CHECK(lts::write_aut(back) == text);
}

TEST_CASE(".aut rejects malformed input")
{
    CHECK_THROWS_AS(lts::read_aut("des (0, 1, 2)\n(0, \"a\", 5)\n"), ParseError);
    CHECK_THROWS_AS(lts::read_aut("des (0, 2, 2)\n(0, \"a\", 1)\n"), ParseError);
    CHECK_THROWS_AS(lts::read_aut("hello"), ParseError);
}

TEST_CASE("isomorphism distinguishes labels and structure")
{
    auto a = make_lts(2, "0 a 1; 1 b 0");
    auto b = make_lts(2, "0 a 1; 1 b 1");
    auto c = make_lts(2, "0 a 1; 1 c 0");
    CHECK(lts::isomorphic(a, a));
    CHECK_FALSE(lts::isomorphic(a, b));
    CHECK_FALSE(lts::isomorphic(a, c));
    CHECK(lts::isomorphic(a, lts::canonical_order(a)));
}

TEST_CASE("relabel keeps unmapped labels")
{
    auto l = make_lts(2, "0 a 1; 1 b 0");
    auto r = lts::relabel(l, {{ActionLabel::plain("a"), ActionLabel::plain("z")}});
    CHECK(lts::labels(r) == lts::LabelSet{ActionLabel::plain("b"), ActionLabel::plain("z")});
}
