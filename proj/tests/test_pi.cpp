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
using namespace rtmpi::pi;
using lts::ActionLabel;

namespace {

std::vector<std::string> rendered(const std::vector<Step>& steps)
{
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.label.render() + " -> " + render(s.target));
    return out;
}

} // namespace

TEST_CASE("surface syntax parses and renders back")
{
    for (const char* text : {"0", "tau.0", "x!y.0", "x?(y).y!y.0", "x!<a,b>.0", "x?(a,b).0", "x?().0",
                             "(v a,b)(a!b.0 | b?(c).0)", "!x?(y).0", "tau.0 + x!y.0"})
        CHECK(render(parse_pi(text)) == text);
    CHECK(render(parse_pi("'y!<>.0")) == "y!<>.0");
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_pi("x!"), ParseError);
    CHECK_THROWS_AS(parse_pi("(x!y.0 | tau.0) + tau.0"), ParseError);
    CHECK_THROWS_AS(parse_pi("x!_f0.0"), ParseError);
    CHECK_NOTHROW(parse_pi("x!_f0.0", true));
    try {
        parse_pi("tau.0 |\n  ?");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("free and bound names")
{
    auto p = parse_pi("(v a)(a!b.0 | x?(y).y!c.0)");
    CHECK(free_names(p) == std::set<std::string>{"b", "c", "x"});
    CHECK(bound_names(p) == std::set<std::string>{"a", "y"});
}

TEST_CASE("substitution avoids capture")
{
    auto p = parse_pi("x?(y).y!z.0");
    auto q = substitute(p, "z", "y");
    CHECK(free_names(q) == std::set<std::string>{"x", "y"});
    CHECK(alpha_eq(q, parse_pi("x?(w).w!y.0")));
    CHECK(alpha_eq(substitute(p, "y", "q"), p)); // bound occurrences untouched
}

TEST_CASE("polyadic sugar expands through a private link")
{
    CHECK(canonical_key(parse_pi("x!<a,b>.0")) == "(v _b0)x!_b0._b0!a._b0!b.0");
    CHECK(canonical_key(parse_pi("x?(a,b).0")) == canonical_key(parse_pi("x?(w).w?(a).w?(b).0")));
}

TEST_CASE("normal forms identify structurally congruent terms")
{
    CHECK(canonical_key(parse_pi("(v a)(a!b.0 | 0)")) == "(v _b0)_b0!b.0");
    CHECK(canonical_key(parse_pi("x!y.0 | z!w.0")) == canonical_key(parse_pi("z!w.0 | x!y.0 | 0")));
    CHECK(canonical_key(parse_pi("tau.0 + x!y.0")) == canonical_key(parse_pi("x!y.0 + tau.0")));
    CHECK(canonical_key(parse_pi("(v a)(v b)a!b.0")) == canonical_key(parse_pi("(v b,a)a!b.0")));
    CHECK(canonical_key(parse_pi("(v a)(x!y.0 | a!a.0)")) == canonical_key(parse_pi("x!y.0 | (v a)a!a.0")));
    CHECK(canonical_key(parse_pi("(v a)x!y.0")) == "x!y.0");
    CHECK(canonical_key(parse_pi("x!y.0")) != canonical_key(parse_pi("x!z.0")));
    CHECK(alpha_eq(parse_pi("x?(y).y!y.0"), parse_pi("x?(z).z!z.0")));
}

TEST_CASE("inputs range over the given data, free names and one fresh name")
{
    auto steps = pi_out(normalize(parse_pi("x?(y).'y!<>.0")), NameUniverse{{"a"}});
    CHECK(rendered(steps) == std::vector<std::string>{"x?_f0 -> (v _b0)_f0!_b0.0", "x?a -> (v _b0)a!_b0.0",
                                                      "x?x -> (v _b0)x!_b0.0"});
}

TEST_CASE("scope extrusion emits a bound output with a placeholder")
{
    auto steps = pi_out(normalize(parse_pi("(v z)x!z.z?(w).0")), {});
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label == ActionLabel::bound_output("x", "_f0"));
    CHECK(render(steps[0].target) == "_f0?(_b0).0");
}

TEST_CASE("communication substitutes the received name")
{
    auto steps = pi_out(normalize(parse_pi("(v x)(x!a.0 | x?(y).y!y.0)")), {});
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label.is_tau());
    CHECK(canonical_key(steps[0].target) == "a!a.0");
}

TEST_CASE("communication of a private name keeps it restricted")
{
    auto steps = pi_out(normalize(parse_pi("(v x)(x?(y).y!c.0 | (v z)(x!z.z?(w).0))")), {});
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label.is_tau());
    CHECK(canonical_key(steps[0].target) == canonical_key(parse_pi("(v z)(z!c.0 | z?(w).0)")));
}

TEST_CASE("replication unfolds one copy per step")
{
    auto steps = pi_out(normalize(parse_pi("!tau.0")), {});
    REQUIRE(steps.size() == 1);
    CHECK(render(steps[0].target) == "!tau.0");
    auto l = testing::pi_lts(parse_pi("!tau.0"));
    CHECK(l.num_states() == 1);
}

TEST_CASE("replicated communication partners meet")
{
    auto l = testing::pi_lts(parse_pi("(v x)(!x!a.0 | x?(y).y!<>.0)"));
    CHECK_FALSE(l.has_frontier());
    CHECK(lts::labels(l) == lts::LabelSet{ActionLabel::tau(), ActionLabel::bound_output("a", "_f0")});
}

TEST_CASE("eager links collapse the interleavings of a polyadic handshake")
{
    auto p = parse_pi("(v c)(c!<a,b>.0 | c?(x,y).x!y.0 | tau.0)");
    auto full = testing::pi_lts(p, {}, false);
    auto eager = testing::pi_lts(p, {}, true);
    CHECK(eager.num_states() < full.num_states());
    CHECK(testing::equivalent(full, eager, equiv::Mode::dpbb));
}

TEST_CASE("generators are deterministic")
{
    auto g = pi_generator(parse_pi("(v c)(c!<a,b>.0 | c?(x,y).x!y.0)"), {});
    auto a = lts::write_aut(lts::explore(g, {}));
    auto b = lts::write_aut(lts::explore(g, {}));
    CHECK(a == b);
}
