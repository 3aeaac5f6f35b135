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

#include "properties.hpp"

#include <random>

#include "support.hpp"

namespace rtmpi::testing {

namespace {

using pi::TermPtr;

std::string steps_text(const TermPtr& p, const pi::NameUniverse& u)
{
    std::string out;
    for (const auto& s : pi::pi_out(pi::normalize(p), u)) out += s.label.render() + " -> " + pi::render(s.target) + "\n";
    return out;
}

// Only binders change: every bound name gets a fresh one.
TermPtr alpha_rename(const TermPtr& p, std::size_t& next)
{
    using pi::Kind;
    auto fresh = [&] { return "w" + std::to_string(next++); };
    auto kid = [&](std::size_t i) { return alpha_rename(p->kids[i], next); };
    switch (p->kind) {
    case Kind::nil: return p;
    case Kind::tau: return pi::tau(kid(0));
    case Kind::out: return pi::out(p->channel, p->names[0], kid(0));
    case Kind::in: {
        auto y = fresh();
        return pi::in(p->channel, y, alpha_rename(pi::substitute(p->body(), p->names[0], y), next));
    }
    case Kind::res: {
        std::vector<std::string> ys;
        auto body = p->body();
        for (const auto& n : p->names) {
            ys.push_back(fresh());
            body = pi::substitute(body, n, ys.back());
        }
        return pi::res(std::move(ys), alpha_rename(body, next));
    }
    case Kind::sum:
    case Kind::par: {
        std::vector<TermPtr> kids;
        for (std::size_t i = 0; i < p->kids.size(); ++i) kids.push_back(kid(i));
        return p->kind == Kind::sum ? pi::sum(std::move(kids)) : pi::par(std::move(kids));
    }
    case Kind::bang: return pi::bang(kid(0));
    default: return p;
    }
}

} // namespace

PropertyResult normalization_laws(std::uint32_t seed, std::size_t terms)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < terms; ++i) {
        auto p = random_term(rng);
        auto n = pi::normalize(p);
        ++r.checked;
        if (pi::render(pi::normalize(n)) != pi::render(n)) r.fail("normalize not idempotent on " + pi::render(p));
        auto v = congruent_variant(rng, p);
        if (pi::canonical_key(v) != pi::canonical_key(p))
            r.fail("variant key differs: " + pi::render(p) + " vs " + pi::render(v));
        else if (steps_text(v, {{"c"}}) != steps_text(p, {{"c"}}))
            r.fail("variant steps differ: " + pi::render(p) + " vs " + pi::render(v));
    }
    return r;
}

PropertyResult alpha_invariance(std::uint32_t seed, std::size_t terms)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < terms; ++i) {
        auto p = random_term(rng);
        std::size_t next = 0;
        auto q = alpha_rename(p, next);
        ++r.checked;
        if (!pi::alpha_eq(p, q)) r.fail("alpha_eq rejects a renaming of " + pi::render(p));
        if (steps_text(p, {}) != steps_text(q, {})) r.fail("pi_out not alpha-invariant on " + pi::render(p));
    }
    return r;
}

PropertyResult substitution_laws(std::uint32_t seed, std::size_t terms)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    const char* names[] = {"a", "b", "x", "y", "z"};
    for (std::size_t i = 0; i < terms; ++i) {
        auto p = random_term(rng);
        const std::string x = names[rng() % 5], y = names[rng() % 5];
        const auto fn = pi::free_names(p);
        ++r.checked;
        auto q = pi::substitute(p, x, y);
        if (!pi::alpha_eq(pi::substitute(p, x, x), p)) r.fail("p{x/x} != p for " + pi::render(p));
        if (!fn.contains(x) && !pi::alpha_eq(q, p)) r.fail("vacuous substitution changed " + pi::render(p));
        auto expect = fn;
        if (fn.contains(x)) {
            expect.erase(x);
            expect.insert(y);
        }
        if (pi::free_names(q) != expect) r.fail("free names of " + pi::render(p) + "{" + y + "/" + x + "}");
        // p{z/x}{y/z} = p{y/x} for z not free in p
        const std::string z = "fresh";
        if (!pi::alpha_eq(pi::substitute(pi::substitute(p, x, z), z, y), q))
            r.fail("composition law fails on " + pi::render(p));
    }
    return r;
}

PropertyResult tau_inertness(std::uint32_t seed, std::size_t terms)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < terms; ++i) {
        auto p = random_term(rng);
        auto lp = pi_lts(p);
        ++r.checked;
        for (auto mode : {equiv::Mode::bb, equiv::Mode::dpbb}) {
            if (!equivalent(pi_lts(pi::tau(p)), lp, mode))
                r.fail("tau.P vs P (" + equiv::to_string(mode) + ") on " + pi::render(p));
            auto q = insert_tau(rng, p);
            if (!equivalent(pi_lts(q), lp, mode))
                r.fail("inserted tau (" + equiv::to_string(mode) + ") on " + pi::render(p) + " / " + pi::render(q));
        }
    }
    return r;
}

PropertyResult compatibility(std::uint32_t seed, std::size_t pairs)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < pairs; ++i) {
        auto p = random_term(rng);
        auto q = insert_tau(rng, congruent_variant(rng, p));
        auto ctx = random_term(rng, 2);
        ++r.checked;
        if (!equivalent(pi_lts(p), pi_lts(q), equiv::Mode::dpbb)) {
            r.fail("pair not equivalent: " + pi::render(p));
            continue;
        }
        for (const char* n : {"a", "x"})
            if (!equivalent(pi_lts(pi::res(n, p)), pi_lts(pi::res(n, q)), equiv::Mode::dpbb))
                r.fail(std::string("restriction of ") + n + " breaks " + pi::render(p));
        if (!equivalent(pi_lts(pi::par({p, ctx})), pi_lts(pi::par({q, ctx})), equiv::Mode::dpbb))
            r.fail("parallel context " + pi::render(ctx) + " breaks " + pi::render(p));
    }
    return r;
}

PropertyResult degree_constancy(std::uint32_t seed, std::size_t systems)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < systems; ++i) {
        auto l = random_lts(rng);
        auto part = equiv::coarsest_partition(l, equiv::Mode::dpbb);
        auto deg = equiv::branching_degree(l).degree;
        ++r.checked;
        for (const auto& blk : part.blocks())
            for (auto s : blk)
                if (deg[s] != deg[blk.front()]) {
                    r.fail("degree differs inside a class of\n" + lts::write_aut(l));
                    break;
                }
    }
    return r;
}

PropertyResult eager_links_sound(std::uint32_t seed, std::size_t terms)
{
    std::mt19937 rng(seed);
    PropertyResult r;
    for (std::size_t i = 0; i < terms; ++i) {
        // a private channel with one sender and one receiver makes eager steps likely
        auto p = pi::res("k", pi::par({pi::out("k", "a", random_term(rng, 2)), pi::in("k", "y", random_term(rng, 2)),
                                       random_term(rng, 2)}));
        ++r.checked;
        // inputs range over the free names too; a fixed universe keeps a
        // handshake from changing the menu merely by forgetting a name
        const std::set<std::string> data{"a", "b", "x", "y", "z"};
        if (!equivalent(pi_lts(p, data, true), pi_lts(p, data, false), equiv::Mode::dpbb))
            r.fail("eager links change " + pi::render(p));
    }
    return r;
}

} // namespace rtmpi::testing
