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
#include <limits>
#include <numeric>
#include <unordered_map>

#include "refine.hpp"

namespace rtmpi::equiv {

namespace detail {

Union::Union(const std::vector<const lts::Lts*>& systems)
{
    std::unordered_map<std::string, std::size_t> ids{{lts::ActionLabel::tau().render(), 0}};
    labels.push_back(lts::ActionLabel::tau());
    std::size_t total = 0;
    for (const auto* l : systems) {
        offset.push_back(total);
        total += l->num_states();
    }
    out.resize(total);
    for (std::size_t k = 0; k < systems.size(); ++k) {
        const auto& ts = systems[k]->transitions();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            auto [it, fresh] = ids.emplace(ts[i].label.render(), labels.size());
            if (fresh) labels.push_back(ts[i].label);
            out[offset[k] + ts[i].source].push_back(Edge{it->second, offset[k] + ts[i].target, i});
        }
    }
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Strongly connected components of the graph of inert tau-steps, listed so
// that every component comes after all components it can reach.
struct Components {
    std::vector<std::size_t> of;
    std::vector<std::vector<std::size_t>> members;
};

Components inert_components(const Union& u, const std::vector<std::size_t>& block)
{
    const std::size_t n = u.size();
    Components c;
    c.of.assign(n, npos);
    std::vector<std::size_t> index(n, npos), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::size_t counter = 0;
    struct Frame {
        std::size_t state, edge;
    };
    std::vector<Frame> calls;

    auto inert = [&](std::size_t s, const Union::Edge& e) { return e.label == 0 && block[e.target] == block[s]; };

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != npos) continue;
        calls.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!calls.empty()) {
            auto& f = calls.back();
            const auto& edges = u.out[f.state];
            if (f.edge < edges.size()) {
                const auto& e = edges[f.edge++];
                if (!inert(f.state, e)) continue;
                const auto t = e.target;
                if (index[t] == npos) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    calls.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.state] = std::min(low[f.state], index[t]);
                }
                continue;
            }
            const auto s = f.state;
            calls.pop_back();
            if (!calls.empty()) low[calls.back().state] = std::min(low[calls.back().state], low[s]);
            if (low[s] != index[s]) continue;
            std::vector<std::size_t> comp;
            std::size_t x;
            do {
                x = stack.back();
                stack.pop_back();
                on_stack[x] = false;
                c.of[x] = c.members.size();
                comp.push_back(x);
            } while (x != s);
            c.members.push_back(std::move(comp));
        }
    }
    return c;
}

void signatures(const Union& u, const std::vector<std::size_t>& block, Mode mode, Refinement& r)
{
    const auto comps = inert_components(u, block);
    std::vector<Signature> sig(comps.members.size());
    std::vector<bool> div(comps.members.size(), false);
    for (std::size_t c = 0; c < comps.members.size(); ++c) {
        auto& acc = sig[c];
        bool d = comps.members[c].size() > 1;
        for (auto s : comps.members[c])
            for (const auto& e : u.out[s]) {
                const bool inert = e.label == 0 && block[e.target] == block[s];
                if (!inert) {
                    acc.emplace_back(e.label, block[e.target]);
                } else if (comps.of[e.target] == c) {
                    d = d || e.target == s || comps.members[c].size() > 1;
                } else {
                    const auto& below = sig[comps.of[e.target]];
                    acc.insert(acc.end(), below.begin(), below.end());
                    d = d || div[comps.of[e.target]];
                }
            }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        div[c] = d;
    }
    r.signature.resize(u.size());
    r.divergent.assign(u.size(), false);
    for (std::size_t s = 0; s < u.size(); ++s) {
        const auto c = comps.of[s];
        r.signature[s] = sig[c];
        r.divergent[s] = div[c];
        if (mode == Mode::dpbb && div[c]) r.signature[s].emplace_back(npos, 0);
    }
}

} // namespace

Refinement refine(const Union& u, Mode mode)
{
    Refinement r;
    r.partition.block_of.assign(u.size(), 0);
    r.partition.num_blocks = u.size() == 0 ? 0 : 1;
    std::vector<std::size_t> order(u.size());
    while (true) {
        signatures(u, r.partition.block_of, mode, r);
        const auto& block = r.partition.block_of;
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (block[a] != block[b]) return block[a] < block[b];
            return r.signature[a] < r.signature[b];
        });
        std::vector<std::size_t> next(u.size());
        std::size_t count = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i > 0 && (block[order[i]] != block[order[i - 1]] ||
                          r.signature[order[i]] != r.signature[order[i - 1]]))
                ++count;
            next[order[i]] = count;
        }
        if (!order.empty()) ++count;
        const bool stable = count == r.partition.num_blocks;
        r.partition.block_of = std::move(next);
        r.partition.num_blocks = count;
        if (stable) break;
    }
    signatures(u, r.partition.block_of, mode, r); // renumbered blocks
    return r;
}

} // namespace detail

std::string to_string(Mode m) { return m == Mode::bb ? "bb" : "dpbb"; }

Mode parse_mode(const std::string& text)
{
    if (text == "bb") return Mode::bb;
    if (text == "dpbb") return Mode::dpbb;
    throw PreconditionError("unknown mode " + text + " (expected bb or dpbb)");
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::inequivalent: return "inequivalent";
    case Verdict::indeterminate_frontier: return "indeterminate-frontier";
    }
    return "?";
}

std::vector<std::vector<std::size_t>> Partition::blocks() const
{
    std::vector<std::vector<std::size_t>> out(num_blocks);
    for (std::size_t s = 0; s < block_of.size(); ++s) out.at(block_of[s]).push_back(s);
    return out;
}

std::string Evidence::describe() const
{
    auto where = "system " + std::to_string(side) + " state " + std::to_string(state);
    if (divergence) return where + " can diverge; its partner cannot";
    return where + " can do " + (label ? label->render() : "?") + " to state " + std::to_string(target) +
           "; its partner has no matching step";
}

namespace {

std::optional<Evidence> distinguish(const detail::Union& u, const detail::Refinement& r, std::size_t a,
                                    std::size_t b)
{
    // a and b are the two initial states, one per system; their signatures
    // differ, so one of them offers a (label, block) pair the other lacks.
    for (auto [first, second, side] : {std::tuple{a, b, 1}, std::tuple{b, a, 2}}) {
        const auto& mine = r.signature[first];
        const auto& theirs = r.signature[second];
        for (const auto& item : mine) {
            if (std::binary_search(theirs.begin(), theirs.end(), item)) continue;
            Evidence e;
            e.side = side;
            e.state = first - u.offset[side - 1];
            if (item.first == std::numeric_limits<std::size_t>::max()) {
                e.divergence = true;
                return e;
            }
            e.label = u.labels[item.first];
            // find a concrete step realising the pair, through inert tau-steps
            const auto& block = r.partition.block_of;
            std::vector<std::size_t> todo{first};
            std::vector<bool> seen(u.size(), false);
            seen[first] = true;
            while (!todo.empty()) {
                auto s = todo.back();
                todo.pop_back();
                for (const auto& edge : u.out[s]) {
                    if (edge.label == item.first && block[edge.target] == item.second) {
                        e.target = edge.target - u.offset[side - 1];
                        return e;
                    }
                    if (edge.label == 0 && block[edge.target] == block[s] && !seen[edge.target]) {
                        seen[edge.target] = true;
                        todo.push_back(edge.target);
                    }
                }
            }
            return e;
        }
    }
    return std::nullopt;
}

} // namespace

EquivResult check(const lts::Lts& l1, const lts::Lts& l2, Mode mode, bool acknowledge_frontier)
{
    if (l1.has_frontier() || l2.has_frontier()) {
        if (!acknowledge_frontier)
            throw PreconditionError("cannot compare systems with frontier states (raise the bounds or acknowledge)");
        return EquivResult{Verdict::indeterminate_frontier, {}, std::nullopt};
    }
    detail::Union u({&l1, &l2});
    auto r = detail::refine(u, mode);
    const auto a = u.offset[0] + l1.initial();
    const auto b = u.offset[1] + l2.initial();
    EquivResult res;
    if (r.partition.block_of[a] != r.partition.block_of[b]) {
        res.verdict = Verdict::inequivalent;
        res.evidence = distinguish(u, r, a, b);
        return res;
    }
    res.verdict = Verdict::equivalent;
    auto blocks = r.partition.blocks();
    for (const auto& blk : blocks) {
        auto mid = std::lower_bound(blk.begin(), blk.end(), u.offset[1]);
        for (auto i = blk.begin(); i != mid; ++i)
            for (auto j = mid; j != blk.end(); ++j) res.witness.emplace_back(*i, *j - u.offset[1]);
    }
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

EquivResult branching_bisim(const lts::Lts& l1, const lts::Lts& l2, bool acknowledge_frontier)
{
    return check(l1, l2, Mode::bb, acknowledge_frontier);
}

EquivResult dp_branching_bisim(const lts::Lts& l1, const lts::Lts& l2, bool acknowledge_frontier)
{
    return check(l1, l2, Mode::dpbb, acknowledge_frontier);
}

Partition coarsest_partition(const lts::Lts& l, Mode mode)
{
    if (l.has_frontier()) throw PreconditionError("cannot partition a system with frontier states");
    return detail::refine(detail::Union({&l}), mode).partition;
}

std::set<std::size_t> divergence_classes(const lts::Lts& l, const Partition& p)
{
    if (p.block_of.size() != l.num_states()) throw PreconditionError("partition does not cover the system");
    detail::Refinement r;
    detail::Union u({&l});
    detail::signatures(u, p.block_of, Mode::dpbb, r);
    std::set<std::size_t> out;
    for (std::size_t s = 0; s < l.num_states(); ++s)
        if (r.divergent[s]) out.insert(s);
    return out;
}

} // namespace rtmpi::equiv
