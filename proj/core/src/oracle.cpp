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

// The clauses of branching bisimulation checked literally on a given
// relation, independently of the partition-refinement code.

#include <algorithm>

#include "rtmpi/equivalence.hpp"

namespace rtmpi::equiv {

namespace {

using lts::Lts;

struct Rel {
    std::vector<std::vector<std::size_t>> row, col; // sorted

    Rel(std::size_t n1, std::size_t n2, const Relation& r) : row(n1), col(n2)
    {
        for (auto [x, y] : r) {
            if (x >= n1 || y >= n2)
                throw PreconditionError("relation pair (" + std::to_string(x) + "," + std::to_string(y) +
                                        ") is out of range");
            row[x].push_back(y);
            col[y].push_back(x);
        }
        for (auto* v : {&row, &col})
            for (auto& xs : *v) {
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            }
    }

    bool has(std::size_t x, std::size_t y) const { return std::binary_search(row[x].begin(), row[x].end(), y); }
};

// One side of the clauses: `me` moves, `other` answers. Pairs are (mine, theirs).
struct Side {
    const Lts& me;
    const Lts& other;
    std::vector<std::vector<std::size_t>> tau_star; // of `other`, reflexive
    std::vector<std::vector<std::size_t>> tau_plus; // of `other`

    Side(const Lts& a, const Lts& b) : me(a), other(b), tau_star(b.num_states()), tau_plus(b.num_states())
    {
        for (std::size_t s = 0; s < b.num_states(); ++s) {
            std::vector<bool> seen(b.num_states(), false);
            std::vector<std::size_t> todo;
            for (auto i : b.outgoing(s)) {
                const auto& t = b.transitions()[i];
                if (t.label.is_tau() && !seen[t.target]) {
                    seen[t.target] = true;
                    todo.push_back(t.target);
                }
            }
            while (!todo.empty()) {
                auto x = todo.back();
                todo.pop_back();
                tau_plus[s].push_back(x);
                for (auto i : b.outgoing(x)) {
                    const auto& t = b.transitions()[i];
                    if (t.label.is_tau() && !seen[t.target]) {
                        seen[t.target] = true;
                        todo.push_back(t.target);
                    }
                }
            }
            tau_star[s] = tau_plus[s];
            if (!seen[s]) tau_star[s].push_back(s);
        }
    }

    // rel(mine, theirs)
    template <typename R>
    bool transfer(std::size_t s1, std::size_t s2, R rel) const
    {
        for (auto i : me.outgoing(s1)) {
            const auto& step = me.transitions()[i];
            bool matched = false;
            for (auto mid : tau_star[s2]) {
                if (!rel(s1, mid)) continue;
                if (step.label.is_tau() && rel(step.target, mid)) matched = true;
                for (auto j : other.outgoing(mid)) {
                    const auto& answer = other.transitions()[j];
                    if (answer.label == step.label && rel(step.target, answer.target)) matched = true;
                    if (matched) break;
                }
                if (matched) break;
            }
            if (!matched) return false;
        }
        return true;
    }

    // States of `me` that are related to s2 but to no tau+-successor of s2
    // and that can run an infinite tau-path inside that set.
    template <typename R>
    std::vector<bool> unanswered_divergence(std::size_t s2, const std::vector<std::size_t>& partners, R rel) const
    {
        std::vector<bool> in(me.num_states(), false);
        for (auto x : partners) {
            bool answered = false;
            for (auto y : tau_plus[s2])
                if (rel(x, y)) {
                    answered = true;
                    break;
                }
            in[x] = !answered;
        }
        // prune states without a tau-successor left in the set
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t x = 0; x < me.num_states(); ++x) {
                if (!in[x]) continue;
                bool keeps = false;
                for (auto i : me.outgoing(x)) {
                    const auto& t = me.transitions()[i];
                    if (t.label.is_tau() && in[t.target]) {
                        keeps = true;
                        break;
                    }
                }
                if (!keeps) {
                    in[x] = false;
                    changed = true;
                }
            }
        }
        return in;
    }
};

// Pairs of `r` violating some clause.
std::vector<std::pair<std::size_t, std::size_t>> violations(const Side& fwd, const Side& bwd, const Rel& r,
                                                            bool divergence)
{
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    auto rel12 = [&](std::size_t x, std::size_t y) { return r.has(x, y); };
    auto rel21 = [&](std::size_t y, std::size_t x) { return r.has(x, y); };
    std::vector<std::vector<bool>> div1, div2;
    if (divergence) {
        div1.resize(r.col.size());
        for (std::size_t y = 0; y < r.col.size(); ++y)
            if (!r.col[y].empty()) div1[y] = fwd.unanswered_divergence(y, r.col[y], rel12);
        div2.resize(r.row.size());
        for (std::size_t x = 0; x < r.row.size(); ++x)
            if (!r.row[x].empty()) div2[x] = bwd.unanswered_divergence(x, r.row[x], rel21);
    }
    for (std::size_t x = 0; x < r.row.size(); ++x)
        for (auto y : r.row[x]) {
            bool ok = fwd.transfer(x, y, rel12) && bwd.transfer(y, x, rel21);
            if (ok && divergence) ok = !div1[y][x] && !div2[x][y];
            if (!ok) bad.emplace_back(x, y);
        }
    return bad;
}

} // namespace

bool check_relation(const Lts& l1, const Lts& l2, const Relation& r, bool divergence)
{
    if (l1.has_frontier() || l2.has_frontier()) throw PreconditionError("check_relation needs frontier-free systems");
    Rel rel(l1.num_states(), l2.num_states(), r);
    Side fwd(l1, l2), bwd(l2, l1);
    return violations(fwd, bwd, rel, divergence).empty();
}

EquivResult oracle(const Lts& l1, const Lts& l2, bool divergence, std::size_t max_pairs)
{
    if (l1.has_frontier() || l2.has_frontier()) throw PreconditionError("the oracle needs frontier-free systems");
    if (l1.num_states() * l2.num_states() > max_pairs)
        throw PreconditionError("oracle limit exceeded: " + std::to_string(l1.num_states() * l2.num_states()) +
                                " pairs > " + std::to_string(max_pairs));
    Relation all;
    for (std::size_t x = 0; x < l1.num_states(); ++x)
        for (std::size_t y = 0; y < l2.num_states(); ++y) all.emplace_back(x, y);
    Side fwd(l1, l2), bwd(l2, l1);
    while (true) {
        Rel rel(l1.num_states(), l2.num_states(), all);
        auto bad = violations(fwd, bwd, rel, divergence);
        if (bad.empty()) break;
        Relation kept;
        std::set_difference(all.begin(), all.end(), bad.begin(), bad.end(), std::back_inserter(kept));
        all = std::move(kept);
    }
    EquivResult res;
    if (std::binary_search(all.begin(), all.end(), std::pair{l1.initial(), l2.initial()})) {
        res.verdict = Verdict::equivalent;
        res.witness = std::move(all);
    } else {
        res.verdict = Verdict::inequivalent;
    }
    return res;
}

} // namespace rtmpi::equiv
