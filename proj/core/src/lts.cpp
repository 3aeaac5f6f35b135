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
#include <charconv>
#include <deque>
#include <utility>

#include "rtmpi/lts.hpp"

namespace rtmpi::lts {

std::size_t Lts::add_state(std::string key)
{
    if (index_.contains(key)) throw PreconditionError("duplicate state key '" + key + "'");
    std::size_t id = keys_.size();
    index_.emplace(key, id);
    keys_.push_back(std::move(key));
    outgoing_.emplace_back();
    frontier_.push_back(false);
    return id;
}

std::size_t Lts::intern_state(const std::string& key)
{
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return add_state(key);
}

void Lts::add_transition(std::size_t source, ActionLabel label, std::size_t target)
{
    if (source >= keys_.size() || target >= keys_.size())
        throw PreconditionError("transition endpoint out of range");
    if (frontier_[source]) throw PreconditionError("frontier state " + keys_[source] + " cannot have successors");
    outgoing_[source].push_back(transitions_.size());
    transitions_.push_back(Transition{source, std::move(label), target});
}

void Lts::set_initial(std::size_t state)
{
    if (state >= keys_.size()) throw PreconditionError("initial state out of range");
    initial_ = state;
}

void Lts::mark_frontier(std::size_t state)
{
    if (!outgoing_.at(state).empty()) throw PreconditionError("frontier state " + keys_[state] + " has successors");
    if (!frontier_[state]) {
        frontier_[state] = true;
        ++frontier_count_;
    }
}

std::optional<std::size_t> Lts::find(const std::string& key) const
{
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return std::nullopt;
}

std::vector<std::size_t> Lts::frontier_states() const
{
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < frontier_.size(); ++s)
        if (frontier_[s]) out.push_back(s);
    return out;
}

namespace {

void sort_successors(std::vector<Successor>& succ)
{
    std::sort(succ.begin(), succ.end(), [](const Successor& a, const Successor& b) {
        if (a.label != b.label) return a.label < b.label;
        return a.target < b.target;
    });
    succ.erase(std::unique(succ.begin(), succ.end(),
                           [](const Successor& a, const Successor& b) {
                               return a.label == b.label && a.target == b.target;
                           }),
               succ.end());
}

} // namespace

Lts explore(const StepGenerator& gen, ExploreBounds bounds)
{
    if (bounds.max_states < 1) throw PreconditionError("max_states must be at least 1");

    Lts out;
    std::vector<std::size_t> depth;
    out.set_initial(out.add_state(gen.initial));
    depth.push_back(0);

    // Once the state budget has overflowed, only expansions that discover
    // nothing new are performed. This keeps explore monotone in its bounds.
    bool overflowed = false;
    for (std::size_t s = 0; s < out.num_states(); ++s) {
        std::vector<Successor> succ;
        const std::string key = out.key(s);
        try {
            succ = gen.successors(key);
        } catch (const ExplorationError&) {
            throw;
        } catch (const std::exception& e) {
            throw ExplorationError(key, e.what());
        }
        sort_successors(succ);

        std::size_t fresh = 0;
        {
            std::vector<const std::string*> seen;
            for (const auto& x : succ) {
                if (out.find(x.target)) continue;
                if (std::find_if(seen.begin(), seen.end(), [&](const std::string* p) { return *p == x.target; }) !=
                    seen.end())
                    continue;
                seen.push_back(&x.target);
                ++fresh;
            }
        }
        if (fresh > 0) {
            if (depth[s] >= bounds.max_depth || overflowed) {
                out.mark_frontier(s);
                continue;
            }
            if (out.num_states() + fresh > bounds.max_states) {
                overflowed = true;
                out.mark_frontier(s);
                continue;
            }
        }
        for (auto& x : succ) {
            auto known = out.find(x.target);
            std::size_t t;
            if (known) {
                t = *known;
            } else {
                t = out.add_state(x.target);
                depth.push_back(depth[s] + 1);
            }
            out.add_transition(s, std::move(x.label), t);
        }
    }
    return out;
}

StepGenerator unfold_visible(StepGenerator inner, std::size_t max_visible)
{
    StepGenerator g;
    g.initial = "0#" + inner.initial;
    g.successors = [inner = std::move(inner), max_visible](const std::string& key) {
        auto hash = key.find('#');
        if (hash == std::string::npos) throw PreconditionError("not an unfolded state key: " + key);
        std::size_t count = 0;
        std::from_chars(key.data(), key.data() + hash, count);
        std::vector<Successor> out;
        if (count >= max_visible) return out;
        for (auto& s : inner.successors(key.substr(hash + 1))) {
            std::size_t next = count + (s.label.is_tau() ? 0 : 1);
            out.push_back(Successor{std::move(s.label), std::to_string(next) + "#" + s.target});
        }
        return out;
    };
    return g;
}

StepGenerator restrict_generator(StepGenerator inner, std::set<std::string> allowed_inputs)
{
    StepGenerator g;
    g.initial = inner.initial;
    g.successors = [inner = std::move(inner), allowed = std::move(allowed_inputs)](const std::string& key) {
        std::vector<Successor> out;
        for (auto& s : inner.successors(key)) {
            switch (s.label.kind()) {
            case ActionKind::free_input:
                if (!allowed.contains(s.label.datum())) continue;
                break;
            case ActionKind::bound_output:
                s.label = ActionLabel::nu_output(s.label.channel());
                break;
            default: break;
            }
            out.push_back(std::move(s));
        }
        return out;
    };
    return g;
}

Lts restrict(const Lts& l, const std::set<std::string>& allowed_inputs, bool acknowledge_frontier)
{
    if (l.has_frontier() && !acknowledge_frontier)
        throw PreconditionError("restrict on a system with frontier states requires acknowledgement");

    auto kept = [&](const Transition& t) {
        return t.label.kind() != ActionKind::free_input || allowed_inputs.contains(t.label.datum());
    };

    std::vector<bool> reach(l.num_states(), false);
    std::deque<std::size_t> work{l.initial()};
    reach[l.initial()] = true;
    while (!work.empty()) {
        auto s = work.front();
        work.pop_front();
        for (auto ti : l.outgoing(s)) {
            const auto& t = l.transitions()[ti];
            if (!kept(t) || reach[t.target]) continue;
            reach[t.target] = true;
            work.push_back(t.target);
        }
    }

    Lts out;
    std::vector<std::size_t> remap(l.num_states(), 0);
    for (std::size_t s = 0; s < l.num_states(); ++s)
        if (reach[s]) remap[s] = out.add_state(l.key(s));
    out.set_initial(remap[l.initial()]);
    for (const auto& t : l.transitions()) {
        if (!reach[t.source] || !kept(t)) continue;
        auto label = t.label.kind() == ActionKind::bound_output ? ActionLabel::nu_output(t.label.channel()) : t.label;
        out.add_transition(remap[t.source], std::move(label), remap[t.target]);
    }
    for (std::size_t s = 0; s < l.num_states(); ++s)
        if (reach[s] && l.is_frontier(s)) out.mark_frontier(remap[s]);
    return out;
}

LabelSet labels(const Lts& l)
{
    LabelSet out;
    for (const auto& t : l.transitions()) out.insert(t.label);
    return out;
}

Lts relabel(const Lts& l, const std::map<ActionLabel, ActionLabel>& mapping)
{
    Lts out;
    for (std::size_t s = 0; s < l.num_states(); ++s) out.add_state(l.key(s));
    out.set_initial(l.initial());
    for (const auto& t : l.transitions()) {
        auto it = mapping.find(t.label);
        out.add_transition(t.source, it == mapping.end() ? t.label : it->second, t.target);
    }
    for (auto s : l.frontier_states()) out.mark_frontier(s);
    return out;
}

Lts canonical_order(const Lts& l)
{
    std::vector<std::size_t> order;
    std::vector<std::size_t> rank(l.num_states(), SIZE_MAX);
    auto visit = [&](std::size_t s) {
        if (rank[s] != SIZE_MAX) return;
        rank[s] = order.size();
        order.push_back(s);
    };
    auto sorted_out = [&](std::size_t s) {
        std::vector<std::size_t> ts(l.outgoing(s).begin(), l.outgoing(s).end());
        std::stable_sort(ts.begin(), ts.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = l.transitions()[a];
            const auto& y = l.transitions()[b];
            if (x.label != y.label) return x.label < y.label;
            return x.target < y.target;
        });
        return ts;
    };
    visit(l.initial());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto ti : sorted_out(order[i])) visit(l.transitions()[ti].target);
    for (std::size_t s = 0; s < l.num_states(); ++s) visit(s);

    Lts out;
    for (auto s : order) out.add_state(l.key(s));
    out.set_initial(0);
    std::vector<Transition> ts;
    for (const auto& t : l.transitions()) ts.push_back(Transition{rank[t.source], t.label, rank[t.target]});
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
        if (a.source != b.source) return a.source < b.source;
        if (a.label != b.label) return a.label < b.label;
        return a.target < b.target;
    });
    for (auto& t : ts) out.add_transition(t.source, std::move(t.label), t.target);
    for (auto s : l.frontier_states()) out.mark_frontier(rank[s]);
    return out;
}

namespace {

struct IsoSearch {
    const Lts& a;
    const Lts& b;
    std::vector<std::size_t> fwd, bwd;

    // Per-state signature: sorted outgoing labels. Cheap pruning only.
    static std::vector<std::string> shape(const Lts& l, std::size_t s)
    {
        std::vector<std::string> out;
        for (auto ti : l.outgoing(s)) out.push_back(l.transitions()[ti].label.render());
        std::sort(out.begin(), out.end());
        return out;
    }

    bool compatible(std::size_t x, std::size_t y) const
    {
        return a.is_frontier(x) == b.is_frontier(y) && shape(a, x) == shape(b, y);
    }

    bool edges_consistent(std::size_t x, std::size_t y) const
    {
        // every mapped edge x -l-> x' must exist as y -l-> fwd[x'] and vice versa
        for (auto ti : a.outgoing(x)) {
            const auto& t = a.transitions()[ti];
            if (fwd[t.target] == SIZE_MAX) continue;
            bool found = false;
            for (auto tj : b.outgoing(y)) {
                const auto& u = b.transitions()[tj];
                if (u.label == t.label && u.target == fwd[t.target]) { found = true; break; }
            }
            if (!found) return false;
        }
        for (auto tj : b.outgoing(y)) {
            const auto& u = b.transitions()[tj];
            if (bwd[u.target] == SIZE_MAX) continue;
            bool found = false;
            for (auto ti : a.outgoing(x)) {
                const auto& t = a.transitions()[ti];
                if (u.label == t.label && t.target == bwd[u.target]) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }

    bool consistent_all() const
    {
        for (std::size_t x = 0; x < fwd.size(); ++x)
            if (fwd[x] != SIZE_MAX && !edges_consistent(x, fwd[x])) return false;
        return true;
    }

    std::size_t next_unmapped() const
    {
        // prefer a state adjacent to the mapped region so pruning bites early
        for (std::size_t x = 0; x < fwd.size(); ++x) {
            if (fwd[x] == SIZE_MAX) continue;
            for (auto ti : a.outgoing(x))
                if (fwd[a.transitions()[ti].target] == SIZE_MAX) return a.transitions()[ti].target;
        }
        for (std::size_t x = 0; x < fwd.size(); ++x)
            if (fwd[x] == SIZE_MAX) return x;
        return SIZE_MAX;
    }

    bool search()
    {
        auto x = next_unmapped();
        if (x == SIZE_MAX) return consistent_all();
        for (std::size_t y = 0; y < bwd.size(); ++y) {
            if (bwd[y] != SIZE_MAX || !compatible(x, y)) continue;
            fwd[x] = y;
            bwd[y] = x;
            if (edges_consistent(x, y) && search()) return true;
            fwd[x] = SIZE_MAX;
            bwd[y] = SIZE_MAX;
        }
        return false;
    }
};

} // namespace

bool isomorphic(const Lts& a, const Lts& b)
{
    if (a.num_states() != b.num_states() || a.num_transitions() != b.num_transitions()) return false;
    if (a.frontier_size() != b.frontier_size()) return false;
    std::vector<std::string> la, lb;
    for (const auto& t : a.transitions()) la.push_back(t.label.render());
    for (const auto& t : b.transitions()) lb.push_back(t.label.render());
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb) return false;

    IsoSearch iso{a, b, std::vector<std::size_t>(a.num_states(), SIZE_MAX),
                  std::vector<std::size_t>(b.num_states(), SIZE_MAX)};
    if (!iso.compatible(a.initial(), b.initial())) return false;
    iso.fwd[a.initial()] = b.initial();
    iso.bwd[b.initial()] = a.initial();
    return iso.search();
}

} // namespace rtmpi::lts
