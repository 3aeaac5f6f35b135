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

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "rtmpi/compiler.hpp"
#include "rtmpi/equivalence.hpp"
#include "rtmpi/pi.hpp"
#include "rtmpi/rtm.hpp"

using namespace rtmpi;

namespace {

std::string corpus(const std::string& name)
{
    std::ifstream in(std::string(RTMPI_CORPUS_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Ring of n states with a few random chords; one tau-cycle region.
lts::Lts ring(std::size_t n)
{
    std::mt19937 rng(7);
    lts::Lts l;
    for (std::size_t s = 0; s < n; ++s) l.add_state(std::to_string(s));
    const auto a = lts::ActionLabel::plain("a"), b = lts::ActionLabel::plain("b"), tau = lts::ActionLabel::tau();
    for (std::size_t s = 0; s < n; ++s) {
        l.add_transition(s, s % 3 ? tau : a, (s + 1) % n);
        if (rng() % 4 == 0) l.add_transition(s, b, rng() % n);
    }
    return l;
}

void BM_explore_rtm(benchmark::State& state)
{
    auto m = rtm::parse_rtm(corpus("counter.rtm"));
    for (auto _ : state) benchmark::DoNotOptimize(lts::explore(rtm::rtm_generator(m), {}).num_states());
}
BENCHMARK(BM_explore_rtm);

void BM_normalize_compiled(benchmark::State& state)
{
    auto co = compiler::compile(rtm::parse_rtm(corpus("counter.rtm")));
    for (auto _ : state) benchmark::DoNotOptimize(pi::canonical_key(co.term));
}
BENCHMARK(BM_normalize_compiled);

void BM_explore_pi(benchmark::State& state)
{
    auto p = pi::parse_pi(corpus("ex44_n" + std::to_string(state.range(0)) + ".pi"));
    for (auto _ : state) benchmark::DoNotOptimize(lts::explore(pi::pi_generator(p, {}), {}).num_states());
}
BENCHMARK(BM_explore_pi)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_explore_compiled(benchmark::State& state)
{
    auto co = compiler::compile(rtm::parse_rtm(corpus("parity.rtm")));
    for (auto _ : state) {
        auto g = lts::restrict_generator(pi::pi_generator(co.normalized, {{}, true}), {});
        benchmark::DoNotOptimize(lts::explore(g, {}).num_states());
    }
}
BENCHMARK(BM_explore_compiled)->Unit(benchmark::kMillisecond);

void BM_refine(benchmark::State& state)
{
    auto l = ring(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equiv::coarsest_partition(l, equiv::Mode::dpbb).num_blocks);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_refine)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_oracle(benchmark::State& state)
{
    auto l = ring(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(equiv::oracle(l, l, true, 1 << 20).verdict);
}
BENCHMARK(BM_oracle)->RangeMultiplier(2)->Range(8, 64);

void BM_degree(benchmark::State& state)
{
    auto l = ring(4096);
    for (auto _ : state) benchmark::DoNotOptimize(equiv::branching_degree(l).supremum);
}
BENCHMARK(BM_degree);

void BM_aut_round_trip(benchmark::State& state)
{
    auto l = ring(4096);
    for (auto _ : state) benchmark::DoNotOptimize(lts::read_aut(lts::write_aut(l)).num_states());
}
BENCHMARK(BM_aut_round_trip);

} // namespace

BENCHMARK_MAIN();
