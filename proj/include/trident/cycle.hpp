#pragma once

// Brent cycle detection over an arbitrary deterministic state transition.
// Constant memory; returns the minimal period and the pre-periodic tail.

#include <cstdint>

namespace trident {

struct CycleReport {
    std::uint64_t tail = 0;    // pre-periodic length (mu)
    std::uint64_t period = 0;  // minimal cycle length (lambda); 0 when capped
    bool capped = false;       // iteration budget exhausted before closure
};

// `step_fn` maps State -> State and must be deterministic; `cap` bounds the
// total number of step_fn applications. States compare with operator==.
template <typename State, typename StepFn>
CycleReport find_cycle(StepFn step_fn, State initial, std::uint64_t cap) {
    std::uint64_t budget = cap;
    auto advance = [&](State& s) -> bool {
        if (budget == 0) return false;
        --budget;
        s = step_fn(s);
        return true;
    };

    // Phase 1: find the period lambda.
    std::uint64_t power = 1, lambda = 1;
    State tortoise = initial;
    State hare = initial;
    if (!advance(hare)) return {0, 0, true};
    while (!(tortoise == hare)) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        if (!advance(hare)) return {0, 0, true};
        ++lambda;
    }

    // Phase 2: find the tail mu. Separation by exactly lambda steps.
    tortoise = initial;
    hare = initial;
    for (std::uint64_t i = 0; i < lambda; ++i)
        if (!advance(hare)) return {0, 0, true};
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
        if (!advance(tortoise) || !advance(hare)) return {0, 0, true};
        ++mu;
    }
    return {mu, lambda, false};
}

}  // namespace trident
