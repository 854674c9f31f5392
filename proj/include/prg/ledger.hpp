#pragma once

#include <cstddef>
#include <vector>

#include "prg/game.hpp"

namespace prg {

// Full play history of one run: the joint profile and realized utilities per
// round.  Everything regret-related replays from here.
struct RegretLedger {
    std::vector<Profile> profiles;              // x^(t), round-major
    std::vector<std::vector<double>> utilities; // utilities[t][i]

    std::size_t rounds() const { return profiles.size(); }

    void append(Profile x, std::vector<double> u) {
        profiles.push_back(std::move(x));
        utilities.push_back(std::move(u));
    }
};

// Per-player arithmetic mean of the first `upto` rounds (0 = all).
Profile average_profile(const RegretLedger& ledger, std::size_t upto = 0);

} // namespace prg
