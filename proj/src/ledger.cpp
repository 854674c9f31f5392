#include "prg/ledger.hpp"

#include "prg/errors.hpp"

namespace prg {

Profile average_profile(const RegretLedger& ledger, std::size_t upto) {
    if (upto == 0) upto = ledger.rounds();
    if (upto == 0 || upto > ledger.rounds())
        throw InvalidInput("average_profile: bad round range");
    const std::size_t n = ledger.profiles[0].size();
    const std::size_t k = ledger.profiles[0][0].size();
    Profile avg(n, Point(k, 0.0));
    for (std::size_t t = 0; t < upto; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < k; ++c) avg[i][c] += ledger.profiles[t][i][c];
    }
    const double inv = 1.0 / static_cast<double>(upto);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) avg[i][c] *= inv;
    return avg;
}

} // namespace prg
