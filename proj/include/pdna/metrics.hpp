#pragma once

#include <cstdint>

namespace pdna {

// Operation counters. They stand in for wall time when checking that
// encryption is a single linear pass.
struct Metrics {
    std::uint64_t symbolsScanned = 0;
    std::uint64_t codonsTranslated = 0;
    std::uint64_t intronsCut = 0;

    Metrics& operator+=(const Metrics& other)
    {
        symbolsScanned += other.symbolsScanned;
        codonsTranslated += other.codonsTranslated;
        intronsCut += other.intronsCut;
        return *this;
    }

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

}  // namespace pdna
