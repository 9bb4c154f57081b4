#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdna/dna_codec.hpp"
#include "pdna/metrics.hpp"

namespace pdna {

// Frame mask applied after a start code: '1' keeps the symbol, '0' removes it.
class PatternCode {
public:
    PatternCode() = default;

    // Throws FormatError when a character is not '0' or '1'.
    // Degenerate masks (all ones, all zeros, empty) are representable so that
    // validate_initial_key can report them.
    explicit PatternCode(std::string bits);

    const std::string& bits() const noexcept { return bits_; }
    std::size_t frame_length() const noexcept { return bits_.size(); }
    bool keeps(std::size_t i) const noexcept { return bits_[i] == '1'; }
    std::size_t zeros() const noexcept { return zeros_; }
    std::size_t ones() const noexcept { return bits_.size() - zeros_; }

    friend bool operator==(const PatternCode& a, const PatternCode& b) { return a.bits_ == b.bits_; }

private:
    std::string bits_;
    std::size_t zeros_ = 0;
};

struct InitialKey {
    std::vector<NucleotideSequence> startCodes;
    PatternCode pattern;

    friend bool operator==(const InitialKey&, const InitialKey&) = default;
};

// One cut. position is the 1-based index of the start-code match in the
// original DNA form; deleted holds the '0'-bit frame symbols in frame order.
struct IntronRecord {
    std::size_t position = 0;
    std::size_t codeIndex = 0;
    NucleotideSequence deleted;

    friend bool operator==(const IntronRecord&, const IntronRecord&) = default;
};

struct KeyValidation {
    std::optional<std::string> violation;

    bool ok() const noexcept { return !violation.has_value(); }
    explicit operator bool() const noexcept { return ok(); }
};

// Reports the first broken invariant, if any.
KeyValidation validate_initial_key(const InitialKey& key);

struct SpliceResult {
    NucleotideSequence spliced;
    std::vector<IntronRecord> introns;
    Metrics metrics;
};

// Single left-to-right scan. A start-code match is cut only when its whole
// frame fits; kept frame symbols are emitted and never rescanned. Throws
// KeyError when the key is invalid.
SpliceResult splice(const NucleotideSequence& dna, const InitialKey& key);

// Exact inverse of splice given its intron records. Throws ConsistencyError
// when the records disagree with the key or the spliced sequence.
NucleotideSequence reverse_splice(const NucleotideSequence& spliced,
                                  const std::vector<IntronRecord>& introns,
                                  const InitialKey& key);

}  // namespace pdna
