#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdna/splicing.hpp"
#include "pdna/translation.hpp"

namespace pdna {

// Paper layout: a key file without "pad:" and "table:" lines. Parsing such a
// file records the layout so that it serializes back byte-identically.
enum class KeyLayout : std::uint8_t { Canonical, Paper };

// Everything the receiver needs to invert one encryption: the splicing half
// (initial key, intron records) and the translation half (pad, table, digits).
struct SessionKey {
    InitialKey initialKey;
    std::vector<IntronRecord> introns;
    unsigned pad = 0;
    std::string tableSpec = "standard";
    DigitString digits;
    KeyLayout layout = KeyLayout::Canonical;

    friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

struct KeyGenParams {
    std::uint64_t seed = 0;
    std::size_t startCodeLength = 3;
    std::size_t patternLength = 10;
    std::size_t codeCount = 1;
};

// Deterministic in (seed, params); see Rng for the generator. Start codes are
// drawn uniformly and redrawn on prefix collisions; the pattern is redrawn
// until it contains both bits. Throws ParamError.
InitialKey generate_initial_key(const KeyGenParams& params);

// Separator line between key sections.
inline constexpr std::string_view kKeySeparator = "--------------------";

std::string serialize_initial_key(const InitialKey& key);
InitialKey parse_initial_key(std::string_view text);

/* Session key text, LF line endings:

    <start codes, space separated>
    <pattern bits>
    --------------------
    splicing.position: <1-based decimal>     } once per intron,
    splicing.deleted: <ACGT...>              } ascending position
    splicing.code: <index>                   } only with 2+ start codes
    --------------------
    pad: <0|1|2>
    table: standard | seed:<16 hex>
    mapping: <digits 0-5>

   Parsers accept any separator of three or more dashes. Files without the
   pad/table lines parse as pad 0 on the standard table.
 */
std::string serialize_session_key(const SessionKey& key);
SessionKey parse_session_key(std::string_view text);

std::string digits_to_text(const DigitString& digits);

struct KeySizeReport {
    std::size_t redundantBytes = 0;      // serialized text length
    std::size_t compactBytes = 0;        // bit-packed estimate, rounded up
    std::size_t compactSplicingBits = 0; // intron records' share of the estimate
};

// Compact accounting: 128-bit fixed header, 2 bits per start-code symbol,
// 1 bit per pattern bit, per intron a 32-bit position plus 2 bits per deleted
// symbol (plus an 8-bit code index with 2+ start codes), 3 bits per digit.
KeySizeReport key_size_report(const SessionKey& key);

}  // namespace pdna
