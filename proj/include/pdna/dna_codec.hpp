#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdna {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// 2-bit codes: A=00, C=01, G=10, T=11.
constexpr char kNucleotides[4] = {'A', 'C', 'G', 'T'};

// Returns 0..3 for A/C/G/T, -1 otherwise.
constexpr int nucleotide_code(char c) noexcept
{
    switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
    }
}

constexpr bool is_nucleotide(char c) noexcept { return nucleotide_code(c) >= 0; }

// An ordered run of A/C/G/T symbols. The constructor rejects anything else,
// so every instance holds only valid symbols.
class NucleotideSequence {
public:
    NucleotideSequence() = default;

    // Throws FormatError on a symbol outside ACGT.
    explicit NucleotideSequence(std::string symbols);

    // Text form: uppercase ACGT with an optional trailing line feed.
    static NucleotideSequence from_text(std::string_view text);

    // Skips validation; callers guarantee the content is ACGT only.
    static NucleotideSequence trusted(std::string symbols);

    const std::string& str() const noexcept { return symbols_; }
    std::string_view view() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    char operator[](std::size_t i) const noexcept { return symbols_[i]; }

    friend bool operator==(const NucleotideSequence&, const NucleotideSequence&) = default;
    friend auto operator<=>(const NucleotideSequence&, const NucleotideSequence&) = default;

private:
    std::string symbols_;
};

// Each byte expands to four symbols, most significant bit pair first.
NucleotideSequence bytes_to_dna(ByteView data);

// Inverse of bytes_to_dna. Throws LengthError when size() % 4 != 0.
Bytes dna_to_bytes(const NucleotideSequence& seq);

/* Packed container "PDN1":

    Offset  Size        Field
    0       4           magic "PDN1"
    4       8           symbol count (u64, big-endian)
    12      ceil(n/4)   symbols, 2 bits each, first symbol in the high bits;
                        the final byte is zero-filled
 */
constexpr std::string_view kPackedDnaMagic = "PDN1";
constexpr std::size_t kContainerHeaderSize = 12;

Bytes pack_dna(const NucleotideSequence& seq);

// Throws FormatError on bad magic or a payload shorter than the count needs.
NucleotideSequence unpack_dna(ByteView data);

// Shared by both packed containers.
void append_u64_be(Bytes& out, std::uint64_t value);
std::uint64_t read_u64_be(ByteView data);

}  // namespace pdna
