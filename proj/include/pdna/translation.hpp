#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdna/dna_codec.hpp"

namespace pdna {

// 20 amino acids in alphabetical order of their three-letter names, plus Stp
// for the three stop codons so that translation is total.
enum class Residue : std::uint8_t {
    Ala, Arg, Asn, Asp, Cys, Gln, Glu, Gly, His, Ile,
    Leu, Lys, Met, Phe, Pro, Ser, Thr, Trp, Tyr, Val, Stp,
};

constexpr std::size_t kResidueCount = 21;
constexpr std::size_t kCodonCount = 64;
constexpr std::size_t kMaxClassSize = 6;

using ResidueSequence = std::vector<Residue>;

// One digit per codon: the codon's index inside its synonym class.
using DigitString = std::vector<std::uint8_t>;

std::string_view residue_name(Residue r);

// Codon index = 16*first + 4*second + third with A<C<G<T, so ascending index
// is lexicographic codon order.
std::string codon_text(std::size_t codon);

class CodonTable {
public:
    // Parses "standard" or "seed:" followed by 16 hex digits. Throws SpecError.
    // A seeded table shuffles which codons carry which residue, keeping every
    // residue's class size, so digits stay within 0..5.
    static CodonTable build(std::string_view spec);

    const std::string& spec() const noexcept { return spec_; }
    Residue residue_of(std::size_t codon) const { return residueOf_[codon]; }
    std::uint8_t digit_of(std::size_t codon) const { return digitOf_[codon]; }

    // Codons of r, sorted ascending.
    const std::vector<std::uint8_t>& synonyms(Residue r) const
    {
        return classes_[static_cast<std::size_t>(r)];
    }
    std::size_t class_size(Residue r) const { return synonyms(r).size(); }

private:
    CodonTable() = default;
    void index_classes();

    std::string spec_;
    std::array<Residue, kCodonCount> residueOf_{};
    std::array<std::uint8_t, kCodonCount> digitOf_{};
    std::array<std::vector<std::uint8_t>, kResidueCount> classes_;
};

inline CodonTable build_codon_table(std::string_view spec) { return CodonTable::build(spec); }

// Canonicalizes a table spec (lowercases the hex). Throws SpecError.
std::string normalize_table_spec(std::string_view spec);

struct TranslationResult {
    ResidueSequence residues;
    DigitString digits;
    unsigned pad = 0;  // trailing 'A' symbols added to reach a whole codon
};

TranslationResult translate(const NucleotideSequence& mrna, const CodonTable& table);

// Throws DigitRangeError for a digit outside its class, ConsistencyError for
// mismatched lengths or a pad larger than the sequence.
NucleotideSequence reverse_translate(const ResidueSequence& residues,
                                     const DigitString& digits,
                                     unsigned pad,
                                     const CodonTable& table);

// Concatenated three-letter names, no separators.
std::string residues_to_text(const ResidueSequence& residues);

// Accepts an optional trailing line feed. Throws NameError.
ResidueSequence text_to_residues(std::string_view text);

/* Packed container "PDC1":

    Offset  Size          Field
    0       4             magic "PDC1"
    4       8             residue count (u64, big-endian)
    12      ceil(6n/8)    residue codes, 6 bits each, first residue in the
                          high bits; the final byte is zero-filled
 */
constexpr std::string_view kPackedCipherMagic = "PDC1";

Bytes residues_pack(const ResidueSequence& residues);

// Throws FormatError (bad magic, short payload) or InvalidCodeError (code >= 21).
ResidueSequence residues_unpack(ByteView data);

}  // namespace pdna
