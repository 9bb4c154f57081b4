#include "pdna/translation.hpp"

#include <algorithm>
#include <numeric>

#include "pdna/errors.hpp"
#include "pdna/random.hpp"

namespace pdna {

namespace {

constexpr std::array<std::string_view, kResidueCount> kNames = {
    "Ala", "Arg", "Asn", "Asp", "Cys", "Gln", "Glu", "Gly", "His", "Ile", "Leu",
    "Lys", "Met", "Phe", "Pro", "Ser", "Thr", "Trp", "Tyr", "Val", "Stp",
};

// The universal genetic code in the conventional TCAG layout, one-letter
// amino acid codes, '*' for stop.
constexpr std::string_view kStandardTcag =
    "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";

Residue residue_from_letter(char c)
{
    switch (c) {
    case 'A': return Residue::Ala;
    case 'R': return Residue::Arg;
    case 'N': return Residue::Asn;
    case 'D': return Residue::Asp;
    case 'C': return Residue::Cys;
    case 'Q': return Residue::Gln;
    case 'E': return Residue::Glu;
    case 'G': return Residue::Gly;
    case 'H': return Residue::His;
    case 'I': return Residue::Ile;
    case 'L': return Residue::Leu;
    case 'K': return Residue::Lys;
    case 'M': return Residue::Met;
    case 'F': return Residue::Phe;
    case 'P': return Residue::Pro;
    case 'S': return Residue::Ser;
    case 'T': return Residue::Thr;
    case 'W': return Residue::Trp;
    case 'Y': return Residue::Tyr;
    case 'V': return Residue::Val;
    default: return Residue::Stp;
    }
}

int tcag_rank(int acgt)
{
    // A,C,G,T -> position in T,C,A,G
    constexpr int rank[4] = {2, 1, 3, 0};
    return rank[acgt];
}

std::array<Residue, kCodonCount> standard_assignment()
{
    std::array<Residue, kCodonCount> out{};
    for (std::size_t codon = 0; codon < kCodonCount; ++codon) {
        const int b1 = static_cast<int>(codon >> 4), b2 = static_cast<int>((codon >> 2) & 3),
                  b3 = static_cast<int>(codon & 3);
        out[codon] = residue_from_letter(
            kStandardTcag[16 * tcag_rank(b1) + 4 * tcag_rank(b2) + tcag_rank(b3)]);
    }
    return out;
}

bool is_hex(char c)
{
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

std::string_view residue_name(Residue r) { return kNames[static_cast<std::size_t>(r)]; }

std::string codon_text(std::size_t codon)
{
    return {kNucleotides[(codon >> 4) & 3], kNucleotides[(codon >> 2) & 3], kNucleotides[codon & 3]};
}

std::string normalize_table_spec(std::string_view spec)
{
    if (spec == "standard")
        return std::string(spec);
    constexpr std::string_view prefix = "seed:";
    if (spec.size() == prefix.size() + 16 && spec.substr(0, prefix.size()) == prefix &&
        std::all_of(spec.begin() + prefix.size(), spec.end(), is_hex)) {
        std::string out(spec);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](char c) { return (c >= 'A' && c <= 'F') ? char(c - 'A' + 'a') : c; });
        return out;
    }
    throw SpecError("table spec must be 'standard' or 'seed:' + 16 hex digits, got '" +
                    std::string(spec) + "'");
}

CodonTable CodonTable::build(std::string_view spec)
{
    CodonTable table;
    table.spec_ = normalize_table_spec(spec);
    const auto standard = standard_assignment();

    if (table.spec_ == "standard") {
        table.residueOf_ = standard;
    } else {
        const std::uint64_t seed = std::stoull(table.spec_.substr(5), nullptr, 16);
        std::array<std::uint8_t, kCodonCount> order{};
        std::iota(order.begin(), order.end(), std::uint8_t{0});
        Rng rng(seed);
        for (std::size_t i = kCodonCount - 1; i > 0; --i)
            std::swap(order[i], order[rng.below(i + 1)]);
        // Codon order[i] takes over the residue that codon i carries in the
        // standard code; class sizes are unchanged.
        for (std::size_t i = 0; i < kCodonCount; ++i)
            table.residueOf_[order[i]] = standard[i];
    }
    table.index_classes();
    return table;
}

void CodonTable::index_classes()
{
    for (auto& c : classes_)
        c.clear();
    for (std::size_t codon = 0; codon < kCodonCount; ++codon) {
        auto& members = classes_[static_cast<std::size_t>(residueOf_[codon])];
        digitOf_[codon] = static_cast<std::uint8_t>(members.size());
        members.push_back(static_cast<std::uint8_t>(codon));
    }
}

TranslationResult translate(const NucleotideSequence& mrna, const CodonTable& table)
{
    TranslationResult result;
    result.pad = static_cast<unsigned>((3 - mrna.size() % 3) % 3);
    const std::size_t codons = (mrna.size() + result.pad) / 3;
    result.residues.reserve(codons);
    result.digits.reserve(codons);

    for (std::size_t c = 0; c < codons; ++c) {
        std::size_t codon = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const std::size_t i = 3 * c + k;
            // Padding symbols are 'A' (code 0).
            codon = codon * 4 + (i < mrna.size() ? static_cast<std::size_t>(nucleotide_code(mrna[i])) : 0);
        }
        result.residues.push_back(table.residue_of(codon));
        result.digits.push_back(table.digit_of(codon));
    }
    return result;
}

NucleotideSequence reverse_translate(const ResidueSequence& residues,
                                     const DigitString& digits,
                                     unsigned pad,
                                     const CodonTable& table)
{
    if (digits.size() != residues.size())
        throw ConsistencyError("digit count " + std::to_string(digits.size()) +
                               " does not match residue count " + std::to_string(residues.size()));
    if (pad > 2 || pad > 3 * residues.size())
        throw ConsistencyError("invalid pad " + std::to_string(pad));

    std::string out;
    out.reserve(3 * residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (static_cast<std::size_t>(residues[i]) >= kResidueCount)
            throw ConsistencyError("residue code out of range");
        const auto& members = table.synonyms(residues[i]);
        if (digits[i] >= members.size())
            throw DigitRangeError("digit " + std::to_string(digits[i]) + " at codon " +
                                  std::to_string(i) + " exceeds class size " +
                                  std::to_string(members.size()) + " of " +
                                  std::string(residue_name(residues[i])));
        out += codon_text(members[digits[i]]);
    }
    out.erase(out.end() - pad, out.end());
    return NucleotideSequence::trusted(std::move(out));
}

std::string residues_to_text(const ResidueSequence& residues)
{
    std::string out;
    out.reserve(3 * residues.size());
    for (Residue r : residues)
        out += residue_name(r);
    return out;
}

ResidueSequence text_to_residues(std::string_view text)
{
    if (!text.empty() && text.back() == '\n')
        text.remove_suffix(1);
    if (text.size() % 3 != 0)
        throw NameError("residue text length " + std::to_string(text.size()) +
                        " is not a multiple of 3");
    ResidueSequence out;
    out.reserve(text.size() / 3);
    for (std::size_t i = 0; i < text.size(); i += 3) {
        const std::string_view triple = text.substr(i, 3);
        auto it = std::find(kNames.begin(), kNames.end(), triple);
        if (it == kNames.end())
            throw NameError("unknown residue name '" + std::string(triple) + "' at offset " +
                            std::to_string(i));
        out.push_back(static_cast<Residue>(it - kNames.begin()));
    }
    return out;
}

Bytes residues_pack(const ResidueSequence& residues)
{
    Bytes out(kPackedCipherMagic.begin(), kPackedCipherMagic.end());
    append_u64_be(out, residues.size());
    const std::size_t payload = out.size();
    out.resize(payload + (6 * residues.size() + 7) / 8, 0);
    std::size_t bit = 0;
    for (Residue r : residues) {
        const unsigned code = static_cast<unsigned>(r);
        for (int b = 5; b >= 0; --b, ++bit) {
            if ((code >> b) & 1U)
                out[payload + bit / 8] |= static_cast<std::uint8_t>(0x80U >> (bit % 8));
        }
    }
    return out;
}

ResidueSequence residues_unpack(ByteView data)
{
    if (data.size() < kContainerHeaderSize ||
        !std::equal(kPackedCipherMagic.begin(), kPackedCipherMagic.end(), data.begin())) {
        throw FormatError("not a PDC1 container");
    }
    const std::uint64_t count = read_u64_be(data.subspan(4, 8));
    const auto payload = data.subspan(kContainerHeaderSize);
    if (count > payload.size() * 8 / 6 + 1 || (6 * count + 7) / 8 > payload.size())
        throw FormatError("PDC1 payload shorter than residue count " + std::to_string(count));

    ResidueSequence out;
    out.reserve(count);
    std::size_t bit = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        unsigned code = 0;
        for (int b = 0; b < 6; ++b, ++bit)
            code = (code << 1) | ((payload[bit / 8] >> (7 - bit % 8)) & 1U);
        if (code >= kResidueCount)
            throw InvalidCodeError("invalid residue code " + std::to_string(code) + " at index " +
                                   std::to_string(i));
        out.push_back(static_cast<Residue>(code));
    }
    return out;
}

}  // namespace pdna
