#include "pdna/dna_codec.hpp"

#include <algorithm>

#include "pdna/errors.hpp"

namespace pdna {

NucleotideSequence::NucleotideSequence(std::string symbols) : symbols_(std::move(symbols))
{
    auto bad = std::find_if(symbols_.begin(), symbols_.end(), [](char c) { return !is_nucleotide(c); });
    if (bad != symbols_.end()) {
        throw FormatError("invalid nucleotide at index " +
                          std::to_string(bad - symbols_.begin()));
    }
}

NucleotideSequence NucleotideSequence::from_text(std::string_view text)
{
    if (!text.empty() && text.back() == '\n')
        text.remove_suffix(1);
    return NucleotideSequence(std::string(text));
}

NucleotideSequence NucleotideSequence::trusted(std::string symbols)
{
    NucleotideSequence seq;
    seq.symbols_ = std::move(symbols);
    return seq;
}

NucleotideSequence bytes_to_dna(ByteView data)
{
    std::string out;
    out.reserve(data.size() * 4);
    for (std::uint8_t byte : data) {
        for (int shift = 6; shift >= 0; shift -= 2)
            out.push_back(kNucleotides[(byte >> shift) & 0x3]);
    }
    return NucleotideSequence::trusted(std::move(out));
}

Bytes dna_to_bytes(const NucleotideSequence& seq)
{
    if (seq.size() % 4 != 0) {
        throw LengthError("DNA form length " + std::to_string(seq.size()) +
                          " is not a multiple of 4");
    }
    Bytes out(seq.size() / 4);
    for (std::size_t i = 0; i < seq.size(); ++i)
        out[i / 4] = static_cast<std::uint8_t>((out[i / 4] << 2) | nucleotide_code(seq[i]));
    return out;
}

void append_u64_be(Bytes& out, std::uint64_t value)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(value >> shift));
}

std::uint64_t read_u64_be(ByteView data)
{
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < 8; ++i)
        value = (value << 8) | data[i];
    return value;
}

Bytes pack_dna(const NucleotideSequence& seq)
{
    Bytes out(kPackedDnaMagic.begin(), kPackedDnaMagic.end());
    out.reserve(kContainerHeaderSize + (seq.size() + 3) / 4);
    append_u64_be(out, seq.size());
    const std::size_t payload = out.size();
    out.resize(payload + (seq.size() + 3) / 4, 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int shift = 6 - 2 * static_cast<int>(i % 4);
        out[payload + i / 4] |= static_cast<std::uint8_t>(nucleotide_code(seq[i]) << shift);
    }
    return out;
}

NucleotideSequence unpack_dna(ByteView data)
{
    if (data.size() < kContainerHeaderSize ||
        !std::equal(kPackedDnaMagic.begin(), kPackedDnaMagic.end(), data.begin())) {
        throw FormatError("not a PDN1 container");
    }
    const std::uint64_t count = read_u64_be(data.subspan(4, 8));
    const auto payload = data.subspan(kContainerHeaderSize);
    if (count / 4 + (count % 4 != 0) > payload.size())
        throw FormatError("PDN1 payload shorter than symbol count " + std::to_string(count));

    std::string out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const int shift = 6 - 2 * static_cast<int>(i % 4);
        out.push_back(kNucleotides[(payload[i / 4] >> shift) & 0x3]);
    }
    return NucleotideSequence::trusted(std::move(out));
}

}  // namespace pdna
