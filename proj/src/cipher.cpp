#include "pdna/cipher.hpp"

#include <algorithm>

#include "pdna/errors.hpp"
#include "pdna/random.hpp"
#include "pdna/splicing.hpp"

namespace pdna {

EncryptResult encrypt(ByteView plain, const InitialKey& init, std::string_view tableSpec)
{
    const CodonTable table = CodonTable::build(tableSpec);
    SpliceResult spliced = splice(bytes_to_dna(plain), init);
    TranslationResult translated = translate(spliced.spliced, table);

    EncryptResult result;
    result.cipher = std::move(translated.residues);
    result.key.initialKey = init;
    result.key.introns = std::move(spliced.introns);
    result.key.pad = translated.pad;
    result.key.tableSpec = table.spec();
    result.key.digits = std::move(translated.digits);
    result.metrics = spliced.metrics;
    result.metrics.codonsTranslated = result.cipher.size();
    return result;
}

Bytes decrypt(const ResidueSequence& cipher, const SessionKey& key)
{
    if (key.digits.size() != cipher.size())
        throw ConsistencyError("key holds " + std::to_string(key.digits.size()) +
                               " digits for a cipher of " + std::to_string(cipher.size()) +
                               " residues");
    const CodonTable table = CodonTable::build(key.tableSpec);
    const NucleotideSequence mrna = reverse_translate(cipher, key.digits, key.pad, table);
    return dna_to_bytes(reverse_splice(mrna, key.introns, key.initialKey));
}

InitialKey round_initial_key(std::uint64_t seed, std::size_t round, const KeyGenParams& shape)
{
    KeyGenParams params = shape;
    params.seed = derive_seed(seed, round);
    return generate_initial_key(params);
}

MultiRoundResult encrypt_rounds(ByteView plain, std::uint64_t seed, std::size_t rounds,
                                const KeyGenParams& shape, std::string_view tableSpec)
{
    if (rounds == 0)
        throw ParamError("at least one round is required");

    MultiRoundResult result;
    Bytes carried;
    ByteView input = plain;
    for (std::size_t t = 1; t <= rounds; ++t) {
        EncryptResult round = encrypt(input, round_initial_key(seed, t, shape), tableSpec);
        result.metrics += round.metrics;
        result.key.roundKeys.push_back(std::move(round.key));
        if (t == rounds) {
            result.cipher = std::move(round.cipher);
        } else {
            carried = residues_pack(round.cipher);
            input = carried;
        }
    }
    return result;
}

Bytes decrypt_rounds(const ResidueSequence& cipher, const MultiRoundKey& key)
{
    if (key.rounds() == 0)
        throw ConsistencyError("multi-round key holds no rounds");

    ResidueSequence current = cipher;
    Bytes plain;
    for (std::size_t t = key.rounds(); t-- > 0;) {
        plain = decrypt(current, key.roundKeys[t]);
        if (t == 0)
            break;
        current = residues_unpack(plain);
        if (plain.size() != kContainerHeaderSize + (6 * current.size() + 7) / 8)
            throw FormatError("round " + std::to_string(t) + " plaintext has trailing bytes");
    }
    return plain;
}

std::string serialize_multi_round_key(const MultiRoundKey& key)
{
    std::string out = "rounds: " + std::to_string(key.rounds()) + '\n';
    for (const auto& round : key.roundKeys) {
        out += serialize_session_key(round);
        out += kRoundTerminator;
        out += '\n';
    }
    return out;
}

MultiRoundKey parse_multi_round_key(std::string_view text)
{
    constexpr std::string_view header = "rounds: ";
    const std::size_t eol = text.find('\n');
    const std::string_view first = text.substr(0, eol);
    if (first.substr(0, header.size()) != header)
        throw ParseError(1, "expected 'rounds: <R>'");
    std::size_t rounds = 0;
    const std::string_view count = first.substr(header.size());
    if (count.empty() || count.size() > 6 ||
        count.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError(1, "malformed round count");
    rounds = std::stoul(std::string(count));
    if (rounds == 0)
        throw ParseError(1, "round count must be at least 1");

    MultiRoundKey key;
    std::size_t pos = eol == std::string_view::npos ? text.size() : eol + 1;
    std::size_t line = 2;
    const std::string terminator = std::string(kRoundTerminator) + '\n';
    while (pos < text.size()) {
        // Terminator must start a line.
        std::size_t end = text.find(terminator, pos);
        while (end != std::string_view::npos && end != pos && text[end - 1] != '\n')
            end = text.find(terminator, end + 1);
        const bool finalNoLf = end == std::string_view::npos &&
                               text.size() >= kRoundTerminator.size() &&
                               text.substr(text.size() - kRoundTerminator.size()) == kRoundTerminator;
        if (end == std::string_view::npos && !finalNoLf)
            throw ParseError(line, "round block is not terminated");
        if (end == std::string_view::npos)
            end = text.size() - kRoundTerminator.size();
        const std::string_view block = text.substr(pos, end - pos);
        try {
            key.roundKeys.push_back(parse_session_key(block));
        } catch (const ParseError& e) {
            const std::size_t inner = e.line();
            throw ParseError(inner == 0 ? 0 : line + inner - 1,
                             "round " + std::to_string(key.rounds() + 1) + ": " + e.what());
        }
        line += static_cast<std::size_t>(std::count(block.begin(), block.end(), '\n')) + 1;
        pos = std::min(text.size(), end + terminator.size());
    }
    if (key.rounds() != rounds)
        throw ParseError(0, "expected " + std::to_string(rounds) + " round keys, found " +
                                std::to_string(key.rounds()));
    return key;
}

Bytes mac(ByteView message, std::uint64_t seed, std::size_t rounds, std::size_t length,
          const KeyGenParams& shape)
{
    if (rounds == 0)
        throw ParamError("MAC needs at least one round");
    if (length == 0)
        throw ParamError("MAC length must be at least 1 byte");

    Bytes input(message.begin(), message.end());
    append_u64_be(input, message.size());
    const MultiRoundResult enc = encrypt_rounds(input, seed, rounds, shape);

    // Digest input: the final cipher payload, then each round's session key.
    // Flips inside deleted frame symbols or between synonymous codons reach
    // only the key, so the key text has to be folded in as well.
    Bytes absorbed = residues_pack(enc.cipher);
    absorbed.erase(absorbed.begin(), absorbed.begin() + kContainerHeaderSize);
    for (const auto& roundKey : enc.key.roundKeys) {
        const std::string text = serialize_session_key(roundKey);
        absorbed.insert(absorbed.end(), text.begin(), text.end());
    }

    Bytes digest(length, 0);
    for (std::size_t i = 0; i < absorbed.size(); ++i)
        digest[i % length] ^= absorbed[i];
    return digest;
}

}  // namespace pdna
