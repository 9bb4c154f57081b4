#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdna/dna_codec.hpp"
#include "pdna/keys.hpp"
#include "pdna/metrics.hpp"
#include "pdna/translation.hpp"

namespace pdna {

struct EncryptResult {
    ResidueSequence cipher;
    SessionKey key;
    Metrics metrics;
};

// bytes -> DNA form -> splice -> translate. Throws KeyError for an invalid
// initial key, SpecError for a bad table spec.
EncryptResult encrypt(ByteView plain, const InitialKey& init, std::string_view tableSpec = "standard");

// Throws ConsistencyError (including DigitRangeError) or LengthError when the
// key does not belong to the cipher.
Bytes decrypt(const ResidueSequence& cipher, const SessionKey& key);

struct MultiRoundKey {
    std::vector<SessionKey> roundKeys;  // round order

    std::size_t rounds() const noexcept { return roundKeys.size(); }
    friend bool operator==(const MultiRoundKey&, const MultiRoundKey&) = default;
};

struct MultiRoundResult {
    ResidueSequence cipher;
    MultiRoundKey key;
    Metrics metrics;
};

// Initial key for round t (1-based): generate_initial_key with shape's
// lengths and seed derive_seed(seed, t).
InitialKey round_initial_key(std::uint64_t seed, std::size_t round, const KeyGenParams& shape);

// Round 1 encrypts plain; round t+1 encrypts the PDC1 container of round t's
// cipher. Throws ParamError when rounds == 0.
MultiRoundResult encrypt_rounds(ByteView plain, std::uint64_t seed, std::size_t rounds,
                                const KeyGenParams& shape = {},
                                std::string_view tableSpec = "standard");

// Throws FormatError when an intermediate round does not unpack.
Bytes decrypt_rounds(const ResidueSequence& cipher, const MultiRoundKey& key);

// "rounds: <R>" followed by R session-key blocks, each closed by a line of
// 20 '=' characters.
inline constexpr std::string_view kRoundTerminator = "====================";

std::string serialize_multi_round_key(const MultiRoundKey& key);
MultiRoundKey parse_multi_round_key(std::string_view text);

// Keyed digest of fixed length. The message with its 8-byte big-endian length
// appended is encrypted for `rounds` rounds under keys derived from seed; the
// final cipher payload followed by every round's session-key text is XOR-folded
// into `length` bytes. Not a secure MAC. Throws ParamError when rounds or
// length is zero.
Bytes mac(ByteView message, std::uint64_t seed, std::size_t rounds, std::size_t length,
          const KeyGenParams& shape = {});

}  // namespace pdna
