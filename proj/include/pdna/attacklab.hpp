#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdna/dna_codec.hpp"
#include "pdna/splicing.hpp"
#include "pdna/translation.hpp"

namespace pdna {

using BigInt = boost::multiprecision::cpp_int;

// n: DNA-form length; k introns of mean length m.
struct KeyspaceParams {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double m = 0.0;
};

struct KeyspaceEstimate {
    std::uint64_t unknownLength = 0;  // n - round(k*m): symbols that survive splicing
    std::uint64_t codonExponent = 0;  // round(unknownLength / 3)
    BigInt codonChoices;              // 3^codonExponent
    BigInt placementChoices;          // 2^unknownLength
    BigInt product;
    double log2Product = 0.0;         // log2 of the exact product
    double log2Formula = 0.0;         // (n-km) * (1 + log2(3)/3), unrounded exponent
    bool nearBalance = false;         // round(k*m) == round(0.35 n)
    bool withinOneBit = false;        // |log2Product - n| <= 1
};

// Throws ParamError when k*m is negative or exceeds n.
KeyspaceEstimate keyspace_estimate(const KeyspaceParams& p);

// k*m at which log2Formula equals n exactly: n * log2(3) / (log2(3) + 3).
double balanced_intron_mass(std::uint64_t n);

struct PreimageResult {
    std::uint64_t count = 0;
    std::vector<NucleotideSequence> preimages;  // filled only when requested
};

// Product of the synonym class sizes, without enumerating.
BigInt preimage_product(const ResidueSequence& cipher, const CodonTable& table);

// Enumerates every pad-free mRNA translating to cipher. Throws LimitError when
// the class-size product exceeds limit.
PreimageResult enumerate_preimages(const ResidueSequence& cipher, const CodonTable& table,
                                   std::uint64_t limit, bool collect = false);

// Encrypts attacker-chosen plaintext under a hidden key and returns only the
// ciphertext.
using EncryptionOracle = std::function<ResidueSequence(ByteView)>;

EncryptionOracle make_local_oracle(InitialKey hiddenKey, std::string tableSpec = "standard");

struct AttackResult {
    InitialKey recovered;
    std::size_t queries = 0;
};

// Chosen-plaintext recovery of a single start code of length codeLength and a
// pattern of length frameLength. The codon table is public knowledge.
//
// Phase 1 embeds each candidate code in a homopolymer context; a ciphertext
// shorter than the context alone means a cut happened. Candidates that only
// fire through a boundary overlap with the filler are removed by re-probing
// with other fillers. Phase 2 places the code before a homopolymer frame and
// flips one frame symbol per query; an unchanged ciphertext means that symbol
// was deleted. The frame offset is chosen so a kept flip lands on the first
// base of a codon, where it always changes the residue.
//
// Throws BudgetExceeded after `budget` oracle calls, Inconclusive when the
// oracle does not behave like a key of the assumed shape.
AttackResult differential_attack(const EncryptionOracle& oracle, std::size_t codeLength,
                                 std::size_t frameLength, std::size_t budget,
                                 const CodonTable& table = CodonTable::build("standard"));

struct AttackTrial {
    std::size_t trial = 0;
    std::size_t codeLength = 0;
    std::size_t frameLength = 0;
    std::size_t queries = 0;
    bool recovered = false;
};

// Query allowance used for trials: every candidate code, two probes per frame
// position, and 16 spare.
std::size_t attack_query_bound(std::size_t codeLength, std::size_t frameLength);

// Runs the attack against `trials` hidden keys drawn with
// generate_initial_key(derive_seed(seed, trial), codeLength, frameLength).
// Failed attacks are recorded as rows, not thrown.
std::vector<AttackTrial> run_attack_trials(std::size_t codeLength, std::size_t frameLength,
                                           std::size_t trials, std::uint64_t seed);

// Columns: trial,start_len,pattern_len,queries,recovered
void write_attack_csv(std::ostream& out, const std::vector<AttackTrial>& trials);

struct BruteForceBounds {
    std::size_t maxIntrons = 0;        // try 0..maxIntrons cuts
    std::size_t removedPerIntron = 0;  // symbols removed by each cut (code + zeros)
    std::uint64_t maxStates = std::uint64_t{1} << 24;
};

struct BruteForceResult {
    std::vector<Bytes> candidates;           // sorted, unique
    std::array<std::uint64_t, 3> mrnaPerPad{}; // mRNA candidates for pad 0, 1, 2
    std::uint64_t statesExplored = 0;
};

// Enumerates codon choices, pad choices and placements of removed symbols
// (any positions, any content) and keeps every byte string that starts with
// knownPrefix. Throws LimitError when the search would exceed maxStates.
BruteForceResult brute_force_recover(const ResidueSequence& cipher, ByteView knownPrefix,
                                     const CodonTable& table, const BruteForceBounds& bounds);

}  // namespace pdna
