#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdna/dna_codec.hpp"
#include "pdna/splicing.hpp"

namespace pdna {

struct BenchRow {
    std::size_t plaintextBytes = 0;
    std::size_t plaintextBits = 0;
    std::size_t cipherResidues = 0;
    std::size_t cipherPackedBits = 0;  // 6 per residue, before byte fill
    std::size_t keyRedundantBytes = 0;
    std::size_t keyCompactBytes = 0;
    double encryptMillis = 0.0;
    double decryptMillis = 0.0;
    std::uint64_t symbolsScanned = 0;
    std::size_t removedSymbols = 0;  // start codes plus deleted frame symbols
    unsigned pad = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

// For each size: a random plaintext (seeded by (seed, size)), encrypted and
// decrypted `trials` times under generate_initial_key({seed}). Times are means
// over the trials. Throws ParamError on empty sizes or zero trials,
// ConsistencyError if a decryption does not restore the plaintext.
BenchReport run_bench(const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed = 1);

void write_bench_csv(std::ostream& out, const BenchReport& report);

struct CorpusFile {
    std::string name;
    Bytes content;
};

// Content classes after the robustness table: letters and digits only,
// printable symbols only, three mixed sets of increasing variety, every byte
// value, and the empty file.
std::vector<CorpusFile> robustness_corpus(std::uint64_t seed = 7);

struct RobustnessRow {
    std::string name;
    std::size_t distinctBytes = 0;
    bool recovered = false;
};

struct RobustnessReport {
    std::vector<RobustnessRow> rows;

    bool all_recovered() const;
};

RobustnessReport run_robustness(const std::vector<CorpusFile>& corpus, const InitialKey& key);

// Two columns: file,recovered (yes/no).
void write_robustness_csv(std::ostream& out, const RobustnessReport& report);

}  // namespace pdna
