#include "pdna/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <set>

#include "pdna/cipher.hpp"
#include "pdna/errors.hpp"
#include "pdna/random.hpp"

namespace pdna {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Bytes random_bytes(std::size_t size, std::uint64_t seed)
{
    Rng rng(seed);
    Bytes out(size);
    for (auto& b : out)
        b = static_cast<std::uint8_t>(rng.next() >> 56);
    return out;
}

Bytes sample_from(std::string_view alphabet, std::size_t size, Rng& rng)
{
    Bytes out(size);
    // Cover the whole alphabet first so the distinct count is exact.
    for (std::size_t i = 0; i < size; ++i)
        out[i] = static_cast<std::uint8_t>(
            i < alphabet.size() ? alphabet[i] : alphabet[rng.below(alphabet.size())]);
    for (std::size_t i = size; i-- > 1;)
        std::swap(out[i], out[rng.below(i + 1)]);
    return out;
}

}  // namespace

BenchReport run_bench(const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed)
{
    if (sizes.empty())
        throw ParamError("bench needs at least one size");
    if (trials == 0)
        throw ParamError("bench needs at least one trial");

    KeyGenParams params;
    params.seed = seed;
    const InitialKey key = generate_initial_key(params);

    BenchReport report;
    for (std::size_t size : sizes) {
        const Bytes plain = random_bytes(size, derive_seed(seed, size));
        BenchRow row;
        EncryptResult enc;
        double encTotal = 0.0, decTotal = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            auto start = Clock::now();
            enc = encrypt(plain, key);
            encTotal += millis_since(start);

            start = Clock::now();
            const Bytes back = decrypt(enc.cipher, enc.key);
            decTotal += millis_since(start);
            if (back != plain)
                throw ConsistencyError("bench round trip failed at size " + std::to_string(size));
        }
        const KeySizeReport keySize = key_size_report(enc.key);
        row.plaintextBytes = size;
        row.plaintextBits = 8 * size;
        row.cipherResidues = enc.cipher.size();
        row.cipherPackedBits = 6 * enc.cipher.size();
        row.keyRedundantBytes = keySize.redundantBytes;
        row.keyCompactBytes = keySize.compactBytes;
        row.encryptMillis = encTotal / static_cast<double>(trials);
        row.decryptMillis = decTotal / static_cast<double>(trials);
        row.symbolsScanned = enc.metrics.symbolsScanned;
        for (const auto& intron : enc.key.introns)
            row.removedSymbols += key.startCodes[intron.codeIndex].size() + intron.deleted.size();
        row.pad = enc.key.pad;
        report.rows.push_back(row);
    }
    return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report)
{
    out << "plaintext_bytes,plaintext_bits,cipher_residues,cipher_packed_bits,"
           "key_redundant_bytes,key_compact_bytes,encrypt_ms,decrypt_ms,symbols_scanned,"
           "removed_symbols,pad\n";
    for (const auto& r : report.rows) {
        out << r.plaintextBytes << ',' << r.plaintextBits << ',' << r.cipherResidues << ','
            << r.cipherPackedBits << ',' << r.keyRedundantBytes << ',' << r.keyCompactBytes << ','
            << r.encryptMillis << ',' << r.decryptMillis << ',' << r.symbolsScanned << ','
            << r.removedSymbols << ',' << r.pad << '\n';
    }
}

std::vector<CorpusFile> robustness_corpus(std::uint64_t seed)
{
    std::string alnum, symbols, printable;
    for (int c = 0; c < 128; ++c) {
        const bool isAlnum = (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
        if (c >= 0x20 && c < 0x7F) {
            printable.push_back(static_cast<char>(c));
            if (!isAlnum)
                symbols.push_back(static_cast<char>(c));
        }
        if (isAlnum)
            alnum.push_back(static_cast<char>(c));
    }
    std::string control;
    for (int c = 0; c < 0x20; ++c)
        control.push_back(static_cast<char>(c));
    std::string high;
    for (int c = 0x80; c < 0x100; ++c)
        high.push_back(static_cast<char>(c));

    Rng rng(seed);
    std::vector<CorpusFile> corpus;
    corpus.push_back({"alphanumeric", sample_from(alnum, 4096, rng)});
    corpus.push_back({"non_alphanumeric", sample_from(symbols + control, 4096, rng)});
    corpus.push_back({"mixed_printable", sample_from(printable, 4096, rng)});
    corpus.push_back({"mixed_with_control", sample_from(printable + control, 4096, rng)});
    corpus.push_back({"mixed_with_high_bytes", sample_from(printable + control + high, 8192, rng)});
    Bytes every(256);
    for (int i = 0; i < 256; ++i)
        every[i] = static_cast<std::uint8_t>(i);
    corpus.push_back({"all_byte_values", std::move(every)});
    corpus.push_back({"empty", {}});
    return corpus;
}

bool RobustnessReport::all_recovered() const
{
    return std::all_of(rows.begin(), rows.end(), [](const RobustnessRow& r) { return r.recovered; });
}

RobustnessReport run_robustness(const std::vector<CorpusFile>& corpus, const InitialKey& key)
{
    RobustnessReport report;
    for (const auto& file : corpus) {
        RobustnessRow row;
        row.name = file.name;
        row.distinctBytes = std::set<std::uint8_t>(file.content.begin(), file.content.end()).size();
        try {
            const EncryptResult enc = encrypt(file.content, key);
            // Through the serialized key and text cipher, as a receiver sees them.
            const SessionKey received = parse_session_key(serialize_session_key(enc.key));
            const ResidueSequence cipher = text_to_residues(residues_to_text(enc.cipher));
            row.recovered = decrypt(cipher, received) == file.content;
        } catch (const Error&) {
            row.recovered = false;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_robustness_csv(std::ostream& out, const RobustnessReport& report)
{
    out << "file,recovered\n";
    for (const auto& r : report.rows)
        out << r.name << ',' << (r.recovered ? "yes" : "no") << '\n';
}

}  // namespace pdna
