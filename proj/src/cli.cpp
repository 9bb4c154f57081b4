#include "pdna/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pdna/attacklab.hpp"
#include "pdna/bench.hpp"
#include "pdna/cipher.hpp"
#include "pdna/errors.hpp"
#include "pdna/keys.hpp"

namespace pdna {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size())))
        throw IoError("cannot write '" + path + "'");
}

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
std::string to_string(const Bytes& b) { return std::string(b.begin(), b.end()); }

// FNV-1a over the canonical initial-key text: the default multi-round and MAC
// seed, so an initial-key file alone determines the derived round keys.
std::uint64_t key_fingerprint(const InitialKey& key)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : serialize_initial_key(key)) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

KeyGenParams shape_of(const InitialKey& key)
{
    KeyGenParams shape;
    shape.startCodeLength = key.startCodes.front().size();
    shape.patternLength = key.pattern.frame_length();
    shape.codeCount = key.startCodes.size();
    return shape;
}

std::vector<std::size_t> parse_sizes(const std::string& csv)
{
    std::vector<std::size_t> sizes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        std::size_t value = 0;
        try {
            value = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (item.empty() || pos != item.size())
            throw ParamError("bad size '" + item + "' in --sizes");
        sizes.push_back(value);
    }
    return sizes;
}

std::string format_cipher(const ResidueSequence& cipher, const std::string& format)
{
    if (format == "packed")
        return to_string(residues_pack(cipher));
    return residues_to_text(cipher) + '\n';
}

ResidueSequence read_cipher(const std::string& data, const std::string& format)
{
    const bool packed = format == "packed" ||
                        (format == "auto" && data.compare(0, kPackedCipherMagic.size(), kPackedCipherMagic) == 0);
    if (packed)
        return residues_unpack(to_bytes(data));
    return text_to_residues(data);
}

struct Options {
    std::uint64_t seed = 0;
    std::size_t startLen = 3;
    std::size_t patternLen = 10;
    std::size_t codes = 1;
    std::string output;
    std::string keyPath;
    std::string input;
    std::string keyOut;
    std::size_t rounds = 1;
    std::string table = "standard";
    std::string format = "text";
    bool emitIntermediate = false;
    std::size_t macLength = 32;
    std::size_t trials = 1;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double m = 0.0;
    std::string sizes;
    bool seedGiven = false;
};

int run_keygen(const Options& o)
{
    KeyGenParams params{o.seed, o.startLen, o.patternLen, o.codes};
    write_file(o.output, serialize_initial_key(generate_initial_key(params)));
    return kExitOk;
}

int run_encrypt(const Options& o, const CLI::App& cmd)
{
    const InitialKey init = parse_initial_key(read_file(o.keyPath));
    const std::string plain = read_file(o.input);

    if (o.rounds <= 1) {
        const EncryptResult enc = encrypt(to_bytes(plain), init, o.table);
        if (o.emitIntermediate) {
            const NucleotideSequence dna = bytes_to_dna(to_bytes(plain));
            write_file(o.input + ".dna", dna.str() + '\n');
            write_file(o.input + ".spliced", splice(dna, init).spliced.str() + '\n');
        }
        write_file(o.output, format_cipher(enc.cipher, o.format));
        write_file(o.keyOut, serialize_session_key(enc.key));
        return kExitOk;
    }

    const std::uint64_t seed = cmd.count("--seed") ? o.seed : key_fingerprint(init);
    const MultiRoundResult enc = encrypt_rounds(to_bytes(plain), seed, o.rounds, shape_of(init), o.table);
    if (o.emitIntermediate) {
        const InitialKey first = enc.key.roundKeys.front().initialKey;
        const NucleotideSequence dna = bytes_to_dna(to_bytes(plain));
        write_file(o.input + ".dna", dna.str() + '\n');
        write_file(o.input + ".spliced", splice(dna, first).spliced.str() + '\n');
    }
    write_file(o.output, format_cipher(enc.cipher, o.format));
    write_file(o.keyOut, serialize_multi_round_key(enc.key));
    return kExitOk;
}

int run_decrypt(const Options& o)
{
    const std::string keyText = read_file(o.keyPath);
    const ResidueSequence cipher = read_cipher(read_file(o.input), o.format);
    Bytes plain;
    if (keyText.compare(0, 7, "rounds:") == 0)
        plain = decrypt_rounds(cipher, parse_multi_round_key(keyText));
    else
        plain = decrypt(cipher, parse_session_key(keyText));
    write_file(o.output, to_string(plain));
    return kExitOk;
}

int run_mac(const Options& o, std::ostream& out)
{
    const InitialKey init = parse_initial_key(read_file(o.keyPath));
    const Bytes digest = mac(to_bytes(read_file(o.input)), key_fingerprint(init), o.rounds,
                             o.macLength, shape_of(init));
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (auto b : digest)
        hex << std::setw(2) << static_cast<unsigned>(b);
    out << hex.str() << '\n';
    return kExitOk;
}

int run_attack(const Options& o, std::ostream& out)
{
    write_attack_csv(out, run_attack_trials(o.startLen, o.patternLen, o.trials, o.seed));
    return kExitOk;
}

int run_keyspace(const Options& o, std::ostream& out)
{
    const KeyspaceEstimate e = keyspace_estimate({o.n, o.k, o.m});
    out << "unknown_length: " << e.unknownLength << '\n'
        << "codon_choices: 3^" << e.codonExponent << " = " << e.codonChoices << '\n'
        << "placement_choices: 2^" << e.unknownLength << " = " << e.placementChoices << '\n'
        << "product: " << e.product << '\n'
        << std::setprecision(6) << std::fixed
        << "log2_product: " << e.log2Product << '\n'
        << "log2_formula: " << e.log2Formula << '\n'
        << "balanced_km: " << balanced_intron_mass(o.n) << '\n'
        << "within_one_bit_of_n: " << (e.withinOneBit ? "yes" : "no") << '\n';
    return kExitOk;
}

int run_bench_cmd(const Options& o)
{
    std::ostringstream csv;
    write_bench_csv(csv, run_bench(parse_sizes(o.sizes), o.trials, o.seedGiven ? o.seed : 1));
    write_file(o.output, csv.str());
    return kExitOk;
}

int run_robustness_cmd(const Options& o, std::ostream& out)
{
    KeyGenParams params;
    params.seed = o.seed;
    const RobustnessReport report = run_robustness(robustness_corpus(), generate_initial_key(params));
    std::ostringstream csv;
    write_robustness_csv(csv, report);
    if (o.output.empty())
        out << csv.str();
    else
        write_file(o.output, csv.str());
    return report.all_recovered() ? kExitOk : kExitConsistency;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Pseudo-DNA cipher: encryption, key files and an attack lab", "pdna"};
    app.require_subcommand(1);

    const auto formats = CLI::IsMember({"text", "packed"});

    auto* keygen = app.add_subcommand("keygen", "Generate an initial key file");
    keygen->add_option("--seed", o.seed, "Generator seed")->required();
    keygen->add_option("--start-len", o.startLen, "Start code length")->capture_default_str();
    keygen->add_option("--pattern-len", o.patternLen, "Pattern code length")->capture_default_str();
    keygen->add_option("--codes", o.codes, "Number of start codes")->capture_default_str();
    keygen->add_option("-o,--output", o.output, "Initial key file")->required();

    auto* enc = app.add_subcommand("encrypt", "Encrypt a file");
    enc->add_option("-k,--key", o.keyPath, "Initial key file")->required();
    enc->add_option("-i,--input", o.input, "Plaintext file")->required();
    enc->add_option("-o,--output", o.output, "Ciphertext file (public channel)")->required();
    enc->add_option("--key-out", o.keyOut, "Session key file (secure channel)")->required();
    enc->add_option("--rounds", o.rounds, "Encryption rounds")->capture_default_str()->check(CLI::PositiveNumber);
    enc->add_option("--seed", o.seed, "Round-key seed (default: derived from the initial key)");
    enc->add_option("--table", o.table, "Codon table: standard | seed:<16 hex>")->capture_default_str();
    enc->add_option("--format", o.format, "Ciphertext format")->capture_default_str()->check(formats);
    enc->add_flag("--emit-intermediate", o.emitIntermediate, "Also write IN.dna and IN.spliced");

    auto* dec = app.add_subcommand("decrypt", "Decrypt a file");
    dec->add_option("-k,--key", o.keyPath, "Session key file")->required();
    dec->add_option("-i,--input", o.input, "Ciphertext file")->required();
    dec->add_option("-o,--output", o.output, "Recovered plaintext")->required();
    o.format = "text";
    std::string decFormat = "auto";
    dec->add_option("--format", decFormat, "Ciphertext format")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "text", "packed"}));

    auto* macCmd = app.add_subcommand("mac", "Print a keyed digest of a file");
    macCmd->add_option("-k,--key", o.keyPath, "Initial key file")->required();
    macCmd->add_option("-i,--input", o.input, "Message file")->required();
    std::size_t macRounds = 8;
    macCmd->add_option("--rounds", macRounds, "Rounds")->capture_default_str()->check(CLI::PositiveNumber);
    macCmd->add_option("--length", o.macLength, "Digest bytes")->capture_default_str()->check(CLI::PositiveNumber);

    auto* attack = app.add_subcommand("attack", "Run an attack experiment");
    attack->require_subcommand(1);
    auto* diff = attack->add_subcommand("differential", "Chosen-plaintext key recovery trials (CSV)");
    diff->add_option("--start-len", o.startLen, "Hidden start code length")->required()->check(CLI::Range(1, 6));
    diff->add_option("--pattern-len", o.patternLen, "Hidden pattern length")->required()->check(CLI::Range(2, 64));
    diff->add_option("--trials", o.trials, "Number of hidden keys")->required();
    diff->add_option("--seed", o.seed, "Seed for hidden keys")->capture_default_str();

    auto* ks = app.add_subcommand("keyspace", "Evaluate brute-force keyspace formulas");
    ks->add_option("--n", o.n, "DNA-form length")->required();
    ks->add_option("--k", o.k, "Intron count")->required();
    ks->add_option("--m", o.m, "Mean intron length")->required();

    auto* bench = app.add_subcommand("bench", "Size and timing report (CSV)");
    bench->add_option("--sizes", o.sizes, "Comma-separated plaintext sizes in bytes")->required();
    bench->add_option("--trials", o.trials, "Runs per size")->required()->check(CLI::PositiveNumber);
    bench->add_option("-o,--output", o.output, "Report file")->required();
    bench->add_option("--seed", o.seed, "Plaintext and key seed");

    auto* robust = app.add_subcommand("robustness", "Round-trip a built-in corpus (CSV)");
    robust->add_option("-o,--output", o.output, "Report file (default: stdout)");
    robust->add_option("--seed", o.seed, "Key seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (keygen->parsed())
            return run_keygen(o);
        if (enc->parsed())
            return run_encrypt(o, *enc);
        if (dec->parsed()) {
            o.format = decFormat;
            return run_decrypt(o);
        }
        if (macCmd->parsed()) {
            o.rounds = macRounds;
            return run_mac(o, out);
        }
        if (diff->parsed())
            return run_attack(o, out);
        if (ks->parsed())
            return run_keyspace(o, out);
        if (bench->parsed()) {
            o.seedGiven = bench->count("--seed") > 0;
            return run_bench_cmd(o);
        }
        if (robust->parsed())
            return run_robustness_cmd(o, out);
    } catch (const ParseError& e) {
        err << "key parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kExitParse;
    } catch (const NameError& e) {
        err << "cipher parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const SpecError& e) {
        err << "table spec error: " << e.what() << '\n';
        return kExitParse;
    } catch (const KeyError& e) {
        err << "key error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ConsistencyError& e) {
        err << "decryption failed: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const LengthError& e) {
        err << "decryption failed: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "usage error: no command\n";
    return kExitUsage;
}

}  // namespace pdna
