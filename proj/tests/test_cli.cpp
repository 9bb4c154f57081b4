#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdna/cli.hpp"
#include "pdna/dna_codec.hpp"
#include "pdna/keys.hpp"
#include "pdna/splicing.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace pdna {
namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("pdna_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args)
    {
        out_.str("");
        err_.str("");
        return cli_dispatch(args, out_, err_);
    }

    static void write(const std::string& p, const std::string& data)
    {
        std::ofstream(p, std::ios::binary) << data;
    }
    static std::string read(const std::string& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

std::string random_text(std::uint64_t seed, std::size_t n)
{
    Rng rng(seed);
    const Bytes b = testing::random_bytes(rng, n);
    return std::string(b.begin(), b.end());
}

TEST_F(Cli, KeygenEncryptDecrypt)
{
    ASSERT_EQ(run({"keygen", "--seed", "42", "-o", path("init.key")}), kExitOk);
    const std::string plain = random_text(1, 10000);
    write(path("plain.bin"), plain);
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o", path("c.txt"),
                   "--key-out", path("s.key")}),
              kExitOk) << err_.str();
    ASSERT_EQ(run({"decrypt", "-k", path("s.key"), "-i", path("c.txt"), "-o", path("back.bin")}),
              kExitOk) << err_.str();
    EXPECT_EQ(read(path("back.bin")), plain);
    EXPECT_EQ(parse_initial_key(read(path("init.key"))), generate_initial_key({42}));
}

TEST_F(Cli, PackedAndMultiRound)
{
    ASSERT_EQ(run({"keygen", "--seed", "3", "--start-len", "2", "--pattern-len", "6", "-o",
                   path("init.key")}),
              kExitOk);
    const std::string plain = random_text(2, 777);
    write(path("plain.bin"), plain);
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o", path("c.bin"),
                   "--key-out", path("s.key"), "--rounds", "3", "--format", "packed"}),
              kExitOk) << err_.str();
    EXPECT_EQ(read(path("c.bin")).rfind("PDC1", 0), 0u);
    EXPECT_EQ(read(path("s.key")).rfind("rounds: 3\n", 0), 0u);
    ASSERT_EQ(run({"decrypt", "-k", path("s.key"), "-i", path("c.bin"), "-o", path("back.bin")}),
              kExitOk) << err_.str();
    EXPECT_EQ(read(path("back.bin")), plain);
}

TEST_F(Cli, EncryptionIsDeterministic)
{
    ASSERT_EQ(run({"keygen", "--seed", "8", "-o", path("init.key")}), kExitOk);
    write(path("plain.bin"), random_text(3, 500));
    for (const char* name : {"a", "b"}) {
        ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o",
                       path(std::string(name) + ".c"), "--key-out", path(std::string(name) + ".k"),
                       "--rounds", "2"}),
                  kExitOk);
    }
    EXPECT_EQ(read(path("a.c")), read(path("b.c")));
    EXPECT_EQ(read(path("a.k")), read(path("b.k")));
}

TEST_F(Cli, EmitIntermediate)
{
    write(path("init.key"), "TAG\n1010010010\n");
    const std::string plain = random_text(4, 300);
    write(path("plain.bin"), plain);
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o", path("c.txt"),
                   "--key-out", path("s.key"), "--emit-intermediate"}),
              kExitOk);
    const NucleotideSequence dna = bytes_to_dna(Bytes(plain.begin(), plain.end()));
    EXPECT_EQ(read(path("plain.bin.dna")), dna.str() + "\n");
    const SpliceResult spliced = splice(dna, parse_initial_key(read(path("init.key"))));
    EXPECT_EQ(read(path("plain.bin.spliced")), spliced.spliced.str() + "\n");
    EXPECT_EQ(parse_session_key(read(path("s.key"))).introns, spliced.introns);
}

TEST_F(Cli, EmitIntermediateGoldenSplice)
{
    // The 71-symbol sample plus one 'A' makes whole bytes; the extra symbol
    // passes through splicing untouched.
    const std::string dna =
        "CAGCAGAACGACGACCTCGCGCCAGAACGACAGAAAGAGCTATCGCCCGATCTAGCGCCCTCAAGAGAGACA";
    const Bytes plain = dna_to_bytes(NucleotideSequence(dna));
    write(path("init.key"), "TAG\n1010010010\n");
    write(path("sample"), std::string(plain.begin(), plain.end()));
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("sample"), "-o", path("c.txt"),
                   "--key-out", path("s.key"), "--emit-intermediate"}),
              kExitOk);
    EXPECT_EQ(read(path("sample.dna")), dna + "\n");
    EXPECT_EQ(read(path("sample.spliced")),
              "CAGCAGAACGACGACCTCGCGCCAGAACGACAGAAAGAGCTATCGCCCGATCCCTAAGAGACA\n");
    const std::string key = read(path("s.key"));
    EXPECT_NE(key.find("splicing.position: 53\nsplicing.deleted: GCCCAG\n"), std::string::npos);
}

TEST_F(Cli, TruncatedKeyIsParseError)
{
    ASSERT_EQ(run({"keygen", "--seed", "1", "-o", path("init.key")}), kExitOk);
    write(path("plain.bin"), "hello, world");
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o", path("c.txt"),
                   "--key-out", path("s.key")}),
              kExitOk);
    const std::string key = read(path("s.key"));
    write(path("cut.key"), key.substr(0, key.size() / 2));
    EXPECT_EQ(run({"decrypt", "-k", path("cut.key"), "-i", path("c.txt"), "-o", path("x")}), kExitParse);
    EXPECT_FALSE(err_.str().empty());
    EXPECT_FALSE(fs::exists(path("x")));
}

TEST_F(Cli, WrongKeyIsConsistencyError)
{
    write(path("init.key"), "TAG\n10\n");
    write(path("plain.bin"), std::string(2, '\0'));
    ASSERT_EQ(run({"encrypt", "-k", path("init.key"), "-i", path("plain.bin"), "-o", path("c.txt"),
                   "--key-out", path("s.key")}),
              kExitOk);
    std::string key = read(path("s.key"));
    key.replace(key.find("mapping: 000"), 12, "mapping: 050");
    write(path("bad.key"), key);
    EXPECT_EQ(run({"decrypt", "-k", path("bad.key"), "-i", path("c.txt"), "-o", path("x")}),
              kExitConsistency);
}

TEST_F(Cli, BadCipherTextIsParseError)
{
    write(path("init.key"), "TAG\n10\n");
    write(path("s.key"), "TAG\n10\n" + std::string(20, '-') + "\n" + std::string(20, '-') + "\nmapping: 0\n");
    write(path("c.txt"), "Lyx");
    EXPECT_EQ(run({"decrypt", "-k", path("s.key"), "-i", path("c.txt"), "-o", path("x")}), kExitParse);
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({}), kExitUsage);
    EXPECT_EQ(run({"frobnicate"}), kExitUsage);
    EXPECT_EQ(run({"encrypt", "-k", path("nope")}), kExitUsage);
    EXPECT_EQ(run({"keygen", "--seed", "1", "--pattern-len", "1", "-o", path("k")}), kExitUsage);
    EXPECT_EQ(run({"encrypt", "-k", path("missing.key"), "-i", path("missing"), "-o", path("c"),
                   "--key-out", path("s")}),
              kExitUsage);
}

TEST_F(Cli, Mac)
{
    write(path("init.key"), "TAG\n1010010010\n");
    write(path("m.bin"), "message");
    ASSERT_EQ(run({"mac", "-k", path("init.key"), "-i", path("m.bin"), "--length", "16"}), kExitOk);
    const std::string first = out_.str();
    EXPECT_EQ(first.size(), 33u);
    ASSERT_EQ(run({"mac", "-k", path("init.key"), "-i", path("m.bin"), "--length", "16"}), kExitOk);
    EXPECT_EQ(out_.str(), first);
    write(path("m.bin"), "massage");
    ASSERT_EQ(run({"mac", "-k", path("init.key"), "-i", path("m.bin"), "--length", "16"}), kExitOk);
    EXPECT_NE(out_.str(), first);
}

TEST_F(Cli, Keyspace)
{
    ASSERT_EQ(run({"keyspace", "--n", "100", "--k", "1", "--m", "35"}), kExitOk);
    const std::string text = out_.str();
    EXPECT_NE(text.find("unknown_length: 65\n"), std::string::npos);
    EXPECT_NE(text.find("codon_choices: 3^22 = 31381059609\n"), std::string::npos);
    EXPECT_NE(text.find("within_one_bit_of_n: yes\n"), std::string::npos);
    EXPECT_EQ(run({"keyspace", "--n", "10", "--k", "2", "--m", "6"}), kExitUsage);
}

TEST_F(Cli, AttackCsv)
{
    ASSERT_EQ(run({"attack", "differential", "--start-len", "2", "--pattern-len", "5", "--trials", "3"}),
              kExitOk) << err_.str();
    std::istringstream in(out_.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "trial,start_len,pattern_len,queries,recovered");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_NE(line.find(",true"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 3);
}

TEST_F(Cli, BenchAndRobustness)
{
    ASSERT_EQ(run({"bench", "--sizes", "10,100", "--trials", "1", "-o", path("bench.csv")}), kExitOk)
        << err_.str();
    const std::string csv = read(path("bench.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_EQ(csv.find("\n10,80,"), csv.find('\n'));
    EXPECT_EQ(run({"bench", "--sizes", "10,x", "--trials", "1", "-o", path("b2.csv")}), kExitUsage);

    ASSERT_EQ(run({"robustness"}), kExitOk);
    EXPECT_EQ(out_.str().find(",no"), std::string::npos);
}

}  // namespace
}  // namespace pdna
