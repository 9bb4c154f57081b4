#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "pdna/attacklab.hpp"
#include "pdna/cipher.hpp"
#include "pdna/errors.hpp"
#include "pdna/keys.hpp"
#include "test_support.hpp"

namespace pdna {
namespace {

const CodonTable& standard()
{
    static const CodonTable table = CodonTable::build("standard");
    return table;
}

BigInt power(unsigned base, unsigned exp)
{
    BigInt r = 1;
    for (unsigned i = 0; i < exp; ++i)
        r *= base;
    return r;
}

ResidueSequence residues(const std::string& text) { return text_to_residues(text); }

TEST(Keyspace, HundredSymbolsNearBalance)
{
    const KeyspaceEstimate e = keyspace_estimate({100, 1, 35.0});
    EXPECT_EQ(e.unknownLength, 65u);
    EXPECT_EQ(e.codonExponent, 22u);
    EXPECT_EQ(e.codonChoices, power(3, 22));
    EXPECT_EQ(e.placementChoices, power(2, 65));
    EXPECT_EQ(e.product, power(3, 22) * power(2, 65));
    EXPECT_NEAR(e.log2Product, 65 + 22 * std::log2(3.0), 1e-9);
    EXPECT_NEAR(e.log2Formula, 65 * (1 + std::log2(3.0) / 3), 1e-9);
    EXPECT_TRUE(e.nearBalance);
    EXPECT_TRUE(e.withinOneBit);
}

TEST(Keyspace, NoIntrons)
{
    const KeyspaceEstimate e = keyspace_estimate({30, 0, 7.0});
    EXPECT_EQ(e.unknownLength, 30u);
    EXPECT_EQ(e.product, power(3, 10) * power(2, 30));
    EXPECT_FALSE(e.nearBalance);
    EXPECT_FALSE(e.withinOneBit);
}

TEST(Keyspace, EverythingRemoved)
{
    const KeyspaceEstimate e = keyspace_estimate({40, 4, 10.0});
    EXPECT_EQ(e.unknownLength, 0u);
    EXPECT_EQ(e.product, 1);
    EXPECT_DOUBLE_EQ(e.log2Product, 0.0);
}

TEST(Keyspace, HugeLengthsStayExact)
{
    const KeyspaceEstimate e = keyspace_estimate({3000, 10, 105.0});
    EXPECT_EQ(e.unknownLength, 1950u);
    EXPECT_EQ(e.product, power(3, 650) * power(2, 1950));
    EXPECT_NEAR(e.log2Product, 1950 + 650 * std::log2(3.0), 1e-6);
}

TEST(Keyspace, ParamErrors)
{
    EXPECT_THROW(keyspace_estimate({10, 2, 6.0}), ParamError);
    EXPECT_THROW(keyspace_estimate({10, 1, -1.0}), ParamError);
}

TEST(Keyspace, BalancedMass)
{
    const double l = std::log2(3.0);
    EXPECT_NEAR(balanced_intron_mass(1000), 1000 * l / (l + 3), 1e-9);
    EXPECT_NEAR(balanced_intron_mass(1000) / 1000, 0.3457, 1e-4);
}

TEST(Preimages, Counts)
{
    EXPECT_EQ(enumerate_preimages(residues("Met"), standard(), 100).count, 1u);
    EXPECT_EQ(enumerate_preimages(residues("GlnGln"), standard(), 100).count, 4u);
    EXPECT_EQ(enumerate_preimages(residues("Leu"), standard(), 100).count, 6u);
    EXPECT_EQ(enumerate_preimages({}, standard(), 100).count, 1u);
    EXPECT_EQ(preimage_product(residues("LeuSerArgStp"), standard()), 6 * 6 * 6 * 3);
}

TEST(Preimages, MatchTextbookCode)
{
    for (const auto& [name, codons] : testing::textbook_code()) {
        const PreimageResult r = enumerate_preimages(residues(name), standard(), 10, true);
        std::set<std::string> got;
        for (const auto& p : r.preimages)
            got.insert(p.str());
        EXPECT_EQ(got, std::set<std::string>(codons.begin(), codons.end())) << name;
    }
}

TEST(Preimages, EveryPreimageTranslatesBack)
{
    const ResidueSequence cipher = residues("SerLeuArgTrp");
    const PreimageResult r = enumerate_preimages(cipher, standard(), 1000, true);
    EXPECT_EQ(r.count, 216u);
    std::set<std::string> distinct;
    for (const auto& p : r.preimages) {
        EXPECT_EQ(translate(p, standard()).residues, cipher);
        distinct.insert(p.str());
    }
    EXPECT_EQ(distinct.size(), 216u);
}

TEST(Preimages, LimitError)
{
    EXPECT_THROW(enumerate_preimages(residues("LeuLeu"), standard(), 35), LimitError);
    EXPECT_NO_THROW(enumerate_preimages(residues("LeuLeu"), standard(), 36));
}

TEST(Attack, RecoversSmallKey)
{
    InitialKey hidden;
    hidden.startCodes.emplace_back("TA");
    hidden.pattern = PatternCode("10");
    const AttackResult r = differential_attack(make_local_oracle(hidden), 2, 2, 100);
    EXPECT_EQ(r.recovered, hidden);
    EXPECT_LE(r.queries, attack_query_bound(2, 2));
}

TEST(Attack, RecoversAppendixShape)
{
    InitialKey hidden;
    hidden.startCodes.emplace_back("TAG");
    hidden.pattern = PatternCode("1010010010");
    const AttackResult r = differential_attack(make_local_oracle(hidden), 3, 10, 100);
    EXPECT_EQ(r.recovered, hidden);
}

TEST(Attack, SeededTableIsPublic)
{
    InitialKey hidden;
    hidden.startCodes.emplace_back("GGC");
    hidden.pattern = PatternCode("0110");
    const std::string spec = "seed:00000000deadbeef";
    const AttackResult r = differential_attack(make_local_oracle(hidden, spec), 3, 4, 100,
                                               CodonTable::build(spec));
    EXPECT_EQ(r.recovered, hidden);
}

TEST(Attack, BudgetExceeded)
{
    InitialKey hidden;
    hidden.startCodes.emplace_back("TTT");
    hidden.pattern = PatternCode("10");
    EXPECT_THROW(differential_attack(make_local_oracle(hidden), 3, 2, 10), BudgetExceeded);
}

TEST(Attack, WrongShapeIsInconclusive)
{
    // An oracle that never cuts anything.
    const EncryptionOracle flat = [](ByteView plain) {
        InitialKey none;
        none.startCodes.emplace_back("ACGTACGTACGTACGTACGTACGTACGTACGTACGT");
        none.pattern = PatternCode("10");
        return encrypt(plain, none).cipher;
    };
    EXPECT_THROW(differential_attack(flat, 2, 4, 1000), Inconclusive);
}

TEST(Attack, RandomKeysWithinBound)
{
    const std::vector<AttackTrial> trials = run_attack_trials(3, 10, 100, 2024);
    ASSERT_EQ(trials.size(), 100u);
    for (const auto& t : trials) {
        EXPECT_TRUE(t.recovered) << t.trial;
        EXPECT_LE(t.queries, attack_query_bound(3, 10)) << t.trial;
    }
}

TEST(Attack, VariedShapes)
{
    for (std::size_t l = 1; l <= 4; ++l)
        for (std::size_t f : {2u, 3u, 7u, 16u})
            for (const auto& t : run_attack_trials(l, f, 10, l * 100 + f))
                EXPECT_TRUE(t.recovered) << l << ' ' << f << ' ' << t.trial;
}

TEST(Attack, Csv)
{
    std::ostringstream out;
    write_attack_csv(out, {{1, 3, 10, 42, true}, {2, 3, 10, 55, false}});
    EXPECT_EQ(out.str(), "trial,start_len,pattern_len,queries,recovered\n1,3,10,42,true\n2,3,10,55,false\n");
}

TEST(BruteForce, TwoZeroBytesWithoutIntrons)
{
    InitialKey key;
    key.startCodes.emplace_back("TAG");
    key.pattern = PatternCode("10");
    const EncryptResult enc = encrypt(Bytes{0, 0}, key);
    const BruteForceResult r = brute_force_recover(enc.cipher, {}, standard(), {0, 5});
    // Lys Lys Lys minus one pad 'A': 8 symbols AA[AG]AA[AG]AA.
    EXPECT_EQ(r.mrnaPerPad, (std::array<std::uint64_t, 3>{8, 4, 4}));
    std::vector<Bytes> expected;
    for (const char* dna : {"AAAAAAAA", "AAAAAGAA", "AAGAAAAA", "AAGAAGAA"})
        expected.push_back(dna_to_bytes(NucleotideSequence(dna)));
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(r.candidates, expected);

    const Bytes prefix{0x00};
    EXPECT_EQ(brute_force_recover(enc.cipher, prefix, standard(), {0, 5}).candidates.size(), 2u);
}

TEST(BruteForce, PadCounts)
{
    const BruteForceResult r = brute_force_recover(residues("Gln"), {}, standard(), {0, 0});
    EXPECT_EQ(r.mrnaPerPad, (std::array<std::uint64_t, 3>{2, 1, 1}));
}

TEST(BruteForce, PadZeroMatchesEnumeration)
{
    const ResidueSequence cipher = residues("SerGlyLys");
    const BruteForceResult r = brute_force_recover(cipher, {}, standard(), {0, 0});
    EXPECT_EQ(r.mrnaPerPad[0], enumerate_preimages(cipher, standard(), 1000).count);
}

TEST(BruteForce, PlaintextAlwaysAmongCandidates)
{
    Rng rng(31);
    for (int iter = 0; iter < 40; ++iter) {
        InitialKey key;
        key.startCodes.push_back(testing::random_dna(rng, 1 + rng.below(2)));
        std::string bits = "10";
        for (std::size_t i = rng.below(2); i > 0; --i)
            bits.push_back(rng.below(2) ? '1' : '0');
        key.pattern = PatternCode(bits);
        const Bytes plain = testing::random_bytes(rng, 2);
        const EncryptResult enc = encrypt(plain, key);
        const std::size_t removed = key.startCodes[0].size() + key.pattern.zeros();
        const BruteForceBounds bounds{enc.key.introns.size(), removed};
        const BruteForceResult r = brute_force_recover(enc.cipher, {}, standard(), bounds);
        EXPECT_TRUE(std::binary_search(r.candidates.begin(), r.candidates.end(), plain))
            << testing::hex(plain);
    }
}

TEST(BruteForce, LimitError)
{
    const ResidueSequence cipher = residues("LeuLeuLeuLeuLeuLeuLeuLeuLeuLeu");
    EXPECT_THROW(brute_force_recover(cipher, {}, standard(), {0, 0}), LimitError);
    BruteForceBounds tight{2, 4, 1000};
    EXPECT_THROW(brute_force_recover(residues("Met"), {}, standard(), tight), LimitError);
}

}  // namespace
}  // namespace pdna
