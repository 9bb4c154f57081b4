#include "pdna/attacklab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "pdna/cipher.hpp"
#include "pdna/errors.hpp"
#include "pdna/keys.hpp"
#include "pdna/random.hpp"

namespace pdna {

// ---------------------------------------------------------------- keyspace

KeyspaceEstimate keyspace_estimate(const KeyspaceParams& p)
{
    const double km = static_cast<double>(p.k) * p.m;
    if (!(p.m >= 0.0) || km > static_cast<double>(p.n))
        throw ParamError("keyspace parameters need 0 <= k*m <= n");

    KeyspaceEstimate e;
    const auto removed = static_cast<std::uint64_t>(std::llround(km));
    e.unknownLength = p.n - std::min(removed, p.n);
    // u/3 never lands on .5, so (u+1)/3 is round-to-nearest.
    e.codonExponent = (e.unknownLength + 1) / 3;
    e.codonChoices = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(e.codonExponent));
    e.placementChoices = BigInt(1) << static_cast<unsigned>(e.unknownLength);
    e.product = e.codonChoices * e.placementChoices;

    const double log2of3 = std::log2(3.0);
    e.log2Product = static_cast<double>(e.codonExponent) * log2of3 + static_cast<double>(e.unknownLength);
    e.log2Formula = static_cast<double>(e.unknownLength) * (1.0 + log2of3 / 3.0);
    e.nearBalance = removed == static_cast<std::uint64_t>(std::llround(0.35 * static_cast<double>(p.n)));
    e.withinOneBit = std::abs(e.log2Product - static_cast<double>(p.n)) <= 1.0;
    return e;
}

double balanced_intron_mass(std::uint64_t n)
{
    const double l = std::log2(3.0);
    return static_cast<double>(n) * l / (l + 3.0);
}

// ---------------------------------------------------------------- preimages

BigInt preimage_product(const ResidueSequence& cipher, const CodonTable& table)
{
    BigInt product = 1;
    for (Residue r : cipher)
        product *= table.class_size(r);
    return product;
}

PreimageResult enumerate_preimages(const ResidueSequence& cipher, const CodonTable& table,
                                   std::uint64_t limit, bool collect)
{
    if (preimage_product(cipher, table) > limit)
        throw LimitError("preimage count exceeds limit " + std::to_string(limit));

    PreimageResult result;
    std::vector<std::size_t> choice(cipher.size(), 0);
    for (;;) {
        ++result.count;
        if (collect) {
            std::string mrna;
            mrna.reserve(3 * cipher.size());
            for (std::size_t i = 0; i < cipher.size(); ++i)
                mrna += codon_text(table.synonyms(cipher[i])[choice[i]]);
            result.preimages.push_back(NucleotideSequence::trusted(std::move(mrna)));
        }
        // Odometer over class members, last codon fastest.
        std::size_t i = cipher.size();
        while (i > 0) {
            --i;
            if (++choice[i] < table.class_size(cipher[i]))
                break;
            choice[i] = 0;
            if (i == 0)
                return result;
        }
        if (cipher.empty())
            return result;
    }
}

// ---------------------------------------------------------------- oracle

EncryptionOracle make_local_oracle(InitialKey hiddenKey, std::string tableSpec)
{
    return [key = std::move(hiddenKey), spec = std::move(tableSpec)](ByteView plain) {
        return encrypt(plain, key, spec).cipher;
    };
}

// ---------------------------------------------------------------- differential attack

namespace {

class QueryCounter {
public:
    QueryCounter(const EncryptionOracle& oracle, std::size_t budget) : oracle_(oracle), budget_(budget) {}

    // dna.size() must be a multiple of 4.
    ResidueSequence operator()(const std::string& dna)
    {
        if (queries_ == budget_)
            throw BudgetExceeded("oracle budget of " + std::to_string(budget_) + " queries exhausted");
        ++queries_;
        const Bytes plain = dna_to_bytes(NucleotideSequence::trusted(dna));
        return oracle_(plain);
    }

    std::size_t queries() const { return queries_; }

private:
    const EncryptionOracle& oracle_;
    std::size_t budget_;
    std::size_t queries_ = 0;
};

// Whole bytes, and one symbol past whole codons: the uncut probe ends in a
// padded codon, so removing even a single symbol drops a residue.
void fill_to_probe_length(std::string& dna, char filler)
{
    while (dna.size() % 12 != 4)
        dna.push_back(filler);
}

std::size_t uncut_residues(const std::string& probe) { return (probe.size() + 2) / 3; }

std::string candidate_code(std::size_t index, std::size_t length)
{
    std::string code(length, 'A');
    for (std::size_t i = length; i-- > 0; index >>= 2)
        code[i] = kNucleotides[index & 3];
    return code;
}

std::string code_probe(const std::string& code, std::size_t frameLength, char filler)
{
    std::string dna(code.size(), filler);
    dna += code;
    dna.append(frameLength + code.size(), filler);
    fill_to_probe_length(dna, filler);
    return dna;
}

std::size_t code_index(char c) { return static_cast<std::size_t>(nucleotide_code(c)); }

}  // namespace

AttackResult differential_attack(const EncryptionOracle& oracle, std::size_t codeLength,
                                 std::size_t frameLength, std::size_t budget, const CodonTable& table)
{
    if (codeLength < 1 || codeLength > 8)
        throw ParamError("start code length must be in 1..8");
    if (frameLength < 2)
        throw ParamError("pattern length must be at least 2");

    QueryCounter query(oracle, budget);

    // Phase 1: start code. The all-'A' candidate probe is also the context
    // baseline: it can only be cut when the code itself is all 'A'.
    const std::size_t candidates = std::size_t{1} << (2 * codeLength);
    const std::size_t uncut = uncut_residues(code_probe(std::string(codeLength, 'A'), frameLength, 'A'));
    std::vector<std::string> positive;
    for (std::size_t c = 0; c < candidates; ++c) {
        std::string cand = candidate_code(c, codeLength);
        if (query(code_probe(cand, frameLength, 'A')).size() < uncut) {
            positive.push_back(std::move(cand));
            if (c == 0)
                break;
        }
    }
    // Whether a probe is cut depends only on whether it contains the code, so
    // a candidate is consistent only if it would have fired on exactly the
    // observed positives. This usually settles the code without queries.
    if (positive.size() > 1 && positive.size() * candidates <= (std::size_t{1} << 26)) {
        std::vector<std::string> probes;
        for (std::size_t c = 0; c < candidates; ++c)
            probes.push_back(code_probe(candidate_code(c, codeLength), frameLength, 'A'));
        std::vector<std::string> consistent;
        for (const auto& x : positive) {
            std::size_t fired = 0;
            bool same = true;
            for (std::size_t c = 0; c < candidates && same; ++c) {
                if (probes[c].find(x) == std::string::npos)
                    continue;
                same = fired < positive.size() && positive[fired] == probes[c].substr(codeLength, codeLength);
                ++fired;
            }
            if (same && fired == positive.size())
                consistent.push_back(x);
        }
        positive = std::move(consistent);
    }
    // A false positive needs the true code to start or end with the filler,
    // so some other filler clears it. The true code fires under every filler:
    // once all others are cleared the last one stands without a query.
    for (char filler : {'C', 'G', 'T'}) {
        if (positive.size() <= 1)
            break;
        std::vector<std::string> kept;
        for (std::size_t i = 0; i < positive.size(); ++i) {
            if (i + 1 == positive.size() && kept.empty()) {
                kept.push_back(positive[i]);
                break;
            }
            const std::string probe = code_probe(positive[i], frameLength, filler);
            if (query(probe).size() < uncut_residues(probe))
                kept.push_back(positive[i]);
        }
        positive = std::move(kept);
    }
    if (positive.size() != 1)
        throw Inconclusive("start code probes left " + std::to_string(positive.size()) + " candidates");
    const std::string code = positive.front();

    // Phase 2: pattern. The filler z must differ from the code's first symbol
    // so that no window before the code matches. The flip w must change the
    // residue of a zzz codon; when it does so at every codon position one
    // reference probe serves all frame positions, otherwise the lead is
    // shifted so each kept flip lands on a codon's first base.
    const auto flips_residue = [&](std::size_t zi, std::size_t wi, std::size_t at) {
        std::size_t codon = 0;
        for (std::size_t k = 0; k < 3; ++k)
            codon = codon * 4 + (k == at ? wi : zi);
        return table.residue_of(codon) != table.residue_of(21 * zi);
    };
    char z = 0, w = 0;
    bool anyOffset = false;
    for (int pass = 0; pass < 2 && !z; ++pass) {
        for (char zc : kNucleotides) {
            if (zc == code.front() || z)
                continue;
            for (char wc : kNucleotides) {
                const std::size_t zi = code_index(zc), wi = code_index(wc);
                if (wc == zc || !flips_residue(zi, wi, 0))
                    continue;
                if (pass == 0 && !(flips_residue(zi, wi, 1) && flips_residue(zi, wi, 2)))
                    continue;
                z = zc;
                w = wc;
                anyOffset = pass == 0;
                break;
            }
        }
    }
    if (!z)
        throw Inconclusive("codon table offers no residue-changing flip");

    auto frame_probe = [&](std::size_t lead, std::size_t flip) {
        std::string dna(lead, z);
        dna += code;
        const std::size_t frameStart = dna.size();
        dna.append(frameLength + 2, z);
        fill_to_probe_length(dna, z);
        if (flip < frameLength)
            dna[frameStart + flip] = w;
        return dna;
    };

    std::map<std::size_t, ResidueSequence> references;
    std::string bits;
    std::size_t keptSoFar = 0;
    for (std::size_t j = 0; j < frameLength; ++j) {
        // Kept symbol j sits at spliced index lead + keptSoFar.
        const std::size_t lead = anyOffset ? 2 : 3 + (3 - keptSoFar % 3) % 3;
        auto ref = references.find(lead);
        if (ref == references.end()) {
            const std::string probe = frame_probe(lead, frameLength);
            ref = references.emplace(lead, query(probe)).first;
            if (ref->second.size() >= uncut_residues(probe))
                throw Inconclusive("recovered start code " + code + " does not cut");
        }
        const bool kept = query(frame_probe(lead, j)) != ref->second;
        bits.push_back(kept ? '1' : '0');
        keptSoFar += kept;
    }
    if (keptSoFar == 0 || keptSoFar == frameLength)
        throw Inconclusive("recovered pattern " + bits + " is degenerate");

    AttackResult result;
    result.recovered.startCodes.push_back(NucleotideSequence::trusted(code));
    result.recovered.pattern = PatternCode(bits);
    result.queries = query.queries();
    return result;
}

std::size_t attack_query_bound(std::size_t codeLength, std::size_t frameLength)
{
    return (std::size_t{1} << (2 * codeLength)) + 2 * frameLength + 16;
}

std::vector<AttackTrial> run_attack_trials(std::size_t codeLength, std::size_t frameLength,
                                           std::size_t trials, std::uint64_t seed)
{
    const std::size_t budget = attack_query_bound(codeLength, frameLength);
    std::vector<AttackTrial> rows;
    for (std::size_t t = 1; t <= trials; ++t) {
        KeyGenParams params;
        params.seed = derive_seed(seed, t);
        params.startCodeLength = codeLength;
        params.patternLength = frameLength;
        const InitialKey hidden = generate_initial_key(params);

        AttackTrial row{t, codeLength, frameLength, budget, false};
        try {
            const AttackResult r = differential_attack(make_local_oracle(hidden), codeLength,
                                                       frameLength, budget);
            row.queries = r.queries;
            row.recovered = r.recovered == hidden;
        } catch (const BudgetExceeded&) {
        } catch (const Inconclusive&) {
        }
        rows.push_back(row);
    }
    return rows;
}

void write_attack_csv(std::ostream& out, const std::vector<AttackTrial>& trials)
{
    out << "trial,start_len,pattern_len,queries,recovered\n";
    for (const auto& t : trials)
        out << t.trial << ',' << t.codeLength << ',' << t.frameLength << ',' << t.queries << ','
            << (t.recovered ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------- brute force

namespace {

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Visits every sequence of length |kept| + removed that keeps `kept` in order
// at the non-removed slots; removed slots take every symbol.
template <class Visit>
void visit_insertions(const std::string& kept, std::size_t removed, Visit&& visit)
{
    const std::size_t total = kept.size() + removed;
    std::vector<std::size_t> slots(removed);
    std::string dna(total, 'A');

    std::function<void(std::size_t, std::size_t)> chooseSlots;
    std::function<void(std::size_t)> fillSlots = [&](std::size_t s) {
        if (s == removed) {
            visit(dna);
            return;
        }
        for (char c : kNucleotides) {
            dna[slots[s]] = c;
            fillSlots(s + 1);
        }
    };
    chooseSlots = [&](std::size_t s, std::size_t from) {
        if (s == removed) {
            std::size_t k = 0, next = 0;
            for (std::size_t i = 0; i < total; ++i) {
                if (next < removed && slots[next] == i)
                    ++next;
                else
                    dna[i] = kept[k++];
            }
            fillSlots(0);
            return;
        }
        for (std::size_t i = from; i + (removed - s) <= total; ++i) {
            slots[s] = i;
            chooseSlots(s + 1, i + 1);
        }
    };
    chooseSlots(0, 0);
}

}  // namespace

BruteForceResult brute_force_recover(const ResidueSequence& cipher, ByteView knownPrefix,
                                     const CodonTable& table, const BruteForceBounds& bounds)
{
    const std::size_t codonSymbols = 3 * cipher.size();
    const BigInt preimages = preimage_product(cipher, table);
    BigInt states = 0;
    for (std::size_t pad = 0; pad <= std::min<std::size_t>(2, codonSymbols); ++pad) {
        if (pad > 0 && cipher.empty())
            break;
        for (std::size_t k = 0; k <= bounds.maxIntrons; ++k) {
            const std::size_t removed = k * bounds.removedPerIntron;
            const std::size_t length = codonSymbols - pad;
            states += preimages * binomial(length + removed, removed) *
                      boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(removed));
            if (bounds.removedPerIntron == 0)
                break;
        }
    }
    if (states > bounds.maxStates)
        throw LimitError("brute-force search of " + states.str() + " states exceeds bound " +
                         std::to_string(bounds.maxStates));

    const PreimageResult mrnas = enumerate_preimages(cipher, table, bounds.maxStates, true);
    std::set<Bytes> found;
    BruteForceResult result;

    for (const auto& full : mrnas.preimages) {
        for (std::size_t pad = 0; pad <= 2 && pad <= full.size(); ++pad) {
            if (pad > 0 && full[full.size() - pad] != 'A')
                break;  // padding is always 'A'; longer pads need it too
            ++result.mrnaPerPad[pad];
            const std::string mrna = full.str().substr(0, full.size() - pad);
            for (std::size_t k = 0; k <= bounds.maxIntrons; ++k) {
                const std::size_t removed = k * bounds.removedPerIntron;
                visit_insertions(mrna, removed, [&](const std::string& dna) {
                    ++result.statesExplored;
                    if (dna.size() % 4 != 0)
                        return;
                    Bytes plain = dna_to_bytes(NucleotideSequence::trusted(dna));
                    if (plain.size() >= knownPrefix.size() &&
                        std::equal(knownPrefix.begin(), knownPrefix.end(), plain.begin()))
                        found.insert(std::move(plain));
                });
                if (bounds.removedPerIntron == 0)
                    break;
            }
        }
    }
    result.candidates.assign(found.begin(), found.end());
    return result;
}

}  // namespace pdna
