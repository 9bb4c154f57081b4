#include "pdna/splicing.hpp"

#include <algorithm>

#include "pdna/errors.hpp"

namespace pdna {

PatternCode::PatternCode(std::string bits) : bits_(std::move(bits))
{
    for (char c : bits_) {
        if (c != '0' && c != '1')
            throw FormatError("pattern code may only contain 0 and 1");
    }
    zeros_ = static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '0'));
}

KeyValidation validate_initial_key(const InitialKey& key)
{
    if (key.startCodes.empty())
        return {"no start code"};
    for (std::size_t i = 0; i < key.startCodes.size(); ++i) {
        if (key.startCodes[i].empty())
            return {"start code " + std::to_string(i) + " is empty"};
    }
    for (std::size_t i = 0; i < key.startCodes.size(); ++i) {
        for (std::size_t j = 0; j < key.startCodes.size(); ++j) {
            if (i == j)
                continue;
            const auto& a = key.startCodes[i].str();
            const auto& b = key.startCodes[j].str();
            if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) {
                return {"start code " + a + " is a prefix of " + b};
            }
        }
    }
    const auto& pattern = key.pattern;
    if (pattern.frame_length() == 0)
        return {"pattern code is empty"};
    if (pattern.zeros() == 0)
        return {"pattern code " + pattern.bits() + " removes nothing (no '0')"};
    if (pattern.ones() == 0)
        return {"pattern code " + pattern.bits() + " keeps nothing (no '1')"};
    return {};
}

namespace {

void require_valid(const InitialKey& key)
{
    if (auto v = validate_initial_key(key); !v)
        throw KeyError("invalid initial key: " + *v.violation);
}

}  // namespace

SpliceResult splice(const NucleotideSequence& dna, const InitialKey& key)
{
    require_valid(key);

    const std::string_view in = dna.view();
    const PatternCode& pattern = key.pattern;
    const std::size_t frame = pattern.frame_length();

    SpliceResult result;
    std::string kept;
    kept.reserve(in.size());

    std::size_t i = 0;
    while (i < in.size()) {
        std::optional<std::size_t> hit;
        for (std::size_t c = 0; c < key.startCodes.size(); ++c) {
            const std::string_view code = key.startCodes[c].view();
            if (in.size() - i >= code.size() + frame && in.compare(i, code.size(), code) == 0) {
                hit = c;
                break;
            }
        }
        if (!hit) {
            kept.push_back(in[i]);
            ++i;
            ++result.metrics.symbolsScanned;
            continue;
        }

        const std::size_t frameStart = i + key.startCodes[*hit].size();
        std::string deleted;
        deleted.reserve(pattern.zeros());
        for (std::size_t j = 0; j < frame; ++j) {
            if (pattern.keeps(j))
                kept.push_back(in[frameStart + j]);
            else
                deleted.push_back(in[frameStart + j]);
        }
        result.introns.push_back({i + 1, *hit, NucleotideSequence::trusted(std::move(deleted))});
        result.metrics.symbolsScanned += frameStart + frame - i;
        ++result.metrics.intronsCut;
        i = frameStart + frame;
    }

    result.spliced = NucleotideSequence::trusted(std::move(kept));
    return result;
}

NucleotideSequence reverse_splice(const NucleotideSequence& spliced,
                                  const std::vector<IntronRecord>& introns,
                                  const InitialKey& key)
{
    require_valid(key);

    const std::string_view in = spliced.view();
    const PatternCode& pattern = key.pattern;

    std::size_t removed = 0;
    for (const auto& intron : introns) {
        if (intron.codeIndex >= key.startCodes.size())
            throw ConsistencyError("intron code index " + std::to_string(intron.codeIndex) +
                                   " out of range");
        removed += key.startCodes[intron.codeIndex].size() + pattern.zeros();
    }

    std::string out;
    out.reserve(in.size() + removed);
    std::size_t next = 0;  // read index into spliced

    auto take = [&](std::size_t count) {
        if (in.size() - next < count)
            throw ConsistencyError("spliced sequence too short for intron records");
        out.append(in.substr(next, count));
        next += count;
    };

    for (const auto& intron : introns) {
        if (intron.position == 0)
            throw ConsistencyError("intron position must be 1-based");
        const std::size_t start = intron.position - 1;
        if (start < out.size())
            throw ConsistencyError("intron at position " + std::to_string(intron.position) +
                                   " overlaps the previous one");
        if (intron.deleted.size() != pattern.zeros())
            throw ConsistencyError("intron at position " + std::to_string(intron.position) +
                                   " records " + std::to_string(intron.deleted.size()) +
                                   " deleted symbols, pattern removes " +
                                   std::to_string(pattern.zeros()));
        take(start - out.size());
        out.append(key.startCodes[intron.codeIndex].view());
        std::size_t d = 0;
        for (std::size_t j = 0; j < pattern.frame_length(); ++j) {
            if (pattern.keeps(j))
                take(1);
            else
                out.push_back(intron.deleted[d++]);
        }
    }
    take(in.size() - next);
    return NucleotideSequence::trusted(std::move(out));
}

}  // namespace pdna
