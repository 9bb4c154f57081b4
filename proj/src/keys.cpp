#include "pdna/keys.hpp"

#include <algorithm>
#include <charconv>

#include "pdna/errors.hpp"
#include "pdna/random.hpp"

namespace pdna {

InitialKey generate_initial_key(const KeyGenParams& params)
{
    if (params.startCodeLength < 1)
        throw ParamError("start code length must be at least 1");
    if (params.patternLength < 2)
        throw ParamError("pattern length must be at least 2 to hold both a 0 and a 1");
    if (params.codeCount < 1)
        throw ParamError("at least one start code is required");
    if (params.startCodeLength < 32 &&
        params.codeCount > (std::uint64_t{1} << (2 * params.startCodeLength))) {
        throw ParamError("cannot draw " + std::to_string(params.codeCount) +
                         " distinct start codes of length " +
                         std::to_string(params.startCodeLength));
    }

    Rng rng(params.seed);
    InitialKey key;
    while (key.startCodes.size() < params.codeCount) {
        std::string code(params.startCodeLength, 'A');
        for (char& c : code)
            c = kNucleotides[rng.below(4)];
        // Equal lengths: the prefix rule reduces to distinctness.
        const bool clash = std::any_of(key.startCodes.begin(), key.startCodes.end(),
                                       [&](const NucleotideSequence& s) { return s.str() == code; });
        if (!clash)
            key.startCodes.push_back(NucleotideSequence::trusted(std::move(code)));
    }

    std::string bits(params.patternLength, '0');
    for (;;) {
        for (char& b : bits)
            b = (rng.next() >> 63) ? '1' : '0';
        const auto ones = std::count(bits.begin(), bits.end(), '1');
        if (ones > 0 && ones < static_cast<std::ptrdiff_t>(bits.size()))
            break;
    }
    key.pattern = PatternCode(std::move(bits));
    return key;
}

namespace {

// Splits on LF. A single trailing LF does not start a new line.
std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    if (!text.empty() && text.back() == '\n')
        text.remove_suffix(1);
    if (text.empty())
        return lines;
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

class LineCursor {
public:
    explicit LineCursor(std::string_view text) : lines_(split_lines(text)) {}

    bool done() const { return next_ >= lines_.size(); }
    std::size_t line_number() const { return next_ + 1; }

    std::string_view peek() const { return done() ? std::string_view{} : lines_[next_]; }

    std::string_view take(std::string_view what)
    {
        if (done())
            throw ParseError(0, "unexpected end of key file, expected " + std::string(what));
        return lines_[next_++];
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(next_, what); }

private:
    std::vector<std::string_view> lines_;
    std::size_t next_ = 0;
};

bool is_separator(std::string_view line)
{
    return line.size() >= 3 && std::all_of(line.begin(), line.end(), [](char c) { return c == '-'; });
}

bool starts_with(std::string_view s, std::string_view prefix)
{
    return s.substr(0, prefix.size()) == prefix;
}

std::size_t parse_decimal(std::string_view digits, const LineCursor& cur)
{
    std::size_t value = 0;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        cur.fail("expected a decimal number, got '" + std::string(digits) + "'");
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        cur.fail("number out of range: '" + std::string(digits) + "'");
    return value;
}

std::string_view field(std::string_view line, std::string_view name, const LineCursor& cur)
{
    if (!starts_with(line, name))
        cur.fail("expected '" + std::string(name) + "', got '" + std::string(line) + "'");
    return line.substr(name.size());
}

InitialKey parse_initial_lines(LineCursor& cur)
{
    InitialKey key;
    const std::string_view codes = cur.take("start codes");
    if (codes.empty())
        cur.fail("empty start code line");
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = codes.find(' ', start);
        const std::string_view token = codes.substr(start, end == std::string_view::npos ? end : end - start);
        if (token.empty() || !std::all_of(token.begin(), token.end(), is_nucleotide))
            cur.fail("malformed start code '" + std::string(token) + "'");
        key.startCodes.push_back(NucleotideSequence::trusted(std::string(token)));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }

    const std::string_view bits = cur.take("pattern code");
    if (bits.empty() || !std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0' || c == '1'; }))
        cur.fail("malformed pattern code '" + std::string(bits) + "'");
    key.pattern = PatternCode(std::string(bits));

    if (auto v = validate_initial_key(key); !v)
        cur.fail("invalid initial key: " + *v.violation);
    return key;
}

void append_initial(std::string& out, const InitialKey& key)
{
    for (std::size_t i = 0; i < key.startCodes.size(); ++i) {
        if (i)
            out += ' ';
        out += key.startCodes[i].str();
    }
    out += '\n';
    out += key.pattern.bits();
    out += '\n';
}

}  // namespace

std::string serialize_initial_key(const InitialKey& key)
{
    std::string out;
    append_initial(out, key);
    return out;
}

InitialKey parse_initial_key(std::string_view text)
{
    LineCursor cur(text);
    InitialKey key = parse_initial_lines(cur);
    if (!cur.done())
        cur.fail("unexpected line after pattern code");
    return key;
}

std::string digits_to_text(const DigitString& digits)
{
    std::string out;
    out.reserve(digits.size());
    for (auto d : digits)
        out.push_back(static_cast<char>('0' + d));
    return out;
}

std::string serialize_session_key(const SessionKey& key)
{
    const bool multiCode = key.initialKey.startCodes.size() > 1;
    std::string out;
    append_initial(out, key.initialKey);
    out += kKeySeparator;
    out += '\n';
    for (const auto& intron : key.introns) {
        out += "splicing.position: " + std::to_string(intron.position) + '\n';
        out += "splicing.deleted: " + intron.deleted.str() + '\n';
        if (multiCode)
            out += "splicing.code: " + std::to_string(intron.codeIndex) + '\n';
    }
    out += kKeySeparator;
    out += '\n';
    const bool paperShape =
        key.layout == KeyLayout::Paper && key.pad == 0 && key.tableSpec == "standard";
    if (!paperShape) {
        out += "pad: " + std::to_string(key.pad) + '\n';
        out += "table: " + key.tableSpec + '\n';
    }
    out += "mapping: " + digits_to_text(key.digits) + '\n';
    return out;
}

SessionKey parse_session_key(std::string_view text)
{
    LineCursor cur(text);
    SessionKey key;
    key.initialKey = parse_initial_lines(cur);
    const InitialKey& init = key.initialKey;
    const std::size_t frame = init.pattern.frame_length();

    if (!is_separator(cur.take("separator")))
        cur.fail("expected separator after pattern code");

    std::size_t nextFree = 0;  // smallest legal 0-based start for the next intron
    while (starts_with(cur.peek(), "splicing.position:")) {
        IntronRecord intron;
        std::string_view line = cur.take("splicing.position");
        intron.position = parse_decimal(field(line, "splicing.position: ", cur), cur);
        if (intron.position == 0)
            cur.fail("intron positions are 1-based");
        if (intron.position - 1 < nextFree)
            cur.fail("intron position " + std::to_string(intron.position) +
                     " is not ascending or overlaps the previous intron");

        line = cur.take("splicing.deleted");
        const std::string_view deleted = field(line, "splicing.deleted:", cur);
        std::string_view symbols = deleted;
        if (!symbols.empty()) {
            if (symbols.front() != ' ')
                cur.fail("expected 'splicing.deleted: '");
            symbols.remove_prefix(1);
        }
        if (!std::all_of(symbols.begin(), symbols.end(), is_nucleotide))
            cur.fail("deleted symbols must be ACGT");
        if (symbols.size() != init.pattern.zeros())
            cur.fail("deleted run has " + std::to_string(symbols.size()) +
                     " symbols, pattern removes " + std::to_string(init.pattern.zeros()));
        intron.deleted = NucleotideSequence::trusted(std::string(symbols));

        if (starts_with(cur.peek(), "splicing.code:")) {
            line = cur.take("splicing.code");
            intron.codeIndex = parse_decimal(field(line, "splicing.code: ", cur), cur);
            if (intron.codeIndex >= init.startCodes.size())
                cur.fail("start code index " + std::to_string(intron.codeIndex) + " out of range");
        } else if (init.startCodes.size() > 1) {
            cur.fail("missing splicing.code line");
        }
        nextFree = intron.position - 1 + init.startCodes[intron.codeIndex].size() + frame;
        key.introns.push_back(std::move(intron));
    }

    if (const auto sep = cur.take("separator"); !is_separator(sep))
        cur.fail("unknown line '" + std::string(sep) + "'");

    bool sawPad = false, sawTable = false;
    if (starts_with(cur.peek(), "pad:")) {
        const std::string_view value = field(cur.take("pad"), "pad: ", cur);
        if (value != "0" && value != "1" && value != "2")
            cur.fail("pad must be 0, 1 or 2");
        key.pad = static_cast<unsigned>(value[0] - '0');
        sawPad = true;
    }
    if (starts_with(cur.peek(), "table:")) {
        const std::string_view value = field(cur.take("table"), "table: ", cur);
        try {
            key.tableSpec = normalize_table_spec(value);
        } catch (const SpecError& e) {
            cur.fail(e.what());
        }
        sawTable = true;
    }
    key.layout = (sawPad || sawTable) ? KeyLayout::Canonical : KeyLayout::Paper;

    const std::string_view line = cur.take("mapping");
    std::string_view digits = field(line, "mapping:", cur);
    if (!digits.empty()) {
        if (digits.front() != ' ')
            cur.fail("expected 'mapping: '");
        digits.remove_prefix(1);
    }
    for (char c : digits) {
        if (c < '0' || c > '5')
            cur.fail(std::string("mapping digit '") + c + "' out of range 0-5");
        key.digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (!cur.done())
        cur.fail("unexpected line after mapping");
    return key;
}

KeySizeReport key_size_report(const SessionKey& key)
{
    KeySizeReport report;
    report.redundantBytes = serialize_session_key(key).size();

    std::size_t bits = 128;
    for (const auto& code : key.initialKey.startCodes)
        bits += 2 * code.size();
    bits += key.initialKey.pattern.frame_length();
    const std::size_t perCodeBits = key.initialKey.startCodes.size() > 1 ? 8 : 0;
    for (const auto& intron : key.introns)
        report.compactSplicingBits += 32 + 2 * intron.deleted.size() + perCodeBits;
    bits += report.compactSplicingBits;
    bits += 3 * key.digits.size();
    report.compactBytes = (bits + 7) / 8;
    return report;
}

}  // namespace pdna
