#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "figjudge/judge.hpp"

namespace figjudge {

std::string_view to_string(ParseStatus s) {
    return s == ParseStatus::Parsed ? "parsed" : "fallback";
}

namespace {

struct Token {
    bool is_number = false;
    long value = 0;    // numbers only
    std::string word;  // lowercased, words only
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isdigit(c)) {
            Token t;
            t.is_number = true;
            t.begin = i;
            long v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                if (v < 1000000)
                    v = v * 10 + (text[i] - '0');
                ++i;
            }
            t.end = i;
            t.value = v;
            tokens.push_back(std::move(t));
        } else if (std::isalpha(c)) {
            Token t;
            t.begin = i;
            while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
                t.word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
                ++i;
            }
            t.end = i;
            tokens.push_back(std::move(t));
        } else {
            ++i;
        }
    }
    return tokens;
}

bool is_rating_keyword(const std::string& w) {
    return w == "rating" || w == "ratings" || w == "rate" || w == "rated" || w == "rates" || w == "score" ||
           w == "scores" || w == "scored" || w == "scoring" || w == "usefulness";
}

// True when the digit run at [t.begin, t.end) is part of a decimal number.
bool is_decimal_part(std::string_view text, const Token& t) {
    if (t.end < text.size() && text[t.end] == '.' && t.end + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[t.end + 1])))
        return true;
    if (t.begin >= 2 && text[t.begin - 1] == '.' && std::isdigit(static_cast<unsigned char>(text[t.begin - 2])))
        return true;
    return false;
}

// Gap characters between two tokens.
std::string_view gap(std::string_view text, const Token& a, const Token& b) {
    return text.substr(a.end, b.begin - a.end);
}

bool gap_breaks_sentence(std::string_view g) {
    return g.find_first_of(".!?;") != std::string_view::npos;
}

// Candidate at tokens[i] (a number 1..6): reject prompt echoes like
// "from 1 to 6", ranges like "4-5", and wrong scales like "4 out of 10".
bool acceptable_rating_candidate(std::string_view text, const std::vector<Token>& tokens, std::size_t i) {
    const Token& t = tokens[i];
    if (t.value < 1 || t.value > 6 || is_decimal_part(text, t))
        return false;
    if (i > 0 && !tokens[i - 1].is_number) {
        const std::string& prev = tokens[i - 1].word;
        if (prev == "from" || prev == "between" || prev == "to" || prev == "and" || prev == "than")
            return false;
    }
    if (i + 1 < tokens.size()) {
        const Token& next = tokens[i + 1];
        if (next.is_number && gap(text, t, next).find_first_of("-\xe2") != std::string_view::npos)
            return false; // "4-5" (also en dash, first byte 0xe2)
        if (!next.is_number && next.word == "to" && i + 2 < tokens.size() && tokens[i + 2].is_number)
            return false; // "1 to 6"
        // wrong denominator: "4 out of 10", "4/10"
        if (next.is_number && gap(text, t, next) == "/" && next.value != 6)
            return false;
        if (!next.is_number && next.word == "out" && i + 3 < tokens.size() && tokens[i + 2].word == "of" &&
            tokens[i + 3].is_number && tokens[i + 3].value != 6)
            return false;
    }
    return true;
}

} // namespace

ScoreParse parse_score(std::string_view raw_text) {
    const std::vector<Token> tokens = tokenize(raw_text);

    // (1) rating vocabulary followed by an integer within the same sentence
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].is_number || !is_rating_keyword(tokens[i].word))
            continue;
        for (std::size_t j = i + 1; j < tokens.size() && j <= i + 4; ++j) {
            if (gap_breaks_sentence(gap(raw_text, tokens[j - 1], tokens[j])))
                break;
            if (!tokens[j].is_number)
                continue;
            if (acceptable_rating_candidate(raw_text, tokens, j))
                return {static_cast<int>(tokens[j].value), ParseStatus::Parsed};
        }
    }

    // (2) "N out of 6" or "N/6"
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (!t.is_number || t.value < 1 || t.value > 6 || is_decimal_part(raw_text, t))
            continue;
        const Token& next = tokens[i + 1];
        if (next.is_number && next.value == 6 && gap(raw_text, t, next) == "/")
            return {static_cast<int>(t.value), ParseStatus::Parsed};
        if (!next.is_number && next.word == "out" && i + 3 < tokens.size() && tokens[i + 2].word == "of" &&
            tokens[i + 3].is_number && tokens[i + 3].value == 6)
            return {static_cast<int>(t.value), ParseStatus::Parsed};
    }

    // (3) bare integer leading the first line
    {
        const std::size_t line_end = std::min(raw_text.find('\n'), raw_text.size());
        std::size_t i = 0;
        while (i < line_end && (std::isspace(static_cast<unsigned char>(raw_text[i])) || raw_text[i] == '*' ||
                                raw_text[i] == '#' || raw_text[i] == '>' || raw_text[i] == '(' ||
                                raw_text[i] == '[' || raw_text[i] == '-'))
            ++i;
        if (i < line_end && std::isdigit(static_cast<unsigned char>(raw_text[i]))) {
            std::size_t j = i;
            long v = 0;
            while (j < line_end && std::isdigit(static_cast<unsigned char>(raw_text[j]))) {
                if (v < 1000000)
                    v = v * 10 + (raw_text[j] - '0');
                ++j;
            }
            const bool decimal = j + 1 < raw_text.size() && raw_text[j] == '.' &&
                                 std::isdigit(static_cast<unsigned char>(raw_text[j + 1]));
            if (v >= 1 && v <= 6 && !decimal)
                return {static_cast<int>(v), ParseStatus::Parsed};
        }
    }

    return {1, ParseStatus::Fallback};
}

namespace {

struct ItemMarker {
    int index = 0;          // 1-based item number
    std::size_t text_begin; // first char after the marker
    std::size_t pos;        // marker start
};

// "1.", "2)", "3:", optionally prefixed by Q/q/#/( at a word boundary.
std::vector<ItemMarker> find_item_markers(std::string_view text) {
    std::vector<ItemMarker> markers;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        bool boundary = start == 0;
        if (start > 0) {
            const char prev = text[start - 1];
            if (std::isspace(static_cast<unsigned char>(prev)) || prev == '(' || prev == '#')
                boundary = true;
            else if ((prev == 'Q' || prev == 'q') &&
                     (start < 2 || !std::isalpha(static_cast<unsigned char>(text[start - 2]))))
                boundary = true;
        }
        int value = 0;
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            if (value < 1000000)
                value = value * 10 + (text[j] - '0');
            ++j;
        }
        if (boundary && j < text.size() && (text[j] == '.' || text[j] == ')' || text[j] == ':')) {
            const std::size_t after = j + 1;
            const bool decimal = after < text.size() && text[j] == '.' &&
                                 std::isdigit(static_cast<unsigned char>(text[after]));
            if (!decimal && (after >= text.size() || std::isspace(static_cast<unsigned char>(text[after])) ||
                             std::isalpha(static_cast<unsigned char>(text[after]))))
                markers.push_back({value, after, start});
        }
        i = j;
    }
    return markers;
}

enum class Verdict { None, Yes, No };

Verdict first_verdict_in(std::string_view text) {
    for (const Token& t : tokenize(text)) {
        if (t.is_number)
            continue;
        if (t.word == "yes")
            return Verdict::Yes;
        if (t.word == "no")
            return Verdict::No;
    }
    return Verdict::None;
}

bool sentence_initial(std::string_view text, std::size_t token_begin) {
    std::size_t i = token_begin;
    while (i > 0) {
        const char c = text[i - 1];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\'' || c == '(' || c == '*' ||
            c == '-' || c == '>' ) {
            --i;
            continue;
        }
        return c == '.' || c == '!' || c == '?' || c == ':' || c == ';' || c == ',';
    }
    return true;
}

} // namespace

YesNoParse parse_yesno(std::string_view raw_text, int n_questions) {
    if (n_questions < 1)
        throw Error(ErrorCode::InvalidConfig, "parse_yesno requires n_questions >= 1");

    YesNoParse result;
    result.verdicts.assign(static_cast<std::size_t>(n_questions), false);

    const std::vector<ItemMarker> markers = find_item_markers(raw_text);
    if (!markers.empty()) {
        std::vector<bool> assigned(static_cast<std::size_t>(n_questions), false);
        for (std::size_t m = 0; m < markers.size(); ++m) {
            const int idx = markers[m].index;
            if (idx < 1 || idx > n_questions || assigned[static_cast<std::size_t>(idx - 1)])
                continue;
            const std::size_t end = m + 1 < markers.size() ? markers[m + 1].pos : raw_text.size();
            const Verdict v = first_verdict_in(raw_text.substr(markers[m].text_begin, end - markers[m].text_begin));
            if (v == Verdict::None)
                continue;
            assigned[static_cast<std::size_t>(idx - 1)] = true;
            result.verdicts[static_cast<std::size_t>(idx - 1)] = (v == Verdict::Yes);
            ++result.matched;
        }
        if (result.matched > 0)
            return result;
    }

    // sequential: sentence-initial Yes/No tokens in document order
    int filled = 0;
    for (const Token& t : tokenize(raw_text)) {
        if (filled >= n_questions)
            break;
        if (t.is_number || (t.word != "yes" && t.word != "no"))
            continue;
        if (!sentence_initial(raw_text, t.begin))
            continue;
        result.verdicts[static_cast<std::size_t>(filled)] = (t.word == "yes");
        ++filled;
        ++result.matched;
    }
    return result;
}

} // namespace figjudge
