#include "bvcalc/cli.hpp"

#include "bvcalc/error.hpp"
#include "bvcalc/golden_corpus.hpp"

#include <sstream>

namespace bvcalc {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Whitespace-separated words; double quotes group words and are dropped.
std::vector<std::string> words(const std::string& s, int line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, have = false;
    for (char ch : s) {
        if (ch == '"') {
            quoted = !quoted;
            have = true;
        } else if (!quoted && (ch == ' ' || ch == '\t')) {
            if (have)
                out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += ch;
            have = true;
        }
    }
    if (quoted)
        throw ValidationError("corpus line " + std::to_string(line) + ": unbalanced quote");
    if (have)
        out.push_back(cur);
    return out;
}

} // namespace

std::vector<GoldenCase> parse_corpus(std::string_view text)
{
    std::vector<GoldenCase> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (int f = 0; f < 3; ++f) {
            auto bar = t.find('|', start);
            if (bar == std::string::npos)
                throw ValidationError("corpus line " + std::to_string(no) + ": expected 4 '|'-separated fields");
            fields.push_back(trim(t.substr(start, bar - start)));
            start = bar + 1;
        }
        fields.push_back(trim(t.substr(start)));
        GoldenCase c;
        c.id = fields[0];
        c.tags = words(fields[1], no);
        c.argv = words(fields[2], no);
        c.expected = fields[3];
        c.line = no;
        if (c.id.empty() || c.argv.empty())
            throw ValidationError("corpus line " + std::to_string(no) + ": empty id or command");
        out.push_back(std::move(c));
    }
    return out;
}

std::string_view builtin_corpus()
{
    return generated::golden_corpus;
}

} // namespace bvcalc
