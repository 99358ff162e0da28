#include "bvcalc/text.hpp"

#include "bvcalc/error.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace bvcalc {

namespace {

std::string strip_spaces(std::string_view text)
{
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long long parse_int(std::string_view tok, std::string_view context)
{
    long long v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (tok.empty() || ec != std::errc() || ptr != last)
        throw ValidationError("malformed integer '" + std::string(tok) + "' in " + std::string(context));
    return v;
}

std::string unwrap(std::string_view text, char open, char close, std::string_view what)
{
    std::string s = strip_spaces(text);
    if (s.size() < 2 || s.front() != open || s.back() != close)
        throw ValidationError("malformed " + std::string(what) + " '" + std::string(text) +
                              "': expected " + open + "..." + close);
    return s.substr(1, s.size() - 2);
}

} // namespace

std::string format_partition(const Partition& p, bool compact)
{
    std::string out = "[";
    const auto& v = p.parts();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        std::size_t run = compact ? 1 : j - i;
        for (std::size_t r = 0; r < run; ++r) {
            if (out.size() > 1)
                out += ",";
            out += std::to_string(v[i]);
            if (compact && j - i > 1)
                out += "^" + std::to_string(j - i);
        }
        i = j;
    }
    return out + "]";
}

Partition parse_partition(std::string_view text)
{
    std::string body = unwrap(text, '[', ']', "partition");
    std::vector<long long> raw;
    if (!body.empty()) {
        for (const auto& item : split(body, ',')) {
            auto caret = item.find('^');
            if (caret == std::string::npos) {
                raw.push_back(parse_int(item, "partition"));
                continue;
            }
            long long v = parse_int(std::string_view(item).substr(0, caret), "partition");
            long long c = parse_int(std::string_view(item).substr(caret + 1), "partition");
            if (c < 0 || c > 100000)
                throw ValidationError("bad exponent in '" + item + "'");
            if (v < 0)
                throw ValidationError("negative part in '" + item + "'");
            raw.insert(raw.end(), static_cast<std::size_t>(c), v);
        }
    }
    return Partition::normalize(std::span<const long long>(raw));
}

std::string format_simple(const SimpleParameter& s)
{
    std::string out = std::to_string(s.dim) + ":" + std::to_string(s.mult) + ":" +
                      (s.symmetry == Symmetry::Orthogonal ? "O" : "S");
    if (!s.label.empty())
        out += "#" + s.label;
    return out;
}

std::string format_parameter(const GlobalParameter& psi)
{
    std::string out;
    for (const auto& s : psi.simples)
        out += (out.empty() ? "" : " + ") + format_simple(s);
    return out;
}

GlobalParameter parse_parameter(std::string_view text, int n)
{
    std::string s = strip_spaces(text);
    if (s.empty())
        throw ValidationError("empty parameter");
    GlobalParameter psi;
    psi.n = n;
    int anon = 0;
    for (const auto& term : split(s, '+')) {
        std::string body = term;
        std::string label;
        if (auto hash = term.find('#'); hash != std::string::npos) {
            body = term.substr(0, hash);
            label = term.substr(hash + 1);
            if (label.empty())
                throw ValidationError("empty label in term '" + term + "'");
        }
        auto fields = split(body, ':');
        if (fields.size() != 3)
            throw ValidationError("malformed parameter term '" + term + "': expected a:b:O or a:b:S");
        SimpleParameter sp;
        long long dim = parse_int(fields[0], "parameter term '" + term + "'");
        long long mult = parse_int(fields[1], "parameter term '" + term + "'");
        if (dim < 1 || mult < 1 || dim > 10000 || mult > 10000)
            throw ValidationError("dimension and multiplicity must be positive in '" + term + "'");
        sp.dim = static_cast<int>(dim);
        sp.mult = static_cast<int>(mult);
        if (fields[2] == "O")
            sp.symmetry = Symmetry::Orthogonal;
        else if (fields[2] == "S")
            sp.symmetry = Symmetry::Symplectic;
        else
            throw ValidationError("unknown symmetry '" + fields[2] + "' in term '" + term + "'");
        sp.label = label.empty() ? "_" + std::to_string(++anon) : label;
        psi.simples.push_back(sp);
    }
    return psi;
}

std::string format_root(const RootC& r)
{
    std::string out;
    for (auto [idx, c] : r.coeffs()) {
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (c == 2 || c == -2)
            out += "2";
        out += "e" + std::to_string(idx);
    }
    return out;
}

RootC parse_root(std::string_view text)
{
    std::string s = strip_spaces(text);
    std::map<int, int> coeffs;
    std::size_t pos = 0;
    if (s.empty())
        throw ValidationError("empty root");
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ValidationError("malformed root '" + s + "'");
        }
        int coef = 1;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos > start)
            coef = static_cast<int>(parse_int(std::string_view(s).substr(start, pos - start), "root"));
        if (pos >= s.size() || s[pos] != 'e')
            throw ValidationError("malformed root '" + s + "': expected e<index>");
        ++pos;
        start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        long long idx = parse_int(std::string_view(s).substr(start, pos - start), "root '" + s + "'");
        if (idx < 1 || idx > 100000)
            throw ValidationError("root index out of range in '" + s + "'");
        coeffs[static_cast<int>(idx)] += sign * coef;
    }
    auto r = RootC::from_coeffs(coeffs);
    if (!r)
        throw ValidationError("'" + s + "' is not a root of type C");
    return *r;
}

std::string format_root_set(const RootSet& set)
{
    std::string out = "{";
    for (const auto& r : set)
        out += (out.size() > 1 ? "," : "") + format_root(r);
    return out + "}";
}

std::string format_formal_root(const FormalRoot& f)
{
    std::string out;
    for (auto [idx, c] : f.terms) {
        out += c < 0 ? "-" : (out.empty() ? "" : "+");
        if (c != 1 && c != -1)
            out += std::to_string(c < 0 ? -c : c);
        out += "e" + std::to_string(idx);
    }
    return out.empty() ? "0" : out;
}

std::string format_signed_permutation(const SignedPermutation& w)
{
    std::string out = "[";
    for (int v : w.image())
        out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "]";
}

SignedPermutation parse_signed_permutation(std::string_view text)
{
    std::string body = unwrap(text, '[', ']', "signed permutation");
    std::vector<int> image;
    if (!body.empty())
        for (const auto& item : split(body, ','))
            image.push_back(static_cast<int>(parse_int(item, "signed permutation")));
    return SignedPermutation(image);
}

std::string format_rationals(const std::vector<Rational>& v)
{
    std::string out = "{";
    for (const auto& r : v)
        out += (out.size() > 1 ? "," : "") + format_rational(r);
    return out + "}";
}

std::vector<Rational> parse_rationals(std::string_view text)
{
    std::string body = unwrap(text, '{', '}', "exponent list");
    std::vector<Rational> out;
    if (!body.empty())
        for (const auto& item : split(body, ','))
            out.push_back(parse_rational(item));
    return out;
}

std::string format_rational(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text)
{
    std::string s = strip_spaces(text);
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(parse_int(s, "rational"));
    long long p = parse_int(std::string_view(s).substr(0, slash), "rational '" + s + "'");
    long long q = parse_int(std::string_view(s).substr(slash + 1), "rational '" + s + "'");
    if (q == 0)
        throw ValidationError("zero denominator in '" + s + "'");
    if (std::abs(p) > (1LL << 40) || std::abs(q) > (1LL << 40))
        throw ValidationError("rational '" + s + "' out of range");
    return Rational(p, q);
}

} // namespace bvcalc
