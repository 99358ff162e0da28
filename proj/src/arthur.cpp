#include "bvcalc/arthur.hpp"

#include "bvcalc/error.hpp"
#include "bvcalc/text.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

namespace bvcalc {

std::string_view to_string(CaseKind k)
{
    switch (k) {
    case CaseKind::Generic: return "Generic";
    case CaseKind::CaseI: return "CaseI";
    case CaseKind::CaseII: return "CaseII";
    case CaseKind::CaseIII: return "CaseIII";
    case CaseKind::Other: return "Other";
    }
    return "?";
}

std::string_view to_string(Ordering o)
{
    return o == Ordering::Dominance ? "Dominance" : "Lexicographic";
}

std::string_view to_string(BoundStatus s)
{
    switch (s) {
    case BoundStatus::ForbiddenPart1: return "ForbiddenPart1";
    case BoundStatus::Allowed: return "Allowed";
    case BoundStatus::AchievesPart3: return "AchievesPart3";
    }
    return "?";
}

std::vector<std::string> validate(const GlobalParameter& psi)
{
    std::vector<std::string> out;
    if (psi.simples.empty())
        out.push_back("nonempty: the parameter has no simple summands");
    if (psi.n < 1)
        out.push_back("rank: n must be positive, got " + std::to_string(psi.n));
    long long total = 0;
    std::set<SimpleParameter> seen;
    for (const auto& s : psi.simples) {
        std::string name = format_simple(s);
        if (s.dim < 1 || s.mult < 1) {
            out.push_back("positivity: " + name + " needs positive dimension and multiplicity");
            continue;
        }
        total += static_cast<long long>(s.dim) * s.mult;
        if (s.symmetry == Symmetry::Symplectic && s.mult % 2 != 0)
            out.push_back("parity: " + name + " is symplectic type with odd multiplicity");
        if (s.symmetry == Symmetry::Orthogonal && s.mult % 2 == 0)
            out.push_back("parity: " + name + " is orthogonal type with even multiplicity");
        if (s.symmetry == Symmetry::Symplectic && s.dim % 2 != 0)
            out.push_back("symplectic-dimension: " + name + " is symplectic type of odd dimension");
        if (!seen.insert(s).second)
            out.push_back("distinctness: " + name + " occurs more than once");
    }
    if (total != 2LL * psi.n + 1)
        out.push_back("dimension sum: " + std::to_string(total) + " != 2n+1 = " +
                      std::to_string(2LL * psi.n + 1));
    return out;
}

void require_valid(const GlobalParameter& psi)
{
    auto v = validate(psi);
    if (!v.empty()) {
        std::string msg = "invalid parameter:";
        for (const auto& s : v)
            msg += " " + s + ";";
        msg.pop_back();
        throw ValidationError(msg);
    }
}

Partition p_of_psi(const GlobalParameter& psi)
{
    require_valid(psi);
    std::vector<int> raw;
    for (const auto& s : psi.simples)
        raw.insert(raw.end(), s.dim, s.mult);
    Partition p = Partition::normalize(raw);
    if (!is_orthogonal(p) || p.size() != 2 * psi.n + 1)
        throw InvariantBreach("p(psi) is not orthogonal of size 2n+1");
    return p;
}

bool is_generic(const GlobalParameter& psi)
{
    require_valid(psi);
    return std::all_of(psi.simples.begin(), psi.simples.end(),
                       [](const SimpleParameter& s) { return s.mult == 1; });
}

CaseTag classify_case(const GlobalParameter& psi)
{
    require_valid(psi);
    std::vector<const SimpleParameter*> big;
    for (const auto& s : psi.simples)
        if (s.mult > 1)
            big.push_back(&s);
    if (big.empty())
        return {CaseKind::Generic, 0, 0, 0};
    if (big.size() > 1)
        return {CaseKind::Other, 0, 0, 0};
    const SimpleParameter& tau = *big.front();
    int a = tau.dim;
    if (tau.symmetry == Symmetry::Symplectic) {
        int b = tau.mult / 2;
        return {CaseKind::CaseIII, a, b, psi.n - a * b};
    }
    int b = (tau.mult - 1) / 2;
    bool partner = std::any_of(psi.simples.begin(), psi.simples.end(), [&](const SimpleParameter& s) {
        return s.mult == 1 && s.dim == tau.dim && s.label == tau.label;
    });
    if (partner)
        return {CaseKind::CaseII, a, b, psi.n - a * (b + 1)};
    return {CaseKind::CaseI, a, b, psi.n - a * b};
}

namespace {

Partition build(std::initializer_list<std::pair<int, int>> blocks)
{
    // (value, count) pairs; zero values and counts are dropped by normalize.
    std::vector<int> raw;
    for (auto [v, c] : blocks)
        if (c > 0)
            raw.insert(raw.end(), c, v);
    return Partition::normalize(raw);
}

void require_case_shape(const CaseTag& t)
{
    bool ok = t.a >= 1 && t.b >= 1 && t.m >= 0;
    if (t.kind == CaseKind::CaseI)
        ok = ok && t.a <= 2 * t.m + 1;
    if (t.kind == CaseKind::CaseIII)
        ok = ok && t.a % 2 == 0;
    if (!ok)
        throw ValidationError("no " + std::string(to_string(t.kind)) + " parameter with (a,b,m)=(" +
                              std::to_string(t.a) + "," + std::to_string(t.b) + "," +
                              std::to_string(t.m) + ")");
}

} // namespace

Partition p_closed_form(const CaseTag& t)
{
    require_case_shape(t);
    switch (t.kind) {
    case CaseKind::CaseI: return build({{2 * t.b + 1, t.a}, {1, 2 * t.m + 1 - t.a}});
    case CaseKind::CaseII: return build({{2 * t.b + 1, t.a}, {1, 2 * t.m + 1 + t.a}});
    case CaseKind::CaseIII: return build({{2 * t.b, t.a}, {1, 2 * t.m + 1}});
    default: throw ValidationError("no closed form for " + std::string(to_string(t.kind)));
    }
}

std::optional<Partition> eta_closed_form(const CaseTag& t)
{
    const int a = t.a, b = t.b, m = t.m;
    switch (t.kind) {
    case CaseKind::CaseI:
        require_case_shape(t);
        if (a == 2 * m + 1)
            return build({{a, 2 * b}, {2 * m, 1}});
        if (a % 2 == 0)
            return build({{2 * m, 1}, {a, 2 * b}});
        return build({{2 * m, 1}, {a + 1, 1}, {a, 2 * b - 2}, {a - 1, 1}});
    case CaseKind::CaseII:
        require_case_shape(t);
        if (a % 2 == 0)
            return build({{2 * m + 2 * a, 1}, {a, 2 * b}});
        return build({{2 * m + 2 * a, 1}, {a + 1, 1}, {a, 2 * b - 2}, {a - 1, 1}});
    case CaseKind::CaseIII:
        require_case_shape(t);
        return build({{a + 2 * m, 1}, {a, 2 * b - 1}});
    default:
        return std::nullopt;
    }
}

Partition eta_of_psi(const GlobalParameter& psi)
{
    Partition eta = barbasch_vogan_dual(p_of_psi(psi));
    CaseTag tag = classify_case(psi);
    if (auto closed = eta_closed_form(tag); closed && *closed != eta)
        throw InvariantBreach("closed-form eta " + format_partition(*closed) +
                              " disagrees with the definition " + format_partition(eta) + " for " +
                              std::string(to_string(tag.kind)));
    return eta;
}

GlobalParameter make_case_parameter(const CaseTag& t)
{
    require_case_shape(t);
    GlobalParameter psi;
    int ones = 0;
    switch (t.kind) {
    case CaseKind::CaseI:
        psi.simples.push_back({t.a, 2 * t.b + 1, Symmetry::Orthogonal, "t"});
        ones = 2 * t.m + 1 - t.a;
        psi.n = t.a * t.b + t.m;
        break;
    case CaseKind::CaseII:
        psi.simples.push_back({t.a, 2 * t.b + 1, Symmetry::Orthogonal, "t"});
        psi.simples.push_back({t.a, 1, Symmetry::Orthogonal, "t"});
        ones = 2 * t.m + 1;
        psi.n = t.a * (t.b + 1) + t.m;
        break;
    case CaseKind::CaseIII:
        psi.simples.push_back({t.a, 2 * t.b, Symmetry::Symplectic, "t"});
        ones = 2 * t.m + 1;
        psi.n = t.a * t.b + t.m;
        break;
    default:
        throw ValidationError("case representative needs CaseI, CaseII or CaseIII");
    }
    for (int i = 1; i <= ones; ++i)
        psi.simples.push_back({1, 1, Symmetry::Orthogonal, "x" + std::to_string(i)});
    require_valid(psi);
    return psi;
}

BoundVerdict conjecture_bound_check(const Partition& candidate, const GlobalParameter& psi,
                                    Ordering ordering)
{
    require_valid(psi);
    if (candidate.size() != 2 * psi.n)
        throw ValidationError("candidate has size " + std::to_string(candidate.size()) +
                              ", expected 2n = " + std::to_string(2 * psi.n));
    if (!is_symplectic(candidate))
        throw ValidationError("candidate " + format_partition(candidate) + " is not symplectic");
    BoundVerdict v;
    v.ordering_used = ordering;
    v.eta = eta_of_psi(psi);
    Relation r = ordering == Ordering::Dominance ? dominance_compare(candidate, v.eta)
                                                 : lex_compare(candidate, v.eta);
    if (r == Relation::Greater)
        v.status = BoundStatus::ForbiddenPart1;
    else if (r == Relation::Equal)
        v.status = BoundStatus::AchievesPart3;
    else
        v.status = BoundStatus::Allowed;
    return v;
}

GlobalParameter reduce_parameter(const GlobalParameter& psi, int l)
{
    CaseTag tag = classify_case(psi);
    if (tag.kind != CaseKind::CaseI && tag.kind != CaseKind::CaseII && tag.kind != CaseKind::CaseIII)
        throw ValidationError("reduction needs a CaseI, CaseII or CaseIII parameter, got " +
                              std::string(to_string(tag.kind)));
    int depth = tag.kind == CaseKind::CaseII ? tag.b + 1 : tag.b;
    if (l < 1 || l > depth)
        throw ValidationError("reduction depth l=" + std::to_string(l) + " outside 1.." +
                              std::to_string(depth));
    if (tag.kind == CaseKind::CaseII && l == tag.b)
        throw ValidationError("reduction depth l=b leaves (tau,1)+(tau,1), which is not a discrete "
                              "parameter (the remainder is the non-residual E(tau x sigma))");

    auto tau_it = std::find_if(psi.simples.begin(), psi.simples.end(),
                               [](const SimpleParameter& s) { return s.mult > 1; });
    const SimpleParameter tau = *tau_it;
    GlobalParameter out;
    for (const auto& s : psi.simples) {
        bool same_tau = s.dim == tau.dim && s.label == tau.label && s.symmetry == tau.symmetry;
        if (s == tau) {
            if (tag.kind == CaseKind::CaseII && l == tag.b + 1)
                continue;
            SimpleParameter r = s;
            r.mult = tag.kind == CaseKind::CaseIII ? 2 * (tag.b - l) : 2 * (tag.b - l) + 1;
            if (r.mult > 0)
                out.simples.push_back(r);
        } else if (same_tau && tag.kind == CaseKind::CaseII && l == tag.b + 1) {
            continue;
        } else {
            out.simples.push_back(s);
        }
    }
    long long total = 0;
    for (const auto& s : out.simples)
        total += static_cast<long long>(s.dim) * s.mult;
    out.n = static_cast<int>((total - 1) / 2);
    require_valid(out);
    return out;
}

int parameter_cap()
{
    if (const char* env = std::getenv("BVCALC_PARAMETER_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 30)
            return static_cast<int>(v);
        throw ValidationError(std::string("bad BVCALC_PARAMETER_CAP value '") + env + "'");
    }
    return 8;
}

namespace {

// One tau together with the set of multiplicities it carries.
struct Block {
    int dim;
    Symmetry symmetry;
    std::vector<int> mults; // descending
    int weight() const
    {
        int s = 0;
        for (int b : mults)
            s += b;
        return dim * s;
    }
};

void mult_sets(int dim, int first, int budget, std::vector<int>& cur,
               std::vector<std::vector<int>>& out)
{
    for (int b = first; dim * b <= budget; b += 2) {
        cur.push_back(b);
        out.push_back(cur);
        mult_sets(dim, b + 2, budget - dim * b, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<GlobalParameter> enumerate_parameters(int n)
{
    if (n < 1)
        throw ValidationError("rank must be positive");
    if (n > parameter_cap())
        throw ValidationError("rank " + std::to_string(n) + " exceeds the enumeration cap " +
                              std::to_string(parameter_cap()));
    const int total = 2 * n + 1;
    std::vector<Block> blocks;
    for (int dim = total; dim >= 1; --dim) {
        for (Symmetry sym : {Symmetry::Orthogonal, Symmetry::Symplectic}) {
            if (sym == Symmetry::Symplectic && dim % 2 != 0)
                continue;
            std::vector<std::vector<int>> sets;
            std::vector<int> cur;
            mult_sets(dim, sym == Symmetry::Orthogonal ? 1 : 2, total, cur, sets);
            for (auto& s : sets) {
                std::sort(s.begin(), s.end(), std::greater<>());
                blocks.push_back({dim, sym, s});
            }
        }
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
        if (x.dim != y.dim)
            return x.dim > y.dim;
        if (x.symmetry != y.symmetry)
            return x.symmetry < y.symmetry;
        return x.mults > y.mults;
    });

    std::vector<GlobalParameter> out;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int rest) {
        if (rest == 0) {
            GlobalParameter psi;
            psi.n = n;
            int label = 0;
            for (std::size_t idx : chosen) {
                const Block& bl = blocks[idx];
                std::string name = "t" + std::to_string(++label);
                for (int b : bl.mults)
                    psi.simples.push_back({bl.dim, b, bl.symmetry, name});
            }
            out.push_back(std::move(psi));
            return;
        }
        for (std::size_t i = from; i < blocks.size(); ++i) {
            int w = blocks[i].weight();
            if (w > rest)
                continue;
            chosen.push_back(i);
            rec(i, rest - w);
            chosen.pop_back();
        }
    };
    rec(0, total);
    return out;
}

} // namespace bvcalc
