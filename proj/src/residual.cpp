#include "bvcalc/residual.hpp"

#include "bvcalc/error.hpp"
#include "bvcalc/text.hpp"

#include <algorithm>
#include <map>

namespace bvcalc {

ExponentVector::ExponentVector(std::vector<Rational> entries) : entries_(std::move(entries))
{
    for (const auto& e : entries_)
        if (e.denominator() > 2)
            throw ValidationError("exponent " + format_rational(e) + " is not a half-integer");
}

std::optional<Rational> ExponentVector::max() const
{
    if (entries_.empty())
        return std::nullopt;
    return *std::max_element(entries_.begin(), entries_.end());
}

ExponentVector speh_exponents(int b)
{
    if (b < 1)
        throw ValidationError("Speh exponents need b >= 1");
    std::vector<Rational> v;
    for (int j = 0; j < b; ++j)
        v.emplace_back(1 - b + 2 * j, 2);
    return ExponentVector(v);
}

ExponentVector twist(const ExponentVector& v, const Rational& s)
{
    std::vector<Rational> out;
    for (const auto& e : v.entries())
        out.push_back(e + s);
    return ExponentVector(out);
}

bool langlands_square_integrable(const ExponentVector& v)
{
    return std::all_of(v.entries().begin(), v.entries().end(), [](const Rational& e) { return e < 0; });
}

bool exponent_chain_check(int b, const std::vector<Rational>& alphas)
{
    if (b < 1)
        throw ValidationError("chain check needs b >= 1");
    const Rational half(1, 2);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > -half && alphas[i] < half))
            throw ValidationError("alpha " + format_rational(alphas[i]) + " outside (-1/2, 1/2)");
        if (i > 0 && !(alphas[i] < alphas[i - 1]))
            throw ValidationError("alphas are not strictly decreasing");
    }
    std::vector<Rational> chain;
    for (int j = b; j >= 1; --j)
        for (const auto& a : alphas)
            chain.push_back(Rational(2 * j - 1, 2) + a);
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!(chain[i] < chain[i - 1]))
            return false;
    return chain.empty() || chain.back() > 0;
}

std::string_view to_string(FamilyKind k)
{
    switch (k) {
    case FamilyKind::CaseI: return "CaseI";
    case FamilyKind::CaseII: return "CaseII";
    case FamilyKind::CaseIII: return "CaseIII";
    case FamilyKind::Metaplectic: return "Metaplectic";
    case FamilyKind::MetaplecticSpeh: return "MetaplecticSpeh";
    }
    return "?";
}

std::string format_family(const Family& f)
{
    std::string name(to_string(f.kind));
    if (f.kind == FamilyKind::Metaplectic || f.kind == FamilyKind::MetaplecticSpeh)
        return name + "(k=" + std::to_string(f.k) + ",b=" + std::to_string(f.b) + ")";
    return name + "(a=" + std::to_string(f.a) + ",b=" + std::to_string(f.b) + ",m=" + std::to_string(f.m) + ")";
}

std::string format_remainder(const Remainder& r)
{
    switch (r.kind) {
    case RemainderKind::Family: return format_family(r.family);
    case RemainderKind::Sigma: return "sigma";
    case RemainderKind::SigmaTilde: return "sigma~";
    case RemainderKind::ETauSigma: return "E(tau x sigma)";
    case RemainderKind::Trivial: return "trivial";
    }
    return "?";
}

namespace {

void require_family(const Family& f)
{
    bool ok = true;
    switch (f.kind) {
    case FamilyKind::CaseI: ok = f.a >= 1 && f.b >= 1 && f.m >= 0 && f.a <= 2 * f.m + 1; break;
    case FamilyKind::CaseII: ok = f.a >= 1 && f.b >= 1 && f.m >= 0; break;
    case FamilyKind::CaseIII: ok = f.a >= 2 && f.a % 2 == 0 && f.b >= 1 && f.m >= 0; break;
    case FamilyKind::Metaplectic: ok = f.k >= 1 && f.b >= 1; break;
    case FamilyKind::MetaplecticSpeh: ok = f.k >= 0 && f.b >= 1; break;
    }
    if (!ok)
        throw ValidationError("invalid family " + format_family(f));
}

} // namespace

int constant_term_depth(const Family& f)
{
    require_family(f);
    switch (f.kind) {
    case FamilyKind::CaseII: return f.b + 1;
    case FamilyKind::Metaplectic: return f.b - 1;
    default: return f.b;
    }
}

ConstantTermProfile constant_term_profile(const Family& f, int i)
{
    int depth = constant_term_depth(f);
    if (i < 1 || i > depth)
        throw ValidationError("index i=" + std::to_string(i) + " outside 1.." + std::to_string(depth) + " for " +
                              format_family(f));
    ConstantTermProfile p;
    p.speh_mult = i;
    const int b = f.b;
    auto reduced = [&](int nb) {
        Family g = f;
        g.b = nb;
        return Remainder{RemainderKind::Family, g};
    };
    switch (f.kind) {
    case FamilyKind::CaseI:
        p.gl_rank = f.a * i;
        p.twist = Rational(-(2 * b + 1 - i), 2);
        p.remainder = i < b ? reduced(b - i) : Remainder{RemainderKind::Sigma, {}};
        break;
    case FamilyKind::CaseII:
        p.gl_rank = f.a * i;
        p.twist = Rational(-(2 * b + 1 - i), 2);
        if (i < b)
            p.remainder = reduced(b - i);
        else
            p.remainder = {i == b ? RemainderKind::ETauSigma : RemainderKind::Sigma, {}};
        break;
    case FamilyKind::CaseIII:
        p.gl_rank = f.a * i;
        p.twist = Rational(-(2 * b - i), 2);
        p.remainder = i < b ? reduced(b - i) : Remainder{RemainderKind::Sigma, {}};
        break;
    case FamilyKind::Metaplectic:
        p.gl_rank = 2 * f.k * i;
        p.twist = Rational(-(2 * b - 1 - i), 2);
        p.remainder = i < b - 1 ? reduced(b - i) : Remainder{RemainderKind::SigmaTilde, {}};
        break;
    case FamilyKind::MetaplecticSpeh:
        p.gl_rank = (2 * f.k + 1) * i;
        p.twist = Rational(-(2 * b - i), 2);
        p.remainder = i < b ? reduced(b - i) : Remainder{RemainderKind::Trivial, {}};
        break;
    }
    return p;
}

std::string_view to_string(DescentStatus s)
{
    switch (s) {
    case DescentStatus::VanishCuspidalSupport: return "VanishCuspidalSupport";
    case DescentStatus::VanishPartitionBound: return "VanishPartitionBound";
    case DescentStatus::SurvivesIfGeneric: return "SurvivesIfGeneric";
    case DescentStatus::Survives: return "Survives";
    }
    return "?";
}

DescentTermVerdict DescentTermVerdict::partition_bound(int r, int k, int l, Partition test, Partition eta)
{
    if (lex_compare(test, eta) != Relation::Greater)
        throw InvariantBreach("partition-bound verdict without a lexicographically greater test partition: " +
                              format_partition(test) + " vs " + format_partition(eta));
    DescentTermVerdict v;
    v.r = r;
    v.k = k;
    v.l = l;
    v.status = DescentStatus::VanishPartitionBound;
    v.witness = std::make_pair(std::move(test), std::move(eta));
    return v;
}

namespace {

void require_descent_family(const CaseTag& t)
{
    if (t.kind != CaseKind::CaseI && t.kind != CaseKind::CaseII && t.kind != CaseKind::CaseIII)
        throw ValidationError("descent analysis needs CaseI, CaseII or CaseIII");
}

Partition hook(int head, int ones)
{
    if (ones < 0)
        throw InvariantBreach("negative tail in a test partition");
    std::vector<int> raw(static_cast<std::size_t>(ones), 1);
    raw.push_back(head);
    return Partition::normalize(raw);
}

// Head of the test partition for the Fourier-Jacobi index shifted by j.
int test_head(const CaseTag& t, int j)
{
    switch (t.kind) {
    case CaseKind::CaseI: return 2 * t.m + 2 * j;
    case CaseKind::CaseII: return 2 * t.m + 2 * t.a + 2 * j;
    default: return t.a + 2 * t.m + 2 * j;
    }
}

} // namespace

int descent_rank_bound(const CaseTag& t)
{
    require_descent_family(t);
    return t.kind == CaseKind::CaseIII ? t.a * (2 * t.b - 1) / 2 : t.a * t.b;
}

int descent_block_size(const CaseTag& t)
{
    require_descent_family(t);
    return t.a;
}

std::vector<DescentTermVerdict> descent_term_analysis(const CaseTag& t, bool sigma_generic, int r)
{
    require_descent_family(t);
    GlobalParameter psi = make_case_parameter(t);
    const int bound = descent_rank_bound(t);
    if (r < 1 || r > bound)
        throw ValidationError("r=" + std::to_string(r) + " outside 1.." + std::to_string(bound));
    const int a = t.a;
    const int lmax = t.kind == CaseKind::CaseII ? t.b + 1 : t.b;
    const Partition eta = eta_of_psi(psi);
    std::map<int, Partition> reduced_eta;

    std::vector<DescentTermVerdict> out;
    for (int k = 0; k <= r; ++k) {
        DescentTermVerdict v;
        v.r = r;
        v.k = k;
        if (k == r) {
            Partition test = hook(test_head(t, r), eta.size() - test_head(t, r));
            if (lex_compare(test, eta) == Relation::Greater) {
                out.push_back(DescentTermVerdict::partition_bound(r, k, 0, test, eta));
                continue;
            }
            v.status = DescentStatus::Survives;
            v.witness = std::make_pair(test, eta);
            v.note = "test partition not lexicographically above eta";
            out.push_back(v);
            continue;
        }
        int d = r - k;
        if (d % a != 0 || d / a < 1 || d / a > lmax) {
            v.status = DescentStatus::VanishCuspidalSupport;
            out.push_back(v);
            continue;
        }
        int l = d / a;
        v.l = l;
        if (k == 0) {
            v.status = sigma_generic ? DescentStatus::Survives : DescentStatus::SurvivesIfGeneric;
            out.push_back(v);
            continue;
        }
        auto it = reduced_eta.find(l);
        if (it == reduced_eta.end())
            it = reduced_eta.emplace(l, eta_of_psi(reduce_parameter(psi, l))).first;
        const Partition& eta_l = it->second;
        Partition test = hook(test_head(t, k), eta_l.size() - test_head(t, k));
        if (lex_compare(test, eta_l) == Relation::Greater) {
            out.push_back(DescentTermVerdict::partition_bound(r, k, l, test, eta_l));
            continue;
        }
        v.status = DescentStatus::Survives;
        v.witness = std::make_pair(test, eta_l);
        v.note = "test partition not lexicographically above eta";
        out.push_back(v);
    }
    return out;
}

std::string_view to_string(WhittakerVerdict v)
{
    switch (v) {
    case WhittakerVerdict::Vanishes: return "Vanishes";
    case WhittakerVerdict::EqualsShifted: return "EqualsShifted";
    case WhittakerVerdict::Unconstrained: return "Unconstrained";
    }
    return "?";
}

WhittakerVerdict whittaker_depth_vanishing(const Family& f, int p)
{
    require_family(f);
    if (p < 1)
        throw ValidationError("depth p must be positive");
    int threshold = 0;
    if (f.kind == FamilyKind::CaseI)
        threshold = 2 * f.m + 1;
    else if (f.kind == FamilyKind::MetaplecticSpeh)
        threshold = 2 * f.k + 1;
    else
        throw ValidationError("no Whittaker-depth statement for " + format_family(f));
    if (p >= threshold)
        return WhittakerVerdict::Vanishes;
    if (p == threshold - 1)
        return WhittakerVerdict::EqualsShifted;
    return WhittakerVerdict::Unconstrained;
}

} // namespace bvcalc
