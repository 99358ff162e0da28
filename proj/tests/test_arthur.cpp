#include "oracles.hpp"

#include "bvcalc/arthur.hpp"
#include "bvcalc/error.hpp"
#include "bvcalc/text.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>

using namespace bvcalc;
using P = Partition;

namespace {

SimpleParameter simple(int dim, int mult, Symmetry s, std::string label)
{
    return SimpleParameter{dim, mult, s, std::move(label)};
}

constexpr Symmetry O = Symmetry::Orthogonal;
constexpr Symmetry S = Symmetry::Symplectic;

GlobalParameter with_ones(std::vector<SimpleParameter> head, int ones, int n)
{
    for (int i = 1; i <= ones; ++i)
        head.push_back(simple(1, 1, O, "x" + std::to_string(i)));
    return GlobalParameter{head, n};
}

bool has_violation(const GlobalParameter& psi, const std::string& prefix)
{
    auto v = validate(psi);
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

// Partition of a parameter by direct multiset construction.
oracle::Parts p_oracle(const GlobalParameter& psi)
{
    oracle::Parts out;
    for (const auto& s : psi.simples)
        out.insert(out.end(), s.dim, s.mult);
    std::sort(out.rbegin(), out.rend());
    return out;
}

} // namespace

TEST_CASE("validate")
{
    CHECK(validate(GlobalParameter{{simple(3, 3, O, "t")}, 4}).empty());
    CHECK(has_violation(GlobalParameter{{simple(2, 3, S, "t")}, 3}, "parity"));
    CHECK(has_violation(GlobalParameter{{simple(1, 1, O, "t")}, 1}, "dimension sum"));
    CHECK(has_violation(GlobalParameter{{simple(1, 1, O, "a"), simple(1, 1, O, "a"), simple(1, 1, O, "b")}, 1},
                        "distinctness"));
    CHECK(has_violation(GlobalParameter{{}, 1}, "nonempty"));
    CHECK(has_violation(GlobalParameter{{simple(3, 2, S, "t")}, 3}, "symplectic-dimension"));
    CHECK_THROWS_AS(require_valid(GlobalParameter{{simple(1, 1, O, "t")}, 1}), ValidationError);
}

TEST_CASE("p_of_psi")
{
    CHECK(p_of_psi(GlobalParameter{{simple(3, 3, O, "t")}, 4}) == P{3, 3, 3});
    CHECK(p_of_psi(with_ones({simple(2, 3, O, "t")}, 3, 4)) == P{3, 3, 1, 1, 1});
    CHECK(p_of_psi(with_ones({simple(2, 2, S, "t")}, 3, 3)) == P{2, 2, 1, 1, 1});
    CHECK_THROWS_AS(p_of_psi(GlobalParameter{{simple(1, 1, O, "t")}, 1}), ValidationError);
}

TEST_CASE("classify_case")
{
    CHECK(classify_case(GlobalParameter{{simple(3, 3, O, "t")}, 4}) == CaseTag{CaseKind::CaseI, 3, 1, 1});
    CHECK(classify_case(with_ones({simple(2, 3, O, "t"), simple(2, 1, O, "t")}, 3, 5)) ==
          CaseTag{CaseKind::CaseII, 2, 1, 1});
    CHECK(classify_case(with_ones({simple(2, 2, S, "t")}, 3, 3)) == CaseTag{CaseKind::CaseIII, 2, 1, 1});
    // A same-dimension simple with a different label is not a partner.
    CHECK(classify_case(with_ones({simple(2, 3, O, "t"), simple(2, 1, O, "u")}, 3, 5)).kind == CaseKind::CaseI);
    CHECK(classify_case(with_ones({}, 5, 2)).kind == CaseKind::Generic);
    CHECK(classify_case(GlobalParameter{{simple(1, 3, O, "t"), simple(1, 5, O, "u"), simple(1, 1, O, "v")}, 4}).kind ==
          CaseKind::Other);
}

TEST_CASE("eta examples")
{
    CHECK(eta_of_psi(make_case_parameter({CaseKind::CaseI, 3, 1, 1})) == P{3, 3, 2});
    CHECK(eta_of_psi(make_case_parameter({CaseKind::CaseII, 2, 1, 1})) == P{6, 2, 2});
    CHECK(eta_of_psi(make_case_parameter({CaseKind::CaseIII, 2, 1, 1})) == P{4, 2});
}

TEST_CASE("is_generic")
{
    CHECK(is_generic(with_ones({}, 5, 2)));
    CHECK_FALSE(is_generic(GlobalParameter{{simple(3, 3, O, "t")}, 4}));
    CHECK_FALSE(is_generic(with_ones({simple(2, 2, S, "t")}, 3, 3)));
}

TEST_CASE("enumerate_parameters small ranks")
{
    auto n1 = enumerate_parameters(1);
    auto shape_present = [](const std::vector<GlobalParameter>& all, std::vector<std::tuple<int, int, Symmetry>> want) {
        std::sort(want.begin(), want.end());
        for (const auto& psi : all) {
            std::vector<std::tuple<int, int, Symmetry>> got;
            for (const auto& s : psi.simples)
                got.emplace_back(s.dim, s.mult, s.symmetry);
            std::sort(got.begin(), got.end());
            if (got == want)
                return true;
        }
        return false;
    };
    CHECK(shape_present(n1, {{3, 1, O}}));
    CHECK(shape_present(n1, {{1, 3, O}}));
    CHECK(shape_present(n1, {{1, 1, O}, {1, 1, O}, {1, 1, O}}));
    for (const auto& psi : n1)
        for (const auto& s : psi.simples)
            CHECK_FALSE((s.symmetry == S && s.mult % 2 == 1));
    CHECK(shape_present(enumerate_parameters(2), {{2, 2, S}, {1, 1, O}}));
    CHECK_THROWS_AS(enumerate_parameters(9), ValidationError);
    setenv("BVCALC_PARAMETER_CAP", "3", 1);
    CHECK_THROWS_AS(enumerate_parameters(4), ValidationError);
    unsetenv("BVCALC_PARAMETER_CAP");
}

TEST_CASE("enumerated parameters up to rank 8")
{
    int cases = 0;
    for (int n = 1; n <= 8; ++n) {
        auto all = enumerate_parameters(n);
        REQUIRE_FALSE(all.empty());
        for (const auto& psi : all) {
            REQUIRE(validate(psi).empty());
            P p = p_of_psi(psi);
            REQUIRE(p.parts() == p_oracle(psi));
            REQUIRE(is_orthogonal(p));
            REQUIRE(p.size() == 2 * n + 1);
            // eta_of_psi raises on any closed-form disagreement.
            P eta = eta_of_psi(psi);
            REQUIRE(is_special_symplectic(eta));
            REQUIRE(eta.size() == 2 * n);
            REQUIRE(eta.parts() == oracle::dual_via_transpose_first(p.parts()));
            auto tag = classify_case(psi);
            if (auto closed = eta_closed_form(tag)) {
                ++cases;
                REQUIRE(*closed == eta);
                REQUIRE(p_closed_form(tag) == p);
            }
            if (is_generic(psi))
                REQUIRE(eta == P{2 * n});
            for (auto ord : {Ordering::Dominance, Ordering::Lexicographic})
                REQUIRE(conjecture_bound_check(eta, psi, ord).status == BoundStatus::AchievesPart3);
        }
    }
    MESSAGE(cases << " enumerated parameters carry a case tag");
    CHECK(cases > 0);
}

TEST_CASE("conjecture_bound_check")
{
    auto psi = make_case_parameter({CaseKind::CaseI, 2, 1, 2});
    auto v = conjecture_bound_check(P{6, 1, 1}, psi, Ordering::Lexicographic);
    CHECK(v.status == BoundStatus::ForbiddenPart1);
    CHECK(v.ordering_used == Ordering::Lexicographic);
    CHECK(v.eta == P{4, 2, 2});
    CHECK(conjecture_bound_check(P{4, 2, 2}, psi, Ordering::Dominance).status == BoundStatus::AchievesPart3);
    CHECK(conjecture_bound_check(P{2, 2, 2, 2}, psi, Ordering::Dominance).status == BoundStatus::Allowed);
    CHECK_THROWS_AS(conjecture_bound_check(P{2, 2}, psi, Ordering::Dominance), ValidationError);
}

TEST_CASE("dominance-forbidden implies lex-forbidden")
{
    for (int n = 1; n <= 6; ++n)
        for (const auto& psi : enumerate_parameters(n))
            for (const auto& cand : enumerate_partitions(2 * n, ClassMask{true, false, false}))
                if (conjecture_bound_check(cand, psi, Ordering::Dominance).status == BoundStatus::ForbiddenPart1)
                    REQUIRE(conjecture_bound_check(cand, psi, Ordering::Lexicographic).status ==
                            BoundStatus::ForbiddenPart1);
}

TEST_CASE("reduce_parameter")
{
    auto r1 = reduce_parameter(make_case_parameter({CaseKind::CaseI, 2, 2, 1}), 1);
    CHECK(classify_case(r1) == CaseTag{CaseKind::CaseI, 2, 1, 1});
    auto r3 = reduce_parameter(make_case_parameter({CaseKind::CaseIII, 2, 1, 1}), 1);
    CHECK(is_generic(r3));
    CHECK(r3.simples.size() == 3);
    CHECK(r3.n == 1);
    auto r2 = reduce_parameter(make_case_parameter({CaseKind::CaseII, 2, 1, 1}), 2);
    CHECK(is_generic(r2));
    CHECK(r2.simples.size() == 3);
    CHECK_THROWS_AS(reduce_parameter(make_case_parameter({CaseKind::CaseI, 2, 2, 1}), 3), ValidationError);
    CHECK_THROWS_AS(reduce_parameter(make_case_parameter({CaseKind::CaseII, 2, 2, 1}), 2), ValidationError);
    CHECK_THROWS_AS(reduce_parameter(with_ones({}, 5, 2), 1), ValidationError);
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int l = 1; l <= b; ++l) {
                auto psi = reduce_parameter(make_case_parameter({CaseKind::CaseI, a, b, a}), l);
                REQUIRE(validate(psi).empty());
            }
}

TEST_CASE("parameter text round trip")
{
    auto psi = parse_parameter("2:3:O#t + 2:1:O#t + 1:1:O#a + 1:1:O#b + 1:1:O#c", 5);
    CHECK(psi.simples.size() == 5);
    CHECK(parse_parameter(format_parameter(psi), 5) == psi);
    auto unl = parse_parameter("1:1:O + 1:1:O + 1:1:O", 1);
    CHECK(validate(unl).empty());
    CHECK_THROWS_AS(parse_parameter("2:3:X", 3), ValidationError);
    CHECK_THROWS_AS(parse_parameter("2:3", 3), ValidationError);
}
