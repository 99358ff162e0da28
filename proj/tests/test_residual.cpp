#include "bvcalc/error.hpp"
#include "bvcalc/residual.hpp"
#include "bvcalc/text.hpp"

#include <doctest.h>

using namespace bvcalc;
using P = Partition;
using Q = Rational;

namespace {

ExponentVector ev(std::initializer_list<Q> xs) { return ExponentVector(std::vector<Q>(xs)); }

Q half(int p) { return Q(p, 2); }

} // namespace

TEST_CASE("speh exponents")
{
    CHECK(speh_exponents(1) == ev({Q(0)}));
    CHECK(speh_exponents(2) == ev({half(-1), half(1)}));
    CHECK(speh_exponents(3) == ev({Q(-1), Q(0), Q(1)}));
    for (int b = 1; b <= 20; ++b) {
        const auto e = speh_exponents(b).entries();
        REQUIRE(static_cast<int>(e.size()) == b);
        for (int j = 0; j < b; ++j)
            REQUIRE(e[j] == half(2 * j + 1 - b));
    }
    CHECK_THROWS_AS(speh_exponents(0), ValidationError);
    CHECK_THROWS_AS(ExponentVector({Q(1, 3)}), ValidationError);
}

TEST_CASE("twist and square integrability")
{
    CHECK(twist(ev({half(-1), half(1)}), Q(-1)) == ev({half(-3), half(-1)}));
    CHECK(twist(speh_exponents(4), Q(0)) == speh_exponents(4));
    CHECK(twist(ev({Q(0)}), half(-1)) == ev({half(-1)}));
    CHECK(langlands_square_integrable(ev({half(-3), half(-1)})));
    CHECK_FALSE(langlands_square_integrable(ev({half(-1), half(1)})));
    CHECK_FALSE(langlands_square_integrable(ev({Q(0)})));
    CHECK(langlands_square_integrable(ExponentVector{}));
    CHECK_FALSE(ExponentVector{}.max().has_value());
}

TEST_CASE("exponent chain")
{
    CHECK(exponent_chain_check(2, {Q(1, 4), Q(-1, 4)}));
    CHECK(exponent_chain_check(1, {Q(0)}));
    CHECK_THROWS_AS(exponent_chain_check(1, {Q(3, 5)}), ValidationError);
    CHECK_THROWS_AS(exponent_chain_check(2, {Q(-1, 4), Q(1, 4)}), ValidationError);
    CHECK_THROWS_AS(exponent_chain_check(1, {Q(1, 2)}), ValidationError);

    // Direct evaluation of the concatenated shells.
    std::vector<std::vector<Q>> samples{{Q(0)}, {Q(1, 3), Q(-1, 3)}, {Q(2, 5), Q(1, 5), Q(-2, 5)}, {Q(-1, 7)}};
    for (int b = 1; b <= 5; ++b)
        for (const auto& al : samples) {
            std::vector<Q> chain;
            for (int j = b; j >= 1; --j)
                for (const auto& x : al)
                    chain.push_back(Q(2 * j - 1, 2) + x);
            bool want = chain.back() > Q(0);
            for (std::size_t i = 1; i < chain.size(); ++i)
                want = want && chain[i - 1] > chain[i];
            REQUIRE(exponent_chain_check(b, al) == want);
        }
}

TEST_CASE("constant term profiles")
{
    auto i3 = constant_term_profile({FamilyKind::CaseI, 3, 3, 2, 0}, 3);
    CHECK(i3.twist == Q(-2));
    CHECK(i3.remainder.kind == RemainderKind::Sigma);
    CHECK(i3.gl_rank == 9);

    auto ii = constant_term_profile({FamilyKind::CaseII, 3, 3, 2, 0}, 3);
    CHECK(ii.twist == Q(-2));
    CHECK(ii.remainder.kind == RemainderKind::ETauSigma);
    CHECK(constant_term_profile({FamilyKind::CaseII, 3, 3, 2, 0}, 4).remainder.kind == RemainderKind::Sigma);

    auto iii = constant_term_profile({FamilyKind::CaseIII, 2, 3, 2, 0}, 1);
    CHECK(iii.twist == half(-5));
    CHECK(iii.remainder == Remainder{RemainderKind::Family, {FamilyKind::CaseIII, 2, 2, 2, 0}});

    CHECK_THROWS_AS(constant_term_profile({FamilyKind::Metaplectic, 0, 3, 0, 2}, 3), ValidationError);
    CHECK(constant_term_profile({FamilyKind::Metaplectic, 0, 3, 0, 2}, 2).remainder.kind == RemainderKind::SigmaTilde);
    CHECK_THROWS_AS(constant_term_profile({FamilyKind::CaseI, 3, 3, 2, 0}, 4), ValidationError);
    CHECK_THROWS_AS(constant_term_profile({FamilyKind::CaseI, 3, 3, 2, 0}, 0), ValidationError);
}

TEST_CASE("profile twists follow the tables and increase with i")
{
    for (int b = 1; b <= 5; ++b) {
        const std::vector<std::pair<Family, int>> fams{
            {{FamilyKind::CaseI, 2, b, 1, 0}, 2 * b + 1},
            {{FamilyKind::CaseII, 3, b, 2, 0}, 2 * b + 1},
            {{FamilyKind::CaseIII, 2, b, 1, 0}, 2 * b},
            {{FamilyKind::MetaplecticSpeh, 0, b, 0, 2}, 2 * b},
        };
        for (const auto& [f, top] : fams) {
            int depth = constant_term_depth(f);
            REQUIRE(depth >= 1);
            for (int i = 1; i <= depth; ++i) {
                auto pr = constant_term_profile(f, i);
                REQUIRE(pr.speh_mult == i);
                REQUIRE(pr.twist == Q(i - top, 2));
                if (i > 1)
                    REQUIRE(pr.twist > constant_term_profile(f, i - 1).twist);
            }
        }
    }
    CHECK(constant_term_depth({FamilyKind::CaseII, 3, 2, 2, 0}) == 3);
    CHECK(constant_term_depth({FamilyKind::Metaplectic, 0, 1, 0, 2}) == 0);
}

TEST_CASE("descent analysis examples")
{
    CaseTag t{CaseKind::CaseI, 2, 1, 2};
    CHECK(descent_rank_bound(t) == 2);
    CHECK(descent_block_size(t) == 2);
    auto v = descent_term_analysis(t, true, 2);
    REQUIRE(v.size() == 3);
    CHECK(v[0].status == DescentStatus::Survives);
    CHECK(v[1].status == DescentStatus::VanishCuspidalSupport);
    CHECK(v[2].status == DescentStatus::VanishPartitionBound);
    REQUIRE(v[2].witness.has_value());
    CHECK(v[2].witness->first == P{8});
    CHECK(v[2].witness->second == P{4, 2, 2});
    CHECK(descent_term_analysis(t, false, 2)[0].status == DescentStatus::SurvivesIfGeneric);

    auto w = descent_term_analysis({CaseKind::CaseI, 2, 2, 1}, true, 1);
    REQUIRE(w.size() == 2);
    CHECK(w[0].status == DescentStatus::VanishCuspidalSupport);
    CHECK(w[1].status == DescentStatus::VanishPartitionBound);

    CHECK_THROWS_AS(descent_term_analysis(t, true, 3), ValidationError);
    CHECK_THROWS_AS(descent_term_analysis(t, true, 0), ValidationError);
    CHECK_THROWS_AS(descent_term_analysis({CaseKind::Generic, 0, 0, 0}, true, 1), ValidationError);
    CHECK_THROWS_AS(DescentTermVerdict::partition_bound(1, 1, 1, P{2, 2}, P{4}), InvariantBreach);
}

TEST_CASE("whittaker depth")
{
    Family f{FamilyKind::CaseI, 1, 1, 2, 0};
    CHECK(whittaker_depth_vanishing(f, 5) == WhittakerVerdict::Vanishes);
    CHECK(whittaker_depth_vanishing(f, 9) == WhittakerVerdict::Vanishes);
    CHECK(whittaker_depth_vanishing(f, 4) == WhittakerVerdict::EqualsShifted);
    CHECK(whittaker_depth_vanishing(f, 1) == WhittakerVerdict::Unconstrained);
    Family g{FamilyKind::MetaplecticSpeh, 0, 2, 0, 1};
    CHECK(whittaker_depth_vanishing(g, 3) == WhittakerVerdict::Vanishes);
    CHECK(whittaker_depth_vanishing(g, 2) == WhittakerVerdict::EqualsShifted);
    CHECK_THROWS_AS(whittaker_depth_vanishing(f, 0), ValidationError);
    CHECK_THROWS_AS(whittaker_depth_vanishing({FamilyKind::CaseIII, 2, 1, 1, 0}, 3), ValidationError);
}
