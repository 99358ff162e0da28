#include "oracles.hpp"

#include "bvcalc/error.hpp"
#include "bvcalc/roots.hpp"
#include "bvcalc/text.hpp"

#include <doctest.h>

using namespace bvcalc;
using P = Partition;

namespace {

RootC R(const char* s) { return parse_root(s); }

RootSet roots(std::initializer_list<const char*> list)
{
    RootSet out;
    for (auto s : list)
        out.insert(R(s));
    return out;
}

// Roots of weight >= 2 straight from the coefficient pairing.
RootSet weight_filter(int N, const WeightVector& w)
{
    RootSet out;
    for (const auto& r : all_roots(N)) {
        int s = 0;
        for (auto [i, c] : r.coeffs())
            s += c * w.e_weight(i);
        if (s >= 2)
            out.insert(r);
    }
    return out;
}

} // namespace

TEST_CASE("root text and construction")
{
    CHECK(R("e1+e3") == RootC::e_plus_e(1, 3));
    CHECK(R("-e3-e2") == RootC::e_plus_e(2, 3).negated());
    CHECK(R("e2-e1") == RootC::e_minus_e(1, 2).negated());
    CHECK(R("2e4") == RootC::two_e(4));
    CHECK(format_root(R("-2e1")) == "-2e1");
    CHECK_THROWS_AS(RootC::e_minus_e(2, 2), ValidationError);
    CHECK_THROWS_AS(parse_root("e1+"), ValidationError);
    CHECK(all_roots(3).size() == 18);
    CHECK(root_sum(R("e1-e2"), R("e2-e3")) == R("e1-e3"));
    CHECK(root_sum(R("e1-e2"), R("e1+e2")) == R("2e1"));
    CHECK_FALSE(root_sum(R("e1-e2"), R("e3-e4")).has_value());
}

TEST_CASE("torus weights")
{
    CHECK(torus_weights_from_partition(P{3, 3}, Arrangement::PaperConcat).weights() ==
          std::vector<int>{2, 0, -2, 2, 0, -2});
    CHECK(torus_weights_from_partition(P{2, 2}, Arrangement::Dominant).weights() ==
          std::vector<int>{1, 1, -1, -1});
    CHECK(torus_weights_from_partition(P{2}, Arrangement::PaperConcat).weights() == std::vector<int>{1, -1});
    CHECK_THROWS_AS(torus_weights_from_partition(P{3, 1}, Arrangement::Dominant), ValidationError);
    CHECK_THROWS_AS(WeightVector({1, 1}), ValidationError);
}

TEST_CASE("root_weight")
{
    WeightVector w({1, 1, -1, -1});
    CHECK(root_weight(R("e1+e2"), w) == 2);
    CHECK(root_weight(R("2e2"), w) == 2);
    CHECK(root_weight(R("-2e2"), w) == -2);
    WeightVector w3({2, 0, -2, 2, 0, -2});
    CHECK(root_weight(R("e1-e2"), w3) == 2);
}

TEST_CASE("v_p2 examples")
{
    CHECK(v_p2(P{2, 2}, Arrangement::Dominant) == roots({"e1+e2", "2e1", "2e2"}));
    CHECK(v_p2(P{2}, Arrangement::Dominant) == roots({"2e1"}));
    CHECK(v_p2(P{1, 1}, Arrangement::Dominant).empty());
}

TEST_CASE("v_p2 closure and arrangement bridge up to size 12")
{
    for (int n = 2; n <= 12; n += 2)
        for (const auto& raw : oracle::filtered(n, oracle::symplectic)) {
            P p = oracle::from_parts(raw);
            auto wc = torus_weights_from_partition(p, Arrangement::PaperConcat);
            auto wd = torus_weights_from_partition(p, Arrangement::Dominant);
            RootSet vc = v_p2(p, Arrangement::PaperConcat), vd = v_p2(p, Arrangement::Dominant);
            REQUIRE(vc == weight_filter(n / 2, wc));
            REQUIRE(vd == weight_filter(n / 2, wd));
            REQUIRE(bracket_closed(vc));
            REQUIRE(bracket_closed(vd));
            REQUIRE(vc.size() == vd.size());
            auto w = weight_matching_permutation(wc, wd);
            REQUIRE(weyl_conjugate_roots(w, vc) == vd);
        }
}

TEST_CASE("weyl conjugation")
{
    auto s = roots({"e1-e2", "2e3", "e1+e3"});
    CHECK(weyl_conjugate_roots(SignedPermutation::identity(3), s) == s);
    SignedPermutation swap({2, 1});
    CHECK(weyl_conjugate_roots(swap, roots({"e1-e2"})) == roots({"e2-e1"}));
    SignedPermutation w = parse_signed_permutation("[2,-1,3]");
    CHECK(w.apply(R("e1+e2")) == R("e2-e1"));
    CHECK(w.apply(R("2e2")) == R("-2e1"));
    CHECK(w.inverse().apply(w.apply(R("e1+e3"))) == R("e1+e3"));
    CHECK_THROWS_AS(SignedPermutation({1, 1}), ValidationError);
}

TEST_CASE("one-parameter matrices")
{
    auto g = one_parameter_matrix(R("2e1"), Rational(5, 3), 1);
    CHECK(g.at(1, 2) == Rational(5, 3));
    CHECK(g.at(2, 1) == Rational(0));
    auto h = one_parameter_matrix(R("e1-e2"), Rational(1), 2);
    CHECK(h.at(1, 2) == Rational(1));
    CHECK(h.at(3, 4) == Rational(-1));
    CHECK(one_parameter_matrix(R("e1+e2"), Rational(0), 2).is_identity());

    const Rational s(2, 3), t(-7, 5);
    for (const auto& r : all_roots(3)) {
        auto x = one_parameter_matrix(r, s, 3);
        REQUIRE(preserves_form(x));
        REQUIRE(support(x) == RootSet{r});
        REQUIRE(x * one_parameter_matrix(r, t, 3) == one_parameter_matrix(r, s + t, 3));
        REQUIRE((x * x.inverse()).is_identity());
    }
}

TEST_CASE("commutators")
{
    auto y = one_parameter_matrix(R("e2-e3"), Rational(4), 3);
    CHECK(commutator(UnipotentElement::identity(3), y).is_identity());

    auto c = commutator(one_parameter_matrix(R("e1+e3"), Rational(2), 3),
                        one_parameter_matrix(R("-e3-e2"), Rational(3), 3));
    CHECK(preserves_form(c));
    CHECK(support(c).count(R("e1-e2")));
    auto coeff = root_coefficient(c, R("e1-e2"));
    CHECK((coeff == Rational(6) || coeff == Rational(-6)));

    // Chevalley commutator relation: trivial exactly when no positive
    // combination is a root.
    int trivial = 0;
    for (const auto& a : all_roots(3))
        for (const auto& b : all_roots(3)) {
            if (a == b || a == b.negated())
                continue;
            auto cab = commutator(one_parameter_matrix(a, Rational(1), 3), one_parameter_matrix(b, Rational(1), 3));
            bool sum_root = root_sum(a, b).has_value();
            REQUIRE(cab.is_identity() == !sum_root);
            if (!sum_root)
                ++trivial;
        }
    CHECK(trivial > 0);
}

TEST_CASE("exchange sequence examples")
{
    auto d11 = exchange_sequences(1, 1);
    CHECK(d11.N == 3);
    CHECK(d11.stages[0].x_seq == std::vector<RootC>{R("e1+e3")});
    CHECK(d11.stages[0].y_seq == std::vector<RootC>{R("-e3-e2")});
    CHECK(d11.stages[1].x_seq.size() == 1);
    CHECK(d11.char_support == roots({"e1-e2", "e2-e3"}));
    auto d12 = exchange_sequences(1, 2);
    CHECK(d12.stages[0].x_seq.size() == 3);
    CHECK(d12.stages[1].x_seq.size() == 5);
    CHECK(exchange_lengths(1, 2) == std::vector<int>{3, 5});
}

TEST_CASE("exchange sequence identities for k,b <= 3")
{
    for (int k = 1; k <= 3; ++k)
        for (int b = 1; b <= 3; ++b) {
            auto d = exchange_sequences(k, b);
            auto len = exchange_lengths(k, b);
            REQUIRE(static_cast<int>(d.stages.size()) == 2 * k);
            std::size_t xs = 0, ys = 0;
            for (int i = 1; i <= 2 * k; ++i) {
                const auto& st = d.stages[i - 1];
                int m = i <= k ? i + (2 * b - 2) * i : (2 * k + 1 - i) + (2 * b - 2) * i;
                REQUIRE(len[i - 1] == m);
                REQUIRE(static_cast<int>(st.x_seq.size()) == m);
                xs += st.x_seq.size();
                ys += st.y_seq.size();
                for (std::size_t j = 0; j < st.x_seq.size(); ++j)
                    REQUIRE(root_sum(st.x_seq[j], st.y_seq[j]) == RootC::e_minus_e(i, i + 1));
            }
            REQUIRE(xs == ys);

            for (const auto& pp : exchange_sequences_as_printed(k, b)) {
                FormalRoot sum = pp.alpha;
                sum.terms.insert(sum.terms.end(), pp.beta.terms.begin(), pp.beta.terms.end());
                REQUIRE(sum.collect() == std::map<int, int>{{pp.i, 1}, {pp.i + 1, -1}});
            }
        }
}

TEST_CASE("exchange verification")
{
    auto d11 = exchange_sequences(1, 1);
    CHECK(verify_exchange_quadruple(d11, d11.N, 1).all_pass());
    CHECK(verify_exchange_quadruple(d11, d11.N, 2).all_pass());

    auto d12 = exchange_sequences(1, 2);
    auto first = verify_exchange_quadruple(d12, d12.N, 1);
    for (const auto& c : first.conditions)
        CHECK_MESSAGE(c.pass, c.name);

    // The second stage needs a different pair order.
    CHECK_FALSE(verify_exchange_quadruple(d12, d12.N, 2).all_pass());
    auto order = exchange_step_order(d12, d12.N, 2);
    REQUIRE(order.has_value());
    CHECK(verify_exchange_quadruple(reorder_stage(d12, 2, *order), d12.N, 2).all_pass());

    auto cut = d12;
    cut.stages[0].y_seq.pop_back();
    auto rep = verify_exchange_quadruple(cut, cut.N, 1);
    CHECK_FALSE(rep.all_pass());
    for (const auto& c : rep.conditions)
        if (c.name.rfind("(d)", 0) == 0)
            CHECK_FALSE(c.pass);
}
