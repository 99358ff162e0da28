#include "bvcalc/cli.hpp"

#include "bvcalc/arthur.hpp"
#include "bvcalc/error.hpp"
#include "bvcalc/partition.hpp"
#include "bvcalc/residual.hpp"
#include "bvcalc/roots.hpp"
#include "bvcalc/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>

namespace bvcalc {

namespace {

using json = nlohmann::ordered_json;

json to_json(const Partition& p)
{
    return p.parts();
}

Partition partition_from(const json& j)
{
    return Partition::normalize(j.get<std::vector<int>>());
}

std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

std::string join(const std::vector<std::string>& lines, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        out += (i ? sep : "") + lines[i];
    return out;
}

std::vector<std::string> render_lines(const json& r, bool compact);

std::string render(const json& r, bool compact)
{
    std::string out;
    for (const auto& l : render_lines(r, compact))
        out += l + "\n";
    return out;
}

std::vector<std::string> render_lines(const json& r, bool compact)
{
    const std::string kind = r.at("kind");
    auto part = [&](const json& j) { return format_partition(partition_from(j), compact); };
    std::vector<std::string> out;

    if (kind == "partition") {
        out.push_back(part(r["value"]));
    } else if (kind == "partitions") {
        for (const auto& p : r["values"])
            out.push_back(part(p));
        out.push_back("count=" + std::to_string(r["values"].size()));
    } else if (kind == "classification") {
        out.push_back("symplectic=" + yes_no(r["symplectic"]) + " orthogonal=" + yes_no(r["orthogonal"]) +
                      " special_symplectic=" + yes_no(r["special_symplectic"]));
    } else if (kind == "relation" || kind == "verdict") {
        out.push_back(r["value"].get<std::string>());
    } else if (kind == "boolean") {
        out.push_back(yes_no(r["value"]));
    } else if (kind == "validation") {
        if (r["violations"].empty())
            out.push_back("valid");
        for (const auto& v : r["violations"])
            out.push_back(v.get<std::string>());
    } else if (kind == "parameter") {
        out.push_back(r["value"].get<std::string>());
    } else if (kind == "parameters") {
        for (const auto& p : r["values"])
            out.push_back(p.get<std::string>());
        out.push_back("count=" + std::to_string(r["values"].size()));
    } else if (kind == "case") {
        std::string line = r["case"];
        if (r.contains("a"))
            line += " a=" + std::to_string(r["a"].get<int>()) + " b=" + std::to_string(r["b"].get<int>()) +
                    " m=" + std::to_string(r["m"].get<int>());
        out.push_back(line);
    } else if (kind == "bound") {
        out.push_back(r["status"].get<std::string>() + " order=" + r["ordering"].get<std::string>() +
                      " eta=" + part(r["eta"]));
    } else if (kind == "exponents") {
        std::vector<Rational> v;
        for (const auto& e : r["values"])
            v.push_back(parse_rational(e.get<std::string>()));
        std::string line = format_rationals(v);
        if (r.contains("max"))
            line += " max=" + (r["max"].is_null() ? std::string("none") : r["max"].get<std::string>());
        out.push_back(line);
    } else if (kind == "profiles") {
        out.push_back(r["family"].get<std::string>() + " depth=" + std::to_string(r["depth"].get<int>()));
        for (const auto& p : r["rows"])
            out.push_back("i=" + std::to_string(p["i"].get<int>()) + " gl=" + std::to_string(p["gl_rank"].get<int>()) +
                          " twist=" + p["twist"].get<std::string>() + " remainder=" + p["remainder"].get<std::string>());
    } else if (kind == "descent") {
        out.push_back("rank_bound=" + std::to_string(r["rank_bound"].get<int>()) +
                      " block_size=" + std::to_string(r["block_size"].get<int>()));
        for (const auto& v : r["verdicts"]) {
            std::string line = "k=" + std::to_string(v["k"].get<int>()) + " " + v["status"].get<std::string>();
            if (v["l"].get<int>() > 0)
                line += " l=" + std::to_string(v["l"].get<int>());
            if (v.contains("test"))
                line += " test=" + part(v["test"]) + " eta=" + part(v["eta"]);
            if (!v["note"].get<std::string>().empty())
                line += " (" + v["note"].get<std::string>() + ")";
            out.push_back(line);
        }
    } else if (kind == "roots") {
        RootSet s;
        for (const auto& x : r["values"])
            s.insert(parse_root(x.get<std::string>()));
        out.push_back(format_root_set(s));
    } else if (kind == "weights") {
        std::string line = "(";
        bool first = true;
        for (const auto& w : r["values"]) {
            line += (first ? "" : ",") + std::to_string(w.get<int>());
            first = false;
        }
        out.push_back(line + ")");
    } else if (kind == "sequences") {
        out.push_back("N=" + std::to_string(r["N"].get<int>()) + " C=" + r["c_roots"].get<std::string>() +
                      " character=" + r["char_support"].get<std::string>());
        for (const auto& s : r["stages"]) {
            std::string line = "stage " + std::to_string(s["stage"].get<int>()) + ":";
            for (const auto& p : s["pairs"])
                line += " " + p[0].get<std::string>() + "|" + p[1].get<std::string>();
            out.push_back(line);
        }
    } else if (kind == "printed_sequences") {
        for (const auto& p : r["pairs"])
            out.push_back("i=" + std::to_string(p["i"].get<int>()) + " j=" + std::to_string(p["j"].get<int>()) +
                          " range=" + std::to_string(p["range"].get<int>()) + " alpha=" + p["alpha"].get<std::string>() +
                          " beta=" + p["beta"].get<std::string>() + " sum=" + p["sum"].get<std::string>());
    } else if (kind == "exchange") {
        std::string order;
        for (const auto& o : r["order"])
            order += (order.empty() ? "" : ",") + std::to_string(o.get<int>());
        out.push_back("stage " + std::to_string(r["stage"].get<int>()) + " order " + order);
        for (const auto& c : r["conditions"]) {
            std::string line = c["name"].get<std::string>() + ": " + (c["pass"].get<bool>() ? "PASS" : "FAIL");
            for (const auto& w : c["witnesses"])
                line += "; " + w.get<std::string>();
            out.push_back(line);
        }
        out.push_back(r["pass"].get<bool>() ? "all conditions hold" : "some condition fails");
    } else if (kind == "reproduce") {
        for (const auto& row : r["rows"]) {
            std::string line = (row["pass"].get<bool>() ? "PASS " : "FAIL ") + row["id"].get<std::string>();
            if (!row["pass"].get<bool>())
                line += ": expected '" + row["expected"].get<std::string>() + "' got '" +
                        row["got"].get<std::string>() + "'";
            out.push_back(line);
        }
        out.push_back(std::to_string(r["passed"].get<int>()) + "/" + std::to_string(r["total"].get<int>()) +
                      " golden cases pass");
    } else {
        throw InvariantBreach("no renderer for record kind " + kind);
    }
    return out;
}

json rationals_json(const std::vector<Rational>& v)
{
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(format_rational(x));
    return arr;
}

json roots_json(const RootSet& s)
{
    json arr = json::array();
    for (const auto& r : s)
        arr.push_back(format_root(r));
    return arr;
}

Ordering parse_ordering(const std::string& s)
{
    if (s == "lex")
        return Ordering::Lexicographic;
    if (s == "dominance")
        return Ordering::Dominance;
    throw ValidationError("unknown order '" + s + "'");
}

Arrangement parse_arrangement(const std::string& s)
{
    if (s == "paper")
        return Arrangement::PaperConcat;
    if (s == "dominant")
        return Arrangement::Dominant;
    throw ValidationError("unknown arrangement '" + s + "'");
}

CaseKind parse_case(const std::string& s)
{
    if (s == "I")
        return CaseKind::CaseI;
    if (s == "II")
        return CaseKind::CaseII;
    if (s == "III")
        return CaseKind::CaseIII;
    throw ValidationError("unknown case '" + s + "'");
}

FamilyKind parse_family(const std::string& s)
{
    if (s == "I")
        return FamilyKind::CaseI;
    if (s == "II")
        return FamilyKind::CaseII;
    if (s == "III")
        return FamilyKind::CaseIII;
    if (s == "meta")
        return FamilyKind::Metaplectic;
    if (s == "meta-speh")
        return FamilyKind::MetaplecticSpeh;
    throw ValidationError("unknown family '" + s + "'");
}

json case_json(const CaseTag& t)
{
    json r{{"kind", "case"}, {"case", std::string(to_string(t.kind))}};
    if (t.kind == CaseKind::CaseI || t.kind == CaseKind::CaseII || t.kind == CaseKind::CaseIII) {
        r["a"] = t.a;
        r["b"] = t.b;
        r["m"] = t.m;
    }
    return r;
}

struct Exec {
    int code = 0;
    std::optional<json> record;
    std::string err;
};

json reproduce(const std::string& filter, const std::string& corpus_file);

// Roots such as -e1-e3 look like short options to the parser; everything
// from the first such token on is passed positionally.
std::vector<std::string> protect_negative_roots(std::vector<std::string> args)
{
    static const std::regex root_like("^-2?e[0-9].*");
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--")
            return args;
        if (std::regex_match(args[i], root_like)) {
            for (std::size_t j = i; j < args.size(); ++j)
                if (args[j].size() > 1 && args[j][0] == '-' && !std::regex_match(args[j], root_like) &&
                    !std::isdigit(static_cast<unsigned char>(args[j][1])))
                    return args; // options follow; leave it to the parser to complain
            args.insert(args.begin() + static_cast<std::ptrdiff_t>(i), "--");
            return args;
        }
    }
    return args;
}

Exec execute(const std::vector<std::string>& argv, bool& json_out, bool& compact)
{
    CLI::App app{"Partition and Arthur-parameter calculator", "bvcalc"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", json_out, "Machine-readable output");
    app.add_flag("--compact", compact, "Keep exponent notation in printed partitions");

    json result;
    auto set = [&](json r) { result = std::move(r); };

    auto group = [&](const std::string& name, const std::string& desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto leaf = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        auto* s = parent->add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    // partition
    auto* part = group("partition", "Partition operations");
    std::string p_text, q_text, order = "dominance";
    bool classical = false;
    {
        auto* s = leaf(part, "transpose", "Transpose a partition");
        s->add_option("partition", p_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(transpose(parse_partition(p_text)))}}); });

        s = leaf(part, "collapse", "Largest special symplectic partition below");
        s->add_option("partition", p_text)->required();
        s->add_flag("--classical", classical, "Drop the specialness requirement");
        s->callback([&] {
            auto p = parse_partition(p_text);
            set({{"kind", "partition"}, {"value", to_json(classical ? symplectic_collapse(p) : special_sp_collapse(p))}});
        });

        s = leaf(part, "expand", "Smallest special symplectic partition above");
        s->add_option("partition", p_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(sp_expansion(parse_partition(p_text)))}}); });

        s = leaf(part, "classify", "Symplectic, orthogonal and special tests");
        s->add_option("partition", p_text)->required();
        s->callback([&] {
            auto c = classify(parse_partition(p_text));
            set({{"kind", "classification"},
                 {"symplectic", c.symplectic},
                 {"orthogonal", c.orthogonal},
                 {"special_symplectic", c.special_symplectic}});
        });

        s = leaf(part, "compare", "Compare two partitions");
        s->add_option("--order", order, "lex or dominance");
        s->add_option("p", p_text)->required();
        s->add_option("q", q_text)->required();
        s->callback([&] {
            auto p = parse_partition(p_text), q = parse_partition(q_text);
            Relation rel = parse_ordering(order) == Ordering::Lexicographic ? lex_compare(p, q) : dominance_compare(p, q);
            set({{"kind", "relation"}, {"value", std::string(to_string(rel))}});
        });

        s = leaf(part, "decrement", "Lower the smallest part by one");
        s->add_option("partition", p_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(decrement_tail(parse_partition(p_text)))}}); });
    }
    long long head = 0;
    int size_n = 0;
    bool want_sp = false, want_o = false, want_special = false;
    {
        auto* s = leaf(part, "compose", "Prepend a head part");
        s->add_option("--head", head)->required();
        s->add_option("partition", p_text)->required();
        s->callback([&] {
            set({{"kind", "partition"}, {"value", to_json(compose_descent(head, parse_partition(p_text)))}});
        });

        s = leaf(part, "enumerate", "All partitions of n in the chosen classes");
        s->add_option("--n", size_n)->required();
        s->add_flag("--symplectic", want_sp);
        s->add_flag("--orthogonal", want_o);
        s->add_flag("--special", want_special);
        s->callback([&] {
            json vals = json::array();
            for (const auto& p : enumerate_partitions(size_n, ClassMask{want_sp, want_o, want_special}))
                vals.push_back(to_json(p));
            set({{"kind", "partitions"}, {"values", vals}});
        });
    }

    {
        auto* s = app.add_subcommand("bv-dual", "Barbasch-Vogan dual of an orthogonal partition");
        s->fallthrough();
        s->add_option("partition", p_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(barbasch_vogan_dual(parse_partition(p_text)))}}); });
    }

    // arthur
    auto* arthur = group("arthur", "Arthur parameters");
    int rank = 0, depth_l = 0, a = 0, b = 0, m = 0;
    std::string psi_text, case_name;
    auto psi = [&] { return parse_parameter(psi_text, rank); };
    {
        auto* s = leaf(arthur, "validate", "List constraint violations");
        s->add_option("--n", rank)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] {
            json v = json::array();
            for (const auto& e : validate(psi()))
                v.push_back(e);
            set({{"kind", "validation"}, {"violations", v}});
        });

        s = leaf(arthur, "p-psi", "Partition of the parameter");
        s->add_option("--n", rank)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(p_of_psi(psi()))}}); });

        s = leaf(arthur, "eta", "Dual partition of the parameter");
        s->add_option("--n", rank)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] { set({{"kind", "partition"}, {"value", to_json(eta_of_psi(psi()))}}); });

        s = leaf(arthur, "classify", "Case of the parameter");
        s->add_option("--n", rank)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] { set(case_json(classify_case(psi()))); });

        s = leaf(arthur, "generic", "Whether every simple has multiplicity one");
        s->add_option("--n", rank)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] { set({{"kind", "boolean"}, {"value", is_generic(psi())}}); });

        s = leaf(arthur, "enumerate", "All valid parameters of rank n");
        s->add_option("--n", rank)->required();
        s->callback([&] {
            json vals = json::array();
            for (const auto& p : enumerate_parameters(rank))
                vals.push_back(format_parameter(p));
            set({{"kind", "parameters"}, {"values", vals}});
        });

        s = leaf(arthur, "reduce", "Parameter after l descent steps");
        s->add_option("--n", rank)->required();
        s->add_option("--l", depth_l)->required();
        s->add_option("parameter", psi_text)->required();
        s->callback([&] { set({{"kind", "parameter"}, {"value", format_parameter(reduce_parameter(psi(), depth_l))}}); });

        s = leaf(arthur, "make", "Canonical parameter of a case");
        s->add_option("--case", case_name, "I, II or III")->required();
        s->add_option("--a", a)->required();
        s->add_option("--b", b)->required();
        s->add_option("--m", m)->required();
        s->callback([&] {
            set({{"kind", "parameter"},
                 {"value", format_parameter(make_case_parameter(CaseTag{parse_case(case_name), a, b, m}))}});
        });
    }

    {
        auto* conj = group("conjecture", "Upper bound checks");
        auto* s = leaf(conj, "check", "Compare a candidate partition with eta");
        s->add_option("--n", rank)->required();
        s->add_option("--order", order, "lex or dominance");
        s->add_option("parameter", psi_text)->required();
        s->add_option("candidate", p_text)->required();
        s->callback([&] {
            auto v = conjecture_bound_check(parse_partition(p_text), psi(), parse_ordering(order));
            set({{"kind", "bound"},
                 {"status", std::string(to_string(v.status))},
                 {"ordering", std::string(to_string(v.ordering_used))},
                 {"eta", to_json(v.eta)}});
        });
    }

    // exponents
    auto* expo = group("exponents", "Cuspidal exponents");
    std::string vec_text, s_text;
    auto exps_json = [](const ExponentVector& v) {
        auto mx = v.max();
        return json{{"kind", "exponents"},
                    {"values", rationals_json(v.entries())},
                    {"max", mx ? json(format_rational(*mx)) : json(nullptr)}};
    };
    {
        auto* s = leaf(expo, "speh", "Exponents of a Speh block");
        s->add_option("--b", b)->required();
        s->callback([&] { set(exps_json(speh_exponents(b))); });

        s = leaf(expo, "twist", "Shift every exponent by s");
        s->add_option("--s", s_text)->required();
        s->add_option("exponents", vec_text)->required();
        s->callback([&] { set(exps_json(twist(ExponentVector(parse_rationals(vec_text)), parse_rational(s_text)))); });

        s = leaf(expo, "sq-int", "Langlands square-integrability test");
        s->add_option("exponents", vec_text)->required();
        s->callback([&] {
            set({{"kind", "boolean"}, {"value", langlands_square_integrable(ExponentVector(parse_rationals(vec_text)))}});
        });

        s = leaf(expo, "chain", "Exponent chain check");
        s->add_option("--b", b)->required();
        s->add_option("alphas", vec_text)->required();
        s->callback([&] { set({{"kind", "boolean"}, {"value", exponent_chain_check(b, parse_rationals(vec_text))}}); });
    }

    // descent
    auto* desc = group("descent", "Descent bookkeeping");
    int r_index = 0, k = 0, i_index = 0, p_depth = 0;
    bool sigma_generic = false;
    auto family = [&] { return Family{parse_family(case_name), a, b, m, k}; };
    {
        auto* s = leaf(desc, "analyze", "Vanishing verdicts for one descent index");
        s->add_option("--case", case_name, "I, II or III")->required();
        s->add_option("--a", a)->required();
        s->add_option("--b", b)->required();
        s->add_option("--m", m)->required();
        s->add_option("--r", r_index)->required();
        s->add_flag("--sigma-generic", sigma_generic);
        s->callback([&] {
            CaseTag tag{parse_case(case_name), a, b, m};
            json rows = json::array();
            for (const auto& v : descent_term_analysis(tag, sigma_generic, r_index)) {
                json row{{"r", v.r}, {"k", v.k}, {"l", v.l}, {"status", std::string(to_string(v.status))}};
                if (v.witness) {
                    row["test"] = to_json(v.witness->first);
                    row["eta"] = to_json(v.witness->second);
                }
                row["note"] = v.note;
                rows.push_back(row);
            }
            set({{"kind", "descent"},
                 {"rank_bound", descent_rank_bound(tag)},
                 {"block_size", descent_block_size(tag)},
                 {"verdicts", rows}});
        });

        s = leaf(desc, "profile", "Constant-term profiles of a residual family");
        s->add_option("--family", case_name, "I, II, III, meta or meta-speh")->required();
        s->add_option("--a", a);
        s->add_option("--b", b)->required();
        s->add_option("--m", m);
        s->add_option("--k", k);
        s->add_option("--i", i_index, "Single index; all indices when omitted");
        s->callback([&] {
            Family f = family();
            int depth = constant_term_depth(f);
            json rows = json::array();
            for (int i = 1; i <= depth; ++i) {
                if (i_index != 0 && i != i_index)
                    continue;
                auto pr = constant_term_profile(f, i);
                rows.push_back({{"i", pr.speh_mult},
                                {"gl_rank", pr.gl_rank},
                                {"twist", format_rational(pr.twist)},
                                {"remainder", format_remainder(pr.remainder)}});
            }
            if (i_index != 0 && rows.empty())
                constant_term_profile(f, i_index); // raises the range error
            set({{"kind", "profiles"}, {"family", format_family(f)}, {"depth", depth}, {"rows", rows}});
        });

        s = leaf(desc, "whittaker", "Vanishing of deep Whittaker-type coefficients");
        s->add_option("--family", case_name, "I or meta-speh")->required();
        s->add_option("--a", a);
        s->add_option("--b", b)->required();
        s->add_option("--m", m);
        s->add_option("--k", k);
        s->add_option("--p", p_depth)->required();
        s->callback([&] {
            set({{"kind", "verdict"}, {"value", std::string(to_string(whittaker_depth_vanishing(family(), p_depth)))}});
        });
    }

    // roots
    auto* roots = group("roots", "Root calculus of Sp_2N");
    std::string arrangement = "dominant", perm_text;
    std::vector<std::string> root_texts;
    bool printed = false, search_order = false;
    int stage = 0, ambient = 0;
    {
        auto* s = leaf(roots, "vp2", "Roots of weight at least two");
        s->add_option("--arrangement", arrangement, "paper or dominant");
        s->add_option("partition", p_text)->required();
        s->callback([&] {
            set({{"kind", "roots"}, {"values", roots_json(v_p2(parse_partition(p_text), parse_arrangement(arrangement)))}});
        });

        s = leaf(roots, "weights", "Torus weights of a partition");
        s->add_option("--arrangement", arrangement, "paper or dominant");
        s->add_option("partition", p_text)->required();
        s->callback([&] {
            auto w = torus_weights_from_partition(parse_partition(p_text), parse_arrangement(arrangement));
            set({{"kind", "weights"}, {"values", w.weights()}});
        });

        s = leaf(roots, "sequences", "Root exchange sequences");
        s->add_option("--k", k)->required();
        s->add_option("--b", b)->required();
        s->add_flag("--printed", printed, "Literal index formulas with their sums");
        s->callback([&] {
            if (printed) {
                json rows = json::array();
                for (const auto& pp : exchange_sequences_as_printed(k, b)) {
                    FormalRoot sum{pp.alpha.terms};
                    sum.terms.insert(sum.terms.end(), pp.beta.terms.begin(), pp.beta.terms.end());
                    FormalRoot collected;
                    for (const auto& [idx, c] : sum.collect())
                        collected.terms.emplace_back(idx, c);
                    rows.push_back({{"i", pp.i},
                                    {"j", pp.j},
                                    {"range", pp.range},
                                    {"alpha", format_formal_root(pp.alpha)},
                                    {"beta", format_formal_root(pp.beta)},
                                    {"sum", format_formal_root(collected)}});
                }
                set({{"kind", "printed_sequences"}, {"pairs", rows}});
                return;
            }
            auto d = exchange_sequences(k, b);
            json stages = json::array();
            for (std::size_t i = 0; i < d.stages.size(); ++i) {
                json pairs = json::array();
                for (std::size_t j = 0; j < d.stages[i].x_seq.size(); ++j)
                    pairs.push_back({format_root(d.stages[i].x_seq[j]), format_root(d.stages[i].y_seq[j])});
                stages.push_back({{"stage", static_cast<int>(i + 1)}, {"pairs", pairs}});
            }
            set({{"kind", "sequences"},
                 {"k", d.k},
                 {"b", d.b},
                 {"N", d.N},
                 {"c_roots", format_root_set(d.c_roots)},
                 {"char_support", format_root_set(d.char_support)},
                 {"stages", stages}});
        });

        s = leaf(roots, "exchange-verify", "Check the exchange conditions by matrix computation");
        s->add_option("--k", k)->required();
        s->add_option("--b", b)->required();
        s->add_option("--stage", stage)->required();
        s->add_option("--rank", ambient, "Ambient rank; defaults to the tower rank");
        s->add_flag("--search-order", search_order, "Exchange the pairs in a searched order");
        s->callback([&] {
            auto d = exchange_sequences(k, b);
            if (stage < 1 || stage > static_cast<int>(d.stages.size()))
                throw ValidationError("stage " + std::to_string(stage) + " outside 1.." + std::to_string(d.stages.size()));
            const int n = ambient ? ambient : d.N;
            std::vector<int> order;
            for (std::size_t j = 1; j <= d.stages[stage - 1].x_seq.size(); ++j)
                order.push_back(static_cast<int>(j));
            if (search_order) {
                auto found = exchange_step_order(d, n, stage);
                if (found) {
                    order = *found;
                    d = reorder_stage(d, stage, order);
                }
            }
            auto rep = verify_exchange_quadruple(d, n, stage);
            json conds = json::array();
            for (const auto& c : rep.conditions)
                conds.push_back({{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}});
            set({{"kind", "exchange"}, {"stage", rep.stage}, {"order", order}, {"pass", rep.all_pass()}, {"conditions", conds}});
        });

        s = leaf(roots, "conjugate", "Apply a signed permutation to roots");
        s->add_option("permutation", perm_text)->required();
        s->add_option("roots", root_texts)->required();
        s->callback([&] {
            RootSet in;
            for (const auto& t : root_texts)
                in.insert(parse_root(t));
            set({{"kind", "roots"},
                 {"values", roots_json(weyl_conjugate_roots(parse_signed_permutation(perm_text), in))}});
        });
    }

    // paper
    auto* paper = group("paper", "Golden-case corpus");
    std::string filter, corpus_file;
    {
        auto* s = leaf(paper, "reproduce", "Run every golden case");
        s->add_option("--filter", filter, "Only rows carrying this tag");
        s->add_option("--corpus", corpus_file, "Corpus file instead of the built-in one");
        s->callback([&] { set(reproduce(filter, corpus_file)); });
    }

    // Name the offending word when a subcommand is misspelt.
    {
        CLI::App* level = &app;
        for (const auto& tok : argv) {
            if (tok.empty() || tok[0] == '-')
                break;
            if (level->get_subcommands({}).empty())
                break;
            CLI::App* next = level->get_subcommand_no_throw(tok);
            if (!next) {
                Exec ex;
                ex.code = 1;
                ex.err = "unknown subcommand '" + tok + "'" +
                         (level == &app ? std::string() : " for '" + level->get_name() + "'");
                return ex;
            }
            level = next;
        }
    }

    std::vector<std::string> args = protect_negative_roots(argv);
    std::reverse(args.begin(), args.end());
    Exec ex;
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        ex.record = json{{"kind", "help"}};
        ex.err = app.help();
        return ex;
    } catch (const CLI::CallForAllHelp&) {
        ex.record = json{{"kind", "help"}};
        ex.err = app.help();
        return ex;
    } catch (const CLI::ParseError& e) {
        ex.code = 1;
        ex.err = e.what();
        return ex;
    } catch (const ValidationError& e) {
        ex.code = 1;
        ex.err = std::string("error: ") + e.what();
        return ex;
    } catch (const InvariantBreach& e) {
        ex.code = 2;
        ex.err = std::string("invariant breach: ") + e.what();
        return ex;
    } catch (const std::exception& e) {
        ex.code = 2;
        ex.err = std::string("internal error: ") + e.what();
        return ex;
    }
    ex.record = result;
    if (result.value("kind", "") == "validation" && !result["violations"].empty())
        ex.code = 1;
    if (result.value("kind", "") == "reproduce" && result["passed"] != result["total"])
        ex.code = 2;
    return ex;
}

std::string got_text(const Exec& ex, bool compact)
{
    if (ex.code != 0)
        return "exit=" + std::to_string(ex.code);
    return join(render_lines(*ex.record, compact), " ; ");
}

json reproduce(const std::string& filter, const std::string& corpus_file)
{
    std::string text;
    if (corpus_file.empty()) {
        text = std::string(builtin_corpus());
    } else {
        std::ifstream in(corpus_file);
        if (!in)
            throw ValidationError("cannot read corpus " + corpus_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json rows = json::array();
    int passed = 0;
    for (const auto& c : parse_corpus(text)) {
        if (!filter.empty() && std::find(c.tags.begin(), c.tags.end(), filter) == c.tags.end())
            continue;
        if (c.argv.size() >= 2 && c.argv[0] == "paper")
            throw ValidationError("corpus row " + c.id + " would recurse");
        bool as_json = false, compact = false;
        Exec ex = execute(c.argv, as_json, compact);
        std::string got = got_text(ex, compact);
        bool ok = got == c.expected;
        if (ok && ex.code == 0) {
            // The machine-readable record must carry the same data as the text.
            json back = json::parse(ex.record->dump());
            std::string again = join(render_lines(back, compact), " ; ");
            if (again != got) {
                ok = false;
                got += " [json differs: " + again + "]";
            }
        }
        passed += ok;
        rows.push_back({{"id", c.id}, {"pass", ok}, {"expected", c.expected}, {"got", got}});
    }
    return json{{"kind", "reproduce"}, {"rows", rows}, {"passed", passed}, {"total", static_cast<int>(rows.size())}};
}

} // namespace

CommandResult run(const std::vector<std::string>& argv)
{
    bool as_json = false, compact = false;
    Exec ex = execute(argv, as_json, compact);
    CommandResult res;
    res.exit_code = ex.code;
    res.err = ex.err;
    if (ex.record && ex.record->value("kind", "") == "help") {
        res.out = ex.err;
        res.err.clear();
        return res;
    }
    if (ex.record)
        res.out = as_json ? ex.record->dump() + "\n" : render(*ex.record, compact);
    if (!res.err.empty() && res.err.back() != '\n')
        res.err += "\n";
    return res;
}

} // namespace bvcalc
