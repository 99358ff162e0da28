#pragma once

#include "bvcalc/partition.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bvcalc {

enum class Symmetry { Orthogonal, Symplectic };

// One pair (tau, b): dim is the GL-rank of tau, mult is b.
struct SimpleParameter {
    int dim = 1;
    int mult = 1;
    Symmetry symmetry = Symmetry::Orthogonal;
    std::string label;

    auto operator<=>(const SimpleParameter&) const = default;
};

struct GlobalParameter {
    std::vector<SimpleParameter> simples;
    int n = 0;

    bool operator==(const GlobalParameter&) const = default;
};

enum class CaseKind { Generic, CaseI, CaseII, CaseIII, Other };
std::string_view to_string(CaseKind k);

struct CaseTag {
    CaseKind kind = CaseKind::Other;
    int a = 0;
    int b = 0;
    int m = 0;

    bool operator==(const CaseTag&) const = default;
};

enum class Ordering { Dominance, Lexicographic };
std::string_view to_string(Ordering o);

enum class BoundStatus { ForbiddenPart1, Allowed, AchievesPart3 };
std::string_view to_string(BoundStatus s);

struct BoundVerdict {
    BoundStatus status = BoundStatus::Allowed;
    Ordering ordering_used = Ordering::Dominance;
    Partition eta;
};

// Empty result means valid. Each entry starts with the constraint name.
std::vector<std::string> validate(const GlobalParameter& psi);
void require_valid(const GlobalParameter& psi);

Partition p_of_psi(const GlobalParameter& psi);
CaseTag classify_case(const GlobalParameter& psi);
bool is_generic(const GlobalParameter& psi);

// Closed-form eta for a case tag, nullopt for Generic/Other.
std::optional<Partition> eta_closed_form(const CaseTag& tag);
// Closed-form p(psi) for a case tag.
Partition p_closed_form(const CaseTag& tag);
// Definitional eta, cross-checked against the closed form when one applies.
Partition eta_of_psi(const GlobalParameter& psi);

// Canonical representative of a case: tau labelled "t", the remaining
// dimension filled with 1:1:O simples labelled x1, x2, ...
GlobalParameter make_case_parameter(const CaseTag& tag);

BoundVerdict conjecture_bound_check(const Partition& candidate, const GlobalParameter& psi,
                                    Ordering ordering);

GlobalParameter reduce_parameter(const GlobalParameter& psi, int l);

// Parameter enumeration limit, 8 unless BVCALC_PARAMETER_CAP is set.
int parameter_cap();
std::vector<GlobalParameter> enumerate_parameters(int n);

} // namespace bvcalc
