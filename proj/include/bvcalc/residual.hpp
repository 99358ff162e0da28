#pragma once

#include "bvcalc/arthur.hpp"
#include "bvcalc/partition.hpp"
#include "bvcalc/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bvcalc {

// Exponents with denominator 1 or 2, checked at construction.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::vector<Rational> entries);
    const std::vector<Rational>& entries() const { return entries_; }
    std::optional<Rational> max() const;
    bool operator==(const ExponentVector&) const = default;

private:
    std::vector<Rational> entries_;
};

ExponentVector speh_exponents(int b);
ExponentVector twist(const ExponentVector& v, const Rational& s);
bool langlands_square_integrable(const ExponentVector& v);
// alphas need not be half-integers; they must be strictly decreasing in (-1/2, 1/2).
bool exponent_chain_check(int b, const std::vector<Rational>& alphas);

enum class FamilyKind {
    CaseI,           // E(Delta(tau,b) x sigma), a, b, m
    CaseII,          // the tower with (tau,2b+1)+(tau,1), a, b, m
    CaseIII,         // tau of symplectic type, a, b, m
    Metaplectic,     // E~(Delta(tau,b-1) x sigma~) on Sp~_{2k(2b-1)}, k, b
    MetaplecticSpeh, // E~(Delta(tau,b)) on Sp~_{2b(2k+1)}, k, b
};
std::string_view to_string(FamilyKind k);

struct Family {
    FamilyKind kind = FamilyKind::CaseI;
    int a = 0;
    int b = 0;
    int m = 0;
    int k = 0;
    bool operator==(const Family&) const = default;
};

std::string format_family(const Family& f);

enum class RemainderKind { Family, Sigma, SigmaTilde, ETauSigma, Trivial };

struct Remainder {
    RemainderKind kind = RemainderKind::Sigma;
    Family family; // meaningful for RemainderKind::Family
    bool operator==(const Remainder&) const = default;
};

std::string format_remainder(const Remainder& r);

struct ConstantTermProfile {
    int speh_mult = 0; // i in Delta(tau, i)
    int gl_rank = 0;
    Rational twist;
    Remainder remainder;
};

ConstantTermProfile constant_term_profile(const Family& family, int i);
// Largest valid i for the family (0 when the range is empty).
int constant_term_depth(const Family& family);

enum class DescentStatus { VanishCuspidalSupport, VanishPartitionBound, SurvivesIfGeneric, Survives };
std::string_view to_string(DescentStatus s);

struct DescentTermVerdict {
    int r = 0;
    int k = 0;
    int l = 0; // tower depth of the reduced parameter, 0 when unused
    DescentStatus status = DescentStatus::Survives;
    std::optional<std::pair<Partition, Partition>> witness; // (test, eta of the reduced parameter)
    std::string note;

    // Re-checks that test is lexicographically greater than eta.
    static DescentTermVerdict partition_bound(int r, int k, int l, Partition test, Partition eta);
};

int descent_rank_bound(const CaseTag& family);
int descent_block_size(const CaseTag& family);
std::vector<DescentTermVerdict> descent_term_analysis(const CaseTag& family, bool sigma_generic, int r);

enum class WhittakerVerdict { Vanishes, EqualsShifted, Unconstrained };
std::string_view to_string(WhittakerVerdict v);
WhittakerVerdict whittaker_depth_vanishing(const Family& family, int p);

} // namespace bvcalc
