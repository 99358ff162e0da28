#pragma once

#include "bvcalc/partition.hpp"
#include "bvcalc/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bvcalc {

enum class RootKind { EminusE, EplusE, TwoE };

// A root of type C_N: sign * (e_i - e_j), sign * (e_i + e_j) with i < j,
// or sign * 2e_i (j unused, stored as 0).
struct RootC {
    RootKind kind = RootKind::TwoE;
    int i = 1;
    int j = 0;
    int sign = 1;

    static RootC e_minus_e(int i, int j); // i != j, either order
    static RootC e_plus_e(int i, int j);  // i != j
    static RootC two_e(int i);
    // Interprets a coefficient vector {index: coefficient}; nullopt if it is
    // not a root.
    static std::optional<RootC> from_coeffs(const std::map<int, int>& c);

    std::map<int, int> coeffs() const;
    RootC negated() const;
    bool positive() const { return sign > 0; }
    int max_index() const { return kind == RootKind::TwoE ? i : j; }

    auto operator<=>(const RootC&) const = default;
};

using RootSet = std::set<RootC>;

std::vector<RootC> all_roots(int N);
std::optional<RootC> root_sum(const RootC& a, const RootC& b);
// Every sum of two members that is a root is again a member.
bool bracket_closed(const RootSet& s);

// Torus cocharacter on the 2N symplectic coordinates; w[2N-1-i] == -w[i].
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<int> weights); // validates antisymmetry
    const std::vector<int>& weights() const { return w_; }
    int rank() const { return static_cast<int>(w_.size() / 2); }
    int e_weight(int i) const { return w_[i - 1]; } // weight of e_i
    bool operator==(const WeightVector&) const = default;

private:
    std::vector<int> w_;
};

enum class Arrangement { PaperConcat, Dominant };

WeightVector torus_weights_from_partition(const Partition& p, Arrangement arrangement);
int root_weight(const RootC& root, const WeightVector& w);
RootSet roots_of_weight_at_least(const WeightVector& w, int threshold);
RootSet v_p2(const Partition& p, Arrangement arrangement);

// Signed permutation of e_1..e_N: image[i-1] = +-j means e_i -> +-e_j.
class SignedPermutation {
public:
    SignedPermutation() = default;
    explicit SignedPermutation(std::vector<int> image); // validates
    static SignedPermutation identity(int N);
    const std::vector<int>& image() const { return image_; }
    int rank() const { return static_cast<int>(image_.size()); }
    RootC apply(const RootC& r) const;
    SignedPermutation inverse() const;
    bool operator==(const SignedPermutation&) const = default;

private:
    std::vector<int> image_;
};

RootSet weyl_conjugate_roots(const SignedPermutation& w, const RootSet& roots);
// A signed permutation w with weight_to(w(r)) == weight_from(r) for all roots.
SignedPermutation weight_matching_permutation(const WeightVector& from, const WeightVector& to);

// Exact 2N x 2N matrix in Sp_{2N} for the antidiagonal form.
class UnipotentElement {
public:
    UnipotentElement() = default;
    static UnipotentElement identity(int N);
    int rank() const { return N_; }
    int dim() const { return 2 * N_; }
    const Rational& at(int r, int c) const { return a_[(r - 1) * dim() + (c - 1)]; } // 1-based
    Rational& at(int r, int c) { return a_[(r - 1) * dim() + (c - 1)]; }
    UnipotentElement operator*(const UnipotentElement& o) const;
    // Inverse via the finite geometric series of the nilpotent part.
    UnipotentElement inverse() const;
    bool is_identity() const;
    bool operator==(const UnipotentElement&) const = default;

private:
    int N_ = 0;
    std::vector<Rational> a_;
};

UnipotentElement symplectic_form(int N);
bool preserves_form(const UnipotentElement& g);
// Matrix positions (row, col), 1-based, carrying the root.
std::vector<std::pair<int, int>> root_positions(const RootC& root, int N);
UnipotentElement one_parameter_matrix(const RootC& root, const Rational& t, int N);
UnipotentElement commutator(const UnipotentElement& x, const UnipotentElement& y);
// Roots whose positions carry nonzero off-diagonal entries of g - 1.
RootSet support(const UnipotentElement& g);
// Entry of g at the first position of the root.
Rational root_coefficient(const UnipotentElement& g, const RootC& root);

// Root exchange data for the tower of Speh residues on Sp_{2(2k+1)b}.
struct ExchangeStage {
    std::vector<RootC> x_seq; // the alpha roots
    std::vector<RootC> y_seq; // the beta roots, paired index by index
    RootSet extra_c;          // roots added to C by earlier expansions
};

struct ExchangeDatum {
    int k = 0;
    int b = 0;
    int N = 0;
    RootSet c_roots;      // roots common to every stage
    RootSet char_support; // roots where the character is nontrivial
    std::vector<ExchangeStage> stages; // stage i at index i-1

    // C at stage i: common roots, X of earlier stages, Y of later stages,
    // and the stage's expansion roots.
    RootSet c_at_stage(int i) const;
};

// Weights of e_1..e_N in the conjugated frame: e_i, i <= 2k+1, has
// 2k+2-2i, then 2b-2 coordinates each of weight 2k, 2k-2, ..., 2, then b-1
// coordinates of weight 0.
std::vector<int> exchange_frame_weights(int k, int b);
std::vector<int> exchange_lengths(int k, int b);
ExchangeDatum exchange_sequences(int k, int b);

// Linear form written as (index, coefficient) terms, indices uninterpreted.
struct FormalRoot {
    std::vector<std::pair<int, int>> terms;
    std::map<int, int> collect() const; // drops zero coefficients
};

struct PrintedPair {
    int i = 0;
    int j = 0;
    int range = 0;
    FormalRoot alpha;
    FormalRoot beta;
};

// The five index ranges transcribed literally, including indices that fall
// outside 1..N for b >= 2.
std::vector<PrintedPair> exchange_sequences_as_printed(int k, int b);

struct ConditionResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> witnesses;
};

struct QuadrupleReport {
    int stage = 0;
    std::vector<ConditionResult> conditions;
    bool all_pass() const;
};

// Pairs of a stage are exchanged one at a time in list order; step j works
// with C, the X roots of steps before j and the Y roots of steps after j.
QuadrupleReport verify_exchange_quadruple(const ExchangeDatum& d, int N, int stage);

// A 1-based order of the stage's pairs for which every step passes, found by
// exhaustive search; nullopt when none exists.
std::optional<std::vector<int>> exchange_step_order(const ExchangeDatum& d, int N, int stage);
ExchangeDatum reorder_stage(const ExchangeDatum& d, int stage, const std::vector<int>& order);

} // namespace bvcalc
