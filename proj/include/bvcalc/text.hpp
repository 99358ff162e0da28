#pragma once

#include "bvcalc/arthur.hpp"
#include "bvcalc/partition.hpp"
#include "bvcalc/rational.hpp"
#include "bvcalc/roots.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bvcalc {

// [3,3,2]; with compact=true runs are written as [3^2,2].
std::string format_partition(const Partition& p, bool compact = false);
// Accepts [p1,p2,...] with optional v^c entries; whitespace is ignored.
Partition parse_partition(std::string_view text);

// a:b:O#label
std::string format_simple(const SimpleParameter& s);
std::string format_parameter(const GlobalParameter& psi);
// Terms a:b:O or a:b:S with optional #label, joined by '+'. Unlabelled
// terms get distinct labels _1, _2, ...
GlobalParameter parse_parameter(std::string_view text, int n);

std::string format_root(const RootC& r);
RootC parse_root(std::string_view text);
std::string format_root_set(const RootSet& s);
std::string format_formal_root(const FormalRoot& f);

std::string format_signed_permutation(const SignedPermutation& w);
SignedPermutation parse_signed_permutation(std::string_view text);

// {a,b,...} of exact rationals.
std::string format_rationals(const std::vector<Rational>& v);
std::vector<Rational> parse_rationals(std::string_view text);

} // namespace bvcalc
