#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bvcalc {

// A weakly decreasing list of positive integers. Zeros are never stored.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<long long> raw);

    // Sorts and strips zeros; throws ValidationError on a negative entry.
    static Partition normalize(std::span<const long long> raw);
    static Partition normalize(const std::vector<int>& raw);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    // i-th part (0-based), zero past the end.
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    // Multiplicity of the part value v.
    int multiplicity(int v) const;
    // prefix[i] = p_1 + ... + p_{i+1}, padded with the total up to length len.
    std::vector<int> prefix_sums(std::size_t len) const;

    bool operator==(const Partition&) const = default;
    // Lexicographic on the part list; used for ordering containers only.
    std::strong_ordering operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

enum class Relation { Less, Greater, Equal, Incomparable };
std::string_view to_string(Relation r);

struct PartitionClass {
    bool symplectic = false;
    bool orthogonal = false;
    bool special_symplectic = false;
};

// Required properties for enumeration; an all-false mask accepts everything.
struct ClassMask {
    bool symplectic = false;
    bool orthogonal = false;
    bool special_symplectic = false;
    bool accepts(const PartitionClass& c) const;
};

Partition transpose(const Partition& p);

Relation dominance_compare(const Partition& p, const Partition& q);
Relation lex_compare(const Partition& p, const Partition& q);
bool dominated_by(const Partition& p, const Partition& q); // p <= q, equal sizes assumed

bool is_symplectic(const Partition& p);
bool is_orthogonal(const Partition& p);
bool is_special_symplectic(const Partition& p);
PartitionClass classify(const Partition& p);

Partition decrement_tail(const Partition& q);

using PartitionPredicate = std::function<bool(const Partition&)>;

// Exhaustive search of the lower (upper) dominance interval of p for the
// unique maximal (minimal) element satisfying pred. Throws InvariantBreach
// when the extremum is not unique and ValidationError when nothing qualifies.
Partition dominance_max_below(const Partition& p, const PartitionPredicate& pred);
Partition dominance_min_above(const Partition& p, const PartitionPredicate& pred);

Partition special_sp_collapse(const Partition& p);
// Largest symplectic partition below p, with no specialness requirement.
Partition symplectic_collapse(const Partition& p);
Partition sp_expansion(const Partition& p);
Partition barbasch_vogan_dual(const Partition& q);

Partition compose_descent(long long head, const Partition& tail);

// Size limit for full enumeration, 40 unless BVCALC_PARTITION_CAP is set.
int partition_cap();
std::vector<Partition> enumerate_partitions(int n, ClassMask mask = {});

} // namespace bvcalc
