#include "bvcalc/partition.hpp"

#include "bvcalc/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

namespace bvcalc {

namespace {

Partition from_sorted(std::vector<int> parts);

void require_same_size(const Partition& p, const Partition& q)
{
    if (p.size() != q.size())
        throw ValidationError("cannot compare partitions of different sizes (" +
                              std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
}

} // namespace

Partition::Partition(std::initializer_list<long long> raw)
    : Partition(normalize(std::span<const long long>(raw.begin(), raw.size())))
{
}

Partition Partition::normalize(std::span<const long long> raw)
{
    Partition p;
    long long total = 0;
    for (long long v : raw) {
        if (v < 0)
            throw ValidationError("negative part " + std::to_string(v));
        if (v > 1000000)
            throw ValidationError("part " + std::to_string(v) + " too large");
        total += v;
        if (total > 100000000)
            throw ValidationError("partition size too large");
        if (v > 0)
            p.parts_.push_back(static_cast<int>(v));
    }
    std::sort(p.parts_.begin(), p.parts_.end(), std::greater<>());
    p.size_ = static_cast<int>(total);
    return p;
}

Partition Partition::normalize(const std::vector<int>& raw)
{
    std::vector<long long> wide(raw.begin(), raw.end());
    return normalize(std::span<const long long>(wide));
}

int Partition::multiplicity(int v) const
{
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), v));
}

std::vector<int> Partition::prefix_sums(std::size_t len) const
{
    std::vector<int> out(std::max(len, parts_.size()));
    int s = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        s += part(i);
        out[i] = s;
    }
    return out;
}

std::string_view to_string(Relation r)
{
    switch (r) {
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
    case Relation::Equal: return "Equal";
    case Relation::Incomparable: return "Incomparable";
    }
    return "?";
}

bool ClassMask::accepts(const PartitionClass& c) const
{
    return (!symplectic || c.symplectic) && (!orthogonal || c.orthogonal) &&
           (!special_symplectic || c.special_symplectic);
}

Partition transpose(const Partition& p)
{
    if (p.empty())
        return {};
    std::vector<int> cols(p.part(0), 0);
    for (int v : p.parts())
        for (int c = 0; c < v; ++c)
            ++cols[c];
    return from_sorted(std::move(cols));
}

bool dominated_by(const Partition& p, const Partition& q)
{
    std::size_t len = std::max(p.length(), q.length());
    int sp = 0, sq = 0;
    for (std::size_t i = 0; i < len; ++i) {
        sp += p.part(i);
        sq += q.part(i);
        if (sp > sq)
            return false;
    }
    return true;
}

Relation dominance_compare(const Partition& p, const Partition& q)
{
    require_same_size(p, q);
    bool le = dominated_by(p, q);
    bool ge = dominated_by(q, p);
    if (le && ge)
        return Relation::Equal;
    if (le)
        return Relation::Less;
    if (ge)
        return Relation::Greater;
    return Relation::Incomparable;
}

Relation lex_compare(const Partition& p, const Partition& q)
{
    require_same_size(p, q);
    std::size_t len = std::max(p.length(), q.length());
    for (std::size_t i = 0; i < len; ++i) {
        if (p.part(i) != q.part(i))
            return p.part(i) < q.part(i) ? Relation::Less : Relation::Greater;
    }
    return Relation::Equal;
}

namespace {

// True when every part with the given parity occurs an even number of times.
bool parity_parts_paired(const Partition& p, int parity)
{
    const auto& v = p.parts();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i])
            ++j;
        if (v[i] % 2 == parity && (j - i) % 2 != 0)
            return false;
        i = j;
    }
    return true;
}

Partition from_sorted(std::vector<int> parts)
{
    return Partition::normalize(parts);
}

} // namespace

bool is_symplectic(const Partition& p) { return parity_parts_paired(p, 1); }
bool is_orthogonal(const Partition& p) { return parity_parts_paired(p, 0); }

bool is_special_symplectic(const Partition& p)
{
    return is_symplectic(p) && is_symplectic(transpose(p));
}

PartitionClass classify(const Partition& p)
{
    PartitionClass c;
    c.symplectic = is_symplectic(p);
    c.orthogonal = is_orthogonal(p);
    c.special_symplectic = c.symplectic && is_symplectic(transpose(p));
    return c;
}

Partition decrement_tail(const Partition& q)
{
    if (q.empty())
        throw ValidationError("decrement_tail needs a nonempty partition");
    std::vector<int> parts = q.parts();
    --parts.back();
    return from_sorted(std::move(parts));
}

namespace {

// Depth-first walk over partitions of n whose prefix sums stay on one side
// of a bound, visiting them in lexicographic order (descending for the
// lower interval, ascending for the upper one).
class IntervalSearch {
public:
    IntervalSearch(const Partition& p, bool below, const PartitionPredicate& pred)
        : n_(p.size()), below_(below), pred_(pred)
    {
        // Partitions of n have at most n parts.
        bound_ = p.prefix_sums(static_cast<std::size_t>(n_) + 1);
    }

    Partition run()
    {
        cur_.clear();
        walk(0, n_);
        if (found_.empty())
            throw ValidationError("no qualifying partition in the dominance interval");
        if (found_.size() > 1)
            throw InvariantBreach("extremum not unique: " + describe());
        return Partition::normalize(found_.front());
    }

private:
    int prefix_at(const std::vector<int>& pre, std::size_t i) const
    {
        return i < pre.size() ? pre[i] : n_;
    }

    // Whether every completion of cur_ (future parts <= maxpart) lies on the
    // known side of the extremum, so the subtree can hold no rival.
    bool subtree_covered(int s, int maxpart) const
    {
        const auto& ext = ext_prefix_;
        std::size_t j = cur_.size();
        int run = 0;
        for (std::size_t i = 0; i < j; ++i) {
            run += cur_[i];
            if (below_ ? run > prefix_at(ext, i) : run < prefix_at(ext, i))
                return false;
        }
        for (std::size_t i = j; i < static_cast<std::size_t>(n_); ++i) {
            long long steps = static_cast<long long>(i - j + 1);
            if (below_) {
                long long hi = std::min<long long>({bound_[i], s + steps * maxpart, n_});
                if (hi > prefix_at(ext, i))
                    return false;
            } else {
                long long lo = std::max<long long>(bound_[i], std::min<long long>(n_, s + steps));
                if (lo < prefix_at(ext, i))
                    return false;
            }
        }
        return true;
    }

    // Can the remaining sum be placed with parts <= x while meeting the
    // lower bounds of the upper interval?
    bool upper_feasible(int s, int x) const
    {
        std::size_t j = cur_.size();
        for (std::size_t i = j; i < static_cast<std::size_t>(n_); ++i) {
            long long reach = std::min<long long>(n_, s + static_cast<long long>(i - j + 1) * x);
            if (reach < bound_[i])
                return false;
        }
        return true;
    }

    void consider()
    {
        Partition c = Partition::normalize(cur_);
        if (!pred_(c))
            return;
        for (const auto& f : found_) {
            const Partition fp = Partition::normalize(f);
            if (below_ ? dominated_by(c, fp) : dominated_by(fp, c))
                return;
        }
        found_.push_back(cur_);
        if (found_.size() == 1)
            ext_prefix_ = c.prefix_sums(static_cast<std::size_t>(n_));
        else
            throw InvariantBreach("extremum not unique: " + describe());
    }

    void walk(int s, int maxpart)
    {
        if (s == n_) {
            consider();
            return;
        }
        if (found_.size() == 1 && subtree_covered(s, maxpart))
            return;
        std::size_t j = cur_.size();
        int cap = std::min(maxpart, n_ - s);
        if (below_) {
            cap = std::min(cap, bound_[j] - s);
            for (int x = cap; x >= 1; --x) {
                cur_.push_back(x);
                walk(s + x, x);
                cur_.pop_back();
            }
        } else {
            for (int x = 1; x <= cap; ++x) {
                if (s + x < bound_[j] || !upper_feasible(s + x, x))
                    continue;
                cur_.push_back(x);
                walk(s + x, x);
                cur_.pop_back();
            }
        }
    }

    std::string describe() const
    {
        std::string out;
        for (const auto& f : found_) {
            out += out.empty() ? "[" : " and [";
            for (std::size_t i = 0; i < f.size(); ++i)
                out += (i ? "," : "") + std::to_string(f[i]);
            out += "]";
        }
        return out;
    }

    int n_;
    bool below_;
    const PartitionPredicate& pred_;
    std::vector<int> bound_;
    std::vector<int> cur_;
    std::vector<std::vector<int>> found_;
    std::vector<int> ext_prefix_;
};

} // namespace

Partition dominance_max_below(const Partition& p, const PartitionPredicate& pred)
{
    return IntervalSearch(p, true, pred).run();
}

Partition dominance_min_above(const Partition& p, const PartitionPredicate& pred)
{
    return IntervalSearch(p, false, pred).run();
}

Partition special_sp_collapse(const Partition& p)
{
    if (p.size() % 2 != 0)
        throw ValidationError("special symplectic collapse needs an even size, got " +
                              std::to_string(p.size()));
    if (is_special_symplectic(p))
        return p;
    return dominance_max_below(p, is_special_symplectic);
}

Partition symplectic_collapse(const Partition& p)
{
    if (p.size() % 2 != 0)
        throw ValidationError("symplectic collapse needs an even size, got " +
                              std::to_string(p.size()));
    if (is_symplectic(p))
        return p;
    return dominance_max_below(p, is_symplectic);
}

Partition sp_expansion(const Partition& p)
{
    if (p.size() % 2 != 0)
        throw ValidationError("expansion needs an even size, got " + std::to_string(p.size()));
    if (!is_symplectic(p))
        throw ValidationError("expansion needs a symplectic partition");
    if (is_special_symplectic(p))
        return p;
    return dominance_min_above(p, is_special_symplectic);
}

Partition barbasch_vogan_dual(const Partition& q)
{
    if (q.size() % 2 == 0)
        throw ValidationError("duality needs an odd size, got " + std::to_string(q.size()));
    if (!is_orthogonal(q))
        throw ValidationError("duality needs an orthogonal partition");
    Partition d = transpose(special_sp_collapse(decrement_tail(q)));
    if (!is_special_symplectic(d) || d.size() + 1 != q.size())
        throw InvariantBreach("dual is not special symplectic of size 2n");
    return d;
}

Partition compose_descent(long long head, const Partition& tail)
{
    if (head <= 0)
        throw ValidationError("head part must be positive, got " + std::to_string(head));
    std::vector<long long> raw(tail.parts().begin(), tail.parts().end());
    raw.push_back(head);
    return Partition::normalize(std::span<const long long>(raw));
}

int partition_cap()
{
    if (const char* env = std::getenv("BVCALC_PARTITION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0 && v <= 200)
            return static_cast<int>(v);
        throw ValidationError(std::string("bad BVCALC_PARTITION_CAP value '") + env + "'");
    }
    return 40;
}

std::vector<Partition> enumerate_partitions(int n, ClassMask mask)
{
    if (n < 0)
        throw ValidationError("negative size");
    int cap = partition_cap();
    if (n > cap)
        throw ValidationError("size " + std::to_string(n) + " exceeds the enumeration cap " +
                              std::to_string(cap));
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            Partition p = Partition::normalize(cur);
            if (mask.accepts(classify(p)))
                out.push_back(std::move(p));
            return;
        }
        for (int x = std::min(rest, maxpart); x >= 1; --x) {
            cur.push_back(x);
            rec(rest - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

} // namespace bvcalc
