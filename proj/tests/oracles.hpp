#pragma once

// Brute-force reference implementations used only by the tests. They work
// on plain integer vectors and share no code with the library beyond the
// Partition value type.

#include "bvcalc/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Parts = std::vector<int>;

// All partitions of n, generated by recursion on the largest part.
inline void gen(int n, int max_part, Parts& cur, std::vector<Parts>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen(n - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Parts> all_partitions(int n)
{
    std::vector<Parts> out;
    Parts cur;
    gen(n, n, cur, out);
    return out;
}

inline int mult(const Parts& p, int v)
{
    return static_cast<int>(std::count(p.begin(), p.end(), v));
}

inline bool symplectic(const Parts& p)
{
    for (int v : p)
        if (v % 2 == 1 && mult(p, v) % 2 == 1)
            return false;
    return true;
}

inline bool orthogonal(const Parts& p)
{
    for (int v : p)
        if (v % 2 == 0 && mult(p, v) % 2 == 1)
            return false;
    return true;
}

// Column lengths of the Young diagram, counted cell by cell.
inline Parts transpose(const Parts& p)
{
    std::map<int, int> col;
    for (int row : p)
        for (int c = 1; c <= row; ++c)
            ++col[c];
    Parts out;
    for (auto [c, h] : col)
        out.push_back(h);
    return out;
}

inline int total(const Parts& p)
{
    int s = 0;
    for (int v : p)
        s += v;
    return s;
}

// p <= q in dominance, sizes equal.
inline bool leq(const Parts& p, const Parts& q)
{
    std::size_t len = std::max(p.size(), q.size());
    int sp = 0, sq = 0;
    for (std::size_t i = 0; i < len; ++i) {
        sp += i < p.size() ? p[i] : 0;
        sq += i < q.size() ? q[i] : 0;
        if (sp > sq)
            return false;
    }
    return true;
}

// -1, 0, 1 for less, equal, greater; trailing zeros implicit.
inline int lex(const Parts& p, const Parts& q)
{
    std::size_t len = std::max(p.size(), q.size());
    for (std::size_t i = 0; i < len; ++i) {
        int a = i < p.size() ? p[i] : 0;
        int b = i < q.size() ? q[i] : 0;
        if (a != b)
            return a < b ? -1 : 1;
    }
    return 0;
}

inline Parts to_parts(const bvcalc::Partition& p)
{
    return p.parts();
}

inline bvcalc::Partition from_parts(const Parts& p)
{
    return bvcalc::Partition::normalize(p);
}

template <class Pred>
std::vector<Parts> filtered(int n, Pred pred)
{
    std::vector<Parts> out;
    for (auto& p : all_partitions(n))
        if (pred(p))
            out.push_back(p);
    return out;
}

// Maximal elements of {s : pred(s), s <= p}; throws if not unique.
template <class Pred>
Parts max_below(const Parts& p, Pred pred)
{
    std::vector<Parts> cands;
    for (auto& s : all_partitions(total(p)))
        if (pred(s) && leq(s, p))
            cands.push_back(s);
    std::vector<Parts> top;
    for (auto& c : cands) {
        bool maximal = true;
        for (auto& d : cands)
            if (d != c && leq(c, d))
                maximal = false;
        if (maximal)
            top.push_back(c);
    }
    if (top.size() != 1)
        throw std::runtime_error("no unique maximum");
    return top.front();
}

template <class Pred>
Parts min_above(const Parts& p, Pred pred)
{
    std::vector<Parts> cands;
    for (auto& s : all_partitions(total(p)))
        if (pred(s) && leq(p, s))
            cands.push_back(s);
    std::vector<Parts> bottom;
    for (auto& c : cands) {
        bool minimal = true;
        for (auto& d : cands)
            if (d != c && leq(d, c))
                minimal = false;
        if (minimal)
            bottom.push_back(c);
    }
    if (bottom.size() != 1)
        throw std::runtime_error("no unique minimum");
    return bottom.front();
}

// Largest symplectic partition below p, with no specialness requirement.
inline Parts sp_collapse(const Parts& p)
{
    return max_below(p, symplectic);
}

inline Parts decrement_last(Parts q)
{
    if (--q.back() == 0)
        q.pop_back();
    return q;
}

// Duality through the classical collapse of the decremented transpose; it
// never consults a specialness test.
inline Parts dual_via_transpose_first(const Parts& q)
{
    return sp_collapse(decrement_last(transpose(q)));
}

// Special symplectic partitions of n as the image of transpose followed by
// the classical collapse, over all symplectic partitions of n.
inline std::set<Parts> special_by_image(int n)
{
    std::set<Parts> out;
    for (auto& q : filtered(n, symplectic))
        out.insert(sp_collapse(transpose(q)));
    return out;
}

} // namespace oracle
