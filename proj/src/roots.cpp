#include "bvcalc/roots.hpp"

#include "bvcalc/error.hpp"
#include "bvcalc/text.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <cstdlib>

namespace bvcalc {

RootC RootC::e_minus_e(int i, int j)
{
    if (i == j || i < 1 || j < 1)
        throw ValidationError("e_i - e_j needs distinct positive indices");
    return i < j ? RootC{RootKind::EminusE, i, j, 1} : RootC{RootKind::EminusE, j, i, -1};
}

RootC RootC::e_plus_e(int i, int j)
{
    if (i == j || i < 1 || j < 1)
        throw ValidationError("e_i + e_j needs distinct positive indices");
    return RootC{RootKind::EplusE, std::min(i, j), std::max(i, j), 1};
}

RootC RootC::two_e(int i)
{
    if (i < 1)
        throw ValidationError("2e_i needs a positive index");
    return RootC{RootKind::TwoE, i, 0, 1};
}

std::optional<RootC> RootC::from_coeffs(const std::map<int, int>& c)
{
    std::vector<std::pair<int, int>> nz;
    for (auto [idx, v] : c)
        if (v != 0) {
            if (idx < 1)
                return std::nullopt;
            nz.emplace_back(idx, v);
        }
    if (nz.size() == 1 && std::abs(nz[0].second) == 2)
        return RootC{RootKind::TwoE, nz[0].first, 0, nz[0].second > 0 ? 1 : -1};
    if (nz.size() != 2 || std::abs(nz[0].second) != 1 || std::abs(nz[1].second) != 1)
        return std::nullopt;
    auto [i, ci] = nz[0];
    auto [j, cj] = nz[1];
    if (ci == cj)
        return RootC{RootKind::EplusE, i, j, ci};
    return RootC{RootKind::EminusE, i, j, ci};
}

std::map<int, int> RootC::coeffs() const
{
    switch (kind) {
    case RootKind::EminusE: return {{i, sign}, {j, -sign}};
    case RootKind::EplusE: return {{i, sign}, {j, sign}};
    case RootKind::TwoE: return {{i, 2 * sign}};
    }
    return {};
}

RootC RootC::negated() const
{
    RootC r = *this;
    r.sign = -sign;
    return r;
}

std::vector<RootC> all_roots(int N)
{
    std::vector<RootC> out;
    for (int i = 1; i <= N; ++i) {
        out.push_back(RootC::two_e(i));
        out.push_back(RootC::two_e(i).negated());
        for (int j = i + 1; j <= N; ++j) {
            out.push_back(RootC::e_minus_e(i, j));
            out.push_back(RootC::e_minus_e(j, i));
            out.push_back(RootC::e_plus_e(i, j));
            out.push_back(RootC::e_plus_e(i, j).negated());
        }
    }
    return out;
}

std::optional<RootC> root_sum(const RootC& a, const RootC& b)
{
    auto c = a.coeffs();
    for (auto [idx, v] : b.coeffs())
        c[idx] += v;
    return RootC::from_coeffs(c);
}

bool bracket_closed(const RootSet& s)
{
    for (const auto& a : s)
        for (const auto& b : s)
            if (auto c = root_sum(a, b); c && !s.count(*c))
                return false;
    return true;
}

WeightVector::WeightVector(std::vector<int> weights) : w_(std::move(weights))
{
    const std::size_t n = w_.size();
    if (n % 2 != 0)
        throw ValidationError("weight vector must have even length");
    for (std::size_t i = 0; i < n; ++i)
        if (w_[n - 1 - i] != -w_[i])
            throw ValidationError("weight vector is not antisymmetric at position " + std::to_string(i + 1));
}

WeightVector torus_weights_from_partition(const Partition& p, Arrangement arrangement)
{
    if (!is_symplectic(p))
        throw ValidationError(format_partition(p) + " is not symplectic");
    std::vector<int> full;
    if (arrangement == Arrangement::Dominant) {
        for (int q : p.parts())
            for (int w = q - 1; w >= 1 - q; w -= 2)
                full.push_back(w);
        std::sort(full.begin(), full.end(), std::greater<>());
        return WeightVector(full);
    }
    // Equal parts are taken in pairs; a pair fills a whole block of e-weights
    // and a leftover (even) part fills the upper half of its block.
    std::vector<int> e;
    const auto& v = p.parts();
    for (std::size_t i = 0; i < v.size();) {
        int q = v[i];
        if (i + 1 < v.size() && v[i + 1] == q) {
            for (int w = q - 1; w >= 1 - q; w -= 2)
                e.push_back(w);
            i += 2;
        } else {
            for (int w = q - 1; w >= 1; w -= 2)
                e.push_back(w);
            i += 1;
        }
    }
    full = e;
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        full.push_back(-*it);
    return WeightVector(full);
}

int root_weight(const RootC& root, const WeightVector& w)
{
    if (root.max_index() > w.rank())
        throw ValidationError("root " + format_root(root) + " exceeds rank " + std::to_string(w.rank()));
    int s = 0;
    for (auto [idx, c] : root.coeffs())
        s += c * w.e_weight(idx);
    return s;
}

RootSet roots_of_weight_at_least(const WeightVector& w, int threshold)
{
    RootSet out;
    for (const auto& r : all_roots(w.rank()))
        if (root_weight(r, w) >= threshold)
            out.insert(r);
    return out;
}

RootSet v_p2(const Partition& p, Arrangement arrangement)
{
    return roots_of_weight_at_least(torus_weights_from_partition(p, arrangement), 2);
}

SignedPermutation::SignedPermutation(std::vector<int> image) : image_(std::move(image))
{
    const int n = static_cast<int>(image_.size());
    std::vector<bool> hit(n + 1, false);
    for (int v : image_) {
        int a = std::abs(v);
        if (a < 1 || a > n || hit[a])
            throw ValidationError("not a signed permutation of 1.." + std::to_string(n));
        hit[a] = true;
    }
}

SignedPermutation SignedPermutation::identity(int N)
{
    std::vector<int> img(N);
    for (int i = 0; i < N; ++i)
        img[i] = i + 1;
    return SignedPermutation(img);
}

RootC SignedPermutation::apply(const RootC& r) const
{
    if (r.max_index() > rank())
        throw ValidationError("root " + format_root(r) + " exceeds permutation rank");
    std::map<int, int> out;
    for (auto [idx, c] : r.coeffs()) {
        int img = image_[idx - 1];
        out[std::abs(img)] += img > 0 ? c : -c;
    }
    return *RootC::from_coeffs(out);
}

SignedPermutation SignedPermutation::inverse() const
{
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
        int img = image_[i];
        inv[std::abs(img) - 1] = img > 0 ? static_cast<int>(i + 1) : -static_cast<int>(i + 1);
    }
    return SignedPermutation(inv);
}

RootSet weyl_conjugate_roots(const SignedPermutation& w, const RootSet& roots)
{
    RootSet out;
    for (const auto& r : roots)
        out.insert(w.apply(r));
    return out;
}

SignedPermutation weight_matching_permutation(const WeightVector& from, const WeightVector& to)
{
    const int N = from.rank();
    if (to.rank() != N)
        throw ValidationError("weight vectors of different rank");
    std::vector<int> image(N, 0);
    std::vector<bool> used(N + 1, false);
    for (int i = 1; i <= N; ++i) {
        int v = from.e_weight(i);
        int pick = 0;
        for (int pass = 0; pass < 2 && pick == 0; ++pass)
            for (int j = 1; j <= N; ++j)
                if (!used[j] && to.e_weight(j) == (pass == 0 ? v : -v)) {
                    pick = pass == 0 ? j : -j;
                    break;
                }
        if (pick == 0)
            throw ValidationError("weight vectors are not Weyl conjugate");
        used[std::abs(pick)] = true;
        image[i - 1] = pick;
    }
    return SignedPermutation(image);
}

UnipotentElement UnipotentElement::identity(int N)
{
    UnipotentElement g;
    g.N_ = N;
    g.a_.assign(static_cast<std::size_t>(4 * N * N), Rational(0));
    for (int i = 1; i <= 2 * N; ++i)
        g.at(i, i) = 1;
    return g;
}

UnipotentElement UnipotentElement::operator*(const UnipotentElement& o) const
{
    if (N_ != o.N_)
        throw ValidationError("matrix ranks differ");
    UnipotentElement out;
    out.N_ = N_;
    const int d = dim();
    out.a_.assign(static_cast<std::size_t>(d * d), Rational(0));
    for (int r = 1; r <= d; ++r)
        for (int k = 1; k <= d; ++k) {
            const Rational& x = at(r, k);
            if (x == Rational(0))
                continue;
            for (int c = 1; c <= d; ++c)
                if (o.at(k, c) != Rational(0))
                    out.at(r, c) += x * o.at(k, c);
        }
    return out;
}

UnipotentElement UnipotentElement::inverse() const
{
    // g = 1 + X with X nilpotent: g^{-1} = sum (-X)^k.
    UnipotentElement minus_x = *this;
    for (int i = 1; i <= dim(); ++i)
        minus_x.at(i, i) -= 1;
    for (auto& v : minus_x.a_)
        v = -v;
    UnipotentElement term = identity(N_);
    UnipotentElement sum = identity(N_);
    for (int k = 1; k <= dim(); ++k) {
        term = term * minus_x;
        bool zero = true;
        for (std::size_t i = 0; i < sum.a_.size(); ++i)
            if (term.a_[i] != Rational(0)) {
                sum.a_[i] += term.a_[i];
                zero = false;
            }
        if (zero)
            break;
    }
    if (!(*this * sum).is_identity())
        throw InvariantBreach("matrix is not unipotent");
    return sum;
}

bool UnipotentElement::is_identity() const
{
    for (int r = 1; r <= dim(); ++r)
        for (int c = 1; c <= dim(); ++c)
            if (at(r, c) != Rational(r == c ? 1 : 0))
                return false;
    return true;
}

UnipotentElement symplectic_form(int N)
{
    UnipotentElement j = UnipotentElement::identity(N);
    for (int r = 1; r <= 2 * N; ++r)
        j.at(r, r) = 0;
    for (int r = 1; r <= 2 * N; ++r)
        j.at(r, 2 * N + 1 - r) = r <= N ? 1 : -1;
    return j;
}

namespace {

UnipotentElement transpose_of(const UnipotentElement& g)
{
    UnipotentElement t = g;
    for (int r = 1; r <= g.dim(); ++r)
        for (int c = 1; c <= g.dim(); ++c)
            t.at(r, c) = g.at(c, r);
    return t;
}

// Signed coordinate of a matrix position: +e_p in the first half,
// -e_{2N+1-p} in the second.
std::pair<int, int> coord(int p, int N)
{
    return p <= N ? std::pair{1, p} : std::pair{-1, 2 * N + 1 - p};
}

std::optional<RootC> position_root(int r, int c, int N)
{
    auto [sr, ir] = coord(r, N);
    auto [sc, ic] = coord(c, N);
    std::map<int, int> m;
    m[ir] += sr;
    m[ic] -= sc;
    return RootC::from_coeffs(m);
}

bool in_lie_algebra(const UnipotentElement& x, const UnipotentElement& j)
{
    // X^T J + J X == 0, with x holding X (zero diagonal assumed).
    UnipotentElement a = transpose_of(x) * j;
    UnipotentElement b = j * x;
    for (int r = 1; r <= x.dim(); ++r)
        for (int c = 1; c <= x.dim(); ++c)
            if (a.at(r, c) + b.at(r, c) != Rational(0))
                return false;
    return true;
}

} // namespace

bool preserves_form(const UnipotentElement& g)
{
    UnipotentElement j = symplectic_form(g.rank());
    return transpose_of(g) * j * g == j;
}

std::vector<std::pair<int, int>> root_positions(const RootC& root, int N)
{
    if (root.max_index() > N)
        throw ValidationError("root " + format_root(root) + " exceeds rank " + std::to_string(N));
    std::vector<std::pair<int, int>> out;
    for (int r = 1; r <= 2 * N; ++r)
        for (int c = 1; c <= 2 * N; ++c)
            if (r != c)
                if (auto pr = position_root(r, c, N); pr && *pr == root)
                    out.emplace_back(r, c);
    return out;
}

UnipotentElement one_parameter_matrix(const RootC& root, const Rational& t, int N)
{
    auto pos = root_positions(root, N);
    UnipotentElement j = symplectic_form(N);
    UnipotentElement x;
    bool found = false;
    for (int s : {1, -1}) {
        x = UnipotentElement::identity(N);
        for (int i = 1; i <= 2 * N; ++i)
            x.at(i, i) = 0;
        x.at(pos[0].first, pos[0].second) = 1;
        if (pos.size() > 1)
            x.at(pos[1].first, pos[1].second) = s;
        if (in_lie_algebra(x, j)) {
            found = true;
            break;
        }
    }
    if (!found)
        throw InvariantBreach("no root vector for " + format_root(root));
    // exp(tX); X is square-zero for every root of C_N but the series is kept general.
    UnipotentElement g = UnipotentElement::identity(N);
    UnipotentElement term = UnipotentElement::identity(N);
    for (int k = 1; k <= 2 * N; ++k) {
        term = term * x;
        bool zero = true;
        for (int r = 1; r <= 2 * N && zero; ++r)
            for (int c = 1; c <= 2 * N; ++c)
                if (term.at(r, c) != Rational(0)) {
                    zero = false;
                    break;
                }
        if (zero)
            break;
        Rational coef = 1;
        for (int i = 1; i <= k; ++i)
            coef *= t / Rational(i);
        for (int r = 1; r <= 2 * N; ++r)
            for (int c = 1; c <= 2 * N; ++c)
                if (term.at(r, c) != Rational(0))
                    g.at(r, c) += coef * term.at(r, c);
    }
    if (!preserves_form(g))
        throw InvariantBreach("root element for " + format_root(root) + " leaves the form");
    return g;
}

UnipotentElement commutator(const UnipotentElement& x, const UnipotentElement& y)
{
    if (x.rank() != y.rank())
        throw ValidationError("commutator of matrices of different rank");
    return x * y * x.inverse() * y.inverse();
}

RootSet support(const UnipotentElement& g)
{
    RootSet out;
    const int N = g.rank();
    for (int r = 1; r <= g.dim(); ++r)
        for (int c = 1; c <= g.dim(); ++c)
            if (r != c && g.at(r, c) != Rational(0))
                out.insert(*position_root(r, c, N));
    return out;
}

Rational root_coefficient(const UnipotentElement& g, const RootC& root)
{
    auto pos = root_positions(root, g.rank());
    return g.at(pos[0].first, pos[0].second);
}

RootSet ExchangeDatum::c_at_stage(int i) const
{
    if (i < 1 || i > static_cast<int>(stages.size()))
        throw ValidationError("stage " + std::to_string(i) + " outside 1.." + std::to_string(stages.size()));
    RootSet c = c_roots;
    for (int s = 1; s < i; ++s)
        c.insert(stages[s - 1].x_seq.begin(), stages[s - 1].x_seq.end());
    for (int l = i + 1; l <= static_cast<int>(stages.size()); ++l)
        c.insert(stages[l - 1].y_seq.begin(), stages[l - 1].y_seq.end());
    c.insert(stages[i - 1].extra_c.begin(), stages[i - 1].extra_c.end());
    return c;
}

std::vector<int> exchange_frame_weights(int k, int b)
{
    if (k < 1 || b < 1)
        throw ValidationError("exchange data need k >= 1 and b >= 1");
    std::vector<int> w;
    for (int i = 1; i <= 2 * k + 1; ++i)
        w.push_back(2 * k + 2 - 2 * i);
    for (int g = 0; g < k; ++g)
        for (int s = 0; s < 2 * b - 2; ++s)
            w.push_back(2 * k - 2 * g);
    for (int s = 0; s < b - 1; ++s)
        w.push_back(0);
    return w;
}

std::vector<int> exchange_lengths(int k, int b)
{
    if (k < 1 || b < 1)
        throw ValidationError("exchange data need k >= 1 and b >= 1");
    std::vector<int> m;
    for (int i = 1; i <= 2 * k; ++i)
        m.push_back(i <= k ? i + (2 * b - 2) * i : (2 * k + 1 - i) + (2 * b - 2) * i);
    return m;
}

ExchangeDatum exchange_sequences(int k, int b)
{
    std::vector<int> e = exchange_frame_weights(k, b);
    ExchangeDatum d;
    d.k = k;
    d.b = b;
    d.N = (2 * k + 1) * b;
    const int N = d.N;
    for (int i = 1; i <= 2 * k; ++i) {
        ExchangeStage st;
        auto add = [&](RootC a, RootC bb) {
            st.x_seq.push_back(a);
            st.y_seq.push_back(bb);
        };
        if (i <= k) {
            for (int j = 1; j <= i; ++j) {
                int p = 2 * k + 1 - i + j;
                add(RootC::e_plus_e(i, p), RootC::e_plus_e(p, i + 1).negated());
            }
            for (int t = 1; t <= (2 * b - 2) * i; ++t) {
                int p = 2 * k + 2 + (2 * b - 2) * i - t;
                add(RootC::e_minus_e(i, p), RootC::e_minus_e(p, i + 1));
            }
        } else {
            for (int j = 1; j <= 2 * k + 1 - i; ++j) {
                int p = i + j;
                RootC beta = p == i + 1 ? RootC::two_e(i + 1).negated() : RootC::e_plus_e(p, i + 1).negated();
                add(RootC::e_plus_e(i, p), beta);
            }
            int cnt = (b - 1) + (2 * b - 2) * (i - k - 1);
            for (int t = 1; t <= cnt; ++t) {
                int p = N - cnt + t;
                add(RootC::e_plus_e(i, p), RootC::e_plus_e(p, i + 1).negated());
            }
            for (int t = 1; t <= (2 * k + 1) * (b - 1); ++t) {
                int p = N - (t - 1);
                add(RootC::e_minus_e(i, p), RootC::e_minus_e(p, i + 1));
            }
        }
        for (int t = k + 2; t <= i; ++t)
            st.extra_c.insert(RootC::two_e(t));
        d.stages.push_back(std::move(st));
    }

    std::vector<int> full = e;
    for (auto it = e.rbegin(); it != e.rend(); ++it)
        full.push_back(-*it);
    RootSet betas;
    for (const auto& st : d.stages)
        betas.insert(st.y_seq.begin(), st.y_seq.end());
    for (const auto& r : roots_of_weight_at_least(WeightVector(full), 2))
        if (!betas.count(r))
            d.c_roots.insert(r);
    // Left over from the diagonal of the tied block once its other
    // entries became the first alpha of each stage.
    d.c_roots.insert(RootC::two_e(k + 1));
    for (int i = 1; i <= 2 * k; ++i)
        d.char_support.insert(RootC::e_minus_e(i, i + 1));
    return d;
}

std::map<int, int> FormalRoot::collect() const
{
    std::map<int, int> m;
    for (auto [idx, c] : terms)
        m[idx] += c;
    for (auto it = m.begin(); it != m.end();)
        it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
}

std::vector<PrintedPair> exchange_sequences_as_printed(int k, int b)
{
    if (k < 1 || b < 1)
        throw ValidationError("exchange data need k >= 1 and b >= 1");
    const int N = (2 * k + 1) * b;
    std::vector<PrintedPair> out;
    auto push = [&](int i, int j, int range, std::vector<std::pair<int, int>> a,
                    std::vector<std::pair<int, int>> bb) {
        out.push_back({i, j, range, FormalRoot{std::move(a)}, FormalRoot{std::move(bb)}});
    };
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= i; ++j) {
            int x = 2 * k + 1 - i + j;
            push(i, j, 1, {{i, 1}, {x, 1}}, {{x, -1}, {i + 1, -1}});
        }
        for (int j = i + 1; j <= i + (2 * b - 2) * i; ++j) {
            int x = (2 * k + 1) + (2 * b - 2) * i - (j - 1);
            push(i, j, 2, {{i, 1}, {x, -1}}, {{x, 1}, {i + 1, -1}});
        }
    }
    for (int i = k + 1; i <= 2 * k; ++i) {
        int head = 2 * k + 1 - i;
        int cnt = (b - 1) + (2 * b - 2) * (i - k - 1);
        for (int j = 1; j <= head; ++j)
            push(i, j, 3, {{i, 1}, {i + j, 1}}, {{i + j, -1}, {i + 1, -1}});
        for (int j = head + 1; j <= head + cnt; ++j) {
            int x = N - (b - 1) - (2 * b - 2) * (i - k - 1) + j;
            push(i, j, 4, {{i, 1}, {x, 1}}, {{x, -1}, {i + 1, -1}});
        }
        for (int j = head + cnt + 1; j <= head + (2 * b - 2) * i; ++j) {
            int x = N - (j - 1);
            push(i, j, 5, {{i, 1}, {x, -1}}, {{x, 1}, {i + 1, -1}});
        }
    }
    return out;
}

bool QuadrupleReport::all_pass() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

namespace {

void fail(ConditionResult* c, std::string w)
{
    if (!c)
        return;
    c->pass = false;
    if (c->witnesses.size() < 8)
        c->witnesses.push_back(std::move(w));
}

// Checks single exchange steps of one stage. Pairs are exchanged one at a
// time: the step for pair p works with C, the X roots already exchanged and
// the Y roots still waiting.
class StepChecker {
public:
    StepChecker(const ExchangeDatum& d, int N, int stage) : d_(d), N_(N), c_(d.c_at_stage(stage))
    {
        if (N < 1)
            throw ValidationError("rank must be positive");
        const ExchangeStage& st = d.stages[stage - 1];
        auto check_rank = [&](const RootC& r) {
            if (r.max_index() > N)
                throw ValidationError("root " + format_root(r) + " exceeds rank " + std::to_string(N));
        };
        for (const auto& r : c_)
            check_rank(r);
        for (const auto& r : st.x_seq)
            check_rank(r);
        for (const auto& r : st.y_seq)
            check_rank(r);
        for (const auto& r : d.char_support)
            check_rank(r);
    }

    const RootSet& common() const { return c_; }

    // With every report pointer null the first failure returns false.
    bool step(const RootC& x, const RootC& y, const RootSet& cj, const std::string& at, ConditionResult* group,
              ConditionResult* norm, ConditionResult* brk, ConditionResult* chr, ConditionResult* pair)
    {
        const bool quick = !group;
        bool ok = true;
        auto bad = [&](ConditionResult* c, std::string w) {
            ok = false;
            fail(c, std::move(w));
            return quick;
        };

        for (const RootC* r : {&x, &y})
            if (d_.char_support.count(*r) && bad(chr, format_root(*r) + " carries the character" + at))
                return false;

        auto s = root_sum(x, y);
        if (!s || !d_.char_support.count(*s)) {
            if (bad(pair, format_root(x) + " + " + format_root(y) + " misses the character support" + at))
                return false;
        } else if (root_coefficient(commutator(el(x), el(y)), *s) == Rational(0)) {
            if (bad(pair, "[" + format_root(x) + "," + format_root(y) + "] vanishes on " + format_root(*s) + at))
                return false;
        }

        if (cj.count(x) && bad(group, "X root " + format_root(x) + " lies in C" + at))
            return false;
        if (cj.count(y) && bad(group, "Y root " + format_root(y) + " lies in C" + at))
            return false;

        if (y == x.negated()) {
            if (bad(brk, format_root(x) + " and " + format_root(y) + " are opposite" + at))
                return false;
        } else {
            for (const auto& r : comm_support(x, y))
                if (!cj.count(r) &&
                    bad(brk, "[" + format_root(x) + "," + format_root(y) + "] reaches " + format_root(r) + at))
                    return false;
        }

        for (const RootC* r : {&x, &y})
            for (const auto& g : cj) {
                if (g == r->negated()) {
                    if (bad(norm, format_root(g) + " in C is opposite to " + format_root(*r) + at))
                        return false;
                    continue;
                }
                for (const auto& t : comm_support(*r, g))
                    if (!cj.count(t) &&
                        bad(norm, "[" + format_root(*r) + "," + format_root(g) + "] reaches " + format_root(t) + at))
                        return false;
            }

        for (const auto& a : cj) {
            if (a.positive() && cj.count(a.negated()) &&
                bad(group, "C holds " + format_root(a) + " and its negative" + at))
                return false;
            for (const auto& b : cj)
                if (a < b && b != a.negated())
                    for (const auto& r : comm_support(a, b))
                        if (!cj.count(r) &&
                            bad(group, "[" + format_root(a) + "," + format_root(b) + "] reaches " + format_root(r) + at))
                            return false;
        }
        return ok;
    }

private:
    const UnipotentElement& el(const RootC& r)
    {
        auto it = elt_.find(r);
        if (it == elt_.end())
            it = elt_.emplace(r, one_parameter_matrix(r, Rational(1), N_)).first;
        return it->second;
    }

    const RootSet& comm_support(const RootC& a, const RootC& b)
    {
        auto it = supports_.find({a, b});
        if (it == supports_.end())
            it = supports_.emplace(std::pair{a, b}, support(commutator(el(a), el(b)))).first;
        return it->second;
    }

    const ExchangeDatum& d_;
    int N_;
    RootSet c_;
    std::map<RootC, UnipotentElement> elt_;
    std::map<std::pair<RootC, RootC>, RootSet> supports_;
};

RootSet step_group(const RootSet& c, const ExchangeStage& st, const std::vector<bool>& done, std::size_t p)
{
    RootSet cj = c;
    for (std::size_t q = 0; q < st.x_seq.size(); ++q) {
        if (q == p)
            continue;
        cj.insert(done[q] ? st.x_seq[q] : st.y_seq[q]);
    }
    return cj;
}

} // namespace

QuadrupleReport verify_exchange_quadruple(const ExchangeDatum& d, int N, int stage)
{
    StepChecker checker(d, N, stage);
    const ExchangeStage& st = d.stages[stage - 1];

    QuadrupleReport rep;
    rep.stage = stage;
    ConditionResult group{"group: C closed, unipotent, disjoint from X and Y", true, {}};
    ConditionResult norm{"(a) X and Y normalize C", true, {}};
    ConditionResult brk{"(b) [X,Y] inside C", true, {}};
    ConditionResult chr{"(c) character trivial on X and Y", true, {}};
    ConditionResult pair{"(d) pairing non-degenerate", true, {}};

    if (st.x_seq.size() != st.y_seq.size())
        fail(&pair, "X has " + std::to_string(st.x_seq.size()) + " roots but Y has " +
                        std::to_string(st.y_seq.size()));
    const std::size_t n = std::min(st.x_seq.size(), st.y_seq.size());
    for (std::size_t j = n; j < st.x_seq.size(); ++j)
        fail(&pair, "unmatched X root " + format_root(st.x_seq[j]));
    for (std::size_t j = n; j < st.y_seq.size(); ++j)
        fail(&pair, "unmatched Y root " + format_root(st.y_seq[j]));

    ExchangeStage matched{{st.x_seq.begin(), st.x_seq.begin() + static_cast<std::ptrdiff_t>(n)},
                          {st.y_seq.begin(), st.y_seq.begin() + static_cast<std::ptrdiff_t>(n)},
                          st.extra_c};
    std::vector<bool> done(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        RootSet cj = step_group(checker.common(), matched, done, j);
        checker.step(matched.x_seq[j], matched.y_seq[j], cj, " (step " + std::to_string(j + 1) + ")", &group, &norm,
                     &brk, &chr, &pair);
        done[j] = true;
    }
    rep.conditions = {group, norm, brk, chr, pair};
    return rep;
}

std::optional<std::vector<int>> exchange_step_order(const ExchangeDatum& d, int N, int stage)
{
    StepChecker checker(d, N, stage);
    const ExchangeStage& st = d.stages[stage - 1];
    if (st.x_seq.size() != st.y_seq.size())
        throw ValidationError("X and Y of stage " + std::to_string(stage) + " differ in length");
    const std::size_t n = st.x_seq.size();
    if (n > 63)
        throw ValidationError("stage too long for the order search");

    // Depth-first over the set of exchanged pairs; dead sets are remembered.
    std::set<std::uint64_t> dead;
    std::vector<int> order;
    std::vector<bool> done(n, false);
    std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t mask) {
        if (order.size() == n)
            return true;
        if (dead.count(mask))
            return false;
        for (std::size_t p = 0; p < n; ++p) {
            if (done[p])
                continue;
            RootSet cj = step_group(checker.common(), st, done, p);
            if (!checker.step(st.x_seq[p], st.y_seq[p], cj, "", nullptr, nullptr, nullptr, nullptr, nullptr))
                continue;
            done[p] = true;
            order.push_back(static_cast<int>(p) + 1);
            if (dfs(mask | (std::uint64_t{1} << p)))
                return true;
            order.pop_back();
            done[p] = false;
        }
        dead.insert(mask);
        return false;
    };
    if (!dfs(0))
        return std::nullopt;
    return order;
}

ExchangeDatum reorder_stage(const ExchangeDatum& d, int stage, const std::vector<int>& order)
{
    if (stage < 1 || stage > static_cast<int>(d.stages.size()))
        throw ValidationError("stage " + std::to_string(stage) + " outside 1.." + std::to_string(d.stages.size()));
    ExchangeDatum out = d;
    const ExchangeStage& st = d.stages[stage - 1];
    ExchangeStage& dst = out.stages[stage - 1];
    std::vector<int> seen(st.x_seq.size() + 1, 0);
    if (order.size() != st.x_seq.size() || st.x_seq.size() != st.y_seq.size())
        throw ValidationError("order must list every pair of stage " + std::to_string(stage) + " once");
    for (std::size_t t = 0; t < order.size(); ++t) {
        int p = order[t];
        if (p < 1 || p > static_cast<int>(st.x_seq.size()) || seen[p]++)
            throw ValidationError("order must list every pair of stage " + std::to_string(stage) + " once");
        dst.x_seq[t] = st.x_seq[p - 1];
        dst.y_seq[t] = st.y_seq[p - 1];
    }
    return out;
}

} // namespace bvcalc
