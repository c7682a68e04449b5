#include "krf/fdual.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace krf {

VarLayout VarLayout::of(const CartanData& cd, const RootVector& gamma)
{
    VarLayout l;
    l.sizes.resize(cd.rank);
    l.offsets.resize(cd.rank);
    int off = 0;
    for (std::size_t i = 0; i < cd.rank; ++i) {
        l.sizes[i] = static_cast<int>(gamma.m[i]);
        l.offsets[i] = off;
        off += l.sizes[i];
    }
    l.width = off;
    return l;
}

int VarLayout::group_of(int v) const
{
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (v >= offsets[i] && v < offsets[i] + sizes[i])
            return static_cast<int>(i);
    throw std::out_of_range("VarLayout::group_of");
}

std::vector<std::vector<int>> VarLayout::groups() const
{
    std::vector<std::vector<int>> g;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::vector<int> block;
        for (int r = 0; r < sizes[i]; ++r)
            block.push_back(offsets[i] + r);
        g.push_back(std::move(block));
    }
    return g;
}

long denominator_degree(const CartanData& cd, const RootVector& gamma)
{
    long T = 0;
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j)
            T += gamma.m[i] * gamma.m[j];
    return T;
}

long RationalElement::degree(const CartanData& cd) const
{
    if (num.is_zero())
        throw std::logic_error("degree of the zero element");
    long d = 0;
    bool first = true;
    for (const auto& [e, c] : num.t) {
        long s = 0;
        for (int x : e)
            s += x;
        if (!first && s != d)
            throw std::logic_error("degree: numerator not homogeneous");
        d = s;
        first = false;
    }
    return d - denominator_degree(cd, gamma);
}

RationalFn to_fn(const CartanData& cd, const RationalElement& e)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    RationalFn f;
    f.width = l.width;
    f.num = e.num;
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j)
            for (int r = 0; r < l.sizes[i]; ++r)
                for (int s = 0; s < l.sizes[j]; ++s)
                    f.den[{l.var(static_cast<int>(i), r), l.var(static_cast<int>(j), s)}] += 1;
    return f;
}

bool validate_element(const CartanData& cd, const RationalElement& e, std::string* why)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    if (e.num.width != l.width) {
        if (why)
            *why = "width mismatch";
        return false;
    }
    for (const auto& block : l.groups())
        if (!symmetric_in(e.num, block)) {
            if (why)
                *why = "numerator not symmetric within a block";
            return false;
        }
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = 0; j < cd.rank; ++j) {
            if (i == j)
                continue;
            long chat = cd.hatted[i][j];
            if (l.sizes[i] < chat || l.sizes[j] < 1)
                continue;
            std::vector<int> target(l.width);
            for (int v = 0; v < l.width; ++v)
                target[v] = v;
            for (long r = 0; r < chat; ++r)
                target[l.var(static_cast<int>(i), static_cast<int>(r))] =
                    l.var(static_cast<int>(j), 0);
            if (!e.num.substituted(l.width, target).is_zero()) {
                if (why)
                    *why = "vanishing condition fails for node pair (" + std::to_string(i + 1) +
                           "," + std::to_string(j + 1) + ")";
                return false;
            }
        }
    return true;
}

// --- residue calculus --------------------------------------------------------

RationalFn residue_small(const RationalFn& f, int v, long k)
{
    // Split the denominator into factors containing v and the rest.
    std::vector<std::tuple<int, long, bool>> vf; // (other var, mult, v_first)
    std::map<std::pair<int, int>, long> rest;
    for (const auto& [key, m] : f.den) {
        if (key.first == v)
            vf.emplace_back(key.second, m, true);
        else if (key.second == v)
            vf.emplace_back(key.first, m, false);
        else
            rest[key] = m;
    }

    auto coef = f.num.coefficients_in(v);
    long n_max = -1;
    for (const auto& [a, p] : coef)
        if (k + a <= -1)
            n_max = std::max(n_max, -1 - k - a);

    LaurentPoly resnum(f.width);
    if (n_max >= 0) {
        // Truncated series of 1/prod(factors) in v. 1/(v-y)^m expands as
        // (-1)^m sum_n C(n+m-1,m-1) v^n y^{-n-m}; 1/(y-v)^m the same without
        // the sign.
        std::vector<LaurentPoly> S(n_max + 1, LaurentPoly(f.width));
        S[0] = LaurentPoly::constant(f.width, 1);
        for (const auto& [y, m, v_first] : vf) {
            std::vector<LaurentPoly> F(n_max + 1, LaurentPoly(f.width));
            for (long n = 0; n <= n_max; ++n) {
                Rat c = Rat(binomial(Int(n + m - 1), static_cast<unsigned long>(m - 1)));
                if (v_first && (m % 2 == 1))
                    c = -c;
                Expo e(f.width, 0);
                e[y] = static_cast<int>(-n - m);
                F[n] = LaurentPoly::monomial(f.width, e, c);
            }
            std::vector<LaurentPoly> T(n_max + 1, LaurentPoly(f.width));
            for (long a = 0; a <= n_max; ++a) {
                if (S[a].is_zero())
                    continue;
                for (long b = 0; a + b <= n_max; ++b)
                    T[a + b] = T[a + b] + S[a] * F[b];
            }
            S = std::move(T);
        }
        for (const auto& [a, p] : coef) {
            long n = -1 - k - a;
            if (n >= 0)
                resnum = resnum + p * S[n];
        }
    }

    RationalFn out;
    out.width = f.width - 1;
    out.num = resnum.dropped_var(v);
    for (const auto& [key, m] : rest) {
        int a = key.first > v ? key.first - 1 : key.first;
        int b = key.second > v ? key.second - 1 : key.second;
        out.den[{a, b}] += m;
    }
    return out;
}

long pole_order(const RationalFn& f, int a, int b)
{
    if (a > b)
        std::swap(a, b);
    long mu = 0;
    auto it = f.den.find({a, b});
    if (it != f.den.end())
        mu = it->second;
    if (f.num.is_zero())
        return mu - 64;
    long nu = vanishing_order_difference(f.num, a, b, mu + 4);
    return mu - nu;
}

RationalFn substitute_equal(const RationalFn& f, int a, int b)
{
    int mn = std::min(a, b), mx = std::max(a, b);
    RationalFn g = f;
    long mu = 0;
    auto it = g.den.find({mn, mx});
    if (it != g.den.end()) {
        mu = it->second;
        g.den.erase(it);
    }
    for (long t = 0; t < mu; ++t) {
        LaurentPoly q(g.num.width);
        if (!exact_divide_difference(g.num, mn, mx, q))
            throw std::domain_error("substitute_equal: pole along the collision");
        g.num = std::move(q);
    }
    std::vector<int> target(f.width);
    for (int v = 0; v < f.width; ++v)
        target[v] = v == a ? b : v;
    LaurentPoly substituted = g.num.substituted(f.width, target);

    RationalFn out;
    out.width = f.width - 1;
    Rat sign = 1;
    for (const auto& [key, m] : g.den) {
        int p = key.first == a ? b : key.first;
        int q = key.second == a ? b : key.second;
        if (p == q)
            throw std::logic_error("substitute_equal: residual collision factor");
        if (p > q) {
            std::swap(p, q);
            if (m % 2 == 1)
                sign = -sign;
        }
        int p2 = p > a ? p - 1 : p;
        int q2 = q > a ? q - 1 : q;
        out.den[{p2, q2}] += m;
    }
    out.num = (substituted * sign).dropped_var(a);
    return out;
}

RationalFn residue_at_equal(const RationalFn& f, int a, int b)
{
    RationalFn g = f;
    g.num = g.num * LaurentPoly::difference(f.width, a, b);
    return substitute_equal(g, a, b);
}

namespace {

LaurentPoly denominator_poly(const RationalFn& f)
{
    LaurentPoly p = LaurentPoly::constant(f.width, 1);
    for (const auto& [key, m] : f.den)
        for (long t = 0; t < m; ++t)
            p = p * LaurentPoly::difference(f.width, key.first, key.second);
    return p;
}

} // namespace

bool fn_equal(const RationalFn& f, const RationalFn& g)
{
    if (f.width != g.width)
        return false;
    return (f.num * denominator_poly(g)) == (g.num * denominator_poly(f));
}

RationalElement residue_R(const CartanData& cd, int node, long k, const RationalElement& e)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    if (l.sizes[node] < 1)
        throw std::invalid_argument("residue_R: no variable of the requested node");
    RationalFn r = residue_small(to_fn(cd, e), l.var(node, 0), k);

    RationalElement out;
    out.gamma = e.gamma;
    out.gamma.m[node] -= 1;
    out.num = r.num;
    // The remaining factors are exactly the canonical denominator of the
    // smaller space; anything else indicates a bookkeeping bug.
    RationalFn expect = to_fn(cd, out);
    if (expect.den != r.den)
        throw std::logic_error("residue_R: denominator mismatch");
    return out;
}

RationalElement pair_word(const CartanData& cd, const std::vector<std::pair<int, long>>& word,
                          const RationalElement& e)
{
    RootVector need = RootVector::zero(cd.rank);
    for (const auto& [node, k] : word)
        need.m[node] += 1;
    if (!need.leq(e.gamma))
        throw std::invalid_argument("pair_word: overweight word");
    RationalElement cur = e;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = residue_R(cd, it->first, it->second, cur);
    return cur;
}

RationalElement pair_word_or_zero(const CartanData& cd,
                                  const std::vector<std::pair<int, long>>& word,
                                  const RationalElement& e)
{
    RootVector need = RootVector::zero(cd.rank);
    for (const auto& [node, k] : word)
        need.m[node] += 1;
    if (!need.leq(e.gamma)) {
        RationalElement z;
        z.gamma = RootVector::zero(cd.rank);
        z.num = LaurentPoly(0);
        return z;
    }
    return pair_word(cd, word, e);
}

Rat scalar_of(const RationalElement& e)
{
    if (!e.gamma.is_zero())
        throw std::invalid_argument("scalar_of: nonzero weight");
    if (e.num.is_zero())
        return 0;
    return e.num.t.begin()->second;
}

Rat pair_monomial(const CartanData& cd, const PBWMonomial& m, const RationalElement& e)
{
    // Expand every letter through nested commutators of simple currents and
    // pair the resulting words.
    std::vector<std::pair<Rat, std::vector<std::pair<int, long>>>> words{{Rat(1), {}}};
    for (const CurrentLetter& l : m.letters()) {
        auto expansion = simple_word_expansion(cd, l.root, l.k);
        std::vector<std::pair<Rat, std::vector<std::pair<int, long>>>> next;
        for (const auto& [c0, w0] : words)
            for (const auto& [c1, w1] : expansion) {
                auto w = w0;
                for (const CurrentLetter& letter : w1) {
                    const RootVector& r = cd.positive_roots[letter.root];
                    int node = -1;
                    for (std::size_t i = 0; i < cd.rank; ++i)
                        if (r.m[i] == 1)
                            node = static_cast<int>(i);
                    w.emplace_back(node, letter.k);
                }
                next.emplace_back(c0 * c1, std::move(w));
            }
        words = std::move(next);
    }
    Rat total = 0;
    for (const auto& [c, w] : words) {
        RationalElement r = pair_word_or_zero(cd, w, e);
        if (!r.gamma.is_zero()) {
            if (!r.is_zero())
                throw std::logic_error("pair_monomial: weight mismatch");
            continue;
        }
        total += c * scalar_of(r);
    }
    return total;
}

namespace {

// [R_{i_h,k_h},[...,[R_{i_2,k_2},R_{i_1,k_1}]...]] expanded into signed
// application sequences (first applied first).
std::vector<std::pair<int, std::vector<std::pair<int, long>>>>
expand_commutator(const std::vector<std::pair<int, long>>& seq)
{
    std::vector<std::pair<int, std::vector<std::pair<int, long>>>> terms{
        {1, {seq.front()}}};
    for (std::size_t t = 1; t < seq.size(); ++t) {
        std::vector<std::pair<int, std::vector<std::pair<int, long>>>> next;
        for (const auto& [s, ops] : terms) {
            auto after = ops;
            after.push_back(seq[t]);
            next.emplace_back(s, std::move(after));
            std::vector<std::pair<int, long>> before{seq[t]};
            before.insert(before.end(), ops.begin(), ops.end());
            next.emplace_back(-s, std::move(before));
        }
        terms = std::move(next);
    }
    return terms;
}

} // namespace

RationalElement nested_commutator_residue(const CartanData& cd,
                                          const std::vector<std::pair<int, long>>& seq,
                                          const RationalElement& e)
{
    if (seq.empty())
        throw std::invalid_argument("nested_commutator_residue: empty sequence");
    RootVector consumed = RootVector::zero(cd.rank);
    for (const auto& [node, k] : seq)
        consumed.m[node] += 1;
    if (!consumed.leq(e.gamma))
        throw std::invalid_argument("nested_commutator_residue: overweight sequence");

    RationalElement out;
    out.gamma = e.gamma - consumed;
    out.num = LaurentPoly(VarLayout::of(cd, out.gamma).width);
    for (const auto& [sign, ops] : expand_commutator(seq)) {
        RationalElement cur = e;
        for (const auto& [node, k] : ops)
            cur = residue_R(cd, node, k, cur);
        out.num = sign > 0 ? out.num + cur.num : out.num - cur.num;
    }
    return out;
}

RationalFn collapsed_commutator_residue(const CartanData& cd,
                                        const std::vector<std::pair<int, long>>& seq,
                                        const RationalElement& e)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    // Concrete variable of each step: the next unused variable of its block.
    std::vector<int> pos;
    {
        std::vector<int> used(cd.rank, 0);
        for (const auto& [node, k] : seq) {
            if (used[node] >= l.sizes[node])
                throw std::invalid_argument("collapsed_commutator_residue: overweight sequence");
            pos.push_back(l.var(node, used[node]++));
        }
    }
    RationalFn f = to_fn(cd, e);
    long ksum = 0;
    for (const auto& [node, k] : seq)
        ksum += k;
    // Successive merges x_{r-1} := x_r, with the (x_r - x_{r-1}) orientation
    // of the collapsed product.
    for (std::size_t r = 1; r < pos.size(); ++r) {
        f.num = f.num * LaurentPoly::difference(f.width, pos[r], pos[r - 1]);
        f = substitute_equal(f, pos[r - 1], pos[r]);
        int removed = pos[r - 1];
        for (auto& p : pos)
            if (p > removed)
                --p;
    }
    return residue_small(f, pos.back(), ksum);
}

bool check_simple_pole(const CartanData& cd, const std::vector<int>& node_seq,
                       const RationalElement& e)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    std::vector<int> pos;
    {
        std::vector<int> used(cd.rank, 0);
        for (int node : node_seq) {
            if (used[node] >= l.sizes[node])
                throw std::invalid_argument("check_simple_pole: overweight sequence");
            pos.push_back(l.var(node, used[node]++));
        }
    }
    RationalFn f = to_fn(cd, e);
    for (std::size_t r = 0; r + 1 < pos.size(); ++r) {
        if (pole_order(f, pos[r], pos[r + 1]) > 1)
            return false;
        f = residue_at_equal(f, pos[r], pos[r + 1]);
        int removed = pos[r];
        for (auto& p : pos)
            if (p > removed)
                --p;
    }
    return true;
}

// --- linear solving for the graded components --------------------------------

namespace {

// Weakly decreasing tuples of the given length with entries in [lo, hi].
void desc_tuples(int len, int lo, int hi, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out)
{
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    int top = cur.empty() ? hi : cur.back();
    for (int x = std::min(top, hi); x >= lo; --x) {
        cur.push_back(x);
        desc_tuples(len - 1, lo, hi, cur, out);
        cur.pop_back();
    }
}

struct SymClass {
    std::vector<std::vector<int>> per_group; // weakly decreasing exponents
};

// Orbit sum: all distinct arrangements within each block, coefficient 1.
LaurentPoly class_poly(const VarLayout& l, const SymClass& cls)
{
    std::vector<std::vector<std::vector<int>>> arrangements(l.sizes.size());
    for (std::size_t g = 0; g < l.sizes.size(); ++g) {
        std::vector<int> v = cls.per_group[g];
        std::sort(v.begin(), v.end());
        do {
            arrangements[g].push_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
    }
    LaurentPoly p(l.width);
    std::vector<std::size_t> pick(l.sizes.size(), 0);
    for (;;) {
        Expo e(l.width, 0);
        for (std::size_t g = 0; g < l.sizes.size(); ++g)
            for (int r = 0; r < l.sizes[g]; ++r)
                e[l.offsets[g] + r] = arrangements[g][pick[g]][r];
        p.add(e, 1);
        std::size_t posn = 0;
        while (posn < pick.size()) {
            if (++pick[posn] < arrangements[posn].size())
                break;
            pick[posn] = 0;
            ++posn;
        }
        if (posn == pick.size())
            break;
    }
    return p;
}

std::vector<SymClass> enumerate_classes(const VarLayout& l, const std::vector<int>& lo,
                                        const std::vector<int>& hi, long total)
{
    // Tuples per group with their sums, then a product respecting the total.
    std::vector<std::vector<std::pair<std::vector<int>, long>>> per(l.sizes.size());
    for (std::size_t g = 0; g < l.sizes.size(); ++g) {
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur;
        if (l.sizes[g] == 0) {
            per[g].push_back({{}, 0});
            continue;
        }
        if (lo[g] > hi[g])
            return {};
        desc_tuples(l.sizes[g], lo[g], hi[g], cur, tuples);
        for (auto& t : tuples) {
            long s = 0;
            for (int x : t)
                s += x;
            per[g].push_back({std::move(t), s});
        }
    }
    std::vector<SymClass> out;
    std::vector<std::size_t> pick(per.size(), 0);
    for (;;) {
        long s = 0;
        for (std::size_t g = 0; g < per.size(); ++g)
            s += per[g][pick[g]].second;
        if (s == total) {
            SymClass c;
            for (std::size_t g = 0; g < per.size(); ++g)
                c.per_group.push_back(per[g][pick[g]].first);
            out.push_back(std::move(c));
        }
        std::size_t posn = 0;
        while (posn < per.size()) {
            if (++pick[posn] < per[posn].size())
                break;
            pick[posn] = 0;
            ++posn;
        }
        if (posn == per.size())
            break;
    }
    return out;
}

struct ConstraintSet {
    // Rows keyed by (constraint id, monomial in the constraint's target
    // space); values per class column.
    std::map<std::pair<int, Expo>, std::map<std::size_t, Rat>> rows;

    void add(int id, const LaurentPoly& image, std::size_t col)
    {
        for (const auto& [e, c] : image.t)
            rows[{id, e}][col] += c;
    }
};

std::vector<RationalElement> solve_elements(const CartanData& cd, const RootVector& gamma,
                                            const VarLayout& l,
                                            const std::vector<SymClass>& classes,
                                            const ConstraintSet& cons)
{
    QMat m(cons.rows.size(), classes.size());
    std::size_t r = 0;
    for (const auto& [key, row] : cons.rows) {
        for (const auto& [col, c] : row)
            m(r, col) = c;
        ++r;
    }
    std::vector<RationalElement> out;
    for (const QVec& v : nullspace(m)) {
        RationalElement e;
        e.gamma = gamma;
        e.num = LaurentPoly(l.width);
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (v[c] != 0)
                e.num = e.num + class_poly(l, classes[c]) * v[c];
        out.push_back(std::move(e));
    }
    return out;
}

// Vanishing-condition rows shared by every solver below.
void add_vanishing_rows(const CartanData& cd, const VarLayout& l,
                        const std::vector<SymClass>& classes, ConstraintSet& cons, int& next_id)
{
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = 0; j < cd.rank; ++j) {
            if (i == j)
                continue;
            long chat = cd.hatted[i][j];
            if (l.sizes[i] < chat || l.sizes[j] < 1)
                continue;
            std::vector<int> target(l.width);
            for (int v = 0; v < l.width; ++v)
                target[v] = v;
            for (long t = 0; t < chat; ++t)
                target[l.var(static_cast<int>(i), static_cast<int>(t))] =
                    l.var(static_cast<int>(j), 0);
            int id = next_id++;
            for (std::size_t c = 0; c < classes.size(); ++c)
                cons.add(id, class_poly(l, classes[c]).substituted(l.width, target), c);
        }
}

RationalElement unit_element(const CartanData& cd)
{
    RationalElement e;
    e.gamma = RootVector::zero(cd.rank);
    e.num = LaurentPoly::constant(0, 1);
    return e;
}

} // namespace

std::vector<RationalElement> basis_of_barU(const CartanData& cd, const RootVector& gamma, long d)
{
    if (gamma.is_zero())
        return d == 0 ? std::vector<RationalElement>{unit_element(cd)}
                      : std::vector<RationalElement>{};
    VarLayout l = VarLayout::of(cd, gamma);
    long T = denominator_degree(cd, gamma);
    long target = d + T;

    // Per-variable caps: deg_{x} g' <= (number of cross factors) - 2.
    std::vector<int> hi(cd.rank), lo(cd.rank);
    long hi_sum = 0;
    for (std::size_t i = 0; i < cd.rank; ++i) {
        long cross = 0;
        for (std::size_t j = 0; j < cd.rank; ++j)
            if (j != i)
                cross += l.sizes[j];
        hi[i] = static_cast<int>(cross - 2);
        hi_sum += static_cast<long>(hi[i]) * l.sizes[i];
    }
    for (std::size_t i = 0; i < cd.rank; ++i)
        lo[i] = static_cast<int>(target - (hi_sum - hi[i]));

    auto classes = enumerate_classes(l, lo, hi, target);
    if (classes.empty())
        return {};
    ConstraintSet cons;
    int id = 0;
    add_vanishing_rows(cd, l, classes, cons, id);
    return solve_elements(cd, gamma, l, classes, cons);
}

std::vector<RationalElement> basis_of_V(const CartanData& cd, const KRSpec& spec,
                                        const RootVector& gamma, long d)
{
    if (gamma.is_zero())
        return d == 0 ? std::vector<RationalElement>{unit_element(cd)}
                      : std::vector<RationalElement>{};
    VarLayout l = VarLayout::of(cd, gamma);
    long T = denominator_degree(cd, gamma);
    long target = d + T;
    std::vector<int> hi(cd.rank), lo(cd.rank);
    long hi_sum = 0;
    for (std::size_t i = 0; i < cd.rank; ++i) {
        long cross = 0;
        for (std::size_t j = 0; j < cd.rank; ++j)
            if (j != i)
                cross += l.sizes[j];
        hi[i] = static_cast<int>(cross - 2);
        hi_sum += static_cast<long>(hi[i]) * l.sizes[i];
    }
    for (std::size_t i = 0; i < cd.rank; ++i)
        lo[i] = static_cast<int>(target - (hi_sum - hi[i]));

    auto classes = enumerate_classes(l, lo, hi, target);
    if (classes.empty())
        return {};
    ConstraintSet cons;
    int id = 0;
    add_vanishing_rows(cd, l, classes, cons, id);

    // Pole conditions: collapsing the first r variables of a block to z, the
    // order of the z = 0 pole is bounded by the level data.
    for (std::size_t i = 0; i < cd.rank; ++i) {
        std::vector<long> levels = spec.levels_at(static_cast<int>(i));
        for (int r = 1; r <= l.sizes[i]; ++r) {
            long bound = 0;
            for (long lv : levels)
                bound += std::min<long>(r, lv);
            std::vector<int> tgt(l.width);
            int zslot = l.width;
            for (int v = 0; v < l.width; ++v)
                tgt[v] = v;
            for (int t = 0; t < r; ++t)
                tgt[l.var(static_cast<int>(i), t)] = zslot;
            int cid = id++;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                LaurentPoly img = class_poly(l, classes[c]).substituted(l.width + 1, tgt);
                // Keep only the coefficients of z^e with e < -bound.
                LaurentPoly bad(l.width + 1);
                for (const auto& [e, coeff] : img.t)
                    if (e[zslot] < -bound)
                        bad.add(e, coeff);
                cons.add(cid, bad, c);
            }
        }
    }
    return solve_elements(cd, gamma, l, classes, cons);
}

std::vector<RationalElement> sample_space(const CartanData& cd, const RootVector& gamma,
                                          long num_degree, int lo_v, int hi_v)
{
    if (gamma.is_zero())
        return {unit_element(cd)};
    VarLayout l = VarLayout::of(cd, gamma);
    std::vector<int> hi(cd.rank, hi_v), lo(cd.rank, lo_v);
    auto classes = enumerate_classes(l, lo, hi, num_degree);
    if (classes.empty())
        return {};
    ConstraintSet cons;
    int id = 0;
    add_vanishing_rows(cd, l, classes, cons, id);
    return solve_elements(cd, gamma, l, classes, cons);
}

DimTrace dim_V(const CartanData& cd, const KRSpec& spec, const RootVector& gamma)
{
    DimTrace out;
    if (gamma.is_zero()) {
        out.value = 1;
        return out;
    }
    Weight lambda = spec.highest_weight(cd);
    if (!(lambda - cd.root_to_weight(gamma)).dominant())
        throw std::invalid_argument("dim_V: lambda - gamma not dominant");
    long hi = -gamma.height();
    long lo = hi - std::max<long>(gamma.height(), 1);
    std::map<long, long> dims;
    auto fill = [&](long from, long to) {
        for (long d = from; d <= to; ++d)
            if (!dims.count(d))
                dims[d] = static_cast<long>(basis_of_V(cd, spec, gamma, d).size());
    };
    fill(lo, hi);
    long cumulative = 0;
    for (const auto& [d, n] : dims)
        cumulative += n;
    out.trace.emplace_back(lo, cumulative);
    int stable = 0;
    for (int rounds = 0; rounds < 10; ++rounds) {
        long new_lo = lo - 2;
        fill(new_lo, lo - 1);
        long total = 0;
        for (const auto& [d, n] : dims)
            total += n;
        lo = new_lo;
        out.trace.emplace_back(lo, total);
        if (total == cumulative)
            ++stable;
        else
            stable = 0;
        cumulative = total;
        if (stable >= 2) {
            out.value = total;
            return out;
        }
    }
    return out; // non-stabilized; trace carries the evidence
}

// --- specialization ----------------------------------------------------------

int SpecializedFn::label_index(int node, long a, long u) const
{
    for (std::size_t t = 0; t < labels.size(); ++t)
        if (labels[t] == std::tuple(node, a, u))
            return static_cast<int>(t);
    throw std::out_of_range("SpecializedFn::label_index");
}

SpecializedFn specialize_phi(const CartanData& cd, const RationalElement& e,
                             const NTuplePartitions& mu)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    if (mu.mu.size() != cd.rank)
        throw std::invalid_argument("specialize_phi: rank mismatch");
    for (std::size_t i = 0; i < cd.rank; ++i)
        if (mu.mu[i].size() != l.sizes[i])
            throw std::invalid_argument("specialize_phi: shape mismatch");

    SpecializedFn out;
    out.mu = mu;
    // One y-variable per row; boxes of each row eat consecutive x-variables.
    std::vector<int> target(l.width);
    for (std::size_t i = 0; i < cd.rank; ++i) {
        int next_x = l.offsets[i];
        std::map<long, long> seen; // row length -> count
        for (long part : mu.mu[i].parts) {
            long u = ++seen[part];
            out.labels.emplace_back(static_cast<int>(i), part, u);
            int yvar = static_cast<int>(out.labels.size()) - 1;
            for (long v = 0; v < part; ++v)
                target[next_x++] = yvar;
        }
    }
    int ywidth = static_cast<int>(out.labels.size());
    out.fn.width = ywidth;
    Rat sign = 1;
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j)
            for (int r = 0; r < l.sizes[i]; ++r)
                for (int s = 0; s < l.sizes[j]; ++s) {
                    int p = target[l.var(static_cast<int>(i), r)];
                    int q = target[l.var(static_cast<int>(j), s)];
                    if (p == q)
                        throw std::logic_error("specialize_phi: cross-node collision");
                    if (p > q) {
                        std::swap(p, q);
                        sign = -sign;
                    }
                    out.fn.den[{p, q}] += 1;
                }
    out.fn.num = e.num.substituted(ywidth, target) * sign;
    return out;
}

bool specializes_to_zero(const CartanData& cd, const RationalElement& e,
                         const NTuplePartitions& mu)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    std::vector<int> target(l.width);
    int ywidth = 0;
    for (std::size_t i = 0; i < cd.rank; ++i) {
        int next_x = l.offsets[i];
        for (long part : mu.mu[i].parts) {
            for (long v = 0; v < part; ++v)
                target[next_x++] = ywidth;
            ++ywidth;
        }
    }
    return e.num.substituted(ywidth, target).is_zero();
}

namespace {

void partitions_list(long n, long maxpart, std::vector<long>& cur, std::vector<Partition>& out)
{
    if (n == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (long p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_list(n - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<NTuplePartitions> all_partition_tuples(const std::vector<long>& sizes)
{
    std::vector<std::vector<Partition>> per(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::vector<long> cur;
        partitions_list(sizes[i], std::max<long>(sizes[i], 1), cur, per[i]);
    }
    std::vector<NTuplePartitions> out;
    std::vector<std::size_t> pick(sizes.size(), 0);
    for (;;) {
        NTuplePartitions t;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            t.mu.push_back(per[i][pick[i]]);
        out.push_back(std::move(t));
        std::size_t posn = 0;
        while (posn < sizes.size()) {
            if (++pick[posn] < per[posn].size())
                break;
            pick[posn] = 0;
            ++posn;
        }
        if (posn == sizes.size())
            break;
    }
    return out;
}

bool gamma_filtration_test(const CartanData& cd, const RationalElement& e,
                           const NTuplePartitions& mu)
{
    VarLayout l = VarLayout::of(cd, e.gamma);
    std::vector<long> sizes(cd.rank);
    for (std::size_t i = 0; i < cd.rank; ++i)
        sizes[i] = l.sizes[i];
    for (const auto& nu : all_partition_tuples(sizes)) {
        if (!(mu < nu))
            continue;
        if (!specializes_to_zero(cd, e, nu))
            return false;
    }
    return true;
}

long compute_P(const CartanData& cd, const NTuplePartitions& mu)
{
    if (mu.mu.size() != cd.rank)
        throw std::invalid_argument("compute_P: rank mismatch");
    if (mu.all_empty())
        throw std::invalid_argument("compute_P: all partitions empty");
    // Row labels (a, u) per node.
    std::vector<std::vector<long>> rows(cd.rank);
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (long part : mu.mu[i].parts)
            rows[i].push_back(part);
    long P = 0;
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t a = 0; a < rows[i].size(); ++a)
            for (std::size_t b = a + 1; b < rows[i].size(); ++b)
                P += 2 * std::min(rows[i][a], rows[i][b]);
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j)
            for (long a : rows[i])
                for (long b : rows[j])
                    P -= std::min(std::labs(cd.cartan[j][i]) * a, std::labs(cd.cartan[i][j]) * b);
    return P;
}

// --- dual current functions ----------------------------------------------------

RationalElement dual_current_function(const CartanData& cd, const RootVector& gamma_root, long k)
{
    long gi = cd.root_index(gamma_root);
    if (gi < 0)
        throw std::invalid_argument("dual_current_function: not a positive root");
    VarLayout l = VarLayout::of(cd, gamma_root);

    RationalElement out;
    out.gamma = gamma_root;

    if (cd.type_label == "G2") {
        // Case table; alpha_1 long, alpha_2 short.
        if (gamma_root.height() == 1) {
            Expo e(l.width, 0);
            e[0] = static_cast<int>(-k - 1);
            out.num = LaurentPoly::monomial(l.width, e, 1);
            return out;
        }
        long m1 = gamma_root.m[0], m2 = gamma_root.m[1];
        if (m1 == 1) {
            Expo e(l.width, 0);
            e[l.var(0, 0)] = static_cast<int>(-k + m2 - 1);
            for (int r = 0; r < l.sizes[1]; ++r)
                e[l.var(1, r)] = -1;
            out.num = LaurentPoly::monomial(l.width, e, 1);
            return out;
        }
        // gamma = 2 alpha_1 + 3 alpha_2
        Expo e(l.width, 0);
        e[l.var(0, 0)] = static_cast<int>(-k);
        e[l.var(0, 1)] = -1;
        LaurentPoly core = LaurentPoly::monomial(l.width, e, 1);
        LaurentPoly diff = LaurentPoly::difference(l.width, l.var(0, 0), l.var(0, 1));
        core = core * diff * diff;
        out.num = symmetrize(core, l.groups());
        return out;
    }

    // Short simple roots (none in the simply laced case).
    std::vector<bool> is_short(cd.rank, false);
    for (std::size_t i = 0; i < cd.rank; ++i) {
        RootVector a = RootVector::zero(cd.rank);
        a.m[i] = 1;
        is_short[i] = cd.pairing(a, a) < 2;
    }
    RootVector bar = RootVector::zero(cd.rank);
    for (std::size_t i = 0; i < cd.rank; ++i)
        if (is_short[i] && gamma_root.m[i] % 2 != 0)
            bar.m[i] = 1;

    // Core monomial: product of per-variable powers and the fixed variable.
    Expo e(l.width, 0);
    for (std::size_t i = 0; i < cd.rank; ++i) {
        RootVector alpha = RootVector::zero(cd.rank);
        alpha.m[i] = 1;
        for (int r = 0; r < l.sizes[i]; ++r) {
            RootVector shifted = gamma_root; // gamma^{(i,r)}, r is 1-based in the formula
            if (is_short[i]) {
                long s = ((r + 1) % 2 == 0) ? -1 : 1; // -(-1)^r
                for (std::size_t t = 0; t < cd.rank; ++t)
                    shifted.m[t] += s * bar.m[t];
            }
            Rat expnt = -cd.pairing(alpha, shifted);
            if (!is_integer(expnt))
                throw std::runtime_error("dual_current_function: non-integral exponent");
            e[l.var(static_cast<int>(i), r)] += static_cast<int>(to_long(expnt));
        }
    }
    int i0 = -1;
    for (std::size_t i = 0; i < cd.rank && i0 < 0; ++i)
        if (l.sizes[i] > 0)
            i0 = static_cast<int>(i);
    e[l.var(i0, 0)] += static_cast<int>(-k + 1);
    LaurentPoly core = LaurentPoly::monomial(l.width, e, 1);

    // h_gamma factors.
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (int r = 0; r < l.sizes[i]; ++r)
            for (int s = r + 1; s < l.sizes[i]; ++s) {
                bool same_parity = ((r + 1) % 2) == ((s + 1) % 2);
                if (!is_short[i] || same_parity) {
                    LaurentPoly d = LaurentPoly::difference(l.width, l.var(static_cast<int>(i), r),
                                                            l.var(static_cast<int>(i), s));
                    core = core * d * d;
                }
            }
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j) {
            if (!(is_short[i] && is_short[j] && cd.cartan[i][j] == -1))
                continue;
            for (int r = 0; r < l.sizes[i]; ++r)
                for (int s = 0; s < l.sizes[j]; ++s)
                    if (((r + 1) + (s + 1)) % 2 == 1)
                        core = core * LaurentPoly::difference(l.width, l.var(static_cast<int>(i), r),
                                                              l.var(static_cast<int>(j), s));
        }

    LaurentPoly symmetrized = symmetrize(core, l.groups());

    // The formula's denominator omits orthogonal node pairs; restore them to
    // land over the canonical denominator.
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = i + 1; j < cd.rank; ++j) {
            if (cd.cartan[i][j] != 0 || l.sizes[i] == 0 || l.sizes[j] == 0)
                continue;
            for (int r = 0; r < l.sizes[i]; ++r)
                for (int s = 0; s < l.sizes[j]; ++s)
                    symmetrized = symmetrized * LaurentPoly::difference(
                                                    l.width, l.var(static_cast<int>(i), r),
                                                    l.var(static_cast<int>(j), s));
        }
    out.num = symmetrized;
    return out;
}

} // namespace krf
