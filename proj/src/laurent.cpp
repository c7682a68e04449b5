#include "krf/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace krf {

LaurentPoly LaurentPoly::constant(int w, const Rat& c)
{
    LaurentPoly p(w);
    if (c != 0)
        p.t[Expo(w, 0)] = c;
    return p;
}

LaurentPoly LaurentPoly::monomial(int w, const Expo& e, const Rat& c)
{
    LaurentPoly p(w);
    if (c != 0)
        p.t[e] = c;
    return p;
}

LaurentPoly LaurentPoly::difference(int w, int a, int b)
{
    LaurentPoly p(w);
    Expo e(w, 0);
    e[a] = 1;
    p.t[e] = 1;
    e[a] = 0;
    e[b] = 1;
    p.t[e] = -1;
    return p;
}

void LaurentPoly::add(const Expo& e, const Rat& c)
{
    if (c == 0)
        return;
    auto it = t.find(e);
    if (it == t.end()) {
        t.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        t.erase(it);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.t)
        r.add(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.t)
        r.add(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const
{
    LaurentPoly r(width);
    for (const auto& [e1, c1] : t)
        for (const auto& [e2, c2] : o.t) {
            Expo e = e1;
            for (int i = 0; i < width; ++i)
                e[i] += e2[i];
            r.add(e, c1 * c2);
        }
    return r;
}

LaurentPoly LaurentPoly::operator*(const Rat& c) const
{
    LaurentPoly r(width);
    if (c == 0)
        return r;
    for (const auto& [e, v] : t)
        r.t[e] = v * c;
    return r;
}

LaurentPoly LaurentPoly::shifted(int var, int by) const
{
    LaurentPoly r(width);
    for (const auto& [e, c] : t) {
        Expo e2 = e;
        e2[var] += by;
        r.t[e2] = c;
    }
    return r;
}

LaurentPoly LaurentPoly::substituted(int new_width, const std::vector<int>& target) const
{
    LaurentPoly r(new_width);
    for (const auto& [e, c] : t) {
        Expo e2(new_width, 0);
        for (int i = 0; i < width; ++i)
            e2[target[i]] += e[i];
        r.add(e2, c);
    }
    return r;
}

LaurentPoly LaurentPoly::dropped_var(int var) const
{
    LaurentPoly r(width - 1);
    for (const auto& [e, c] : t) {
        if (e[var] != 0)
            throw std::logic_error("dropped_var: variable in use");
        Expo e2;
        e2.reserve(width - 1);
        for (int i = 0; i < width; ++i)
            if (i != var)
                e2.push_back(e[i]);
        r.t[std::move(e2)] = c;
    }
    return r;
}

LaurentPoly LaurentPoly::swapped(int a, int b) const
{
    LaurentPoly r(width);
    for (const auto& [e, c] : t) {
        Expo e2 = e;
        std::swap(e2[a], e2[b]);
        r.t[std::move(e2)] = c;
    }
    return r;
}

long LaurentPoly::max_exponent(int var) const
{
    bool first = true;
    long m = 0;
    for (const auto& [e, c] : t) {
        if (first || e[var] > m)
            m = e[var];
        first = false;
    }
    if (first)
        throw std::logic_error("max_exponent of zero polynomial");
    return m;
}

long LaurentPoly::min_exponent(int var) const
{
    bool first = true;
    long m = 0;
    for (const auto& [e, c] : t) {
        if (first || e[var] < m)
            m = e[var];
        first = false;
    }
    if (first)
        throw std::logic_error("min_exponent of zero polynomial");
    return m;
}

long LaurentPoly::total_degree_max() const
{
    bool first = true;
    long m = 0;
    for (const auto& [e, c] : t) {
        long s = 0;
        for (int x : e)
            s += x;
        if (first || s > m)
            m = s;
        first = false;
    }
    if (first)
        throw std::logic_error("total_degree_max of zero polynomial");
    return m;
}

std::map<int, LaurentPoly> LaurentPoly::coefficients_in(int var) const
{
    std::map<int, LaurentPoly> out;
    for (const auto& [e, c] : t) {
        int k = e[var];
        auto it = out.find(k);
        if (it == out.end())
            it = out.emplace(k, LaurentPoly(width)).first;
        Expo e2 = e;
        e2[var] = 0;
        it->second.t[std::move(e2)] = c;
    }
    return out;
}

bool exact_divide_difference(const LaurentPoly& f, int a, int b, LaurentPoly& quotient)
{
    quotient = LaurentPoly(f.width);
    if (f.is_zero())
        return true;
    // Clear negative powers of x_a, divide the polynomial part, restore.
    long shift = std::min<long>(f.min_exponent(a), 0);
    LaurentPoly g = f.shifted(a, static_cast<int>(-shift));
    std::map<int, LaurentPoly> coef = g.coefficients_in(a);
    long top = g.max_exponent(a);
    // Synthetic division by (x_a - x_b), top down: q_{e-1} = c_e, then fold
    // c_e * x_b into c_{e-1}.
    LaurentPoly carry(f.width);
    LaurentPoly q(f.width);
    for (long e = top; e >= 0; --e) {
        LaurentPoly ce = carry;
        auto it = coef.find(static_cast<int>(e));
        if (it != coef.end())
            ce = ce + it->second;
        if (e == 0) {
            if (!ce.is_zero())
                return false; // remainder
            break;
        }
        for (const auto& [ex, c] : ce.t) {
            Expo e2 = ex;
            e2[a] += static_cast<int>(e - 1);
            q.add(e2, c);
        }
        // carry = ce * x_b
        carry = LaurentPoly(f.width);
        for (const auto& [ex, c] : ce.t) {
            Expo e2 = ex;
            e2[b] += 1;
            carry.add(e2, c);
        }
    }
    quotient = q.shifted(a, static_cast<int>(shift));
    return true;
}

long vanishing_order_difference(const LaurentPoly& f, int a, int b, long cap)
{
    if (f.is_zero())
        return cap;
    LaurentPoly cur = f, q(f.width);
    long ord = 0;
    while (ord < cap && exact_divide_difference(cur, a, b, q)) {
        cur = q;
        ++ord;
    }
    return ord;
}

namespace {

void all_permutations(const std::vector<int>& group, std::vector<std::vector<int>>& perms)
{
    std::vector<int> p = group;
    std::sort(p.begin(), p.end());
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

} // namespace

LaurentPoly symmetrize(const LaurentPoly& f, const std::vector<std::vector<int>>& groups)
{
    // Images of each group under every permutation; cartesian product.
    std::vector<std::vector<std::vector<int>>> perms(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
        all_permutations(groups[g], perms[g]);

    LaurentPoly out(f.width);
    std::vector<std::size_t> pick(groups.size(), 0);
    for (;;) {
        std::vector<int> target(f.width);
        for (int i = 0; i < f.width; ++i)
            target[i] = i;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<int> sorted = groups[g];
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t idx = 0; idx < sorted.size(); ++idx)
                target[sorted[idx]] = perms[g][pick[g]][idx];
        }
        out = out + f.substituted(f.width, target);

        std::size_t pos = 0;
        while (pos < groups.size()) {
            if (++pick[pos] < perms[pos].size())
                break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == groups.size())
            break;
    }
    return out;
}

bool symmetric_in(const LaurentPoly& f, const std::vector<int>& group)
{
    for (std::size_t i = 0; i + 1 < group.size(); ++i)
        if (!(f.swapped(group[i], group[i + 1]) == f))
            return false;
    return true;
}

} // namespace krf
