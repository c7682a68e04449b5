#include "krf/pbw.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace krf {

RootVector PBWMonomial::weight(const CartanData& cd) const
{
    RootVector w = RootVector::zero(cd.rank);
    for (const auto& f : factors)
        for (std::size_t i = 0; i < cd.rank; ++i)
            w.m[i] += f.exp * cd.positive_roots[f.root].m[i];
    return w;
}

long PBWMonomial::tdegree() const
{
    long d = 0;
    for (const auto& f : factors)
        d += f.exp * f.k;
    return d;
}

long PBWMonomial::length() const
{
    long n = 0;
    for (const auto& f : factors)
        n += f.exp;
    return n;
}

std::vector<CurrentLetter> PBWMonomial::letters() const
{
    std::vector<CurrentLetter> w;
    for (const auto& f : factors)
        for (long t = 0; t < f.exp; ++t)
            w.push_back({f.root, f.k});
    return w;
}

PBWMonomial monomial_from_sorted_letters(const std::vector<CurrentLetter>& w)
{
    PBWMonomial m;
    for (const auto& l : w) {
        if (!m.factors.empty() && m.factors.back().root == l.root && m.factors.back().k == l.k)
            m.factors.back().exp += 1;
        else
            m.factors.push_back({l.root, l.k, 1});
    }
    return m;
}

MonCombo straighten(const CartanData& cd, const std::vector<CurrentLetter>& word)
{
    MonCombo out;
    std::deque<std::pair<Rat, std::vector<CurrentLetter>>> work;
    work.emplace_back(Rat(1), word);
    while (!work.empty()) {
        auto [c, w] = std::move(work.front());
        work.pop_front();
        std::size_t p = 0;
        bool sorted = true;
        for (; p + 1 < w.size(); ++p)
            if (w[p + 1] < w[p]) {
                sorted = false;
                break;
            }
        if (sorted) {
            PBWMonomial m = monomial_from_sorted_letters(w);
            out[m] += c;
            if (out[m] == 0)
                out.erase(m);
            continue;
        }
        CurrentLetter x = w[p], y = w[p + 1];
        std::vector<CurrentLetter> swapped = w;
        std::swap(swapped[p], swapped[p + 1]);
        work.emplace_back(c, std::move(swapped));
        // [f_{a,j}, f_{b,k}] = -N(a,b) f_{a+b,j+k}
        RootVector sum = cd.positive_roots[x.root] + cd.positive_roots[y.root];
        long si = cd.root_index(sum);
        if (si >= 0) {
            long n = cd.struct_constant(x.root, 1, y.root, 1);
            if (n != 0) {
                std::vector<CurrentLetter> b;
                b.reserve(w.size() - 1);
                b.insert(b.end(), w.begin(), w.begin() + p);
                b.push_back({static_cast<int>(si), x.k + y.k});
                b.insert(b.end(), w.begin() + p + 2, w.end());
                work.emplace_back(c * Rat(-n), std::move(b));
            }
        }
    }
    return out;
}

namespace {

// Multisets of positive roots with the given weight, as exponent vectors
// over positive_roots, enumerated deterministically.
void root_multisets(const CartanData& cd, const RootVector& gamma, std::size_t from,
                    std::vector<long>& expo, std::vector<std::vector<long>>& out)
{
    if (gamma.is_zero()) {
        out.push_back(expo);
        return;
    }
    if (from >= cd.positive_roots.size())
        return;
    const RootVector& r = cd.positive_roots[from];
    long cap = gamma.height() / r.height();
    for (long e = 0; e <= cap; ++e) {
        RootVector rest = gamma;
        bool ok = true;
        for (std::size_t i = 0; i < cd.rank && ok; ++i) {
            rest.m[i] -= e * r.m[i];
            if (rest.m[i] < 0)
                ok = false;
        }
        if (!ok)
            break;
        expo[from] = e;
        root_multisets(cd, rest, from + 1, expo, out);
        expo[from] = 0;
    }
}

// Weakly increasing k-tuples of the given length, entries >= min_k, total
// <= budget (or == budget when exact).
void k_tuples(long len, long min_k, long budget, bool exact, std::vector<long>& cur,
              std::vector<std::vector<long>>& out)
{
    if (len == 0) {
        if (!exact || budget == 0)
            out.push_back(cur);
        return;
    }
    long lo = cur.empty() ? min_k : cur.back();
    for (long k = lo; len * k <= budget; ++k) {
        cur.push_back(k);
        k_tuples(len - 1, min_k, budget - k, exact, cur, out);
        cur.pop_back();
    }
}

void assemble_monomials(const CartanData& cd, const std::vector<long>& expo, long degree_cap,
                        long min_k, std::optional<long> exact_degree,
                        std::vector<PBWMonomial>& out)
{
    // Roots with nonzero exponent, in root order; distribute t-degrees.
    std::vector<std::pair<int, long>> used;
    for (std::size_t r = 0; r < expo.size(); ++r)
        if (expo[r] > 0)
            used.emplace_back(static_cast<int>(r), expo[r]);

    std::vector<PBWMonomial> partial{PBWMonomial{}};
    std::vector<long> degs{0};
    for (auto [r, e] : used) {
        std::vector<PBWMonomial> next;
        std::vector<long> next_degs;
        for (std::size_t t = 0; t < partial.size(); ++t) {
            std::vector<std::vector<long>> ks;
            std::vector<long> cur;
            k_tuples(e, min_k, degree_cap - degs[t], false, cur, ks);
            for (const auto& tup : ks) {
                PBWMonomial m = partial[t];
                long d = degs[t];
                for (long k : tup) {
                    if (!m.factors.empty() && m.factors.back().root == r &&
                        m.factors.back().k == k)
                        m.factors.back().exp += 1;
                    else
                        m.factors.push_back({r, k, 1});
                    d += k;
                }
                next.push_back(std::move(m));
                next_degs.push_back(d);
            }
        }
        partial = std::move(next);
        degs = std::move(next_degs);
    }
    for (std::size_t t = 0; t < partial.size(); ++t)
        if (!exact_degree || degs[t] == *exact_degree)
            out.push_back(partial[t]);
}

} // namespace

std::vector<PBWMonomial> pbw_basis(const CartanData& cd, const RootVector& gamma, long degree_cap,
                                   long min_k)
{
    std::vector<std::vector<long>> sets;
    std::vector<long> expo(cd.positive_roots.size(), 0);
    root_multisets(cd, gamma, 0, expo, sets);
    std::vector<PBWMonomial> out;
    for (const auto& s : sets)
        assemble_monomials(cd, s, degree_cap, min_k, std::nullopt, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PBWMonomial> pbw_basis_fixed_degree(const CartanData& cd, const RootVector& gamma,
                                                long d, long min_k)
{
    std::vector<std::vector<long>> sets;
    std::vector<long> expo(cd.positive_roots.size(), 0);
    root_multisets(cd, gamma, 0, expo, sets);
    std::vector<PBWMonomial> out;
    for (const auto& s : sets)
        assemble_monomials(cd, s, d, min_k, d, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<PBWMonomial, Int>> current_power_coefficient(const CartanData& cd, int node,
                                                                   long r, long s)
{
    std::vector<std::pair<PBWMonomial, Int>> out;
    if (r < 1)
        throw std::invalid_argument("current_power_coefficient: r >= 1 required");
    long total = -s - r; // sum of the k_j
    if (total < 0)
        return out;
    RootVector alpha = RootVector::zero(cd.rank);
    alpha.m[node] = 1;
    long ri = cd.root_index(alpha);
    std::vector<std::vector<long>> ks;
    std::vector<long> cur;
    k_tuples(r, 0, total, true, cur, ks);
    for (const auto& tup : ks) {
        std::vector<CurrentLetter> w;
        for (long k : tup)
            w.push_back({static_cast<int>(ri), k});
        PBWMonomial m = monomial_from_sorted_letters(w);
        // Number of orderings of the multiset {k_1,...,k_r}.
        Int mult = factorial(static_cast<unsigned long>(r));
        for (const auto& f : m.factors)
            mult /= factorial(static_cast<unsigned long>(f.exp));
        out.emplace_back(std::move(m), mult);
    }
    return out;
}

std::vector<std::pair<Rat, std::vector<CurrentLetter>>> simple_word_expansion(const CartanData& cd,
                                                                              int root, long k)
{
    const RootVector& beta = cd.positive_roots[root];
    if (beta.height() == 1)
        return {{Rat(1), {CurrentLetter{root, k}}}};
    // beta = alpha_j + beta' with j the smallest applicable node;
    // f_{beta,k} = -(1/N(alpha_j,beta')) [f_{j,k}, f_{beta',0}].
    for (std::size_t j = 0; j < cd.rank; ++j) {
        RootVector rest = beta;
        rest.m[j] -= 1;
        bool ok = rest.m[j] >= 0;
        long restIdx = ok ? cd.root_index(rest) : -1;
        if (restIdx < 0)
            continue;
        RootVector aj = RootVector::zero(cd.rank);
        aj.m[j] = 1;
        long ji = cd.root_index(aj);
        long n = cd.struct_constant(static_cast<int>(ji), 1, static_cast<int>(restIdx), 1);
        if (n == 0)
            throw std::runtime_error("simple_word_expansion: vanishing constant");
        auto inner = simple_word_expansion(cd, static_cast<int>(restIdx), 0);
        std::vector<std::pair<Rat, std::vector<CurrentLetter>>> out;
        CurrentLetter lj{static_cast<int>(ji), k};
        for (const auto& [c, w] : inner) {
            std::vector<CurrentLetter> left{lj};
            left.insert(left.end(), w.begin(), w.end());
            out.emplace_back(-c / n, std::move(left));
            std::vector<CurrentLetter> right = w;
            right.push_back(lj);
            out.emplace_back(c / n, std::move(right));
        }
        return out;
    }
    throw std::runtime_error("simple_word_expansion: no simple summand");
}

IdealSlice ideal_slice(const CartanData& cd, const KRSpec& spec, const RootVector& gamma, long D)
{
    IdealSlice s;
    s.gamma = gamma;
    s.degree_cap = D;
    s.basis = pbw_basis(cd, gamma, D);
    std::map<PBWMonomial, std::size_t> index;
    for (std::size_t t = 0; t < s.basis.size(); ++t)
        index[s.basis[t]] = t;

    auto add_row = [&](const MonCombo& combo) {
        QVec row(s.basis.size(), Rat(0));
        bool nonzero = false;
        for (const auto& [m, c] : combo) {
            if (m.tdegree() > D)
                throw std::runtime_error("ideal_slice: degree overflow in straightening");
            row[index.at(m)] = c;
            if (c != 0)
                nonzero = true;
        }
        if (nonzero)
            s.spanning.push_back(std::move(row));
    };

    // n_- U^- part: f_{alpha,0} * (PBW of weight gamma - alpha).
    for (std::size_t r = 0; r < cd.positive_roots.size(); ++r) {
        RootVector rest = gamma - cd.positive_roots[r];
        bool ok = true;
        for (long x : rest.m)
            if (x < 0)
                ok = false;
        if (!ok)
            continue;
        for (const auto& m : pbw_basis(cd, rest, D)) {
            std::vector<CurrentLetter> w{CurrentLetter{static_cast<int>(r), 0}};
            auto tail = m.letters();
            w.insert(w.end(), tail.begin(), tail.end());
            add_row(straighten(cd, w));
        }
    }

    // Ideal part: m * (F_i(z)^r)_s for all generators reaching weight -gamma
    // within the degree cap.
    for (std::size_t i = 0; i < cd.rank; ++i) {
        std::vector<long> levels = spec.levels_at(static_cast<int>(i));
        for (long r = 1; r <= gamma.m[i]; ++r) {
            RootVector rest = gamma;
            rest.m[i] -= r;
            long bound = 0;
            for (long l : levels)
                bound += std::min(r, l);
            for (long s_exp = -bound - 1; -s_exp - r <= D; --s_exp) {
                long gdeg = -s_exp - r;
                auto gen = current_power_coefficient(cd, static_cast<int>(i), r, s_exp);
                for (const auto& m : pbw_basis(cd, rest, D - gdeg)) {
                    MonCombo combo;
                    auto prefix = m.letters();
                    for (const auto& [gm, gc] : gen) {
                        std::vector<CurrentLetter> w = prefix;
                        auto tail = gm.letters();
                        w.insert(w.end(), tail.begin(), tail.end());
                        MonCombo part = straighten(cd, w);
                        for (const auto& [pm, pc] : part) {
                            combo[pm] += pc * Rat(gc);
                            if (combo[pm] == 0)
                                combo.erase(pm);
                        }
                    }
                    add_row(combo);
                }
            }
        }
    }
    return s;
}

long slice_corank(const IdealSlice& s)
{
    SpanBuilder span(s.basis.size());
    for (const auto& row : s.spanning)
        span.insert(row);
    return static_cast<long>(s.basis.size() - span.dim());
}

StabilizedCount multiplicity_upper_bound(const CartanData& cd, const KRSpec& spec,
                                         const RootVector& gamma,
                                         const std::vector<long>& schedule)
{
    Weight lambda = spec.highest_weight(cd);
    Weight target = lambda - cd.root_to_weight(gamma);
    if (!target.dominant())
        throw std::invalid_argument("multiplicity_upper_bound: lambda - gamma not dominant");

    std::vector<long> ds = schedule;
    if (ds.empty()) {
        long h = std::max<long>(gamma.height(), 1);
        for (long d = h; d <= h + 8; ++d)
            ds.push_back(d);
    }
    StabilizedCount out;
    for (long d : ds) {
        long c = slice_corank(ideal_slice(cd, spec, gamma, d));
        if (!out.trace.empty() && out.trace.back().second == c) {
            out.trace.emplace_back(d, c);
            out.value = c;
            return out;
        }
        out.trace.emplace_back(d, c);
    }
    return out;
}

} // namespace krf
