#include "krf/fermionic.hpp"

#include "krf/rep.hpp"

#include <algorithm>
#include <stdexcept>

namespace krf {

Weight KRSpec::highest_weight(const CartanData& cd) const
{
    Weight w = Weight::zero(cd.rank);
    for (auto [i, l] : factors) {
        if (i < 0 || static_cast<std::size_t>(i) >= cd.rank)
            throw std::invalid_argument("KRSpec: node out of range");
        if (l < 1)
            throw std::invalid_argument("KRSpec: level must be positive");
        w.c[i] += l;
    }
    return w;
}

std::vector<long> KRSpec::levels_at(int node) const
{
    std::vector<long> out;
    for (auto [i, l] : factors)
        if (i == node)
            out.push_back(l);
    std::sort(out.begin(), out.end());
    return out;
}

long KRSpec::max_level() const
{
    long m = 0;
    for (auto [i, l] : factors)
        m = std::max(m, l);
    return m;
}

KRSpec KRSpec::sorted() const
{
    KRSpec s = *this;
    std::sort(s.factors.begin(), s.factors.end());
    return s;
}

RootVector ConfigShape::gamma(const CartanData& cd) const
{
    RootVector g = RootVector::zero(cd.rank);
    for (const auto& [key, mult] : m)
        g.m[key.first] += key.second * mult;
    return g;
}

long ConfigShape::at(int node, long a) const
{
    auto it = m.find({node, a});
    return it == m.end() ? 0 : it->second;
}

long vacancy(const CartanData& cd, const KRSpec& spec, const ConfigShape& config, int node, long a)
{
    long p = 0;
    for (long l : spec.levels_at(node))
        p += std::min(a, l);
    for (const auto& [key, mult] : config.m) {
        auto [j, b] = key;
        if (j == node)
            p -= 2 * std::min(a, b) * mult;
        else if (cd.cartan[j][node] != 0)
            p += std::min(std::labs(cd.cartan[j][node]) * a, std::labs(cd.cartan[node][j]) * b) *
                 mult;
    }
    return p;
}

namespace {

// Partitions of n as multisets {a -> multiplicity}, deterministic order.
void partitions_of(long n, long max_part, std::vector<std::pair<long, long>>& cur,
                   std::vector<std::vector<std::pair<long, long>>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (long a = std::min(n, max_part); a >= 1; --a) {
        for (long mult = n / a; mult >= 1; --mult) {
            cur.emplace_back(a, mult);
            partitions_of(n - a * mult, a - 1, cur, out);
            cur.pop_back();
        }
    }
}

} // namespace

std::vector<ConfigShape> enumerate_configs(const CartanData& cd, const KRSpec& spec,
                                           const RootVector& gamma)
{
    for (long x : gamma.m)
        if (x < 0)
            throw std::invalid_argument("enumerate_configs: gamma not in Q^+");

    // Per node, all partitions of gamma_i; then the product over nodes.
    std::vector<std::vector<std::vector<std::pair<long, long>>>> per_node(cd.rank);
    for (std::size_t i = 0; i < cd.rank; ++i) {
        std::vector<std::pair<long, long>> cur;
        partitions_of(gamma.m[i], gamma.m[i], cur, per_node[i]);
    }

    long gmax = 0;
    for (long x : gamma.m)
        gmax = std::max(gmax, x);
    long a_cap = std::max(spec.max_level(), 3 * gmax) + 1;

    std::vector<ConfigShape> out;
    std::vector<std::size_t> pick(cd.rank, 0);
    for (;;) {
        ConfigShape cfg;
        for (std::size_t i = 0; i < cd.rank; ++i)
            for (auto [a, mult] : per_node[i][pick[i]])
                cfg.m[{static_cast<int>(i), a}] = mult;
        bool ok = true;
        for (std::size_t i = 0; i < cd.rank && ok; ++i)
            for (long a = 1; a <= a_cap && ok; ++a)
                if (vacancy(cd, spec, cfg, static_cast<int>(i), a) < 0)
                    ok = false;
        if (ok)
            out.push_back(std::move(cfg));

        std::size_t pos = 0;
        while (pos < cd.rank) {
            if (++pick[pos] < per_node[pos].size())
                break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == cd.rank)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int fermionic_multiplicity(const CartanData& cd, const KRSpec& spec, const RootVector& gamma)
{
    Weight lambda = spec.highest_weight(cd);
    Weight target = lambda - cd.root_to_weight(gamma);
    if (!target.dominant())
        throw std::invalid_argument("fermionic_multiplicity: lambda - gamma not dominant");

    Int total = 0;
    for (const auto& cfg : enumerate_configs(cd, spec, gamma)) {
        Int prod = 1;
        for (const auto& [key, mult] : cfg.m) {
            long p = vacancy(cd, spec, cfg, key.first, key.second);
            prod *= binomial(Int(p + mult), static_cast<unsigned long>(mult));
        }
        total += prod;
    }
    return total;
}

Int fermionic_total(const CartanData& cd, const KRSpec& spec)
{
    Weight lambda = spec.highest_weight(cd);
    Int total = 0;
    for (const auto& gamma : dominant_gamma_range(cd, lambda))
        total += fermionic_multiplicity(cd, spec, gamma) *
                 weyl_dim(cd, lambda - cd.root_to_weight(gamma));
    return total;
}

bool dominance_surjection_exists(const NTuplePartitions& mu, const NTuplePartitions& nu)
{
    if (mu.mu.size() != nu.mu.size())
        throw std::invalid_argument("dominance_surjection_exists: rank mismatch");
    for (std::size_t i = 0; i < mu.mu.size(); ++i) {
        if (mu.mu[i].size() != nu.mu[i].size())
            throw std::invalid_argument("dominance_surjection_exists: size mismatch at a node");
        long rmax = 0;
        for (long x : mu.mu[i].parts)
            rmax = std::max(rmax, x);
        for (long x : nu.mu[i].parts)
            rmax = std::max(rmax, x);
        for (long r = 1; r <= rmax; ++r) {
            long sm = 0, sn = 0;
            for (long x : mu.mu[i].parts)
                sm += std::min(r, x);
            for (long x : nu.mu[i].parts)
                sn += std::min(r, x);
            if (sm < sn)
                return false;
        }
    }
    return true;
}

} // namespace krf
