#include "krf/cartan.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace krf {

Partition::Partition(std::vector<long> p) : parts(std::move(p))
{
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k] <= 0)
            throw std::invalid_argument("Partition: parts must be positive");
        if (k > 0 && parts[k] > parts[k - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

long Partition::row_count(long a) const
{
    long n = 0;
    for (long x : parts)
        if (x == a)
            ++n;
    return n;
}

bool Partition::operator<(const Partition& o) const
{
    return std::lexicographical_compare(parts.begin(), parts.end(), o.parts.begin(),
                                        o.parts.end());
}

DomRel dominance_compare(const Partition& mu, const Partition& nu)
{
    if (mu.size() != nu.size())
        throw std::invalid_argument("dominance_compare: unequal sizes");
    std::size_t n = std::max(mu.parts.size(), nu.parts.size());
    long sm = 0, sn = 0;
    bool le = true, ge = true;
    for (std::size_t k = 0; k < n; ++k) {
        sm += k < mu.parts.size() ? mu.parts[k] : 0;
        sn += k < nu.parts.size() ? nu.parts[k] : 0;
        if (sm > sn)
            le = false;
        if (sm < sn)
            ge = false;
    }
    if (le && ge)
        return DomRel::equal;
    if (le)
        return DomRel::less;
    if (ge)
        return DomRel::greater;
    return DomRel::incomparable;
}

bool NTuplePartitions::operator<(const NTuplePartitions& o) const
{
    if (mu.size() != o.mu.size())
        throw std::invalid_argument("NTuplePartitions: rank mismatch");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] == o.mu[i])
            continue;
        return mu[i] < o.mu[i];
    }
    return false;
}

bool NTuplePartitions::all_empty() const
{
    for (const auto& p : mu)
        if (!p.parts.empty())
            return false;
    return true;
}

namespace {

std::vector<std::vector<long>> cartan_matrix_for(const std::string& label)
{
    // c[i][j] = alpha_j(h_i)
    if (label == "A1")
        return {{2}};
    if (label == "A2")
        return {{2, -1}, {-1, 2}};
    if (label == "A3")
        return {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    if (label == "B2") // alpha_1 long, alpha_2 short
        return {{2, -1}, {-2, 2}};
    if (label == "C2") // alpha_1 short, alpha_2 long
        return {{2, -2}, {-1, 2}};
    if (label == "B3")
        return {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
    if (label == "C3")
        return {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
    if (label == "D4") // node 2 is the branch node
        return {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    if (label == "G2") // alpha_1 long, alpha_2 short
        return {{2, -1}, {-3, 2}};
    throw std::invalid_argument("build_cartan: unsupported type label '" + label + "'");
}

std::vector<long> symmetrizers(const std::vector<std::vector<long>>& c)
{
    std::size_t n = c.size();
    // Propagate d_j = d_i * c_ij / c_ji along edges, then clear denominators.
    std::vector<Rat> d(n, Rat(0));
    d[0] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || c[i][j] == 0)
                    continue;
                if (d[i] != 0 && d[j] == 0) {
                    d[j] = d[i] * c[i][j] / c[j][i];
                    changed = true;
                }
            }
    }
    Int lcm_den = 1;
    for (const auto& x : d)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> num(n);
    for (std::size_t i = 0; i < n; ++i)
        num[i] = d[i].get_num() * (lcm_den / d[i].get_den());
    Int g = 0;
    for (const auto& x : num)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    std::vector<long> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<long>(Int(num[i] / g).get_si());
    return out;
}

// Closure of the positive root system from the Cartan matrix via root
// strings: beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0, where p
// is the length of the downward string.
std::vector<RootVector> enumerate_positive_roots(const std::vector<std::vector<long>>& c)
{
    std::size_t n = c.size();
    std::set<std::vector<long>> found;
    std::vector<RootVector> by_height;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> v(n, 0);
        v[i] = 1;
        found.insert(v);
        by_height.push_back(RootVector(v));
    }
    auto pairing_with_coroot = [&](const RootVector& b, std::size_t i) {
        long s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s += c[i][j] * b.m[j];
        return s;
    };
    for (std::size_t pos = 0; pos < by_height.size(); ++pos) {
        RootVector b = by_height[pos];
        for (std::size_t i = 0; i < n; ++i) {
            long p = 0;
            RootVector down = b;
            for (;;) {
                down.m[i] -= 1;
                if (down.m[i] < 0 || down.is_zero() || !found.count(down.m))
                    break;
                ++p;
            }
            if (p - pairing_with_coroot(b, i) > 0) {
                RootVector up = b;
                up.m[i] += 1;
                if (found.insert(up.m).second)
                    by_height.push_back(up);
            }
        }
    }
    std::sort(by_height.begin(), by_height.end(), [](const RootVector& a, const RootVector& b) {
        if (a.height() != b.height())
            return a.height() < b.height();
        return a.m < b.m;
    });
    return by_height;
}

} // namespace

long CartanData::root_index(const RootVector& r) const
{
    for (std::size_t k = 0; k < positive_roots.size(); ++k)
        if (positive_roots[k] == r)
            return static_cast<long>(k);
    return -1;
}

Rat CartanData::pairing(const RootVector& a, const RootVector& b) const
{
    Rat s = 0;
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            if (a.m[i] != 0 && b.m[j] != 0)
                s += form[i][j] * a.m[i] * b.m[j];
    return s;
}

std::vector<long> CartanData::coroot(const RootVector& a) const
{
    Rat len = pairing(a, a);
    std::vector<long> k(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        Rat x = Rat(a.m[i]) * form[i][i] / len;
        if (!is_integer(x))
            throw std::runtime_error("coroot: non-integral coefficient");
        k[i] = to_long(x);
    }
    return k;
}

long CartanData::eval_coroot(const RootVector& alpha, const Weight& w) const
{
    std::vector<long> k = coroot(alpha);
    long s = 0;
    for (std::size_t i = 0; i < rank; ++i)
        s += k[i] * w.c[i];
    return s;
}

Weight CartanData::root_to_weight(const RootVector& r) const
{
    Weight w = Weight::zero(rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            w.c[i] += cartan[i][j] * r.m[j];
    return w;
}

Weight CartanData::fundamental(std::size_t i) const
{
    Weight w = Weight::zero(rank);
    w.c[i] = 1;
    return w;
}

Weight CartanData::rho() const
{
    return Weight(std::vector<long>(rank, 1));
}

long CartanData::max_root_height() const
{
    return positive_roots.back().height();
}

namespace {

// p-value of the root string: max k with b - k*a a root.
long p_max(const CartanData& cd, const RootVector& a, const RootVector& b)
{
    long p = 0;
    RootVector d = b;
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < cd.rank; ++i)
            d.m[i] -= a.m[i];
        RootVector neg = d;
        bool nonneg = true, nonpos = true;
        for (std::size_t i = 0; i < cd.rank; ++i) {
            if (d.m[i] < 0)
                nonneg = false;
            if (d.m[i] > 0)
                nonpos = false;
            neg.m[i] = -d.m[i];
        }
        if (d.is_zero())
            ok = false;
        else if (nonneg)
            ok = cd.is_positive_root(d);
        else if (nonpos)
            ok = cd.is_positive_root(neg);
        else
            ok = false;
        if (!ok)
            break;
        ++p;
    }
    return p;
}

long n_pos_lookup(const CartanData& cd, int a, int b)
{
    auto it = cd.n_pos.find({a, b});
    if (it != cd.n_pos.end())
        return it->second;
    it = cd.n_pos.find({b, a});
    if (it != cd.n_pos.end())
        return -it->second;
    throw std::runtime_error("structure constant lookup failure");
}

// Fill n_pos for all pairs of positive roots whose sum is a positive root.
// Signs are fixed by setting N = p+1 on the extraspecial pair of each
// non-simple root (the pair whose first member is minimal in the root
// order); the remaining constants follow from the Jacobi identity and the
// standard reflection identities. The Jacobi scan certifies the table.
void build_structure_constants(CartanData& cd)
{
    auto len2 = [&](int idx) { return cd.pairing(cd.positive_roots[idx], cd.positive_roots[idx]); };

    for (std::size_t g = 0; g < cd.positive_roots.size(); ++g) {
        const RootVector& gamma = cd.positive_roots[g];
        if (gamma.height() < 2)
            continue;
        // Decompositions gamma = a + b with a < b in the root order.
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < cd.positive_roots.size(); ++a) {
            RootVector rest = gamma - cd.positive_roots[a];
            bool nonneg = true;
            for (long x : rest.m)
                if (x < 0)
                    nonneg = false;
            if (!nonneg || rest.is_zero())
                continue;
            long b = cd.root_index(rest);
            if (b >= 0 && static_cast<long>(a) < b)
                pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
        if (pairs.empty())
            throw std::runtime_error("non-simple root with no decomposition");
        std::sort(pairs.begin(), pairs.end());
        auto [xi, eta] = pairs.front();
        long p_xe = p_max(cd, cd.positive_roots[xi], cd.positive_roots[eta]);
        cd.n_pos[{xi, eta}] = p_xe + 1;

        for (std::size_t t = 1; t < pairs.size(); ++t) {
            auto [ai, bi] = pairs[t];
            const RootVector& alpha = cd.positive_roots[ai];
            const RootVector& beta = cd.positive_roots[bi];
            const RootVector& rxi = cd.positive_roots[xi];
            // N(-xi, gamma) = (|eta|^2/|gamma|^2) N(xi, eta)
            Rat n_negxi_gamma = len2(eta) / len2(g) * Rat(cd.n_pos[{xi, eta}]);
            Rat total = 0;
            {
                RootVector d = alpha - rxi;
                long di = d.height() > 0 ? cd.root_index(d) : -1;
                if (di >= 0) {
                    Rat n1 = len2(di) / len2(ai) * Rat(n_pos_lookup(cd, xi, static_cast<int>(di)));
                    total += n1 * Rat(n_pos_lookup(cd, static_cast<int>(di), bi));
                }
            }
            {
                RootVector d = beta - rxi;
                long di = d.height() > 0 ? cd.root_index(d) : -1;
                if (di >= 0) {
                    Rat n2 = len2(di) / len2(bi) * Rat(n_pos_lookup(cd, xi, static_cast<int>(di)));
                    total += n2 * Rat(n_pos_lookup(cd, ai, static_cast<int>(di)));
                }
            }
            Rat val = total / n_negxi_gamma;
            if (!is_integer(val))
                throw std::runtime_error("non-integral structure constant");
            long n = to_long(val);
            long p = p_max(cd, alpha, beta);
            if (std::abs(n) != p + 1)
                throw std::runtime_error("structure constant magnitude mismatch");
            cd.n_pos[{ai, bi}] = n;
        }
    }
}

} // namespace

long CartanData::struct_constant(int ia, int sa, int ib, int sb) const
{
    const RootVector& a = positive_roots[ia];
    const RootVector& b = positive_roots[ib];
    auto len2 = [&](const RootVector& r) { return pairing(r, r); };
    if (sa > 0 && sb > 0) {
        RootVector s = a + b;
        return is_positive_root(s) ? n_pos_lookup(*this, ia, ib) : 0;
    }
    if (sa < 0 && sb < 0) {
        RootVector s = a + b;
        return is_positive_root(s) ? -n_pos_lookup(*this, ia, ib) : 0;
    }
    if (sa < 0)
        return -struct_constant(ib, sb, ia, sa);
    // a positive, b negative, a != b
    if (ia == ib)
        throw std::invalid_argument("struct_constant: opposite roots");
    RootVector d = a - b;
    bool nonneg = true, nonpos = true;
    RootVector neg = d;
    for (std::size_t i = 0; i < rank; ++i) {
        if (d.m[i] < 0)
            nonneg = false;
        if (d.m[i] > 0)
            nonpos = false;
        neg.m[i] = -d.m[i];
    }
    if (nonneg && is_positive_root(d)) {
        long di = root_index(d);
        Rat v = -len2(d) / len2(a) * Rat(n_pos_lookup(*this, ib, static_cast<int>(di)));
        if (!is_integer(v))
            throw std::runtime_error("struct_constant: non-integral");
        return to_long(v);
    }
    if (nonpos && is_positive_root(neg)) {
        long ei = root_index(neg);
        Rat v = len2(neg) / len2(b) * Rat(n_pos_lookup(*this, static_cast<int>(ei), ia));
        if (!is_integer(v))
            throw std::runtime_error("struct_constant: non-integral");
        return to_long(v);
    }
    return 0;
}

LieElt bracket(const CartanData& cd, const LieBasisElt& x, const LieBasisElt& y)
{
    LieElt out;
    auto add = [&](LieBasisElt b, Rat c) {
        if (c == 0)
            return;
        out[b] += c;
        if (out[b] == 0)
            out.erase(b);
    };
    if (x.kind == LieBasisElt::H && y.kind == LieBasisElt::H)
        return out;
    if (x.kind == LieBasisElt::H) {
        Weight w = cd.root_to_weight(cd.positive_roots[y.idx]);
        long ev = w.c[x.idx];
        add(y, y.kind == LieBasisElt::E ? Rat(ev) : Rat(-ev));
        return out;
    }
    if (y.kind == LieBasisElt::H) {
        LieElt r = bracket(cd, y, x);
        for (auto& [b, c] : r)
            add(b, -c);
        return out;
    }
    const RootVector& a = cd.positive_roots[x.idx];
    const RootVector& b = cd.positive_roots[y.idx];
    int sa = x.kind == LieBasisElt::E ? 1 : -1;
    int sb = y.kind == LieBasisElt::E ? 1 : -1;
    if (sa != sb && x.idx == y.idx) {
        // [e_alpha, f_alpha] = h_alpha
        std::vector<long> k = cd.coroot(a);
        Rat sign = sa > 0 ? 1 : -1;
        for (std::size_t i = 0; i < cd.rank; ++i)
            add({LieBasisElt::H, static_cast<int>(i)}, sign * Rat(k[i]));
        return out;
    }
    RootVector sum(std::vector<long>(cd.rank, 0));
    for (std::size_t i = 0; i < cd.rank; ++i)
        sum.m[i] = sa * a.m[i] + sb * b.m[i];
    bool nonneg = true, nonpos = true;
    RootVector neg = sum;
    for (std::size_t i = 0; i < cd.rank; ++i) {
        if (sum.m[i] < 0)
            nonneg = false;
        if (sum.m[i] > 0)
            nonpos = false;
        neg.m[i] = -sum.m[i];
    }
    long n = cd.struct_constant(x.idx, sa, y.idx, sb);
    if (n == 0)
        return out;
    if (nonneg && cd.is_positive_root(sum))
        add({LieBasisElt::E, static_cast<int>(cd.root_index(sum))}, Rat(n));
    else if (nonpos && cd.is_positive_root(neg))
        add({LieBasisElt::F, static_cast<int>(cd.root_index(neg))}, Rat(n));
    return out;
}

LieElt bracket(const CartanData& cd, const LieElt& x, const LieElt& y)
{
    LieElt out;
    for (const auto& [bx, cx] : x)
        for (const auto& [by, cy] : y) {
            LieElt t = bracket(cd, bx, by);
            for (const auto& [b, c] : t) {
                out[b] += cx * cy * c;
                if (out[b] == 0)
                    out.erase(b);
            }
        }
    return out;
}

void check_jacobi(const CartanData& cd)
{
    std::vector<LieBasisElt> basis;
    for (std::size_t i = 0; i < cd.rank; ++i)
        basis.push_back({LieBasisElt::H, static_cast<int>(i)});
    for (std::size_t r = 0; r < cd.positive_roots.size(); ++r) {
        basis.push_back({LieBasisElt::E, static_cast<int>(r)});
        basis.push_back({LieBasisElt::F, static_cast<int>(r)});
    }
    auto as_elt = [](LieBasisElt b) { return LieElt{{b, Rat(1)}}; };
    for (const auto& x : basis)
        for (const auto& y : basis)
            for (const auto& z : basis) {
                LieElt s = bracket(cd, as_elt(x), bracket(cd, y, z));
                LieElt t = bracket(cd, as_elt(y), bracket(cd, z, x));
                LieElt u = bracket(cd, as_elt(z), bracket(cd, x, y));
                LieElt total;
                for (const auto* part : {&s, &t, &u})
                    for (const auto& [b, c] : *part) {
                        total[b] += c;
                        if (total[b] == 0)
                            total.erase(b);
                    }
                if (!total.empty())
                    throw std::runtime_error("Jacobi identity violated for type " +
                                             cd.type_label);
            }
}

const CartanData& build_cartan(const std::string& type_label)
{
    static std::mutex mtx;
    static std::map<std::string, std::unique_ptr<CartanData>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(type_label);
    if (it != cache.end())
        return *it->second;

    auto cd = std::make_unique<CartanData>();
    cd->type_label = type_label;
    cd->cartan = cartan_matrix_for(type_label);
    cd->rank = cd->cartan.size();
    cd->sym = symmetrizers(cd->cartan);
    cd->hatted.assign(cd->rank, std::vector<long>(cd->rank, 1));
    for (std::size_t i = 0; i < cd->rank; ++i)
        for (std::size_t j = 0; j < cd->rank; ++j)
            cd->hatted[i][j] = std::max(1 - cd->cartan[i][j], 1L);
    cd->positive_roots = enumerate_positive_roots(cd->cartan);

    // Bilinear form normalized so the highest root has squared length 2.
    std::vector<std::vector<Rat>> raw(cd->rank, std::vector<Rat>(cd->rank));
    for (std::size_t i = 0; i < cd->rank; ++i)
        for (std::size_t j = 0; j < cd->rank; ++j)
            raw[i][j] = Rat(cd->sym[i] * cd->cartan[i][j]);
    const RootVector& theta = cd->positive_roots.back();
    Rat theta2 = 0;
    for (std::size_t i = 0; i < cd->rank; ++i)
        for (std::size_t j = 0; j < cd->rank; ++j)
            theta2 += raw[i][j] * theta.m[i] * theta.m[j];
    cd->form.assign(cd->rank, std::vector<Rat>(cd->rank));
    for (std::size_t i = 0; i < cd->rank; ++i)
        for (std::size_t j = 0; j < cd->rank; ++j)
            cd->form[i][j] = raw[i][j] * 2 / theta2;

    build_structure_constants(*cd);
    check_jacobi(*cd);

    auto [pos, ok] = cache.emplace(type_label, std::move(cd));
    (void)ok;
    return *pos->second;
}

} // namespace krf
