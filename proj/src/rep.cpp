#include "krf/rep.hpp"

#include <algorithm>
#include <stdexcept>

namespace krf {

namespace {

// Rational root-basis coordinates of a weight: solve C^T x = w.c ...
// w.c[i] = <h_i, w> = sum_j x_j <h_i, alpha_j> = sum_j cartan[i][j] x_j.
std::vector<Rat> root_coords(const CartanData& cd, const Weight& w)
{
    std::size_t n = cd.rank;
    QMat m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = Rat(cd.cartan[i][j]);
        m(i, n) = Rat(w.c[i]);
    }
    rref(m);
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m(i, n);
    return x;
}

} // namespace

Rat weight_pairing(const CartanData& cd, const Weight& mu, const Weight& nu)
{
    std::vector<Rat> x = root_coords(cd, mu);
    std::vector<Rat> y = root_coords(cd, nu);
    Rat s = 0;
    for (std::size_t i = 0; i < cd.rank; ++i)
        for (std::size_t j = 0; j < cd.rank; ++j)
            if (x[i] != 0 && y[j] != 0)
                s += x[i] * cd.form[i][j] * y[j];
    return s;
}

bool weight_in_root_lattice(const CartanData& cd, const Weight& w)
{
    for (const Rat& x : root_coords(cd, w))
        if (!is_integer(x))
            return false;
    return true;
}

RootVector weight_to_root(const CartanData& cd, const Weight& w)
{
    RootVector r = RootVector::zero(cd.rank);
    std::vector<Rat> x = root_coords(cd, w);
    for (std::size_t i = 0; i < cd.rank; ++i) {
        if (!is_integer(x[i]))
            throw std::invalid_argument("weight_to_root: not in the root lattice");
        r.m[i] = to_long(x[i]);
    }
    return r;
}

Weight lowest_weight(const CartanData& cd, const Weight& lambda)
{
    Weight w = lambda;
    for (;;) {
        bool anti = true;
        for (std::size_t i = 0; i < cd.rank; ++i) {
            if (w.c[i] > 0) {
                // s_i(w) = w - w.c[i] * alpha_i
                long coeff = w.c[i];
                for (std::size_t j = 0; j < cd.rank; ++j)
                    w.c[j] -= coeff * cd.cartan[j][i];
                anti = false;
                break;
            }
        }
        if (anti)
            return w;
    }
}

std::vector<RootVector> dominant_gamma_range(const CartanData& cd, const Weight& lambda)
{
    if (!lambda.dominant())
        throw std::invalid_argument("dominant_gamma_range: lambda not dominant");
    RootVector box = weight_to_root(cd, lambda - lowest_weight(cd, lambda));
    std::vector<RootVector> out;
    RootVector g = RootVector::zero(cd.rank);
    for (;;) {
        if ((lambda - cd.root_to_weight(g)).dominant())
            out.push_back(g);
        std::size_t pos = 0;
        while (pos < cd.rank) {
            if (++g.m[pos] <= box.m[pos])
                break;
            g.m[pos] = 0;
            ++pos;
        }
        if (pos == cd.rank)
            break;
    }
    std::sort(out.begin(), out.end(), [](const RootVector& a, const RootVector& b) {
        if (a.height() != b.height())
            return a.height() < b.height();
        return a.m < b.m;
    });
    return out;
}

Int weyl_dim(const CartanData& cd, const Weight& lambda)
{
    if (!lambda.dominant())
        throw std::invalid_argument("weyl_dim: lambda not dominant");
    Weight rho = cd.rho();
    Rat prod = 1;
    for (const RootVector& alpha : cd.positive_roots) {
        Weight aw = cd.root_to_weight(alpha);
        prod *= weight_pairing(cd, lambda + rho, aw) / weight_pairing(cd, rho, aw);
    }
    if (!is_integer(prod))
        throw std::runtime_error("weyl_dim: non-integral result");
    return prod.get_num();
}

std::map<Weight, Int> freudenthal_weights(const CartanData& cd, const Weight& lambda)
{
    if (!lambda.dominant())
        throw std::invalid_argument("freudenthal_weights: lambda not dominant");
    RootVector box = weight_to_root(cd, lambda - lowest_weight(cd, lambda));

    // All gamma in the box, by height; mult(lambda - gamma) via the
    // Freudenthal recursion.
    std::vector<RootVector> gammas;
    RootVector g = RootVector::zero(cd.rank);
    for (;;) {
        gammas.push_back(g);
        std::size_t pos = 0;
        while (pos < cd.rank) {
            if (++g.m[pos] <= box.m[pos])
                break;
            g.m[pos] = 0;
            ++pos;
        }
        if (pos == cd.rank)
            break;
    }
    std::sort(gammas.begin(), gammas.end(), [](const RootVector& a, const RootVector& b) {
        if (a.height() != b.height())
            return a.height() < b.height();
        return a.m < b.m;
    });

    std::map<RootVector, Int> mult;
    Weight rho = cd.rho();
    Rat norm_top = weight_pairing(cd, lambda + rho, lambda + rho);
    for (const RootVector& gamma : gammas) {
        if (gamma.is_zero()) {
            mult[gamma] = 1;
            continue;
        }
        Weight mu = lambda - cd.root_to_weight(gamma);
        Rat denom = norm_top - weight_pairing(cd, mu + rho, mu + rho);
        Rat num = 0;
        for (const RootVector& alpha : cd.positive_roots) {
            Weight aw = cd.root_to_weight(alpha);
            for (long k = 1;; ++k) {
                RootVector up = gamma;
                bool ok = true;
                for (std::size_t i = 0; i < cd.rank; ++i) {
                    up.m[i] -= k * alpha.m[i];
                    if (up.m[i] < 0)
                        ok = false;
                }
                if (!ok)
                    break;
                auto it = mult.find(up);
                if (it == mult.end() || it->second == 0)
                    continue;
                Weight shifted = mu;
                for (std::size_t i = 0; i < cd.rank; ++i)
                    shifted.c[i] += k * aw.c[i];
                num += 2 * Rat(it->second) * weight_pairing(cd, shifted, aw);
            }
        }
        if (denom == 0) {
            if (num != 0)
                throw std::runtime_error("freudenthal: inconsistent recursion");
            mult[gamma] = 0;
            continue;
        }
        Rat value = num / denom;
        if (!is_integer(value) || value < 0)
            throw std::runtime_error("freudenthal: non-integral multiplicity");
        mult[gamma] = value.get_num();
    }

    std::map<Weight, Int> out;
    Int total = 0;
    for (const auto& [gamma, m] : mult) {
        if (m == 0)
            continue;
        out[lambda - cd.root_to_weight(gamma)] = m;
        total += m;
    }
    if (total != weyl_dim(cd, lambda))
        throw std::runtime_error("freudenthal: dimension audit failed");
    return out;
}

std::map<Weight, Int> tensor_decompose(const CartanData& cd, const Weight& lambda,
                                       const Weight& mu)
{
    if (!lambda.dominant() || !mu.dominant())
        throw std::invalid_argument("tensor_decompose: weights must be dominant");
    std::map<Weight, Int> out;
    Weight rho = cd.rho();
    for (const auto& [nu, m] : freudenthal_weights(cd, mu)) {
        Weight xi = lambda + nu + rho;
        long sign = 1;
        bool drop = false;
        for (;;) {
            bool regular_dominant = true;
            for (std::size_t i = 0; i < cd.rank; ++i) {
                if (xi.c[i] == 0) {
                    drop = true;
                    break;
                }
                if (xi.c[i] < 0) {
                    long coeff = xi.c[i];
                    for (std::size_t j = 0; j < cd.rank; ++j)
                        xi.c[j] -= coeff * cd.cartan[j][i];
                    sign = -sign;
                    regular_dominant = false;
                    break;
                }
            }
            if (drop || regular_dominant)
                break;
        }
        if (drop)
            continue;
        Weight kappa = xi - rho;
        out[kappa] += sign * m;
        if (out[kappa] == 0)
            out.erase(kappa);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Explicit irreducible modules via the contravariant form on the Verma module.

namespace {

class VermaContext {
public:
    VermaContext(const CartanData& cd, const Weight& lambda) : cd_(cd), lambda_(lambda) {}

    // e_node . (m v_lambda) as a combination of monomials of weight
    // wt(m) - alpha_node applied to v_lambda.
    const MonCombo& e_apply(int node, const PBWMonomial& m)
    {
        auto key = std::pair(node, m);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;

        MonCombo out;
        if (!m.factors.empty()) {
            // m = f_{beta,0} * rest
            PBWMonomial rest = m;
            int beta = rest.factors.front().root;
            if (rest.factors.front().exp > 1)
                rest.factors.front().exp -= 1;
            else
                rest.factors.erase(rest.factors.begin());

            RootVector alpha = RootVector::zero(cd_.rank);
            alpha.m[node] = 1;
            long ai = cd_.root_index(alpha);

            // [e_node, f_beta] contribution
            if (beta == ai) {
                // h_node . (rest v) = <h_node, lambda - wt(rest)> rest v
                Weight w = lambda_ - cd_.root_to_weight(rest.weight(cd_));
                if (w.c[node] != 0)
                    accumulate(out, rest, Rat(w.c[node]));
            } else {
                RootVector down = cd_.positive_roots[beta];
                down.m[node] -= 1;
                bool ok = down.m[node] >= 0 && !down.is_zero();
                long di = ok ? cd_.root_index(down) : -1;
                if (di >= 0) {
                    long n = cd_.struct_constant(static_cast<int>(ai), 1, beta, -1);
                    if (n != 0) {
                        std::vector<CurrentLetter> w{CurrentLetter{static_cast<int>(di), 0}};
                        auto tail = rest.letters();
                        w.insert(w.end(), tail.begin(), tail.end());
                        for (const auto& [pm, pc] : straighten(cd_, w))
                            accumulate(out, pm, Rat(n) * pc);
                    }
                }
            }
            // f_beta . (e_node rest v)
            for (const auto& [pm, pc] : e_apply(node, rest)) {
                std::vector<CurrentLetter> w{CurrentLetter{beta, 0}};
                auto tail = pm.letters();
                w.insert(w.end(), tail.begin(), tail.end());
                for (const auto& [qm, qc] : straighten(cd_, w))
                    accumulate(out, qm, pc * qc);
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    // Contravariant form A(u, w) on U(n_-)_{-gamma}.
    Rat contravariant(const PBWMonomial& u, const PBWMonomial& w)
    {
        Rat total = 0;
        for (const auto& [c, word] : simple_expansion(u)) {
            MonCombo state{{w, Rat(1)}};
            for (const SimpleLetter& l : word) {
                MonCombo next;
                for (const auto& [pm, pc] : state)
                    for (const auto& [qm, qc] : e_apply(l.node, pm))
                        accumulate(next, qm, pc * qc);
                state = std::move(next);
                if (state.empty())
                    break;
            }
            for (const auto& [pm, pc] : state)
                if (pm.factors.empty())
                    total += c * pc;
        }
        return total;
    }

private:
    struct SimpleLetter {
        int node;
    };

    static void accumulate(MonCombo& c, const PBWMonomial& m, const Rat& v)
    {
        if (v == 0)
            return;
        c[m] += v;
        if (c[m] == 0)
            c.erase(m);
    }

    // Expansion of a PBW monomial (t-degree 0) into words of simple nodes.
    const std::vector<std::pair<Rat, std::vector<SimpleLetter>>>&
    simple_expansion(const PBWMonomial& m)
    {
        auto it = words_.find(m);
        if (it != words_.end())
            return it->second;
        std::vector<std::pair<Rat, std::vector<SimpleLetter>>> out{{Rat(1), {}}};
        for (const CurrentLetter& l : m.letters()) {
            auto expansion = simple_word_expansion(cd_, l.root, 0);
            std::vector<std::pair<Rat, std::vector<SimpleLetter>>> next;
            for (const auto& [c0, w0] : out)
                for (const auto& [c1, w1] : expansion) {
                    auto w = w0;
                    for (const auto& letter : w1) {
                        const RootVector& r = cd_.positive_roots[letter.root];
                        int node = -1;
                        for (std::size_t i = 0; i < cd_.rank; ++i)
                            if (r.m[i] == 1)
                                node = static_cast<int>(i);
                        w.push_back({node});
                    }
                    next.emplace_back(c0 * c1, std::move(w));
                }
            out = std::move(next);
        }
        return words_.emplace(m, std::move(out)).first->second;
    }

    const CartanData& cd_;
    Weight lambda_;
    std::map<std::pair<int, PBWMonomial>, MonCombo> memo_;
    std::map<PBWMonomial, std::vector<std::pair<Rat, std::vector<SimpleLetter>>>> words_;
};

struct WeightBlock {
    RootVector gamma;
    std::vector<PBWMonomial> monomials;
    std::map<PBWMonomial, std::size_t> index;
    // Reduction modulo the radical: for each monomial, coordinates over the
    // pivot monomials.
    std::vector<QVec> reduce;    // per monomial, length = pivots.size()
    std::vector<std::size_t> pivots;
    std::size_t base = 0;        // global index of first pivot
};

} // namespace

IrrepMatrices build_irrep(const CartanData& cd, const Weight& lambda)
{
    if (!lambda.dominant())
        throw std::invalid_argument("build_irrep: lambda not dominant");
    VermaContext ctx(cd, lambda);
    std::map<Weight, Int> wmult = freudenthal_weights(cd, lambda);

    // Blocks sorted by (height, lex) of gamma.
    std::vector<WeightBlock> blocks;
    for (const auto& [mu, mult] : wmult) {
        WeightBlock b;
        b.gamma = weight_to_root(cd, lambda - mu);
        b.monomials = pbw_basis(cd, b.gamma, 0);
        blocks.push_back(std::move(b));
    }
    std::sort(blocks.begin(), blocks.end(), [](const WeightBlock& a, const WeightBlock& b) {
        if (a.gamma.height() != b.gamma.height())
            return a.gamma.height() < b.gamma.height();
        return a.gamma.m < b.gamma.m;
    });

    IrrepMatrices M;
    M.cd = &cd;
    M.lambda = lambda;

    std::map<RootVector, std::size_t> block_of;
    std::size_t next_base = 0;
    for (auto& b : blocks) {
        for (std::size_t t = 0; t < b.monomials.size(); ++t)
            b.index[b.monomials[t]] = t;
        std::size_t n = b.monomials.size();
        QMat gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                gram(i, j) = ctx.contravariant(b.monomials[i], b.monomials[j]);
                gram(j, i) = gram(i, j);
            }
        QMat r = gram;
        std::vector<std::size_t> pivots = rref(r);
        std::vector<bool> is_pivot(n, false);
        for (std::size_t p : pivots)
            is_pivot[p] = true;
        // monomial_f = -sum_p r(p-row, f) monomial_p modulo the radical, for
        // free columns f (from the nullspace in RREF form).
        b.reduce.assign(n, QVec(pivots.size(), Rat(0)));
        for (std::size_t t = 0; t < pivots.size(); ++t)
            b.reduce[pivots[t]][t] = 1;
        for (std::size_t f = 0; f < n; ++f) {
            if (is_pivot[f])
                continue;
            for (std::size_t t = 0; t < pivots.size(); ++t)
                b.reduce[f][t] = r(t, f);
        }
        b.pivots = pivots;
        b.base = next_base;
        next_base += pivots.size();

        Weight mu = lambda - cd.root_to_weight(b.gamma);
        if (Int(pivots.size()) != wmult.at(mu))
            throw std::runtime_error("build_irrep: radical rank disagrees with Freudenthal");
        block_of[b.gamma] = &b - blocks.data();
        for (std::size_t t = 0; t < pivots.size(); ++t)
            M.wt.push_back(mu);
    }
    M.dim = next_base;
    M.highest_index = 0;

    auto coords_of = [&](const WeightBlock& b, const MonCombo& combo, QVec& global_col) {
        for (const auto& [m, c] : combo) {
            auto it = b.index.find(m);
            if (it == b.index.end())
                throw std::runtime_error("build_irrep: unknown monomial");
            const QVec& red = b.reduce[it->second];
            for (std::size_t t = 0; t < red.size(); ++t)
                if (red[t] != 0)
                    global_col[b.base + t] += c * red[t];
        }
    };

    M.e.assign(cd.rank, QMat(M.dim, M.dim));
    M.f.assign(cd.rank, QMat(M.dim, M.dim));
    M.h.assign(cd.rank, QMat(M.dim, M.dim));

    for (const auto& b : blocks) {
        Weight mu = lambda - cd.root_to_weight(b.gamma);
        for (std::size_t t = 0; t < b.pivots.size(); ++t) {
            std::size_t col = b.base + t;
            const PBWMonomial& mon = b.monomials[b.pivots[t]];
            for (std::size_t i = 0; i < cd.rank; ++i) {
                M.h[i](col, col) = Rat(mu.c[i]);
                // f_i column
                RootVector up = b.gamma;
                up.m[i] += 1;
                auto itb = block_of.find(up);
                if (itb != block_of.end()) {
                    RootVector alpha = RootVector::zero(cd.rank);
                    alpha.m[i] = 1;
                    std::vector<CurrentLetter> w{
                        CurrentLetter{static_cast<int>(cd.root_index(alpha)), 0}};
                    auto tail = mon.letters();
                    w.insert(w.end(), tail.begin(), tail.end());
                    QVec colv(M.dim, Rat(0));
                    coords_of(blocks[itb->second], straighten(cd, w), colv);
                    for (std::size_t row = 0; row < M.dim; ++row)
                        if (colv[row] != 0)
                            M.f[i](row, col) = colv[row];
                }
                // e_i column
                RootVector down = b.gamma;
                down.m[i] -= 1;
                if (down.m[i] >= 0) {
                    auto itb2 = block_of.find(down);
                    if (itb2 != block_of.end()) {
                        QVec colv(M.dim, Rat(0));
                        coords_of(blocks[itb2->second], ctx.e_apply(static_cast<int>(i), mon),
                                  colv);
                        for (std::size_t row = 0; row < M.dim; ++row)
                            if (colv[row] != 0)
                                M.e[i](row, col) = colv[row];
                    }
                }
            }
        }
    }
    if (Int(static_cast<long>(M.dim)) != weyl_dim(cd, lambda))
        throw std::runtime_error("build_irrep: dimension audit failed");
    return M;
}

} // namespace krf
