#include "krf/gmod.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace krf {

namespace {

const QMat& zero_matrix(std::size_t dim)
{
    static std::map<std::size_t, QMat> cache;
    auto it = cache.find(dim);
    if (it == cache.end())
        it = cache.emplace(dim, QMat(dim, dim)).first;
    return it->second;
}

} // namespace

const QMat& GradedModule::act(GenKey::Kind kind, int node, long k) const
{
    auto it = action.find({kind, node, k});
    if (it != action.end())
        return it->second;
    if (graded && k >= K_max)
        return zero_matrix(dim);
    throw std::out_of_range("GradedModule::act: generator beyond stored truncation");
}

QVec GradedModule::apply(GenKey::Kind kind, int node, long k, const QVec& v) const
{
    return mat_vec(act(kind, node, k), v);
}

std::map<std::pair<Weight, long>, long> GradedModule::graded_character() const
{
    std::map<std::pair<Weight, long>, long> out;
    for (std::size_t t = 0; t < dim; ++t)
        out[{wt[t], deg[t]}] += 1;
    return out;
}

GradedModule evaluation_module(const CartanData& cd, const Weight& lambda, const Rat& c,
                               long K_cap)
{
    IrrepMatrices irr = build_irrep(cd, lambda);
    GradedModule m;
    m.cd = &cd;
    m.dim = irr.dim;
    m.wt = irr.wt;
    m.deg.assign(irr.dim, 0);
    m.graded = (c == 0);
    m.K_max = m.graded ? 1 : K_cap;
    m.cyclic_index = irr.highest_index;
    Rat ck = 1;
    for (long k = 0; k < std::max<long>(m.K_max, 1); ++k) {
        for (std::size_t i = 0; i < cd.rank; ++i) {
            QMat e = irr.e[i], f = irr.f[i], h = irr.h[i];
            for (auto* mat : {&e, &f, &h})
                for (auto& x : mat->a)
                    x *= ck;
            m.action[{GenKey::E, static_cast<int>(i), k}] = std::move(e);
            m.action[{GenKey::F, static_cast<int>(i), k}] = std::move(f);
            m.action[{GenKey::H, static_cast<int>(i), k}] = std::move(h);
        }
        ck *= c;
    }
    return m;
}

GradedModule kr_module(const CartanData& cd, int node, long level, const Rat& c)
{
    bool type_a = !cd.type_label.empty() && cd.type_label[0] == 'A';
    if (!(type_a || cd.rank == 1))
        throw unsupported_realization("kr_module: no certified evaluation realization for type " +
                                      cd.type_label + " node " + std::to_string(node + 1));
    if (level < 1)
        throw std::invalid_argument("kr_module: level must be positive");
    Weight lambda = Weight::zero(cd.rank);
    lambda.c[node] = level;
    GradedModule m = evaluation_module(cd, lambda, c);

    // Certification: the defining relations hold on the cyclic vector and the
    // dimension matches the fermionic count for the one-factor product.
    QVec v(m.dim, Rat(0));
    v[m.cyclic_index] = 1;
    auto is_zero = [](const QVec& x) {
        for (const auto& t : x)
            if (t != 0)
                return false;
        return true;
    };
    for (std::size_t j = 0; j < cd.rank; ++j) {
        if (!is_zero(m.apply(GenKey::E, static_cast<int>(j), 0, v)))
            throw std::runtime_error("kr_module: e_j v != 0");
        if (static_cast<int>(j) != node && !is_zero(m.apply(GenKey::F, static_cast<int>(j), 0, v)))
            throw std::runtime_error("kr_module: f_j v != 0 for j != i");
    }
    QVec w = v;
    for (long t = 0; t <= level; ++t)
        w = m.apply(GenKey::F, node, 0, w);
    if (!is_zero(w))
        throw std::runtime_error("kr_module: f_i^{l+1} v != 0");
    // (f_i (x) (t - c)) v = f_i (x) t v - c f_i v
    QVec u = m.graded ? QVec(m.dim, Rat(0)) : m.apply(GenKey::F, node, 1, v);
    QVec cv = m.apply(GenKey::F, node, 0, v);
    for (std::size_t t = 0; t < m.dim; ++t)
        u[t] -= c * cv[t];
    if (!is_zero(u))
        throw std::runtime_error("kr_module: (f_i (x) (t-c)) v != 0");
    KRSpec single{{{node, level}}};
    if (Int(static_cast<long>(m.dim)) != fermionic_total(cd, single))
        throw std::runtime_error("kr_module: dimension disagrees with the fermionic count");
    return m;
}

namespace {

// Action of x (x) t^k on the tensor of pulled-back modules: sum over slots of
// the phi_c-twisted action sum_b C(k,b) c^{k-b} (x (x) t^b).
struct TensorAction {
    const CartanData* cd;
    std::vector<const GradedModule*> mods;
    std::vector<Rat> points;
    std::vector<std::size_t> dims, strides;
    std::size_t dim = 1;

    TensorAction(const CartanData& c, const std::vector<GradedModule>& ms,
                 const std::vector<Rat>& pts)
        : cd(&c), points(pts)
    {
        for (const auto& m : ms)
            mods.push_back(&m);
        dims.resize(ms.size());
        strides.resize(ms.size());
        for (std::size_t j = 0; j < ms.size(); ++j)
            dims[j] = ms[j].dim;
        // slot 0 varies slowest
        for (std::size_t j = ms.size(); j-- > 0;) {
            strides[j] = dim;
            dim *= dims[j];
        }
    }

    QMat slot_matrix(std::size_t j, GenKey::Kind kind, int node, long k) const
    {
        const GradedModule& m = *mods[j];
        QMat out(m.dim, m.dim);
        for (long b = 0; b < m.K_max && b <= k; ++b) {
            // C(k,b) c^{k-b}
            Rat coef = Rat(binomial(Int(k), static_cast<unsigned long>(b)));
            Rat p = 1;
            for (long t = 0; t < k - b; ++t)
                p *= points[j];
            coef *= p;
            if (coef == 0)
                continue;
            const QMat& mat = m.act(kind, node, b);
            for (std::size_t r = 0; r < m.dim; ++r)
                for (std::size_t s = 0; s < m.dim; ++s)
                    if (mat(r, s) != 0)
                        out(r, s) += coef * mat(r, s);
        }
        return out;
    }

    // Apply the generator to a vector in tensor coordinates.
    QVec apply(GenKey::Kind kind, int node, long k, const QVec& v) const
    {
        QVec out(dim, Rat(0));
        for (std::size_t j = 0; j < mods.size(); ++j) {
            QMat mat = slot_matrix(j, kind, node, k);
            bool zero = true;
            for (const auto& x : mat.a)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (zero)
                continue;
            std::size_t outer = dim / (dims[j] * strides[j]);
            for (std::size_t o = 0; o < outer; ++o)
                for (std::size_t inner = 0; inner < strides[j]; ++inner) {
                    std::size_t base = o * dims[j] * strides[j] + inner;
                    for (std::size_t r = 0; r < dims[j]; ++r) {
                        Rat acc = 0;
                        for (std::size_t s = 0; s < dims[j]; ++s) {
                            const Rat& mv = mat(r, s);
                            if (mv == 0)
                                continue;
                            const Rat& xv = v[base + s * strides[j]];
                            if (xv != 0)
                                acc += mv * xv;
                        }
                        if (acc != 0)
                            out[base + r * strides[j]] += acc;
                    }
                }
        }
        return out;
    }

    Weight weight_of_basis(std::size_t idx) const
    {
        Weight w = Weight::zero(cd->rank);
        for (std::size_t j = 0; j < mods.size(); ++j) {
            std::size_t pos = (idx / strides[j]) % dims[j];
            w = w + mods[j]->wt[pos];
        }
        return w;
    }
};

} // namespace

GradedModule fusion_product(const CartanData& cd, const std::vector<GradedModule>& modules,
                            const std::vector<Rat>& points)
{
    if (modules.empty())
        throw std::invalid_argument("fusion_product: no factors");
    if (modules.size() != points.size())
        throw std::invalid_argument("fusion_product: factor/point count mismatch");
    for (const auto& m : modules)
        if (!m.graded)
            throw std::invalid_argument("fusion_product: factors must be graded modules");
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (points[a] == points[b])
                throw std::invalid_argument("fusion_product: coincident evaluation points");

    TensorAction T(cd, modules, points);
    std::size_t D = T.dim;

    // Maximal t-degree of a generator that can act nontrivially on the
    // tensor: beyond the per-slot truncations every twisted action repeats
    // scalar multiples of lower ones, but applying up to this cap is enough
    // to generate (simple currents of each degree are new scalars times the
    // same endomorphisms; degrees beyond max filtration level cannot enlarge
    // F^{<=k} at stage k anyway, and we apply exactly degree a at stage a).
    QVec v(D, Rat(0));
    {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < modules.size(); ++j)
            idx += modules[j].cyclic_index * T.strides[j];
        v[idx] = 1;
    }

    SpanBuilder span(D);
    std::vector<std::vector<QVec>> layer; // adapted representatives per degree

    auto close_degree0 = [&](std::vector<QVec>& fresh) {
        std::size_t head = 0;
        while (head < fresh.size()) {
            QVec cur = fresh[head++];
            for (std::size_t i = 0; i < cd.rank; ++i)
                for (GenKey::Kind kind : {GenKey::E, GenKey::F, GenKey::H}) {
                    QVec w = T.apply(kind, static_cast<int>(i), 0, cur);
                    QVec red = span.reduce(w);
                    bool zero = true;
                    for (const auto& x : red)
                        if (x != 0) {
                            zero = false;
                            break;
                        }
                    if (!zero) {
                        span.insert(w);
                        fresh.push_back(std::move(w));
                    }
                }
        }
    };

    {
        std::vector<QVec> fresh{v};
        span.insert(v);
        close_degree0(fresh);
        layer.push_back(std::move(fresh));
    }

    long k = 0;
    const long hard_cap = static_cast<long>(2 * D + 8);
    while (span.dim() < D) {
        ++k;
        if (k > hard_cap)
            throw std::runtime_error("fusion_product: filtration failed to exhaust (non-cyclic?)");
        std::vector<QVec> fresh;
        for (long a = 1; a <= k; ++a) {
            if (static_cast<std::size_t>(k - a) >= layer.size())
                continue;
            for (const QVec& r : layer[k - a])
                for (std::size_t i = 0; i < cd.rank; ++i)
                    for (GenKey::Kind kind : {GenKey::E, GenKey::F, GenKey::H}) {
                        QVec w = T.apply(kind, static_cast<int>(i), a, r);
                        QVec red = span.reduce(w);
                        bool zero = true;
                        for (const auto& x : red)
                            if (x != 0) {
                                zero = false;
                                break;
                            }
                        if (!zero) {
                            span.insert(w);
                            fresh.push_back(std::move(w));
                        }
                    }
        }
        close_degree0(fresh);
        layer.push_back(std::move(fresh));
    }

    // Adapted basis: representatives ordered by degree; change of basis.
    GradedModule out;
    out.cd = &cd;
    out.dim = D;
    out.graded = true;
    out.cyclic_index = 0;
    std::vector<QVec> reps;
    for (std::size_t d = 0; d < layer.size(); ++d)
        for (const auto& r : layer[d]) {
            out.deg.push_back(static_cast<long>(d));
            out.wt.push_back(Weight::zero(cd.rank)); // filled below
            reps.push_back(r);
        }
    out.K_max = static_cast<long>(layer.size());

    // Weights: every representative is supported on tensor basis vectors of a
    // single weight (generators are weight-homogeneous and v is a weight
    // vector).
    for (std::size_t t = 0; t < reps.size(); ++t) {
        for (std::size_t idx = 0; idx < D; ++idx)
            if (reps[t][idx] != 0) {
                out.wt[t] = T.weight_of_basis(idx);
                break;
            }
    }

    // Inverse of the representative matrix for coordinate extraction.
    QMat aug(D, 2 * D);
    for (std::size_t col = 0; col < D; ++col)
        for (std::size_t row = 0; row < D; ++row)
            aug(row, col) = reps[col][row];
    for (std::size_t row = 0; row < D; ++row)
        aug(row, D + row) = 1;
    if (rref(aug).size() != D)
        throw std::runtime_error("fusion_product: adapted basis singular");
    QMat inv(D, D);
    for (std::size_t r = 0; r < D; ++r)
        for (std::size_t c = 0; c < D; ++c)
            inv(r, c) = aug(r, D + c);

    auto coords = [&](const QVec& w) { return mat_vec(inv, w); };

    for (long a = 0; a < out.K_max; ++a)
        for (std::size_t i = 0; i < cd.rank; ++i)
            for (GenKey::Kind kind : {GenKey::E, GenKey::F, GenKey::H}) {
                QMat mat(D, D);
                for (std::size_t col = 0; col < D; ++col) {
                    QVec w = T.apply(kind, static_cast<int>(i), a, reps[col]);
                    QVec c = coords(w);
                    long target = out.deg[col] + a;
                    for (std::size_t row = 0; row < D; ++row)
                        if (c[row] != 0 && out.deg[row] == target)
                            mat(row, col) = c[row];
                }
                out.action[{kind, static_cast<int>(i), a}] = std::move(mat);
            }
    return out;
}

std::map<std::pair<Weight, long>, long> g_decompose(const GradedModule& m)
{
    const CartanData& cd = *m.cd;
    std::map<std::pair<Weight, long>, std::vector<std::size_t>> slots;
    for (std::size_t t = 0; t < m.dim; ++t)
        slots[{m.wt[t], m.deg[t]}].push_back(t);

    std::map<std::pair<Weight, long>, long> out;
    for (const auto& [key, cols] : slots) {
        const auto& [mu, d] = key;
        if (!mu.dominant())
            continue;
        // Highest-weight vectors: kernel of all e_i restricted to the slot.
        QMat stacked(cd.rank * m.dim, cols.size());
        for (std::size_t i = 0; i < cd.rank; ++i) {
            const QMat& e = m.act(GenKey::E, static_cast<int>(i), 0);
            for (std::size_t row = 0; row < m.dim; ++row)
                for (std::size_t c = 0; c < cols.size(); ++c)
                    stacked(i * m.dim + row, c) = e(row, cols[c]);
        }
        long hw = static_cast<long>(cols.size() - rank(stacked));

        // Coinvariants (M / n_- M) at the same weight and degree.
        std::vector<QVec> images;
        for (std::size_t i = 0; i < cd.rank; ++i) {
            Weight up = mu;
            for (std::size_t j = 0; j < cd.rank; ++j)
                up.c[j] += cd.cartan[j][i];
            auto it = slots.find({up, d});
            if (it == slots.end())
                continue;
            const QMat& f = m.act(GenKey::F, static_cast<int>(i), 0);
            for (std::size_t src : it->second) {
                QVec img(cols.size(), Rat(0));
                for (std::size_t c = 0; c < cols.size(); ++c)
                    img[c] = f(cols[c], src);
                images.push_back(std::move(img));
            }
        }
        SpanBuilder sp(cols.size());
        for (auto& row : images)
            sp.insert(std::move(row));
        long coinv = static_cast<long>(cols.size() - sp.dim());
        if (coinv != hw)
            throw std::runtime_error("g_decompose: kernel and coinvariant counts disagree");
        if (hw != 0)
            out[key] = hw;
    }
    return out;
}

RelationReport check_presentation(const GradedModule& m, const KRSpec& spec)
{
    const CartanData& cd = *m.cd;
    RelationReport rep;
    Weight lambda = spec.highest_weight(cd);
    QVec v(m.dim, Rat(0));
    v[m.cyclic_index] = 1;
    auto is_zero = [](const QVec& x) {
        for (const auto& t : x)
            if (t != 0)
                return false;
        return true;
    };
    auto note = [&](std::string desc, bool ok) {
        rep.checks.push_back({std::move(desc), ok});
        rep.all_pass = rep.all_pass && ok;
    };

    for (std::size_t j = 0; j < cd.rank; ++j) {
        bool ok = true;
        for (long k = 0; k < m.K_max; ++k)
            ok = ok && is_zero(m.apply(GenKey::E, static_cast<int>(j), k, v));
        note("e_" + std::to_string(j + 1) + "(x)t^k v = 0", ok);
    }
    for (std::size_t j = 0; j < cd.rank; ++j) {
        QVec w = m.apply(GenKey::H, static_cast<int>(j), 0, v);
        for (std::size_t t = 0; t < m.dim; ++t)
            w[t] -= Rat(lambda.c[j]) * v[t];
        bool ok = is_zero(w);
        for (long k = 1; k < m.K_max; ++k)
            ok = ok && is_zero(m.apply(GenKey::H, static_cast<int>(j), k, v));
        note("h_" + std::to_string(j + 1) + "(x)f(t) v = f(0)<h,lambda> v", ok);
    }

    for (std::size_t i = 0; i < cd.rank; ++i) {
        std::vector<long> levels = spec.levels_at(static_cast<int>(i));
        long Li = 0;
        for (long l : levels)
            Li += l;
        for (long r = 1; r <= Li + 1; ++r) {
            long bound = 0;
            for (long l : levels)
                bound += std::min(r, l);
            bool ok = true;
            for (long s = -bound - 1; s >= -r * m.K_max; --s) {
                auto terms = current_power_coefficient(cd, static_cast<int>(i), r, s);
                QVec acc(m.dim, Rat(0));
                for (const auto& [mon, mult] : terms) {
                    bool truncated = false;
                    for (const auto& fac : mon.factors)
                        if (fac.k >= m.K_max)
                            truncated = true;
                    if (truncated)
                        continue;
                    QVec w = v;
                    // Letters act right to left.
                    auto ls = mon.letters();
                    for (auto it = ls.rbegin(); it != ls.rend(); ++it)
                        w = m.apply(GenKey::F, static_cast<int>(i), it->k, w);
                    for (std::size_t t = 0; t < m.dim; ++t)
                        acc[t] += Rat(mult) * w[t];
                }
                if (!is_zero(acc))
                    ok = false;
            }
            note("(F_" + std::to_string(i + 1) + "(z)^" + std::to_string(r) + ")_s v = 0 for s < -" +
                     std::to_string(bound),
                 ok);
        }
    }
    return rep;
}

void write_character_csv(std::ostream& os, const GradedModule& m)
{
    os << "degree,dim";
    for (std::size_t i = 0; i < m.cd->rank; ++i)
        os << ",w" << (i + 1);
    os << "\n";
    for (const auto& [key, d] : m.graded_character()) {
        os << key.second << "," << d;
        for (long c : key.first.c)
            os << "," << c;
        os << "\n";
    }
}

void write_action_triplets(std::ostream& os, const GradedModule& m)
{
    const char* kinds = "efh";
    for (const auto& [key, mat] : m.action) {
        for (std::size_t r = 0; r < mat.rows; ++r)
            for (std::size_t c = 0; c < mat.cols; ++c)
                if (mat(r, c) != 0)
                    os << kinds[int(key.kind)] << " " << (key.node + 1) << " " << key.k << " " << r
                       << " " << c << " " << rat_str(mat(r, c)) << "\n";
    }
}

} // namespace krf
