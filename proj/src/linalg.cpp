#include "krf/linalg.hpp"

namespace krf {

std::vector<std::size_t> rref(QMat& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m(piv, col) == 0)
            ++piv;
        if (piv == m.rows)
            continue;
        if (piv != row)
            for (std::size_t j = col; j < m.cols; ++j)
                std::swap(m(piv, j), m(row, j));
        Rat inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols; ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> nullspace(const QMat& m)
{
    QMat r = m;
    std::vector<std::size_t> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : pivots)
        is_pivot[p] = true;

    std::vector<QVec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        QVec v(m.cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_invertible(const QMat& m)
{
    return m.rows == m.cols && rank(m) == m.rows;
}

QVec mat_vec(const QMat& m, const QVec& v)
{
    if (v.size() != m.cols)
        throw std::invalid_argument("mat_vec: size mismatch");
    QVec out(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0 && v[j] != 0)
                out[i] += m(i, j) * v[j];
    return out;
}

bool SpanBuilder::insert(QVec v)
{
    v = reduce(std::move(v));
    std::size_t piv = width_;
    for (std::size_t j = 0; j < width_; ++j)
        if (v[j] != 0) {
            piv = j;
            break;
        }
    if (piv == width_)
        return false;
    Rat inv = 1 / v[piv];
    for (auto& x : v)
        x *= inv;
    // Back-substitute into existing rows so every row stays fully reduced.
    for (auto& [p, row] : rows_) {
        if (row[piv] != 0) {
            Rat f = row[piv];
            for (std::size_t j = 0; j < width_; ++j)
                row[j] -= f * v[j];
        }
    }
    rows_.emplace(piv, std::move(v));
    return true;
}

QVec SpanBuilder::reduce(QVec v) const
{
    if (v.size() != width_)
        throw std::invalid_argument("SpanBuilder: width mismatch");
    for (const auto& [p, row] : rows_) {
        if (v[p] != 0) {
            Rat f = v[p];
            for (std::size_t j = 0; j < width_; ++j)
                v[j] -= f * row[j];
        }
    }
    return v;
}

bool SpanBuilder::contains(QVec v) const
{
    v = reduce(std::move(v));
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace krf
