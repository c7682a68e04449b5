#pragma once

#include "krf/rat.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace krf {

using QVec = std::vector<Rat>;

// Dense matrix over Q, row major. Sizes here are desk scale (a few hundred
// rows/columns at most), so plain Gaussian elimination with exact rationals
// is entirely adequate.
struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Reduced row echelon form in place; returns pivot column indices in order.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// Basis of the right nullspace {x : m x = 0}, deterministic order (one vector
// per free column, free columns ascending).
std::vector<QVec> nullspace(const QMat& m);

bool is_invertible(const QMat& m);

QVec mat_vec(const QMat& m, const QVec& v);

// Incremental row space: insert vectors one at a time, reducing against the
// rows already held. Used for filtration/saturation computations where we
// only need dimensions and membership tests.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t width) : width_(width) {}

    // Returns true if v enlarged the span.
    bool insert(QVec v);
    bool contains(QVec v) const;
    // Reduce v against the span, returning the remainder.
    QVec reduce(QVec v) const;
    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    const std::map<std::size_t, QVec>& rows() const { return rows_; }

private:
    std::size_t width_;
    // pivot column -> normalized row (row[pivot] = 1, fully reduced).
    std::map<std::size_t, QVec> rows_;
};

} // namespace krf
