#pragma once

#include <numeric>

#include "matrix.hpp"

namespace conescore {

/// Rows of W generating the cone K_W = { λW : λ >= 0 }.
///
/// Zero rows never appear. Every kept row remembers its position in the
/// matrix it was originally taken from, so subsets and projections can be
/// mapped back to source rows.
class GeneratorSet {
public:
    explicit GeneratorSet(std::size_t dim = 0) : rows_(0, dim) {}

    /// Takes the rows of `w`, dropping rows whose max-norm is at most
    /// rank_tol times the largest row max-norm (or exactly zero).
    static GeneratorSet from_matrix(const Matrix& w, const Tolerances& tol) {
        GeneratorSet g(w.cols());
        double scale = 0.0;
        for (std::size_t i = 0; i < w.rows(); ++i) scale = std::max(scale, norm_inf(w.row(i)));
        const double cutoff = tol.rank_tol * scale;
        for (std::size_t i = 0; i < w.rows(); ++i) {
            const double n = norm_inf(w.row(i));
            if (n == 0.0 || n <= cutoff) {
                ++g.dropped_;
                continue;
            }
            g.rows_.append_row(w.row(i));
            g.source_.push_back(i);
        }
        return g;
    }

    static GeneratorSet from_rows(const std::vector<Vector>& rows, std::size_t dim, const Tolerances& tol) {
        return from_matrix(Matrix::from_rows(rows, dim), tol);
    }

    /// Rows with explicit source indices; rows must be nonzero.
    GeneratorSet(Matrix rows, std::vector<std::size_t> source) : rows_(std::move(rows)), source_(std::move(source)) {
        if (source_.size() != rows_.rows())
            throw Error(ErrorKind::dimension_mismatch, "GeneratorSet: one source index per row required");
        for (std::size_t i = 0; i < rows_.rows(); ++i)
            if (norm_inf(rows_.row(i)) == 0.0) throw Error(ErrorKind::invalid_input, "GeneratorSet: zero generator");
    }

    std::size_t dim() const noexcept { return rows_.cols(); }
    std::size_t size() const noexcept { return rows_.rows(); }
    bool empty() const noexcept { return rows_.rows() == 0; }

    const Matrix& matrix() const noexcept { return rows_; }
    std::span<const double> operator[](std::size_t i) const { return rows_.row(i); }
    const std::vector<std::size_t>& sources() const noexcept { return source_; }
    std::size_t source(std::size_t i) const { return source_[i]; }
    std::size_t dropped_zero_rows() const noexcept { return dropped_; }

    /// Subset by local position, keeping source indices.
    GeneratorSet subset(std::span<const std::size_t> local) const {
        std::vector<std::size_t> src;
        src.reserve(local.size());
        for (std::size_t i : local) src.push_back(source_[i]);
        return GeneratorSet(rows_.select_rows(local), std::move(src));
    }

    /// All rows except local position `skip`.
    GeneratorSet without(std::size_t skip) const {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < size(); ++i)
            if (i != skip) keep.push_back(i);
        return subset(keep);
    }

    /// Copy with every row scaled to unit Euclidean norm. Same cone.
    Matrix normalized_rows() const {
        Matrix out = rows_;
        for (std::size_t i = 0; i < out.rows(); ++i) {
            const double n = norm2(out.row(i));
            for (double& v : out.row(i)) v /= n;
        }
        return out;
    }

private:
    Matrix rows_;
    std::vector<std::size_t> source_;
    std::size_t dropped_ = 0;
};

}  // namespace conescore
