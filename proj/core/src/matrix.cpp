#include "seventerm/matrix.hpp"

#include "seventerm/errors.hpp"

#include <sstream>
#include <utility>

namespace seventerm {

std::string to_string(const Int& a) { return a.str(); }

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ValidationError("IntMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw ValidationError("from_columns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const IntVec& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMatrix IntMatrix::take_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
    return m;
}

IntMatrix IntMatrix::take_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& other) const {
    if (rows_ != other.rows_) throw ValidationError("hcat: row count mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) m.at(i, cols_ + j) = other.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& other) const {
    if (cols_ != other.cols_) throw ValidationError("vcat: column count mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = other.at(i, j);
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("matrix product: shape mismatch");
    IntMatrix m(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) m.at(i, j) += a * rhs.at(k, j);
        }
    return m;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (cols_ != v.size()) throw ValidationError("matrix*vector: shape mismatch");
    IntVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix difference: shape mismatch");
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - rhs.data_[i];
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += c * at(src, k);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) at(k, dst) += c * at(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw ValidationError("vec_add: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw ValidationError("vec_sub: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec vec_neg(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

IntVec vec_scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool vec_is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

} // namespace seventerm
