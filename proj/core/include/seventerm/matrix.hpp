#pragma once

#include "seventerm/integers.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace seventerm {

// Dense matrix over Int, row major. Zero rows and/or columns are legal and
// behave as the corresponding maps between 0-dimensional spaces.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const IntVec& d);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec col(std::size_t j) const;
    IntVec row(std::size_t i) const;
    void set_col(std::size_t j, const IntVec& v);

    IntMatrix take_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix take_cols(const std::vector<std::size_t>& idx) const;

    // [this | other], row counts must agree.
    IntMatrix hcat(const IntMatrix& other) const;
    // [this; other], column counts must agree.
    IntMatrix vcat(const IntMatrix& other) const;

    IntMatrix transposed() const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    std::string to_string() const;

    // Elementary operations used by the normal form routines.
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c);
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntVec data_;
};

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);
IntVec vec_scale(const Int& c, const IntVec& a);
bool vec_is_zero(const IntVec& a);

} // namespace seventerm
