// Exact integer matrices, Smith normal form and the solvers built on it.
// Everything downstream (group presentations, Mackey functor homology)
// reduces to the routines in this header.

#ifndef SLICECALC_EXACTINT_HPP
#define SLICECALC_EXACTINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicecalc {

using Int = boost::multiprecision::cpp_int;

class calc_error : public std::runtime_error {
public:
    explicit calc_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by homology_at when d_out * d_in != 0.
class composition_error : public calc_error {
public:
    explicit composition_error(const std::string& what) : calc_error(what) {}
};

// Thrown by induced_hom when a chain map does not respect kernels/images.
class compat_error : public calc_error {
public:
    explicit compat_error(const std::string& what) : calc_error(what) {}
};

// Dense row-major matrix over arbitrary-precision integers.  Zero-row and
// zero-column shapes are legal everywhere; they show up constantly as
// presentations of the trivial group.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries);
    IntMat(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMat identity(std::size_t n);
    static IntMat zero(std::size_t rows, std::size_t cols) { return IntMat(rows, cols); }
    static IntMat scalar(std::size_t n, const Int& c);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    IntMat transpose() const;
    IntMat operator*(const IntMat& rhs) const;
    IntMat operator+(const IntMat& rhs) const;
    IntMat operator-(const IntMat& rhs) const;
    IntMat operator-() const;
    IntMat operator*(const Int& c) const;
    bool operator==(const IntMat& rhs) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    IntMat submatrix_cols(const std::vector<std::size_t>& cols) const;
    IntMat submatrix_rows(const std::vector<std::size_t>& rows) const;
    IntMat col(std::size_t j) const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);
// Block-diagonal stack.
IntMat dsum(const IntMat& a, const IntMat& b);
// Exact determinant (fraction-free Bareiss).
Int det(const IntMat& a);
// Matrix power, e >= 0.
IntMat pow(const IntMat& a, unsigned long e);

struct SmithResult {
    IntMat u, d, v;          // u * a * v = d, u and v unimodular
    IntMat u_inv, v_inv;
    std::size_t rank = 0;    // number of nonzero diagonal entries
    std::vector<Int> diag;   // all min(rows, cols) diagonal entries, d_1 | d_2 | ...
};

// Smith normal form with minimal-absolute-value pivoting.  Diagonal entries
// are nonnegative and satisfy the divisibility chain.
SmithResult smith_normal_form(const IntMat& a);

// Exact solution of a * x = b over the integers (columnwise); nullopt when
// some column has no integral solution.
std::optional<IntMat> solve(const IntMat& a, const IntMat& b);

// Basis (columns) of the integer kernel lattice of a.  The basis is
// primitive: the lattice it spans is saturated.
IntMat kernel_basis(const IntMat& a);

// Basis (columns) of the lattice spanned by the columns of g.
IntMat lattice_basis(const IntMat& g);

// True when every column of x lies in the column lattice of l.
bool in_lattice(const IntMat& l, const IntMat& x);

} // namespace slicecalc

#endif
