#include "slicecalc/exactint.hpp"

#include <algorithm>
#include <sstream>

namespace slicecalc {

IntMat::IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols)
        throw calc_error("IntMat: entry count does not match shape");
}

IntMat::IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw calc_error("IntMat: ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

IntMat IntMat::identity(std::size_t n) { return scalar(n, 1); }

IntMat IntMat::scalar(std::size_t n, const Int& c) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

bool IntMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

bool IntMat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != Int(i == j ? 1 : 0)) return false;
    return true;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& rhs) const {
    if (cols_ != rhs.rows_) throw calc_error("IntMat: product shape mismatch");
    IntMat r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Int& b = rhs.at(k, j);
                if (b != 0) r.at(i, j) += aik * b;
            }
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw calc_error("IntMat: sum shape mismatch");
    IntMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw calc_error("IntMat: difference shape mismatch");
    IntMat r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
    return r;
}

IntMat IntMat::operator-() const {
    IntMat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

IntMat IntMat::operator*(const Int& c) const {
    IntMat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::add_row(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
}

void IntMat::add_col(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
}

void IntMat::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMat::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) = -at(k, i);
}

IntMat IntMat::submatrix_cols(const std::vector<std::size_t>& cols) const {
    IntMat r(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, cols[j]);
    return r;
}

IntMat IntMat::submatrix_rows(const std::vector<std::size_t>& rows) const {
    IntMat r(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(rows[i], j);
    return r;
}

IntMat IntMat::col(std::size_t j) const {
    IntMat r(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw calc_error("hstack: row mismatch");
    IntMat r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) throw calc_error("vstack: column mismatch");
    IntMat r(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) r.at(a.rows() + i, j) = b.at(i, j);
    }
    return r;
}

IntMat dsum(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

Int det(const IntMat& a) {
    if (a.rows() != a.cols()) throw calc_error("det: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int prev = 1;
    Int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // Bareiss: division is exact
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

IntMat pow(const IntMat& a, unsigned long e) {
    if (a.rows() != a.cols()) throw calc_error("pow: matrix not square");
    IntMat result = IntMat::identity(a.rows());
    IntMat base = a;
    while (e) {
        if (e & 1UL) result = result * base;
        e >>= 1UL;
        if (e) base = base * base;
    }
    return result;
}

namespace {

// Nearest-integer quotient, minimizing |a - q*b|.
Int round_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0) {
        Int two_r = 2 * abs(r);
        if (two_r > abs(b) || (two_r == abs(b) && ((r < 0) == (b < 0))))
            q += ((r < 0) == (b < 0)) ? 1 : -1;
    }
    return q;
}

} // namespace

SmithResult smith_normal_form(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithResult s;
    s.d = a;
    s.u = IntMat::identity(m);
    s.u_inv = IntMat::identity(m);
    s.v = IntMat::identity(n);
    s.v_inv = IntMat::identity(n);
    IntMat& d = s.d;

    auto row_op = [&](std::size_t i, std::size_t j, const Int& c) {
        d.add_row(i, j, c);
        s.u.add_row(i, j, c);
        s.u_inv.add_col(j, i, -c);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& c) {
        d.add_col(i, j, c);
        s.v.add_col(i, j, c);
        s.v_inv.add_row(j, i, -c);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        d.swap_rows(i, j);
        s.u.swap_rows(i, j);
        s.u_inv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        d.swap_cols(i, j);
        s.v.swap_cols(i, j);
        s.v_inv.swap_rows(i, j);
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Minimal-absolute-value pivot in the trailing block.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (d.at(i, j) != 0 &&
                        (pi == m || abs(d.at(i, j)) < abs(d.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) goto done;  // trailing block is zero
            row_swap(t, pi);
            col_swap(t, pj);

            bool reduced = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = round_div(d.at(i, t), d.at(t, t));
                row_op(i, t, -q);
                if (d.at(i, t) != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = round_div(d.at(t, j), d.at(t, t));
                col_op(j, t, -q);
                if (d.at(t, j) != 0) reduced = false;
            }
            if (!reduced) continue;  // a smaller pivot now exists

            // Pivot divides its row and column; enforce divisibility into
            // the rest of the block.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < m && divides_all; ++i)
                for (std::size_t j = t + 1; j < n && divides_all; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        row_op(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
            s.u_inv.negate_col(t);
        }
    }
done:
    s.diag.resize(steps);
    s.rank = 0;
    for (std::size_t t = 0; t < steps; ++t) {
        s.diag[t] = d.at(t, t);
        if (s.diag[t] != 0) ++s.rank;
    }
    return s;
}

std::optional<IntMat> solve(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw calc_error("solve: shape mismatch");
    SmithResult s = smith_normal_form(a);
    IntMat y = s.u * b;  // solve d * z = y, then x = v * z
    const std::size_t n = a.cols(), m = a.rows();
    IntMat z(n, b.cols());
    for (std::size_t i = 0; i < m; ++i) {
        const Int& di = (i < s.diag.size()) ? s.diag[i] : Int(0);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (di == 0) {
                if (y.at(i, j) != 0) return std::nullopt;
            } else {
                if (y.at(i, j) % di != 0) return std::nullopt;
                if (i < n) z.at(i, j) = y.at(i, j) / di;
            }
        }
    }
    return s.v * z;
}

IntMat kernel_basis(const IntMat& a) {
    SmithResult s = smith_normal_form(a);
    std::vector<std::size_t> free_cols;
    for (std::size_t j = s.rank; j < a.cols(); ++j) free_cols.push_back(j);
    return s.v.submatrix_cols(free_cols);
}

IntMat lattice_basis(const IntMat& g) {
    SmithResult s = smith_normal_form(g);
    // g * v = u_inv * d, so the column lattice is spanned by the nonzero
    // columns of u_inv * d.
    IntMat b(g.rows(), s.rank);
    for (std::size_t t = 0; t < s.rank; ++t)
        for (std::size_t i = 0; i < g.rows(); ++i)
            b.at(i, t) = s.u_inv.at(i, t) * s.diag[t];
    return b;
}

bool in_lattice(const IntMat& l, const IntMat& x) {
    return solve(l, x).has_value();
}

} // namespace slicecalc
