#include "splice/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace splice {

Rat parse_rat(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(text));
        Rat q(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        if (q.get_den() == 0)
            throw DomainError("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational number: '" + text + "'");
    }
}

Int parse_int(const std::string& text)
{
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw ParseError("not an integer: '" + text + "'");
    }
}

IVec primitivized(IVec v)
{
    Int g = 0;
    for (const Int& x : v)
        g = int_gcd(g, x);
    if (g == 0)
        throw DomainError("cannot primitivize the zero vector");
    for (Int& x : v)
        x /= g;
    return v;
}

Int dot(const IVec& a, const IVec& b)
{
    if (a.size() != b.size())
        throw DomainError("dot: dimension mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const IVec& b)
{
    if (a.size() != b.size())
        throw DomainError("dot: dimension mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * Rat(b[i]);
    return s;
}

std::string rat_to_string(const Rat& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

size_t matrix_rank(QMatrix m)
{
    if (m.empty())
        return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[rank], m[pivot]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            Rat f = m[r][c] / m[rank][c];
            for (size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

Int bareiss_det(IMatrix m)
{
    const size_t n = m.size();
    if (n == 0)
        return 1;
    for (const auto& row : m)
        if (row.size() != n)
            throw DomainError("bareiss_det: matrix not square");
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num / prev;  // exact by the Bareiss identity
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Rat rational_det(const QMatrix& m)
{
    const size_t n = m.size();
    if (n == 0)
        return 1;
    IMatrix im(n, IVec(n));
    Rat scale = 1;
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw DomainError("rational_det: matrix not square");
        Int l = 1;
        for (const Rat& q : m[i])
            l = int_lcm(l, q.get_den());
        scale /= Rat(l);
        for (size_t j = 0; j < n; ++j) {
            Rat scaled = m[i][j] * Rat(l);
            im[i][j] = scaled.get_num();
        }
    }
    return scale * Rat(bareiss_det(std::move(im)));
}

namespace {

// Phase-1 simplex on  A x = b, x >= 0  with artificial variables and Bland's
// rule. Rows are normalized so that b >= 0.
struct Simplex {
    size_t nvars, nrows;
    QMatrix tab;               // nrows x (nvars + nrows + 1), artificials appended
    std::vector<size_t> basis;

    Simplex(const QMatrix& a, const QVec& b) : nvars(a.empty() ? 0 : a[0].size()), nrows(a.size())
    {
        tab.assign(nrows, QVec(nvars + nrows + 1, Rat(0)));
        basis.resize(nrows);
        for (size_t i = 0; i < nrows; ++i) {
            int s = sgn(b[i]) < 0 ? -1 : 1;
            for (size_t j = 0; j < nvars; ++j)
                tab[i][j] = Rat(s) * a[i][j];
            tab[i][nvars + i] = 1;
            tab[i].back() = Rat(s) * b[i];
            basis[i] = nvars + i;
        }
    }

    void pivot(size_t row, size_t col)
    {
        Rat p = tab[row][col];
        for (Rat& x : tab[row])
            x /= p;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == row || tab[r][col] == 0)
                continue;
            Rat f = tab[r][col];
            for (size_t c = 0; c < tab[r].size(); ++c)
                tab[r][c] -= f * tab[row][c];
        }
        basis[row] = col;
    }

    // Minimizes the sum of artificial variables; returns true iff it reaches 0.
    bool run()
    {
        const size_t total = nvars + nrows;
        while (true) {
            // Reduced costs of the phase-1 objective (sum of artificials).
            QVec cost(total + 1, Rat(0));
            for (size_t i = 0; i < nrows; ++i)
                if (basis[i] >= nvars)
                    for (size_t c = 0; c <= total; ++c)
                        cost[c] += tab[i][c];
            size_t enter = total;
            for (size_t c = 0; c < total; ++c) {
                if (cost[c] > 0 && !is_basic(c)) {  // Bland: smallest index
                    enter = c;
                    break;
                }
            }
            if (enter == total)
                return cost[total] == 0;
            // Ratio test, Bland tie-break on basis index.
            size_t leave = nrows;
            Rat best;
            for (size_t r = 0; r < nrows; ++r) {
                if (tab[r][enter] <= 0)
                    continue;
                Rat ratio = tab[r].back() / tab[r][enter];
                if (leave == nrows || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == nrows)
                return false;  // unbounded; cannot happen for phase 1
            pivot(leave, enter);
        }
    }

    bool is_basic(size_t col) const
    {
        return std::find(basis.begin(), basis.end(), col) != basis.end();
    }

    QVec solution() const
    {
        QVec x(nvars, Rat(0));
        for (size_t i = 0; i < nrows; ++i)
            if (basis[i] < nvars)
                x[basis[i]] = tab[i].back();
        return x;
    }
};

}  // namespace

std::optional<QVec> nonneg_solve(const QMatrix& a, const QVec& b)
{
    if (a.size() != b.size())
        throw DomainError("nonneg_solve: shape mismatch");
    if (a.empty())
        return QVec{};
    Simplex s(a, b);
    if (!s.run())
        return std::nullopt;
    return s.solution();
}

std::optional<QVec> feasible_point(const std::vector<LinConstraint>& cons, size_t nvars)
{
    // Free variables x_i = p_i - q_i with p,q >= 0; inequality slack appended.
    size_t nslack = 0;
    for (const auto& c : cons)
        if (c.op != 0)
            ++nslack;
    QMatrix a;
    QVec b;
    size_t slack_at = 0;
    for (const auto& c : cons) {
        if (c.row.size() != nvars)
            throw DomainError("feasible_point: constraint arity mismatch");
        QVec row(2 * nvars + nslack, Rat(0));
        for (size_t i = 0; i < nvars; ++i) {
            row[2 * i] = c.row[i];
            row[2 * i + 1] = -c.row[i];
        }
        if (c.op != 0)
            row[2 * nvars + slack_at++] = c.op > 0 ? Rat(-1) : Rat(1);
        a.push_back(std::move(row));
        b.push_back(c.rhs);
    }
    auto sol = nonneg_solve(a, b);
    if (!sol)
        return std::nullopt;
    QVec x(nvars);
    for (size_t i = 0; i < nvars; ++i)
        x[i] = (*sol)[2 * i] - (*sol)[2 * i + 1];
    return x;
}

IMatrix identity_matrix(size_t n)
{
    IMatrix m(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IMatrix multiply(const IMatrix& a, const IMatrix& b)
{
    if (a.empty() || b.empty())
        return {};
    size_t n = a.size(), k = b.size(), m = b[0].size();
    IMatrix r(n, IVec(m, 0));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k)
            throw DomainError("multiply: shape mismatch");
        for (size_t j = 0; j < k; ++j)
            if (a[i][j] != 0)
                for (size_t c = 0; c < m; ++c)
                    r[i][c] += a[i][j] * b[j][c];
    }
    return r;
}

bool is_unimodular(const IMatrix& m)
{
    Int d = bareiss_det(m);
    return d == 1 || d == -1;
}

namespace {

void row_op(IMatrix& m, size_t i, size_t j, const Int& f)
{
    // row_i -= f * row_j
    for (size_t c = 0; c < m[i].size(); ++c)
        m[i][c] -= f * m[j][c];
}

void col_op(IMatrix& m, size_t i, size_t j, const Int& f)
{
    // col_i -= f * col_j
    for (auto& row : m)
        row[i] -= f * row[j];
}

}  // namespace

SmithResult smith_normal_form(IMatrix a)
{
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    SmithResult res;
    res.u = identity_matrix(rows);
    res.v = identity_matrix(cols);
    if (rows == 0 || cols == 0) {
        res.d = std::move(a);
        return res;
    }

    size_t t = 0;
    while (t < rows && t < cols) {
        // Find a non-zero pivot in the remaining block.
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows && pr == rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr == rows)
            break;
        if (pr != t) {
            std::swap(a[pr], a[t]);
            std::swap(res.u[pr], res.u[t]);
        }
        if (pc != t) {
            for (auto& row : a)
                std::swap(row[pc], row[t]);
            for (auto& row : res.v)
                std::swap(row[pc], row[t]);
        }
        // Clear row and column t; repeat until both are clean (the pivot
        // shrinks at every replacement, so this terminates).
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                if (a[i][t] % a[t][t] != 0) {
                    // Replace the pivot by gcd via a quotient step, then retry.
                    Int q = a[i][t] / a[t][t];
                    row_op(a, i, t, q);
                    row_op(res.u, i, t, q);
                    std::swap(a[i], a[t]);
                    std::swap(res.u[i], res.u[t]);
                    dirty = true;
                    continue;
                }
                Int q = a[i][t] / a[t][t];
                row_op(a, i, t, q);
                row_op(res.u, i, t, q);
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                if (a[t][j] % a[t][t] != 0) {
                    Int q = a[t][j] / a[t][t];
                    col_op(a, j, t, q);
                    col_op(res.v, j, t, q);
                    for (auto& row : a)
                        std::swap(row[j], row[t]);
                    for (auto& row : res.v)
                        std::swap(row[j], row[t]);
                    dirty = true;
                    continue;
                }
                Int q = a[t][j] / a[t][t];
                col_op(a, j, t, q);
                col_op(res.v, j, t, q);
            }
        }
        ++t;
    }

    // Enforce the divisibility chain d_1 | d_2 | ... For a failing pair the
    // block diag(x, y) is replaced by diag(gcd(x,y), +-lcm(x,y)).
    for (size_t i = 0; i + 1 < t; ++i) {
        for (size_t j = i + 1; j < t; ++j) {
            if (a[j][j] % a[i][i] == 0)
                continue;
            // col_i += col_j puts y below the pivot.
            col_op(a, i, j, Int(-1));
            col_op(res.v, i, j, Int(-1));
            // gcd steps on rows i, j clear a[j][i].
            while (a[j][i] != 0) {
                Int q = a[i][i] / a[j][i];
                row_op(a, i, j, q);
                row_op(res.u, i, j, q);
                std::swap(a[i], a[j]);
                std::swap(res.u[i], res.u[j]);
            }
            // The fill-in a[i][j] is a multiple of the new pivot.
            if (a[i][j] != 0) {
                Int q = exact_div(a[i][j], a[i][i]);
                col_op(a, j, i, q);
                col_op(res.v, j, i, q);
            }
        }
    }

    for (size_t i = 0; i < t; ++i) {
        if (a[i][i] < 0) {
            for (auto& row : res.v)
                row[i] = -row[i];
            a[i][i] = -a[i][i];
        }
        res.invariant_factors.push_back(a[i][i]);
    }
    res.d = std::move(a);
    return res;
}

}  // namespace splice
