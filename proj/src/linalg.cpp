#include "groupoidrep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace groupoidrep {

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Echelon row_reduce(const Matrix& a, double tol) {
    Echelon e;
    e.reduced = a;
    Matrix& m = e.reduced;
    const double cut = tol * std::max(1.0, max_abs(a));
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = r;
        double best = std::abs(m(r, c));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            double v = std::abs(m(i, c));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= cut) {
            for (Eigen::Index i = r; i < rows; ++i) m(i, c) = 0.0;
            continue;
        }
        if (piv != r) m.row(piv).swap(m.row(r));
        m.row(r) /= m(r, c);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r) continue;
            cplx f = m(i, c);
            if (f != cplx(0.0)) m.row(i) -= f * m.row(r);
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return e;
}

int rank(const Matrix& a, double tol) { return row_reduce(a, tol).rank(); }

Matrix null_space(const Matrix& a, double tol) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return Matrix::Identity(n, n);
    Echelon e = row_reduce(a, tol);
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0; c < n; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    Matrix basis = Matrix::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        Eigen::Index f = free_cols[k];
        basis(f, static_cast<Eigen::Index>(k)) = 1.0;
        for (size_t r = 0; r < e.pivots.size(); ++r)
            basis(e.pivots[r], static_cast<Eigen::Index>(k)) =
                -e.reduced(static_cast<Eigen::Index>(r), f);
    }
    return orthonormalize_columns(basis, tol);
}

Matrix orthonormalize_columns(const Matrix& a, double tol) {
    std::vector<Vector> kept;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        Vector v = a.col(j);
        double scale = std::max(1.0, v.norm());
        // two passes of MGS keep orthogonality at machine precision
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& q : kept) v -= q.dot(v) * q;
        double nv = v.norm();
        if (nv > tol * scale) kept.push_back(v / nv);
    }
    Matrix out(a.rows(), static_cast<Eigen::Index>(kept.size()));
    for (size_t k = 0; k < kept.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = kept[k];
    return out;
}

HermitianEigen jacobi_eigh(const Matrix& input, double tol, int max_sweeps) {
    const Eigen::Index n = input.rows();
    Matrix a = 0.5 * (input + input.adjoint());
    Matrix v = Matrix::Identity(n, n);
    HermitianEigen out;
    const double thresh = tol * std::max(1.0, a.norm());

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= thresh) {
            out.converged = true;
            break;
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                // phase e^{-i phi} on column q makes the pivot real, then a
                // real rotation zeroes it
                const cplx phase = std::conj(apq) / r;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // V restricted to (p,q): [[c, s], [-s*phase, c*phase]]
                const cplx vpp = c, vpq = s, vqp = -s * phase, vqq = c * phase;
                for (Eigen::Index k = 0; k < n; ++k) {
                    cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * vpp + akq * vqp;
                    a(k, q) = akp * vpq + akq * vqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
                    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * vpp + vkq * vqp;
                    v(k, q) = vkp * vpq + vkq * vqq;
                }
            }
        }
    }
    if (!out.converged && off_norm() <= thresh) out.converged = true;
    out.sweeps = sweep;

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
        out.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
    }
    return out;
}

std::vector<std::pair<int, int>> cluster_sorted(const Eigen::VectorXd& values, double tol) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(values.size());
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || values(i) - values(i - 1) > tol) {
            out.emplace_back(begin, i);
            begin = i;
        }
    }
    return out;
}

std::uint64_t Prng::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Prng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Prng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Prng::complex_normal() { return cplx(normal(), normal()) / std::sqrt(2.0); }

int Prng::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

std::uint64_t Prng::derive(std::uint64_t seed, std::uint64_t index) {
    Prng p(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return p.next();
}

Matrix random_complex(Prng& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

Matrix random_unitary(Prng& rng, int n) {
    if (n == 0) return Matrix(0, 0);
    Matrix z = random_complex(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        cplx d = r(k, k);
        double ad = std::abs(d);
        if (ad > 0) q.col(k) *= d / ad;
    }
    return q;
}

double unitarity_residual(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return max_abs(a.adjoint() * a - Matrix::Identity(a.cols(), a.cols()));
}

}  // namespace groupoidrep
