#pragma once

// Dense complex linear algebra used throughout: null spaces by Gaussian
// elimination, a cyclic Jacobi solver for Hermitian matrices, and the
// seeded generator that drives every randomized step.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace groupoidrep {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kRankTol = 1e-10;
inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Largest entry modulus; 0 for empty matrices.
double max_abs(const Matrix& a);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Row echelon data of a matrix, computed with partial pivoting.
struct Echelon {
    Matrix reduced;              // reduced row echelon form
    std::vector<int> pivots;     // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gaussian elimination with partial pivoting. Entries below
/// tol * max(1, max_abs(a)) are treated as zero.
Echelon row_reduce(const Matrix& a, double tol = kRankTol);

int rank(const Matrix& a, double tol = kRankTol);

/// Orthonormal basis (as columns) of {x : a x = 0}.
Matrix null_space(const Matrix& a, double tol = kRankTol);

/// Modified Gram-Schmidt on the columns; drops columns that become
/// numerically dependent.
Matrix orthonormalize_columns(const Matrix& a, double tol = kRankTol);

struct HermitianEigen {
    Eigen::VectorXd values;   // ascending
    Matrix vectors;           // unitary, column k belongs to values[k]
    int sweeps = 0;
    bool converged = false;
};

/// Cyclic Jacobi rotations for a Hermitian matrix. Stops when the
/// off-diagonal Frobenius norm drops below tol * max(1, ||a||_F).
HermitianEigen jacobi_eigh(const Matrix& a, double tol = kJacobiTol,
                           int max_sweeps = kJacobiMaxSweeps);

/// Group sorted eigenvalues into clusters whose consecutive gaps are
/// at most tol. Returns [begin, end) index ranges.
std::vector<std::pair<int, int>> cluster_sorted(const Eigen::VectorXd& values,
                                                double tol);

/// splitmix64 sequence.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();                 // [0, 1)
    double normal();                  // standard Gaussian
    cplx complex_normal();            // (N + iN)/sqrt(2)
    int below(int n);                 // uniform in [0, n)

    /// Child stream for a sub-task, independent of how much of this
    /// stream has been consumed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t state_;
};

Matrix random_complex(Prng& rng, int rows, int cols);

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the
/// diagonal phases of R absorbed.
Matrix random_unitary(Prng& rng, int n);

/// Residual ||a^* a - 1||_max.
double unitarity_residual(const Matrix& a);

}  // namespace groupoidrep
