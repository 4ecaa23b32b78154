#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bpmrf/errors.hpp"
#include "bpmrf/grid.hpp"

namespace bpmrf {

// Which construction produced a structure matrix. TorusC2d is the block
// difference operator C of the torus construction (not a precision: it is
// negative semidefinite as printed), kept because P = C^T C and C is the
// stencil-coefficient oracle. The PSD invariant applies to the other kinds.
enum class StructureKind { Rw1_1d, Rw2_1d, TorusC2d, Torus2d, Boundary2d };

inline const char* to_string(StructureKind k) {
    switch (k) {
        case StructureKind::Rw1_1d: return "rw1-1d";
        case StructureKind::Rw2_1d: return "rw2-1d";
        case StructureKind::TorusC2d: return "torus-C-2d";
        case StructureKind::Torus2d: return "torus-2d";
        case StructureKind::Boundary2d: return "boundary-2d";
    }
    return "?";
}

struct EigenCache {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns, same order
    int null_dim = 0;         // measured count of |value| < tol * max|value|
    double tol = 0.0;
};

// Symmetric integer structure matrix with exact zero row sums. The precision
// it represents is lambda * entries (see PrecisionSpec); lambda is never baked
// into the entries so exact integer assertions stay valid.
class StructureMatrix {
public:
    StructureMatrix(int dim, StructureKind kind,
                    const std::vector<Eigen::Triplet<double>>& triplets)
        : dim_(dim), kind_(kind), entries_(dim, dim) {
        entries_.setFromTriplets(triplets.begin(), triplets.end());
        entries_.makeCompressed();
        validate();
    }

    StructureMatrix(StructureKind kind, Eigen::SparseMatrix<double> entries)
        : dim_(static_cast<int>(entries.rows())), kind_(kind), entries_(std::move(entries)) {
        entries_.makeCompressed();
        validate();
    }

    int dim() const { return dim_; }
    StructureKind kind() const { return kind_; }
    const Eigen::SparseMatrix<double>& entries() const { return entries_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }

    double coeff(int r, int c) const { return entries_.coeff(r, c); }

    // x^T P x
    double quad(const Eigen::VectorXd& x) const { return x.dot(entries_ * x); }

    bool has_eigen() const { return eigen_ != nullptr; }
    const EigenCache& eigen() const {
        if (!eigen_) throw validation_error("StructureMatrix: eigendecomposition not computed");
        return *eigen_;
    }
    int null_dim() const { return eigen().null_dim; }

    // Numerical rank at the cache tolerance.
    int rank() const { return dim_ - eigen().null_dim; }

    // Plain-text triplet export: "dim nnz" header, then 1-based "i j value"
    // rows for every stored nonzero.
    void write_triplets(std::ostream& os) const {
        os << dim_ << " " << entries_.nonZeros() << "\n";
        for (int k = 0; k < entries_.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(entries_, k); it; ++it)
                os << (it.row() + 1) << " " << (it.col() + 1) << " "
                   << static_cast<long long>(it.value()) << "\n";
    }

    StructureMatrix with_eigen(std::shared_ptr<const EigenCache> cache) const {
        StructureMatrix out(*this);
        out.eigen_ = std::move(cache);
        return out;
    }

private:
    void validate() const {
        if (dim_ < 1) throw validation_error("StructureMatrix: empty matrix");
        Eigen::VectorXd rowsum = entries_ * Eigen::VectorXd::Ones(dim_);
        if (rowsum.cwiseAbs().maxCoeff() != 0.0)
            throw validation_error("StructureMatrix: row sums must be exactly zero");
        Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(entries_.transpose()) - entries_;
        if (diff.coeffs().size() > 0 && diff.coeffs().cwiseAbs().maxCoeff() != 0.0)
            throw validation_error("StructureMatrix: must be exactly symmetric");
    }

    int dim_;
    StructureKind kind_;
    Eigen::SparseMatrix<double> entries_;
    std::shared_ptr<const EigenCache> eigen_;
};

// A structure matrix together with its scalar precision multiplier: the
// represented precision is lambda * structure.
struct PrecisionSpec {
    StructureMatrix structure;
    double lambda;

    PrecisionSpec(StructureMatrix s, double lam) : structure(std::move(s)), lambda(lam) {
        if (!(lambda > 0.0)) throw validation_error("PrecisionSpec: lambda must be > 0");
    }
};

namespace detail {

using Trip = Eigen::Triplet<double>;

inline void add(std::vector<Trip>& t, int r, int c, long long v) {
    if (v != 0) t.emplace_back(r, c, static_cast<double>(v));
}

}  // namespace detail

// First-order random-walk precision (lambda-free): tridiagonal (-1,2,-1) with
// unit corners. Rank T-1, null space = constants.
inline StructureMatrix build_rw1_precision(int T) {
    if (T < 2) throw validation_error("build_rw1_precision: T must be >= 2");
    std::vector<detail::Trip> t;
    for (int i = 0; i < T; ++i) {
        detail::add(t, i, i, (i == 0 || i == T - 1) ? 1 : 2);
        if (i + 1 < T) {
            detail::add(t, i, i + 1, -1);
            detail::add(t, i + 1, i, -1);
        }
    }
    return StructureMatrix(T, StructureKind::Rw1_1d, t);
}

// Second-order random-walk precision: the Gram matrix of the (T-2) x T
// second-difference operator. Rank T-2, null space = {constant, linear}.
inline StructureMatrix build_rw2_precision(int T) {
    if (T < 3) throw validation_error("build_rw2_precision: T must be >= 3");
    Eigen::MatrixXi P = Eigen::MatrixXi::Zero(T, T);
    for (int r = 0; r + 2 < T; ++r) {
        const int coef[3] = {1, -2, 1};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) P(r + a, r + b) += coef[a] * coef[b];
    }
    std::vector<detail::Trip> t;
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) detail::add(t, i, j, P(i, j));
    return StructureMatrix(T, StructureKind::Rw2_1d, t);
}

// Block-circulant difference operator on the T x T torus: diagonal blocks
// A1 = circulant(-4 center, 1 at the four periodic neighbours), off-diagonal
// blocks A2 = I at block distance 1 (mod T).
inline StructureMatrix build_torus_C(int T) {
    if (T < 5) throw validation_error("build_torus_C: T must be >= 5");
    std::vector<detail::Trip> t;
    auto cell = [T](int i, int j) { return i * T + j; };  // 0-based
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) {
            int r = cell(i, j);
            detail::add(t, r, r, -4);
            detail::add(t, r, cell(i, (j + 1) % T), 1);
            detail::add(t, r, cell(i, (j + T - 1) % T), 1);
            detail::add(t, r, cell((i + 1) % T, j), 1);
            detail::add(t, r, cell((i + T - 1) % T, j), 1);
        }
    return StructureMatrix(T * T, StructureKind::TorusC2d, t);
}

// Torus structure matrix P = C^T C; every row is the periodic 13-point
// stencil {center 20, axial -8, diagonal +2, axial distance-2 +1}.
inline StructureMatrix build_torus_structure(int T) {
    StructureMatrix C = build_torus_C(T);
    Eigen::SparseMatrix<double> P =
        Eigen::SparseMatrix<double>(C.entries().transpose()) * C.entries();
    P.prune(0.0);
    return StructureMatrix(StructureKind::Torus2d, std::move(P));
}

namespace detail {

// Banded block patterns of the boundary construction. `ends` is the value on
// the first/last diagonal entry, `mid` the interior diagonal, `off` the
// first off-diagonal; rows 0,1 and T-2,T-1 carry the printed boundary rows.
inline long long boundary_block(char which, int r, int c, int T) {
    auto sym_r = (r >= T - r - 1) ? T - 1 - r : r;      // fold to the top half
    bool folded = r > T - 1 - r;
    int cc = folded ? T - 1 - c : c;
    int d = cc - sym_r;
    switch (which) {
        case '1': {  // A1: [6,-5,1 / -5,12,-6,1 / 1,-6,12,-6,1 ...]
            if (sym_r == 0) return d == 0 ? 6 : d == 1 ? -5 : d == 2 ? 1 : 0;
            if (sym_r == 1) return d == -1 ? -5 : d == 0 ? 12 : d == 1 ? -6 : d == 2 ? 1 : 0;
            return d == 0 ? 12 : (d == 1 || d == -1) ? -6 : (d == 2 || d == -2) ? 1 : 0;
        }
        case '2':  // A2: tridiag(2, -5|-7, 2)
            if (d == 0) return sym_r == 0 ? -5 : -7;
            return (d == 1 || d == -1) ? 2 : 0;
        case '3':  // A3 = I
            return (r == c) ? 1 : 0;
        case '4': {  // A4: [12,-7,1 / -7,20,-8,1 / 1,-8,20,-8,1 ...]
            if (sym_r == 0) return d == 0 ? 12 : d == 1 ? -7 : d == 2 ? 1 : 0;
            if (sym_r == 1) return d == -1 ? -7 : d == 0 ? 20 : d == 1 ? -8 : d == 2 ? 1 : 0;
            return d == 0 ? 20 : (d == 1 || d == -1) ? -8 : (d == 2 || d == -2) ? 1 : 0;
        }
        case '5':  // A5: tridiag(2, -6|-8, 2)
            if (d == 0) return sym_r == 0 ? -6 : -8;
            return (d == 1 || d == -1) ? 2 : 0;
    }
    return 0;
}

}  // namespace detail

// Boundary-constrained structure matrix: block rows [A1 A2 A3], [A2 A4 A5 A3],
// interior [A3 A5 A4 A5 A3], mirrored at the bottom, with the printed block
// values. Equivalently (verified entrywise) the integer Gram matrix of one
// second-order difference functional per grid cell, with corner and edge
// corrections. Measured rank is T^2-1: only the constant vector is
// annihilated; the centered ramps leave +-1 residuals in boundary rows.
inline StructureMatrix build_boundary_structure(int T) {
    if (T < 5) throw validation_error("build_boundary_structure: T must be >= 5");
    std::vector<detail::Trip> t;
    auto block_kind = [T](int bi, int bj) -> char {
        int si = (bi >= T - 1 - bi) ? T - 1 - bi : bi;  // fold block row
        int bj2 = (bi > T - 1 - bi) ? T - 1 - bj : bj;
        int d = bj2 - si;
        if (si == 0) return d == 0 ? '1' : d == 1 ? '2' : d == 2 ? '3' : '0';
        if (si == 1) return d == -1 ? '2' : d == 0 ? '4' : d == 1 ? '5' : d == 2 ? '3' : '0';
        if (d == 0) return '4';
        if (d == 1 || d == -1) return '5';
        if (d == 2 || d == -2) return '3';
        return '0';
    };
    for (int bi = 0; bi < T; ++bi)
        for (int bj = 0; bj < T; ++bj) {
            char k = block_kind(bi, bj);
            if (k == '0') continue;
            bool flip = bi > T - 1 - bi;  // bottom half mirrors the block contents
            for (int r = 0; r < T; ++r)
                for (int c = 0; c < T; ++c) {
                    long long v = flip ? detail::boundary_block(k, T - 1 - r, T - 1 - c, T)
                                       : detail::boundary_block(k, r, c, T);
                    detail::add(t, bi * T + r, bj * T + c, v);
                }
        }
    return StructureMatrix(T * T, StructureKind::Boundary2d, t);
}

// Symmetric eigendecomposition with null-space identification. null_dim is
// the measured count of eigenvalues below tol * max|eigenvalue|; callers must
// not infer it from the construction kind.
inline StructureMatrix eigendecompose(const StructureMatrix& s, double tol = 1e-9) {
    if (s.has_eigen()) return s;
    if (!(tol > 0.0)) throw validation_error("eigendecompose: tol must be > 0");
    Eigen::MatrixXd dense = s.dense();
    if ((dense - dense.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw validation_error("eigendecompose: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw numerical_error("eigendecompose: solver failed");
    auto cache = std::make_shared<EigenCache>();
    cache->values = es.eigenvalues();
    cache->vectors = es.eigenvectors();
    cache->tol = tol;
    double scale = cache->values.cwiseAbs().maxCoeff();
    cache->null_dim = 0;
    for (int i = 0; i < cache->values.size(); ++i)
        if (std::abs(cache->values[i]) < tol * scale) ++cache->null_dim;
    return s.with_eigen(std::move(cache));
}

}  // namespace bpmrf
