#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dlmsim {

using Complex = std::complex<double>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

/// Real orthogonal matrix applied by the transformation stage of a processor
/// or by a passive node. Immutable after construction.
class Transform {
public:
    /// Row-major entries; throws if not orthogonal to 1e-12 per entry.
    Transform(int dim, std::vector<double> row_major);

    static Transform identity(int dim);

    int dim() const { return dim_; }
    double at(int row, int col) const { return m_[static_cast<std::size_t>(row * dim_ + col)]; }

    std::vector<double> apply(std::span<const double> v) const;
    Transform compose(const Transform& rhs) const; // this * rhs

private:
    int dim_;
    std::vector<double> m_;
};

/// 2x2 rotation [[cos, -sin], [sin, cos]]; angle in degrees.
Transform plane_rotation(double phi_degrees);

/// 4x4 beam splitter stage: R(45deg) on component pairs (x0,x3) and (x2,x1).
/// Equals the real embedding of (1/sqrt2)[[1,i],[i,1]].
Transform beam_splitter_transform();

/// 4x4 Hadamard stage (1/sqrt2)[[1,0,1,0],[0,1,0,1],[1,0,-1,0],[0,1,0,-1]].
Transform hadamard_transform();

/// 8x8 CNOT stage: swaps component pairs (x2,x3) and (x6,x7).
Transform cnot_transform();

/// Complex n x n unitary -> real orthogonal 2n x 2n, each entry a+bi becoming
/// the block [[a,-b],[b,a]] (amplitude k lives at components 2k, 2k+1).
/// Throws if the input is not unitary within 1e-10.
Transform embed_unitary(const ComplexMatrix& u);

/// Real embedding of a single-qubit unitary acting on one qubit of a
/// two-qubit system; qubit 0 is the least significant bit of the basis index.
Transform lift_single_qubit(const ComplexMatrix& u, int qubit);

bool is_unitary(const ComplexMatrix& u, double tol);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace dlmsim
