#include "dlmsim/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace dlmsim {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;

double deg2rad(double deg) { return deg * M_PI / 180.0; }

} // namespace

Transform::Transform(int dim, std::vector<double> row_major)
    : dim_(dim), m_(std::move(row_major)) {
    if (dim_ < 1 || m_.size() != static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_))
        throw std::invalid_argument("Transform: entry count does not match dimension");
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            double dot = 0.0;
            for (int k = 0; k < dim_; ++k) dot += at(r, k) * at(c, k);
            double expected = (r == c) ? 1.0 : 0.0;
            if (std::abs(dot - expected) > kOrthoTol)
                throw std::invalid_argument("Transform: matrix is not orthogonal");
        }
    }
}

Transform Transform::identity(int dim) {
    std::vector<double> m(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) m[static_cast<std::size_t>(i * dim + i)] = 1.0;
    return Transform(dim, std::move(m));
}

std::vector<double> Transform::apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("Transform::apply: dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(dim_), 0.0);
    for (int r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (int c = 0; c < dim_; ++c) s += at(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

Transform Transform::compose(const Transform& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("Transform::compose: dimension mismatch");
    std::vector<double> m(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_), 0.0);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) s += at(r, k) * rhs.at(k, c);
            m[static_cast<std::size_t>(r * dim_ + c)] = s;
        }
    return Transform(dim_, std::move(m));
}

Transform plane_rotation(double phi_degrees) {
    double phi = deg2rad(phi_degrees);
    double c = std::cos(phi), s = std::sin(phi);
    return Transform(2, {c, -s, s, c});
}

Transform beam_splitter_transform() {
    double h = std::sqrt(0.5);
    // R(45deg) in the (x0,x3) plane and in the (x2,x1) plane.
    return Transform(4, {
        h,   0.0, 0.0, -h,
        0.0, h,   h,   0.0,
        0.0, -h,  h,   0.0,
        h,   0.0, 0.0, h,
    });
}

Transform hadamard_transform() {
    double h = std::sqrt(0.5);
    return Transform(4, {
        h,   0.0, h,   0.0,
        0.0, h,   0.0, h,
        h,   0.0, -h,  0.0,
        0.0, h,   0.0, -h,
    });
}

Transform cnot_transform() {
    std::vector<double> m(64, 0.0);
    auto set = [&m](int r, int c) { m[static_cast<std::size_t>(r * 8 + c)] = 1.0; };
    set(0, 0);
    set(1, 1);
    set(2, 6);
    set(3, 7);
    set(4, 4);
    set(5, 5);
    set(6, 2);
    set(7, 3);
    return Transform(8, std::move(m));
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    std::size_t n = u.size();
    for (const auto& row : u)
        if (row.size() != n) return false;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Complex dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += u[r][k] * std::conj(u[c][k]);
            Complex expected = (r == c) ? 1.0 : 0.0;
            if (std::abs(dot - expected) > tol) return false;
        }
    return true;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    std::size_t n = a.size();
    ComplexMatrix out(n, std::vector<Complex>(n, 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a[r][k] * b[k][c];
            out[r][c] = s;
        }
    return out;
}

Transform embed_unitary(const ComplexMatrix& u) {
    if (!is_unitary(u, kUnitaryTol))
        throw std::invalid_argument("embed_unitary: input matrix is not unitary");
    int n = static_cast<int>(u.size());
    int dim = 2 * n;
    std::vector<double> m(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double a = u[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].real();
            double b = u[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].imag();
            m[static_cast<std::size_t>((2 * r) * dim + 2 * c)] = a;
            m[static_cast<std::size_t>((2 * r) * dim + 2 * c + 1)] = -b;
            m[static_cast<std::size_t>((2 * r + 1) * dim + 2 * c)] = b;
            m[static_cast<std::size_t>((2 * r + 1) * dim + 2 * c + 1)] = a;
        }
    return Transform(dim, std::move(m));
}

Transform lift_single_qubit(const ComplexMatrix& u, int qubit) {
    if (u.size() != 2 || !is_unitary(u, kUnitaryTol))
        throw std::invalid_argument("lift_single_qubit: input must be a 2x2 unitary");
    if (qubit != 0 && qubit != 1)
        throw std::invalid_argument("lift_single_qubit: qubit must be 0 or 1");
    ComplexMatrix big(4, std::vector<Complex>(4, 0.0));
    for (int other = 0; other < 2; ++other)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                int row = (qubit == 0) ? (other << 1) | i : (i << 1) | other;
                int col = (qubit == 0) ? (other << 1) | j : (j << 1) | other;
                big[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                    u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
    return embed_unitary(big);
}

} // namespace dlmsim
