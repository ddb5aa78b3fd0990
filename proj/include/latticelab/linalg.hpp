#ifndef LATTICELAB_LINALG_HPP
#define LATTICELAB_LINALG_HPP

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "latticelab/operator.hpp"

namespace latticelab {

using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
MatrixXc to_eigen(const Operator<S>& op) {
  MatrixXc m(op.dim(), op.dim());
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ScalarTraits<S>::to_complex(op(i, j));
  return m;
}

inline Operator<Complex> from_eigen(const MatrixXc& m, std::size_t local_dim, std::size_t sites) {
  Operator<Complex> op(local_dim, sites);
  if (static_cast<std::size_t>(m.rows()) != op.dim() || m.rows() != m.cols())
    throw ShapeError("matrix shape does not match d^n");
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j)
      op(i, j) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return op;
}

/// Eigenvalues of a general complex operator, sorted by (real, imag).
inline std::vector<Complex> eigenvalues(const Operator<Complex>& op) {
  Eigen::ComplexEigenSolver<MatrixXc> solver(to_eigen(op), false);
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

/// Eigenvalues of the Hermitian part (A + A*)/2, ascending.
inline std::vector<double> hermitian_eigenvalues(const Operator<Complex>& op) {
  MatrixXc m = to_eigen(op);
  MatrixXc h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().begin(), solver.eigenvalues().end()};
}

inline double spectral_radius(const Operator<Complex>& op) {
  double r = 0.0;
  for (const auto& z : eigenvalues(op)) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace latticelab

#endif  // LATTICELAB_LINALG_HPP
