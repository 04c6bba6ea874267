#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "udmap/states.hpp"

namespace udmap {

using Mat4 = std::array<std::array<cplx, 4>, 4>;

Mat4 mat4_identity();
Mat4 operator*(const Mat4& lhs, const Mat4& rhs);
double max_abs_diff(const Mat4& lhs, const Mat4& rhs);

/// Dynamical map acting on vec(rho) = (rho00, rho01, rho10, rho11).
struct AMatrix {
  Mat4 m{};

  cplx& operator()(int row, int col) { return m[row][col]; }
  const cplx& operator()(int row, int col) const { return m[row][col]; }
  cplx trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

  static AMatrix identity() { return {mat4_identity()}; }
};

/// Index-reshuffled A-matrix: B[(r r'), (s s')] = A[(r s), (r' s')].
struct BMatrix {
  Mat4 m{};

  cplx& operator()(int row, int col) { return m[row][col]; }
  const cplx& operator()(int row, int col) const { return m[row][col]; }
  cplx trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }
  /// max |B - B^dagger| entrywise.
  double hermiticity_dev() const;
};

/// A with vec(rho_out(angles)) = A vec(rho_in(angles)) for every (theta, phi).
/// Throws SingularMapError when alpha*gamma - beta*eta or |kappa|^2 - |lambda|^2
/// of the input set is below 1e-12 in modulus.
AMatrix solve_a_map(const CoefficientSet& out, const CoefficientSet& in);

BMatrix reshuffle(const AMatrix& a);
/// The inverse index swap (the reshuffle is an involution on index pairs).
AMatrix unshuffle(const BMatrix& b);

/// Ascending eigenvalues of a Hermitian 4x4 by cyclic Jacobi rotations.
/// Throws InconsistencyError if the Hermiticity deviation is >= 1e-8.
std::array<double, 4> hermitian_eigs(const BMatrix& b);

enum class Classification { CP, NCPTruncationArtifact, NCP };

std::string_view to_string(Classification c);

/// CP if eigs[0] >= -tol; a single eigenvalue below -tol is attributed to the
/// second-order truncation; two or more below -tol is NCP.
Classification classify(const std::array<double, 4>& eigs, double tol_cls);

struct CPReport {
  std::array<double, 4> eigs{};
  Classification classification = Classification::CP;
  double tol_cls = 1e-8;
  double second_smallest = 0.0;
};

/// max(1e-8, 10 err), err being the correlator quadrature error.
double classification_tolerance(double correlator_err);

CPReport cp_report(const AMatrix& a, double tol_cls);

DensityMatrix apply_map(const AMatrix& a, const DensityMatrix& rho);

struct BlochSample {
  std::array<double, 3> in{};
  std::array<double, 3> out{};
  double min_eig = 0.0;
  bool outside = false;
};

struct BlochImage {
  std::vector<BlochSample> samples;
  double outside_fraction = 0.0;
  double max_excess = 0.0;  // max(0, max |r_out| - 1)
};

/// Unit vectors: n_fibonacci points of a Fibonacci lattice followed by the six
/// poles +-x, +-y, +-z.
std::vector<std::array<double, 3>> sphere_samples(int n_fibonacci);

/// Maps every sample pure state through A. A sample is outside when its image
/// has |r| > 1 + 1e-9 or an eigenvalue below -1e-9. Requires n_fibonacci >= 6.
BlochImage bloch_image(const AMatrix& a, int n_fibonacci);

}  // namespace udmap
