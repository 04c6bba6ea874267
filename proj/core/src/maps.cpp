#include "udmap/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "udmap/errors.hpp"

namespace udmap {

namespace {

constexpr double kSingular = 1e-12;
constexpr double kHermTol = 1e-8;
constexpr double kOutsideTol = 1e-9;
constexpr int kMaxSweeps = 100;

int pair_index(int r, int s) { return 2 * r + s; }

double off_norm(const Mat4& h) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) s += std::norm(h[i][j]);
    }
  }
  return std::sqrt(s);
}

double frobenius(const Mat4& h) {
  double s = 0.0;
  for (const auto& row : h) {
    for (const cplx& v : row) s += std::norm(v);
  }
  return std::sqrt(s);
}

// H <- J^dagger H J where J acts on the (p, q) plane: a phase that makes H(p,q)
// real, followed by a real Givens rotation that annihilates it.
void rotate(Mat4& h, int p, int q) {
  const cplx b = h[p][q];
  const double mag = std::abs(b);
  if (mag == 0.0) return;
  const cplx phase = b / mag;  // e^{i phi}
  const double a = h[p][p].real();
  const double d = h[q][q].real();
  const double theta = 0.5 * std::atan2(2.0 * mag, d - a);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Columns p and q of J.
  const cplx jpp = c, jqp = -s * std::conj(phase);
  const cplx jpq = s, jqq = c * std::conj(phase);

  // H J
  for (int i = 0; i < 4; ++i) {
    const cplx hp = h[i][p];
    const cplx hq = h[i][q];
    h[i][p] = hp * jpp + hq * jqp;
    h[i][q] = hp * jpq + hq * jqq;
  }
  // J^dagger (H J)
  for (int j = 0; j < 4; ++j) {
    const cplx hp = h[p][j];
    const cplx hq = h[q][j];
    h[p][j] = std::conj(jpp) * hp + std::conj(jqp) * hq;
    h[q][j] = std::conj(jpq) * hp + std::conj(jqq) * hq;
  }
  h[p][q] = 0.0;
  h[q][p] = 0.0;
  h[p][p] = h[p][p].real();
  h[q][q] = h[q][q].real();
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
  return {(rho.r01 + rho.r10).real(), (rho.r10 - rho.r01).imag(), (rho.r00 - rho.r11).real()};
}

}  // namespace

Mat4 mat4_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Mat4 operator*(const Mat4& lhs, const Mat4& rhs) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      for (int j = 0; j < 4; ++j) out[i][j] += lhs[i][k] * rhs[k][j];
    }
  }
  return out;
}

double max_abs_diff(const Mat4& lhs, const Mat4& rhs) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(lhs[i][j] - rhs[i][j]));
  }
  return m;
}

double BMatrix::hermiticity_dev() const {
  double dev = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(m[i][j] - std::conj(m[j][i])));
  }
  return dev;
}

AMatrix solve_a_map(const CoefficientSet& out, const CoefficientSet& in) {
  const double d_pop = in.alpha * in.gamma - in.beta * in.eta;
  const double d_coh = std::norm(in.kappa) - std::norm(in.lambda);
  if (!(std::abs(d_pop) > kSingular)) {
    throw SingularMapError("singular map: alpha*gamma - beta*eta = " + std::to_string(d_pop));
  }
  if (!(std::abs(d_coh) > kSingular)) {
    throw SingularMapError("singular map: |kappa|^2 - |lambda|^2 = " + std::to_string(d_coh));
  }
  const cplx kj = out.kappa, lj = out.lambda;
  const cplx kk = in.kappa, lk = in.lambda;

  AMatrix a;
  a(0, 0) = (out.alpha * in.gamma - out.beta * in.eta) / d_pop;
  a(0, 3) = (out.beta * in.alpha - out.alpha * in.beta) / d_pop;
  a(1, 1) = (kj * std::conj(kk) - lj * std::conj(lk)) / d_coh;
  a(1, 2) = (lj * kk - kj * lk) / d_coh;
  a(2, 1) = (std::conj(lj) * std::conj(kk) - std::conj(kj) * std::conj(lk)) / d_coh;
  a(2, 2) = (std::conj(kj) * kk - std::conj(lj) * lk) / d_coh;
  a(3, 0) = (out.eta * in.gamma - out.gamma * in.eta) / d_pop;
  a(3, 3) = (out.gamma * in.alpha - out.eta * in.beta) / d_pop;
  return a;
}

BMatrix reshuffle(const AMatrix& a) {
  BMatrix b;
  for (int r = 0; r < 2; ++r) {
    for (int rp = 0; rp < 2; ++rp) {
      for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
          b.m[pair_index(r, rp)][pair_index(s, sp)] = a.m[pair_index(r, s)][pair_index(rp, sp)];
        }
      }
    }
  }
  return b;
}

AMatrix unshuffle(const BMatrix& b) {
  const BMatrix swapped = reshuffle(AMatrix{b.m});
  return AMatrix{swapped.m};
}

std::array<double, 4> hermitian_eigs(const BMatrix& b) {
  const double dev = b.hermiticity_dev();
  if (!(dev < kHermTol)) {
    throw InconsistencyError("B-matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
  Mat4 h{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) h[i][j] = 0.5 * (b.m[i][j] + std::conj(b.m[j][i]));
  }
  const double scale = frobenius(h);
  for (int sweep = 0; sweep < kMaxSweeps && off_norm(h) > 1e-17 * scale; ++sweep) {
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) rotate(h, p, q);
    }
  }
  std::array<double, 4> eigs{h[0][0].real(), h[1][1].real(), h[2][2].real(), h[3][3].real()};
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::CP: return "CP";
    case Classification::NCPTruncationArtifact: return "NCP_truncation_artifact";
    case Classification::NCP: return "NCP";
  }
  return "?";
}

Classification classify(const std::array<double, 4>& eigs, double tol_cls) {
  const auto negative = std::count_if(eigs.begin(), eigs.end(), [&](double e) { return e < -tol_cls; });
  if (negative == 0) return Classification::CP;
  if (negative == 1) return Classification::NCPTruncationArtifact;
  return Classification::NCP;
}

double classification_tolerance(double correlator_err) {
  return std::max(1e-8, 10.0 * correlator_err);
}

CPReport cp_report(const AMatrix& a, double tol_cls) {
  CPReport r;
  r.eigs = hermitian_eigs(reshuffle(a));
  r.tol_cls = tol_cls;
  r.classification = classify(r.eigs, tol_cls);
  r.second_smallest = r.eigs[1];
  return r;
}

DensityMatrix apply_map(const AMatrix& a, const DensityMatrix& rho) {
  const std::array<cplx, 4> v{rho.r00, rho.r01, rho.r10, rho.r11};
  std::array<cplx, 4> w{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) w[i] += a.m[i][j] * v[j];
  }
  return {w[0], w[1], w[2], w[3]};
}

std::vector<std::array<double, 3>> sphere_samples(int n_fibonacci) {
  if (n_fibonacci < 0) throw DomainError("sample count must be non-negative");
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(n_fibonacci) + 6);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n_fibonacci; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n_fibonacci;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double ang = golden * i;
    pts.push_back({r * std::cos(ang), r * std::sin(ang), z});
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      std::array<double, 3> p{};
      p[axis] = sign;
      pts.push_back(p);
    }
  }
  return pts;
}

BlochImage bloch_image(const AMatrix& a, int n_fibonacci) {
  if (n_fibonacci < 6) throw DomainError("Bloch scan needs at least 6 lattice samples");
  BlochImage img;
  double max_norm = 0.0;
  std::size_t outside = 0;
  for (const auto& p : sphere_samples(n_fibonacci)) {
    BlochSample s;
    s.in = p;
    const DensityMatrix out = apply_map(a, state_from_bloch(p[0], p[1], p[2]));
    s.out = bloch_vector(out);
    s.min_eig = density_checks(out).min_eig;
    const double norm = std::hypot(s.out[0], s.out[1], s.out[2]);
    max_norm = std::max(max_norm, norm);
    s.outside = norm > 1.0 + kOutsideTol || s.min_eig < -kOutsideTol;
    if (s.outside) ++outside;
    img.samples.push_back(s);
  }
  img.outside_fraction = static_cast<double>(outside) / static_cast<double>(img.samples.size());
  img.max_excess = std::max(0.0, max_norm - 1.0);
  return img;
}

}  // namespace udmap
