#include "udmap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "udmap/errors.hpp"

namespace udmap {

using cplx = std::complex<double>;

namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x{};   // on [-1, 1]
  std::array<double, 15> wk{};  // Kronrod weights
  std::array<double, 15> wg{};  // Gauss weights, zero at Kronrod-only nodes
};

constexpr Rule15 make_rule() {
  Rule15 r{};
  for (int k = 0; k < 7; ++k) {
    r.x[k] = -kXgk[k];
    r.x[14 - k] = kXgk[k];
    r.wk[k] = r.wk[14 - k] = kWgk[k];
    const double g = (k % 2 == 1) ? kWg[k / 2] : 0.0;
    r.wg[k] = r.wg[14 - k] = g;
  }
  r.x[7] = 0.0;
  r.wk[7] = kWgk[7];
  r.wg[7] = kWg[3];
  return r;
}

constexpr Rule15 kRule = make_rule();

// A panel lives in parameter space (u, v). For rectangles (u, v) = (tau1, tau2);
// for triangles tau1 = u, tau2 = lo + (u - lo) v with v in [0, 1].
struct Panel {
  double u0, u1, v0, v1;
  cplx value{};
  double err_u = 0.0;
  double err_v = 0.0;
  int depth = 0;

  double err() const { return err_u + err_v; }
};

class Integrator {
 public:
  Integrator(const Integrand2D& f, const Region& region, const QuadConfig& cfg)
      : f_(f), region_(region), cfg_(cfg), triangle_(region.shape == RegionShape::LowerTriangle) {}

  QuadResult run() {
    Panel root = triangle_ ? Panel{region_.t1_lo, region_.t1_hi, 0.0, 1.0}
                           : Panel{region_.t1_lo, region_.t1_hi, region_.t2_lo, region_.t2_hi};
    seed(root);
    return adapt();
  }

 private:
  struct Box {
    double a, b, c, e;  // tau1 in [a, b], tau2 in [c, e]
  };

  Box physical_box(const Panel& p) const {
    if (!triangle_) return {p.u0, p.u1, p.v0, p.v1};
    const double lo = region_.t1_lo;
    return {p.u0, p.u1, lo + (p.u0 - lo) * p.v0, lo + (p.u1 - lo) * p.v1};
  }

  // Smallest seeding band containing the panel's distance to the diagonal, or 0.
  double seed_level(const Panel& p) const {
    const double w = cfg_.ridge_width;
    if (w <= 0.0) return 0.0;
    const Box box = physical_box(p);
    const double dmin = box.a - box.e;
    const double dmax = box.b - box.c;
    const double dist = (dmin <= 0.0 && dmax >= 0.0) ? 0.0 : std::min(std::abs(dmin), std::abs(dmax));
    for (double level : {2.0 * w, 10.0 * w, 50.0 * w}) {
      if (dist < level) return level;
    }
    return 0.0;
  }

  void seed(const Panel& p) {
    constexpr int kMaxSeedDepth = 14;
    const double level = seed_level(p);
    if (level > 0.0 && p.depth < kMaxSeedDepth) {
      const Box box = physical_box(p);
      const bool split_u = (box.b - box.a) > level;
      const bool split_v = (box.e - box.c) > level;
      if (split_u || split_v) {
        const double um = 0.5 * (p.u0 + p.u1);
        const double vm = 0.5 * (p.v0 + p.v1);
        std::vector<Panel> kids;
        if (split_u && split_v) {
          kids = {{p.u0, um, p.v0, vm}, {um, p.u1, p.v0, vm}, {p.u0, um, vm, p.v1}, {um, p.u1, vm, p.v1}};
        } else if (split_u) {
          kids = {{p.u0, um, p.v0, p.v1}, {um, p.u1, p.v0, p.v1}};
        } else {
          kids = {{p.u0, p.u1, p.v0, vm}, {p.u0, p.u1, vm, p.v1}};
        }
        for (Panel& k : kids) {
          k.depth = p.depth + 1;
          seed(k);
        }
        return;
      }
    }
    Panel q = p;
    evaluate(q);
    push(q);
  }

  cplx sample(double u, double v) {
    double t1 = u;
    double t2 = v;
    double jac = 1.0;
    if (triangle_) {
      const double lo = region_.t1_lo;
      t2 = lo + (u - lo) * v;
      jac = u - lo;
    }
    const cplx y = f_(t1, t2);
    ++n_evals_;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "non-finite integrand sample at (" << t1 << ", " << t2 << ")";
      throw EvaluationError(msg.str(), t1, t2);
    }
    return y * jac;
  }

  void evaluate(Panel& p) {
    const double hu = 0.5 * (p.u1 - p.u0);
    const double cu = 0.5 * (p.u1 + p.u0);
    const double hv = 0.5 * (p.v1 - p.v0);
    const double cv = 0.5 * (p.v1 + p.v0);

    cplx kk{}, gk{}, kg{};
    for (int i = 0; i < 15; ++i) {
      const double u = cu + hu * kRule.x[i];
      cplx row_k{}, row_g{};
      for (int j = 0; j < 15; ++j) {
        const cplx y = sample(u, cv + hv * kRule.x[j]);
        row_k += kRule.wk[j] * y;
        row_g += kRule.wg[j] * y;
      }
      kk += kRule.wk[i] * row_k;
      gk += kRule.wg[i] * row_k;
      kg += kRule.wk[i] * row_g;
    }
    const double area = hu * hv;
    p.value = area * kk;
    p.err_u = area * std::abs(kk - gk);
    p.err_v = area * std::abs(kk - kg);
  }

  void push(const Panel& p) {
    const auto id = panels_.size();
    panels_.push_back(p);
    live_.push_back(true);
    total_ += p.value;
    total_err_ += p.err();
    queue_.push({p.err(), id});
  }

  void retire(std::size_t id) {
    live_[id] = false;
    total_ -= panels_[id].value;
    total_err_ -= panels_[id].err();
  }

  void resum() {
    total_ = {};
    total_err_ = 0.0;
    for (std::size_t i = 0; i < panels_.size(); ++i) {
      if (!live_[i]) continue;
      total_ += panels_[i].value;
      total_err_ += panels_[i].err();
    }
  }

  bool within_tolerance() const {
    return total_err_ <= std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(total_));
  }

  QuadResult adapt() {
    long live_count = static_cast<long>(panels_.size());
    long iterations = 0;
    bool exhausted = false;
    while (!within_tolerance()) {
      if (queue_.empty() || live_count >= cfg_.max_panels) {
        exhausted = true;
        break;
      }
      const std::size_t id = queue_.top().id;
      queue_.pop();
      const Panel parent = panels_[id];
      if (parent.depth >= cfg_.max_depth) continue;  // frozen: stays live, never split

      retire(id);
      Panel a = parent;
      Panel b = parent;
      a.depth = b.depth = parent.depth + 1;
      if (parent.err_u >= parent.err_v) {
        a.u1 = b.u0 = 0.5 * (parent.u0 + parent.u1);
      } else {
        a.v1 = b.v0 = 0.5 * (parent.v0 + parent.v1);
      }
      evaluate(a);
      evaluate(b);
      push(a);
      push(b);
      ++live_count;
      if (++iterations % 1024 == 0) resum();
    }
    resum();

    QuadResult out;
    out.value = total_;
    out.err_estimate = std::max(0.0, total_err_);
    out.n_evals = n_evals_;
    out.converged = !exhausted && within_tolerance();
    return out;
  }

  struct QueueEntry {
    double err;
    std::size_t id;
    // Larger error first; on ties the older panel first.
    bool operator<(const QueueEntry& o) const {
      if (err != o.err) return err < o.err;
      return id > o.id;
    }
  };

  const Integrand2D& f_;
  Region region_;
  QuadConfig cfg_;
  bool triangle_;
  std::vector<Panel> panels_;
  std::vector<bool> live_;
  std::priority_queue<QueueEntry> queue_;
  cplx total_{};
  double total_err_ = 0.0;
  long n_evals_ = 0;
};

}  // namespace

Region Region::rect(double t1_lo, double t1_hi, double t2_lo, double t2_hi) {
  Region r{RegionShape::Rect, t1_lo, t1_hi, t2_lo, t2_hi};
  r.validate();
  return r;
}

Region Region::lower_triangle(double lo, double hi) {
  Region r{RegionShape::LowerTriangle, lo, hi, lo, hi};
  r.validate();
  return r;
}

void Region::validate() const {
  for (double b : {t1_lo, t1_hi, t2_lo, t2_hi}) {
    if (!std::isfinite(b)) throw DomainError("region bounds must be finite");
  }
  if (!(t1_lo < t1_hi) || !(t2_lo < t2_hi)) throw DomainError("region bounds must satisfy lo < hi");
  if (shape == RegionShape::LowerTriangle && (t1_lo != t2_lo || t1_hi != t2_hi)) {
    throw DomainError("lower triangle requires identical bounds on both axes");
  }
}

QuadResult integrate_2d(const Integrand2D& f, const Region& region, const QuadConfig& cfg) {
  region.validate();
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol >= 0.0)) {
    throw DomainError("tolerances must satisfy rel_tol > 0 and abs_tol >= 0");
  }
  if (cfg.max_depth < 1) throw DomainError("max_depth must be >= 1");
  return Integrator(f, region, cfg).run();
}

std::complex<double> riemann_oracle(const Integrand2D& f, const Region& region, int n) {
  region.validate();
  if (n < 2) throw DomainError("riemann_oracle needs n >= 2");

  const double h1 = (region.t1_hi - region.t1_lo) / n;
  const double h2 = (region.t2_hi - region.t2_lo) / n;
  const bool triangle = region.shape == RegionShape::LowerTriangle;

  cplx sum{};
  for (int i = 0; i < n; ++i) {
    const double t1 = region.t1_lo + (i + 0.5) * h1;
    cplx row{};
    const int j_end = triangle ? i + 1 : n;
    for (int j = 0; j < j_end; ++j) {
      const double t2 = region.t2_lo + (j + 0.5) * h2;
      const cplx y = f(t1, t2);
      if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
        throw EvaluationError("non-finite oracle sample", t1, t2);
      }
      row += (triangle && j == i) ? 0.5 * y : y;
    }
    sum += row;
  }
  return sum * (h1 * h2);
}

}  // namespace udmap
