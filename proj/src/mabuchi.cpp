#include "polystab/mabuchi.hpp"

#include <cmath>
#include <random>

namespace polystab {

namespace {

double log_l(double v) { return v > 0 ? v * std::log(v) : 0.0; }

std::vector<double> to_doubles(const RatVec& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(to_double(c));
  return out;
}

}  // namespace

SymplecticPotential SymplecticPotential::guillemin(LabeledPolytope p) {
  SymplecticPotential u;
  u.phi = Polynomial(p.dim());
  u.polytope = std::move(p);
  return u;
}

double SymplecticPotential::value(const std::vector<double>& x) const {
  double v = phi.eval(x);
  for (const auto& lab : polytope.labels()) v += 0.5 * log_l(lab.eval(x));
  return v;
}

Eigen::MatrixXd SymplecticPotential::hess_u0(const std::vector<double>& x) const {
  const int d = polytope.dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (const auto& lab : polytope.labels()) {
    double l = lab.eval(x);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        h(a, b) += 0.5 * to_double(lab.linear[a]) * to_double(lab.linear[b]) / l;
  }
  return h;
}

Eigen::MatrixXd SymplecticPotential::hess_phi(const std::vector<double>& x) const {
  const int d = polytope.dim();
  Eigen::MatrixXd h(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) h(a, b) = phi.derivative(a).derivative(b).eval(x);
  return h;
}

Eigen::MatrixXd SymplecticPotential::hess(const std::vector<double>& x) const {
  return hess_u0(x) + hess_phi(x);
}

RatMat SymplecticPotential::hess_exact(const RatVec& x) const {
  const int d = polytope.dim();
  RatMat h(d, RatVec(d, Rational(0)));
  for (const auto& lab : polytope.labels()) {
    Rational l = lab.eval(x);
    if (l <= 0) throw Error("Hessian of the Guillemin part needs an interior point");
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        h[a][b] += lab.linear[a] * lab.linear[b] / (2 * l);
  }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      h[a][b] += phi.derivative(a).derivative(b).eval(x);
  return h;
}

void SymplecticPotential::check_convex(int grid_n) const {
  RatVec bary = polytope.barycenter();
  std::vector<RatVec> points = {bary};
  for (const auto& v : polytope.vertices())
    for (int t = 1; t <= grid_n; ++t) {
      Rational s = Rational(t) / Rational(grid_n + 1);
      points.push_back(vec_add(vec_scale(1 - s, v), vec_scale(s, bary)));
    }
  for (const auto& x : points) {
    if (!polytope.is_interior(x)) continue;
    RatMat h = hess_exact(x);
    for (size_t k = 1; k <= h.size(); ++k) {
      RatMat minor(k, RatVec(k));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) minor[a][b] = h[a][b];
      if (determinant(std::move(minor)) <= 0)
        throw NotConvex("Hessian not positive definite at a sample point");
    }
  }
}

MabuchiValue mabuchi_energy(const SymplecticPotential& u, const Polynomial& pv,
                            const WeightExpr& what, double rel_tol) {
  if (!is_standard_simplex(u.polytope))
    throw std::invalid_argument("mabuchi_energy expects the standard simplex");
  u.check_convex(3);
  const int d = u.polytope.dim();

  MabuchiValue out;
  Polynomial wv = what.pair_with(pv);
  LogLinComb h = guillemin_log_comb(d);
  h.poly = u.phi;
  out.linear = futaki_log_comb(h, pv, wv);

  CompiledPolynomial pv_fast(pv);
  const SymplecticPotential* up = &u;
  QuadResult q = quad_adaptive(
      u.polytope,
      [up, &pv_fast, d](const std::vector<double>& x) {
        Eigen::MatrixXd h0 = up->hess_u0(x);
        Eigen::LLT<Eigen::MatrixXd> llt(h0);
        if (llt.info() != Eigen::Success) throw NotConvex("reference Hessian not PD");
        Eigen::MatrixXd hphi = up->hess_phi(x);
        Eigen::MatrixXd m = llt.matrixL().solve(hphi);
        m = llt.matrixL().solve(m.transpose().eval());
        Eigen::MatrixXd ratio = Eigen::MatrixXd::Identity(d, d) + m;
        Eigen::LLT<Eigen::MatrixXd> llt2(ratio);
        if (llt2.info() != Eigen::Success) throw NotConvex("Hessian ratio not PD");
        double logdet = 0;
        for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(llt2.matrixL()(i, i));
        return -logdet * pv_fast.eval(x);
      },
      rel_tol);
  out.entropy = q.value;
  out.entropy_error = q.error_estimate;
  out.converged = q.converged;
  return out;
}

CompatibleLift::CompatibleLift(const FiberModel& model, SymplecticPotential u,
                               std::vector<SymplecticPotential> fiber_potentials)
    : model_(&model), u_(std::move(u)), fibers_(std::move(fiber_potentials)) {
  size_t expected = 0;
  for (const auto& b : model.blocks())
    if (b.rank >= 2) ++expected;
  if (fibers_.size() != expected)
    throw std::invalid_argument("one fiber potential per block of rank >= 2");
}

std::vector<std::vector<double>> CompatibleLift::fiber_coords(
    const std::vector<double>& xhat) const {
  std::vector<std::vector<double>> out;
  std::vector<double> x(xhat.begin(), xhat.begin() + model_->ell());
  int fi = 0, at = model_->ell();
  for (const auto& b : model_->blocks()) {
    if (b.rank < 2) continue;
    double l = b.label.eval(x);
    std::vector<double> s(b.rank - 1);
    for (int i = 0; i < b.rank - 1; ++i) s[i] = xhat[at + i] / l;
    out.push_back(std::move(s));
    at += b.rank - 1;
    ++fi;
  }
  return out;
}

double CompatibleLift::value(const std::vector<double>& xhat) const {
  std::vector<double> x(xhat.begin(), xhat.begin() + model_->ell());
  double v = u_.value(x);
  auto scoords = fiber_coords(xhat);
  int fi = 0;
  for (const auto& b : model_->blocks()) {
    if (b.rank < 2) continue;
    v += b.label.eval(x) * fibers_[fi].value(scoords[fi]);
    ++fi;
  }
  return v;
}

Eigen::MatrixXd CompatibleLift::hess(const std::vector<double>& xhat) const {
  const int ell = model_->ell();
  const int n = model_->n();
  std::vector<double> x(xhat.begin(), xhat.begin() + ell);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.topLeftCorner(ell, ell) = u_.hess(x);

  auto scoords = fiber_coords(xhat);
  int fi = 0, at = ell;
  for (const auto& b : model_->blocks()) {
    if (b.rank < 2) continue;
    const int m = b.rank - 1;
    double l = b.label.eval(x);
    Eigen::VectorXd s(m);
    for (int i = 0; i < m; ++i) s(i) = scoords[fi][i];
    Eigen::MatrixXd hj = fibers_[fi].hess(scoords[fi]);
    Eigen::VectorXd hs = hj * s;
    Eigen::VectorXd a(ell);
    for (int k = 0; k < ell; ++k) a(k) = to_double(b.label.linear[k]);

    h.block(at, at, m, m) = hj / l;
    Eigen::MatrixXd cross = -(hs / l) * a.transpose();  // d2/dxhat dx
    h.block(at, 0, m, ell) = cross;
    h.block(0, at, ell, m) = cross.transpose();
    h.topLeftCorner(ell, ell) += (s.dot(hs) / l) * (a * a.transpose());
    at += m;
    ++fi;
  }
  return h;
}

std::vector<DetCheckSample> det_identity_check(const CompatibleLift& lift,
                                               int sample_count, double step_scale,
                                               unsigned long long seed) {
  const FiberModel& model = lift.model();
  const int n = model.n();
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
  };

  std::vector<std::vector<double>> hat_verts;
  for (const auto& v : model.delta_hat().vertices()) hat_verts.push_back(to_doubles(v));

  std::vector<DetCheckSample> out;
  while (static_cast<int>(out.size()) < sample_count) {
    // Dirichlet-ish interior point: normalized exponentials over vertices.
    std::vector<double> w(hat_verts.size());
    double tot = 0;
    for (auto& wi : w) {
      wi = -std::log(std::max(unit(), 1e-300));
      tot += wi;
    }
    std::vector<double> x(n, 0.0);
    for (size_t i = 0; i < hat_verts.size(); ++i)
      for (int k = 0; k < n; ++k) x[k] += (w[i] / tot) * hat_verts[i][k];
    double dist = 1e300;
    for (const auto& lab : model.delta_hat().labels())
      dist = std::min(dist, lab.eval(x));
    if (dist < 0.05) continue;

    auto fd_hess = [&](double h) {
      Eigen::MatrixXd m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          double v;
          if (a == b) {
            auto xp = x, xm = x;
            xp[a] += h;
            xm[a] -= h;
            v = (lift.value(xp) - 2 * lift.value(x) + lift.value(xm)) / (h * h);
          } else {
            auto xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[a] += h; xpp[b] += h;
            xpm[a] += h; xpm[b] -= h;
            xmp[a] -= h; xmp[b] += h;
            xmm[a] -= h; xmm[b] -= h;
            v = (lift.value(xpp) - lift.value(xpm) - lift.value(xmp) + lift.value(xmm)) /
                (4 * h * h);
          }
          m(a, b) = v;
          m(b, a) = v;
        }
      return m;
    };

    double h = step_scale * dist;
    Eigen::MatrixXd d1 = fd_hess(h);
    Eigen::MatrixXd d2 = fd_hess(h / 2);
    Eigen::MatrixXd richardson = (4.0 * d2 - d1) / 3.0;
    double det_r = richardson.determinant();
    double det_2 = d2.determinant();
    if (!(std::isfinite(det_r) && std::isfinite(det_2)) ||
        std::fabs(det_r - det_2) > 0.2 * std::fabs(det_r))
      throw FDInstability("finite-difference Hessian did not stabilize");

    DetCheckSample sample;
    sample.point = x;
    sample.fd_det = det_r;

    // Closed form: det Hess(u) * det Hess(u_B) * p in hat coordinates,
    // i.e. the fiber Hessians pick up 1/L_j^2 per hat coordinate.
    std::vector<double> xb(x.begin(), x.begin() + model.ell());
    double closed = lift.base().hess(xb).determinant();
    auto scoords = lift.fiber_coords(x);
    int fi = 0;
    for (const auto& b : model.blocks()) {
      if (b.rank < 2) continue;
      double l = b.label.eval(xb);
      closed *= lift.fibers()[fi].hess(scoords[fi]).determinant() /
                std::pow(l, 2.0 * (b.rank - 1));
      ++fi;
    }
    closed *= model.p().eval(xb);
    sample.closed_det = closed;
    sample.rel_err = std::fabs(sample.fd_det - closed) / std::fabs(closed);
    out.push_back(std::move(sample));
  }
  return out;
}

namespace {

// u_hat in the standard-simplex chart as poly + subset-sum log terms.
LogLinComb lift_log_comb(const FiberModel& model, const SymplecticPotential* base,
                         const std::vector<SymplecticPotential>& fibers) {
  const int n = model.n();
  LogLinComb h(n);
  if (base) {
    for (int j = 0; j <= model.ell(); ++j)
      h.add_log_term(Rational(1, 2), model.standard_subset_of_block(j));
    // phi(x(y))
    std::vector<AffineFunction> x_of_y;
    auto hat_of_y = model.to_standard_map();
    for (int k = 0; k < model.ell(); ++k) x_of_y.push_back(hat_of_y[k]);
    h.poly = h.poly + base->phi.compose_affine(x_of_y);
  }
  int fi = 0;
  for (const auto& b : model.blocks()) {
    if (b.rank < 2) continue;
    // L_j u_j = (1/2) sum_i Lhat_{(j,i)} log Lhat_{(j,i)} - (1/2) L_j log L_j
    //           + L_j phi_j(xhat^j / L_j)
    for (int i = 0; i < b.rank; ++i)
      h.add_log_term(Rational(1, 2), {model.standard_label_of(b.index, i)});
    h.add_log_term(Rational(-1, 2), model.standard_subset_of_block(b.index));

    const Polynomial& phi_j = fibers[fi].phi;
    if (!phi_j.is_zero()) {
      if (phi_j.total_degree() > 1)
        throw Error(
            "exact hat functional needs affine fiber polynomial parts");
      AffineFunction lj = subset_affine(n, model.standard_subset_of_block(b.index));
      Polynomial lifted(n);
      for (const auto& [e, c] : phi_j.terms()) {
        int deg = 0;
        int which = -1;
        for (size_t q = 0; q < e.size(); ++q)
          if (e[q] > 0) {
            deg += e[q];
            which = static_cast<int>(q);
          }
        if (deg == 0) {
          lifted = lifted + Polynomial::from_affine(lj).scaled(c);
        } else {
          // L_j * (xhat^j_which / L_j) = coordinate
          int label = model.standard_label_of(b.index, which + 1);
          lifted = lifted + Polynomial::coordinate(n, label - 1).scaled(c);
        }
      }
      h.poly = h.poly + lifted;
    }
    ++fi;
  }
  return h;
}

Polynomial pull_to_standard_chart(const FiberModel& model, const Polynomial& on_delta) {
  std::vector<AffineFunction> x_of_y;
  auto hat_of_y = model.to_standard_map();
  for (int k = 0; k < model.ell(); ++k) x_of_y.push_back(hat_of_y[k]);
  return on_delta.compose_affine(x_of_y);
}

}  // namespace

Rational futaki_hat_of_lift(const CompatibleLift& lift, const Polynomial& v,
                            const Polynomial& w) {
  const FiberModel& model = lift.model();
  LogLinComb h = lift_log_comb(model, &lift.base(), lift.fibers());
  Polynomial vy = pull_to_standard_chart(model, v);
  Polynomial wy = pull_to_standard_chart(model, w * v);
  return futaki_log_comb(h, vy, wy);
}

Rational lift_constant_exact(const FiberModel& model,
                             const std::vector<SymplecticPotential>& fibers,
                             const Polynomial& v, const Polynomial& w) {
  LogLinComb h = lift_log_comb(model, nullptr, fibers);
  Polynomial vy = pull_to_standard_chart(model, v);
  Polynomial wy = pull_to_standard_chart(model, w * v);
  return futaki_log_comb(h, vy, wy);
}

MabuchiValue mabuchi_hat(const CompatibleLift& lift, const Polynomial& v,
                         const Polynomial& w, double rel_tol) {
  const FiberModel& model = lift.model();
  MabuchiValue out;
  out.linear = futaki_hat_of_lift(lift, v, w);

  CompatibleLift reference(model, SymplecticPotential::guillemin(model.delta()),
                           lift.fibers());
  CompiledPolynomial v_fast(v);
  const int ell = model.ell();
  QuadResult q = quad_adaptive(
      model.delta_hat(),
      [&](const std::vector<double>& xhat) {
        double det_u = lift.hess(xhat).determinant();
        double det_0 = reference.hess(xhat).determinant();
        if (!(det_u > 0 && det_0 > 0)) throw NotConvex("lift Hessian not PD");
        std::vector<double> x(xhat.begin(), xhat.begin() + ell);
        return -std::log(det_u / det_0) * v_fast.eval(x);
      },
      rel_tol);
  out.entropy = q.value;
  out.entropy_error = q.error_estimate;
  out.converged = q.converged;
  return out;
}

LiftCheckReport compatible_lift_check(const FiberModel& model,
                                      const std::vector<SymplecticPotential>& potentials,
                                      const std::vector<SymplecticPotential>& fibers,
                                      const Polynomial& v, const Polynomial& w,
                                      int sample_count, double step_scale,
                                      double rel_tol, unsigned long long seed) {
  LiftCheckReport report;
  report.constant_exact = lift_constant_exact(model, fibers, v, w);

  FiberWeights fw = fiber_weights(model.blocks());
  Polynomial pv = model.p() * v;
  WeightExpr what = fw.hat(w);

  for (const auto& u : potentials) {
    CompatibleLift lift(model, u, fibers);
    if (report.det_checks.empty()) {
      report.det_checks = det_identity_check(lift, sample_count, step_scale, seed);
      for (const auto& s : report.det_checks)
        report.max_det_rel_err = std::max(report.max_det_rel_err, s.rel_err);
    }
    MabuchiValue hat = mabuchi_hat(lift, v, w, rel_tol);
    MabuchiValue base = mabuchi_energy(u, pv, what, rel_tol);
    double diff = hat.total() - to_double(model.vol_delta_b()) * base.total();
    report.differences.push_back(diff);
  }
  double cst = to_double(report.constant_exact);
  for (double d : report.differences)
    report.max_constant_rel_dev =
        std::max(report.max_constant_rel_dev,
                 std::fabs(d - cst) / std::max(std::fabs(cst), 1e-12));
  return report;
}

std::vector<double> boundary_condition_probe(const SymplecticPotential& u,
                                             int facet_index, int kmax) {
  std::vector<RatVec> fverts = u.polytope.facet_vertices(facet_index);
  RatVec fbary(u.polytope.dim(), Rational(0));
  for (const auto& v : fverts) fbary = vec_add(fbary, v);
  fbary = vec_scale(Rational(1) / Rational(static_cast<int>(fverts.size())), fbary);
  RatVec center = u.polytope.barycenter();

  std::vector<double> values;
  for (int k = 1; k <= kmax; ++k) {
    Rational t = Rational(1);
    for (int i = 0; i < k; ++i) t /= 10;
    RatVec x = vec_add(vec_scale(1 - t, fbary), vec_scale(t, center));
    std::vector<double> xd = to_doubles(x);
    double det = u.hess(xd).determinant();
    double prod = 1;
    for (const auto& lab : u.polytope.labels()) prod *= lab.eval(xd);
    values.push_back(det * prod);
  }
  return values;
}

CoercivityReport coercivity_probe(const std::vector<SymplecticPotential>& potentials,
                                  const Polynomial& pv, const WeightExpr& what,
                                  const RatVec& x0, double rel_tol) {
  CoercivityReport report;
  for (const auto& u : potentials) {
    MabuchiValue m = mabuchi_energy(u, pv, what, rel_tol);
    // |u*|_{L1_pv} with u* = u - tangent at x0 (nonnegative by convexity).
    const int d = u.polytope.dim();
    std::vector<double> x0d = to_doubles(x0);
    // value and gradient of u at x0
    double ux0 = u.value(x0d);
    std::vector<double> grad(d, 0.0);
    for (const auto& lab : u.polytope.labels()) {
      double l = lab.eval(x0d);
      for (int k = 0; k < d; ++k)
        grad[k] += 0.5 * to_double(lab.linear[k]) * (std::log(l) + 1);
    }
    for (int k = 0; k < d; ++k) grad[k] += to_double(u.phi.derivative(k).eval(x0d));

    LogLinComb g = guillemin_log_comb(d);
    g.poly = u.phi;
    // int u pv dx: reuse the interior part of the exact machinery.
    Rational int_u = -futaki_log_comb(g, Polynomial(d), pv);  // = int u pv
    double norm = to_double(int_u) - ux0 * to_double(integrate_polynomial(u.polytope, pv));
    for (int k = 0; k < d; ++k) {
      Polynomial xk = Polynomial::coordinate(d, k);
      double moment = to_double(integrate_polynomial(u.polytope, xk * pv)) -
                      x0d[k] * to_double(integrate_polynomial(u.polytope, pv));
      norm -= grad[k] * moment;
    }
    report.samples.emplace_back(norm, m.total());
  }
  double dcap = 1;
  for (const auto& [norm, energy] : report.samples)
    dcap = std::max(dcap, std::fabs(energy) + 1);
  double c = 1e300;
  for (const auto& [norm, energy] : report.samples)
    if (norm > 1e-9) c = std::min(c, (energy + dcap) / norm);
  if (c == 1e300) c = 0;
  report.slope = c;
  report.offset = dcap;
  report.positive_slope = c > 0;
  return report;
}

}  // namespace polystab
