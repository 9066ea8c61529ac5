#include "godron/index.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "godron/error.hpp"
#include "godron/forms.hpp"

namespace godron {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_with_tolerance(double value, double scale, double rel_tol, const char* what) {
  if (!(std::abs(value) > rel_tol * scale)) throw NonGenericError(std::string(what) + ": sign argument vanishes");
  return value > 0.0 ? 1 : -1;
}

double wrap_pi(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

// Representative of a in (-pi/2, pi/2].
double wrap_half(double a) {
  a = wrap_pi(a);
  return a > kPi / 2.0 ? a - kPi : a;
}

std::vector<double> sorted_lines(const LineSampler& field, const Point2& p, int k) {
  std::vector<double> lines = field(p);
  for (double& a : lines) a = wrap_pi(a);
  std::sort(lines.begin(), lines.end());
  if (static_cast<int>(lines.size()) != k) {
    throw ResolutionError("line field has " + std::to_string(lines.size()) + " lines at (" + std::to_string(p.s) +
                          ", " + std::to_string(p.t) + "), expected " + std::to_string(k));
  }
  return lines;
}

double min_gap(const std::vector<double>& sorted) {
  if (sorted.size() == 1) return kPi;
  double g = sorted.front() + kPi - sorted.back();
  for (std::size_t i = 1; i < sorted.size(); ++i) g = std::min(g, sorted[i] - sorted[i - 1]);
  return g;
}

// Angle between two forms as points of the projective space of coefficients.
double form_turn(const BinaryForm& a, const BinaryForm& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (int i = 0; i <= a.degree; ++i) {
    ab += a.c[i] * b.c[i];
    aa += a.c[i] * a.c[i];
    bb += b.c[i] * b.c[i];
  }
  if (aa == 0.0 || bb == 0.0) return kPi;
  return std::acos(std::min(1.0, std::abs(ab) / std::sqrt(aa * bb)));
}

struct Track {
  std::vector<double> start;  // sorted angles at u = 0
  std::vector<double> end;    // unwrapped angle at u = 1 of the line that started as start[i]
};

struct Step {
  bool ok = false;
  std::vector<double> turn;  // per current line, the signed rotation to its match
  std::vector<int> target;   // per current line, index into the next sorted tuple
};

// Nearest cyclic matching of the lines at one sample to the sorted lines at the next.
// Fails when some line would turn by more than a safe fraction of the line spacing.
Step match_lines(const std::vector<double>& cur, const std::vector<double>& next, int k) {
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return wrap_pi(cur[a]) < wrap_pi(cur[b]); });
  std::vector<double> cur_sorted(k);
  for (int r = 0; r < k; ++r) cur_sorted[r] = wrap_pi(cur[order[r]]);
  const double limit = std::min(0.45 * std::min(min_gap(cur_sorted), min_gap(next)), 0.9 * kPi / (2.0 * k));
  int best_shift = 0;
  double best_cost = 1e300;
  for (int s = 0; s < k; ++s) {
    double cost = 0.0;
    for (int r = 0; r < k; ++r) cost = std::max(cost, std::abs(wrap_half(next[(r + s) % k] - cur_sorted[r])));
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = s;
    }
  }
  Step st;
  st.ok = best_cost < limit;
  st.turn.resize(k);
  st.target.resize(k);
  for (int r = 0; r < k; ++r) {
    st.target[order[r]] = (r + best_shift) % k;
    st.turn[order[r]] = wrap_half(next[(r + best_shift) % k] - cur_sorted[r]);
  }
  return st;
}

// Follows every line of the field continuously along the path. A step is taken only
// when matching across it agrees with matching across its two halves: lines of a
// k-valued field are often close to evenly spaced, and a fast turn by pi/k between two
// samples would otherwise look like no turn at all.
Track track_lines(const LineSampler& field, const PlanePath& path, int k, const WindingOptions& opts) {
  if (k < 1) throw UsageError("line field must have k >= 1");
  Track tr;
  tr.start = sorted_lines(field, path(0.0), k);
  std::vector<double> cur = tr.start;
  BinaryForm cur_form = opts.form ? opts.form(path(0.0)) : BinaryForm();
  double u = 0.0;
  const double min_step = 1.0 / opts.max_samples;
  double step = 1.0 / opts.initial_samples;
  while (u < 1.0) {
    const double next_u = std::min(1.0, u + step);
    const std::vector<double> next = sorted_lines(field, path(next_u), k);
    const std::vector<double> mid = sorted_lines(field, path(0.5 * (u + next_u)), k);
    const Step direct = match_lines(cur, next, k);
    const Step first = match_lines(cur, mid, k);
    bool ok = direct.ok && first.ok;
    BinaryForm next_form;
    if (ok && opts.form) {
      next_form = opts.form(path(next_u));
      const BinaryForm mid_form = opts.form(path(0.5 * (u + next_u)));
      ok = form_turn(cur_form, mid_form) <= opts.max_form_turn && form_turn(mid_form, next_form) <= opts.max_form_turn;
    }
    std::vector<double> half_cur(k);
    if (ok) {
      for (int i = 0; i < k; ++i) half_cur[i] = cur[i] + first.turn[i];
      const Step second = match_lines(half_cur, next, k);
      ok = second.ok;
      for (int i = 0; ok && i < k; ++i) {
        ok = second.target[i] == direct.target[i] &&
             std::abs(first.turn[i] + second.turn[i] - direct.turn[i]) < 0.25 * kPi / k;
        if (ok) half_cur[i] += second.turn[i];
      }
    }
    if (!ok) {
      if (step <= min_step) {
        throw ResolutionError("line tracking failed: field changes too fast near u = " + std::to_string(u));
      }
      step *= 0.5;
      continue;
    }
    cur = half_cur;
    cur_form = next_form;
    u = next_u;
    step = std::min(step * 2.0, 1.0 / opts.initial_samples);
  }
  tr.end = cur;
  return tr;
}

// Combines per-line rotations and a line permutation into the fractional index.
Rational index_from_orbits(const std::vector<double>& delta, const std::vector<int>& perm, int k,
                           const WindingOptions& opts) {
  std::vector<bool> seen(k, false);
  bool have = false;
  Rational result;
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    int q = 0;
    double total = 0.0;
    int line = start;
    do {
      seen[line] = true;
      total += delta[line];
      line = perm[line];
      ++q;
      if (q > k) throw ResolutionError("line permutation is not a bijection");
    } while (line != start);
    const double half_turns = total / kPi;
    const double m = std::round(half_turns);
    if (std::abs(half_turns - m) > opts.snap_tolerance) {
      throw ResolutionError("accumulated rotation " + std::to_string(half_turns) + " pi is not a multiple of pi");
    }
    const Rational value(static_cast<std::int64_t>(m), 2 * q);
    if (have && !(value == result)) {
      throw ResolutionError("line orbits disagree on the index (" + value.to_string() + " vs " + result.to_string() +
                            ")");
    }
    result = value;
    have = true;
  }
  const Rational scaled = result * Rational(2 * k);
  if (scaled.den() != 1) throw ResolutionError("index " + result.to_string() + " is off the 1/(2k) lattice");
  return result;
}

}  // namespace

int hyperbonode_index(const MongeJet& mj, double rel_tol) {
  const double f11 = mj.fij(1, 1);
  const double off = std::max(std::abs(mj.fij(2, 0)), std::abs(mj.fij(0, 2)));
  if (!(std::abs(f11) > 0.0) || off > 1e-9 * std::abs(f11)) {
    throw UsageError("hyperbonode_index needs asymptotic axes (f20 = f02 = 0, f11 != 0)");
  }
  const double t1 = 4.0 * f11 * f11 * mj.fij(4, 0) * mj.fij(0, 4);
  const double t2 = (2.0 * f11 * mj.fij(3, 1) - 3.0 * mj.fij(2, 1) * mj.fij(2, 1)) *
                    (2.0 * f11 * mj.fij(1, 3) - 3.0 * mj.fij(1, 2) * mj.fij(1, 2));
  return sign_with_tolerance(t1 - t2, std::abs(t1) + std::abs(t2), rel_tol, "hyperbonode index");
}

int hyperbonode_index_diagonal(const MongeJet& mj, double rel_tol) {
  const double f22 = mj.fij(2, 2), f31 = mj.fij(3, 1), f13 = mj.fij(1, 3);
  const double t1 = (mj.fij(4, 0) + 3.0 * f22) * (mj.fij(0, 4) + 3.0 * f22);
  const double t2 = (f31 + 3.0 * f13) * (f13 + 3.0 * f31);
  return sign_with_tolerance(t1 - t2, std::abs(t1) + std::abs(t2), rel_tol, "hyperbonode index (diagonal frame)");
}

Rational ellipnode_index(const MongeJet& mj, double rel_tol) {
  const double f20 = mj.fij(2, 0), f02 = mj.fij(0, 2), f11 = mj.fij(1, 1);
  const double scale = std::max(std::abs(f20), std::abs(f02));
  double cubic = 0.0;
  for (int j = 0; j <= 3; ++j) cubic = std::max(cubic, std::abs(mj.fij(3 - j, j)));
  if (!(scale > 0.0) || std::abs(f20 - f02) > 1e-9 * scale || std::abs(f11) > 1e-9 * scale || cubic > 1e-6 * scale) {
    throw UsageError("ellipnode_index needs circular Q and no cubic part");
  }
  const double f22 = mj.fij(2, 2), f31 = mj.fij(3, 1), f13 = mj.fij(1, 3);
  const double t1 = (f31 - 3.0 * f13) * (f13 - 3.0 * f31);
  const double t2 = (mj.fij(4, 0) - 3.0 * f22) * (mj.fij(0, 4) - 3.0 * f22);
  return Rational(sign_with_tolerance(t1 - t2, std::abs(t1) + std::abs(t2), rel_tol, "ellipnode index"), 3);
}

RhoSigma invariants_rho_sigma(const MongeJet& mj) {
  const double f11 = mj.fij(1, 1), f40 = mj.fij(4, 0), f04 = mj.fij(0, 4);
  const double denom = 4.0 * f11 * f11 * f40 * f04;
  if (!(std::abs(f40 * f04) > 1e-12 * f11 * f11 * f11 * f11) || denom == 0.0) {
    throw NonGenericError("cross-ratio invariant undefined: f40 f04 = 0");
  }
  const double num = (3.0 * mj.fij(2, 1) * mj.fij(2, 1) - 2.0 * f11 * mj.fij(3, 1)) *
                     (3.0 * mj.fij(1, 2) * mj.fij(1, 2) - 2.0 * f11 * mj.fij(1, 3));
  return {1.0 - num / denom, f40 * f04 > 0.0 ? 1 : -1};
}

Rational godron_tau_index(int sign) {
  if (sign != 1 && sign != -1) throw UsageError("godron sign must be +1 or -1");
  return Rational(-sign, 3);
}

Rational godron_asymptotic_index(int sign) {
  if (sign != 1 && sign != -1) throw UsageError("godron sign must be +1 or -1");
  return Rational(sign, 2);
}

Rational winding_index(const LineSampler& field, const PlanePath& loop, int k, const WindingOptions& opts) {
  const Track tr = track_lines(field, loop, k, opts);
  std::vector<int> perm(k);
  std::vector<double> delta(k);
  for (int i = 0; i < k; ++i) {
    int best = 0;
    double best_d = 1e300;
    for (int j = 0; j < k; ++j) {
      const double d = std::abs(wrap_half(tr.end[i] - tr.start[j]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    perm[i] = best;
    delta[i] = tr.end[i] - tr.start[i];
  }
  return index_from_orbits(delta, perm, k, opts);
}

Rational boundary_winding_index(const LineSampler& field, const BoundaryArc& arc, int k, const WindingOptions& opts) {
  const Track tr = track_lines(field, arc.path, k, opts);
  // Angles relative to the boundary tangent at each end.
  std::vector<double> phi_a(k), phi_b(k);
  for (int i = 0; i < k; ++i) {
    phi_a[i] = wrap_pi(tr.start[i] - arc.tangent_a);
    phi_b[i] = wrap_pi(tr.end[i] - arc.tangent_b);
  }
  if (arc.mode == Trivialization::tangent_branch) {
    // The branch nearest the tangent is taken with its representative near 0.
    for (auto* phi : {&phi_a, &phi_b}) {
      int t = 0;
      for (int i = 1; i < k; ++i)
        if (std::abs(wrap_half((*phi)[i])) < std::abs(wrap_half((*phi)[t]))) t = i;
      (*phi)[t] = wrap_half((*phi)[t]);
    }
  }
  std::vector<int> rank_a(k), rank_b(k);
  std::iota(rank_a.begin(), rank_a.end(), 0);
  std::iota(rank_b.begin(), rank_b.end(), 0);
  std::sort(rank_a.begin(), rank_a.end(), [&](int x, int y) { return phi_a[x] < phi_a[y]; });
  std::sort(rank_b.begin(), rank_b.end(), [&](int x, int y) { return phi_b[x] < phi_b[y]; });

  const double tangent_turn = wrap_half(arc.tangent_a - arc.tangent_b);
  std::vector<int> perm(k);
  std::vector<double> delta(k);
  for (int r = 0; r < k; ++r) {
    const int i = rank_b[r];
    const int j = rank_a[r];
    perm[i] = j;
    delta[i] = (tr.end[i] - tr.start[i]) + tangent_turn + phi_a[j] - phi_b[i];
  }
  return index_from_orbits(delta, perm, k, opts);
}

LineSampler cubic_form_lines(const SurfaceSpec& spec, int chart) {
  return [&spec, chart](const Point2& p) {
    const MongeJet mj = eval_monge_jet(spec, {chart, p.s, p.t}, 3, FrameKind::parametric);
    return real_zero_lines(fundamental_quantities(mj).W, 1e-9).angles;
  };
}

FormSampler cubic_form(const SurfaceSpec& spec, int chart) {
  return [&spec, chart](const Point2& p) {
    return fundamental_quantities(eval_monge_jet(spec, {chart, p.s, p.t}, 3, FrameKind::parametric)).W;
  };
}

FormSampler quadratic_form(const SurfaceSpec& spec, int chart) {
  return [&spec, chart](const Point2& p) {
    return quadratic_part(eval_monge_jet(spec, {chart, p.s, p.t}, 2, FrameKind::parametric).f);
  };
}

LineSampler asymptotic_lines(const SurfaceSpec& spec, int chart) {
  return [&spec, chart](const Point2& p) {
    const MongeJet mj = eval_monge_jet(spec, {chart, p.s, p.t}, 2, FrameKind::parametric);
    return real_zero_lines(quadratic_part(mj.f), 1e-9).angles;
  };
}

PlanePath circle_path(const Point2& centre, double radius) {
  return [centre, radius](double u) {
    const double a = 2.0 * kPi * u;
    return Point2{centre.s + radius * std::cos(a), centre.t + radius * std::sin(a)};
  };
}

Rational node_winding_index(const SurfaceSpec& spec, const ChartPoint& p, int k, double radius) {
  WindingOptions opts;
  opts.form = cubic_form(spec, p.chart);
  return winding_index(cubic_form_lines(spec, p.chart), circle_path({p.s, p.t}, radius), k, opts);
}

Rational godron_boundary_index(const SurfaceSpec& spec, const ChartPoint& g, GodronField which, double radius) {
  const int chart = g.chart;
  const FrameKind frame = scan_frame(spec);
  auto hessian = [&](const Point2& p) {
    const MongeJet mj = eval_monge_jet(spec, {chart, p.s, p.t}, 2, frame);
    return mj.fij(2, 0) * mj.fij(0, 2) - mj.fij(1, 1) * mj.fij(1, 1);
  };
  const int side = which == GodronField::cubic_form ? 1 : -1;
  auto at = [&](double theta) { return Point2{g.s + radius * std::cos(theta), g.t + radius * std::sin(theta)}; };

  constexpr int kSamples = 720;
  std::vector<double> h(kSamples);
  double hmax = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    h[i] = side * hessian(at(2.0 * kPi * i / kSamples));
    hmax = std::max(hmax, std::abs(h[i]));
  }
  const LineSampler field = which == GodronField::cubic_form ? cubic_form_lines(spec, chart) : asymptotic_lines(spec, chart);
  auto tangent_angle = [&](double theta) {
    const Point2 p = at(theta);
    const double d = 1e-6 * radius;
    const double hs = (hessian({p.s + d, p.t}) - hessian({p.s - d, p.t})) / (2.0 * d);
    const double ht = (hessian({p.s, p.t + d}) - hessian({p.s, p.t - d})) / (2.0 * d);
    return std::atan2(hs, -ht);
  };
  // The arc ends on the level set side * H = eta. Near the parabolic curve two lines of
  // the field close up around the kernel of Q; the endpoint datum is only the boundary
  // datum once that pair is narrow compared with its angle to the level-set tangent.
  auto in_boundary_regime = [&](const Point2& p, double alpha) {
    std::vector<double> lines = field(p);
    if (which == GodronField::cubic_form) {
      if (lines.size() != 3) return false;
      std::size_t t = 0;
      for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(wrap_half(lines[i] - alpha)) < std::abs(wrap_half(lines[t] - alpha))) t = i;
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(t));
    } else if (lines.size() != 2) {
      return false;
    }
    const double gap = wrap_half(lines[1] - lines[0]);
    const double bisector = lines[0] + 0.5 * gap;
    return std::abs(gap) <= 0.5 * std::abs(wrap_half(bisector - alpha));
  };

  double frac = 0.02;
  for (int attempt = 0; attempt < 10; ++attempt, frac *= 0.25) {
    const double eta = frac * hmax;
    std::vector<int> enters, leaves;
    for (int i = 0; i < kSamples; ++i) {
      const bool in_now = h[i] > eta, in_next = h[(i + 1) % kSamples] > eta;
      if (!in_now && in_next) enters.push_back(i);
      if (in_now && !in_next) leaves.push_back(i);
    }
    if (enters.size() != 1 || leaves.size() != 1) {
      throw ResolutionError("godron arc: the circle must meet the " +
                            std::string(side > 0 ? "elliptic" : "hyperbolic") + " side in one arc");
    }
    auto level = [&](double theta) { return side * hessian(at(theta)) - eta; };
    auto refine = [&](int i) {
      const double a = 2.0 * kPi * i / kSamples, b = 2.0 * kPi * (i + 1) / kSamples;
      boost::uintmax_t iters = 80;
      const auto r = boost::math::tools::toms748_solve(
          level, a, b, [](double x, double y) { return std::abs(x - y) <= 1e-15; }, iters);
      return 0.5 * (r.first + r.second);
    };
    const double theta_a = refine(enters[0]);
    double theta_b = refine(leaves[0]);
    if (theta_b <= theta_a) theta_b += 2.0 * kPi;

    BoundaryArc arc;
    arc.path = [&](double u) { return at(theta_a + u * (theta_b - theta_a)); };
    arc.tangent_a = tangent_angle(theta_a);
    arc.tangent_b = tangent_angle(theta_b);
    arc.mode = which == GodronField::cubic_form ? Trivialization::tangent_branch : Trivialization::transverse;
    if (!in_boundary_regime(at(theta_a), arc.tangent_a) || !in_boundary_regime(at(theta_b), arc.tangent_b)) continue;
    // The pair separates like sqrt(H - eta) off the endpoints, hence the fine step floor.
    WindingOptions opts;
    opts.max_samples = 1 << 26;
    opts.form = which == GodronField::cubic_form ? cubic_form(spec, chart) : quadratic_form(spec, chart);
    return boundary_winding_index(field, arc, which == GodronField::cubic_form ? 3 : 2, opts);
  }
  throw ResolutionError("godron arc: no level-set offset puts the arc endpoints in the boundary regime");
}

}  // namespace godron
