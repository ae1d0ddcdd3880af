#include "pseudopass/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopass {

namespace {

const char* kRoman[] = {"", "i", "ii", "iii", "iv", "v", "vi", "vii"};

double snap(double v, double tol, bool exact) {
  if (exact) return v;
  return std::abs(v) <= tol ? 0.0 : v;
}

}  // namespace

std::string Region::shape_name() const {
  switch (shape) {
    case RegionShape::FullPlane: return "full-plane";
    case RegionShape::HalfPlane: return "half-plane";
    case RegionShape::Disk: return "disk";
    case RegionShape::DiskComplement: return "disk-complement";
    case RegionShape::Point: return "point";
    case RegionShape::Empty: return "empty";
  }
  return "?";
}

std::string Region::case_label() const {
  if (case_index < 1 || case_index > 7) return "?";
  return kRoman[case_index];
}

Region classify_admittance(double c, double d, const ClassifyOptions& opt) {
  if (!std::isfinite(c) || !std::isfinite(d))
    throw ValidationError("classify: non-finite parameters");
  Region r;
  if (d == 0.0) {
    r.shape = RegionShape::HalfPlane;
    r.case_index = 3;
    r.bound = c;
    r.side = HalfPlaneSide::GreaterEq;
    return r;
  }
  const double disc = snap(1.0 - 4.0 * c * d, opt.discriminant_tol, opt.exact);
  if (d < 0.0) {
    if (disc <= 0.0) {
      r.shape = RegionShape::FullPlane;
      r.case_index = 1;
      return r;
    }
    r.shape = RegionShape::DiskComplement;
    r.case_index = 2;
  } else if (disc > 0.0) {
    r.shape = RegionShape::Disk;
    r.case_index = 4;
  } else if (disc == 0.0) {
    r.shape = RegionShape::Point;
    r.case_index = 5;
    r.center = Complex{1.0 / (2.0 * d), 0.0};
    return r;
  } else {
    r.shape = RegionShape::Empty;
    r.case_index = 6;
    return r;
  }
  r.center = Complex{1.0 / (2.0 * d), 0.0};
  r.radius = std::sqrt(disc) / (2.0 * std::abs(d));
  return r;
}

Region classify_scattering(double F, double G, const ClassifyOptions& opt) {
  if (!std::isfinite(F) || !std::isfinite(G))
    throw ValidationError("classify: non-finite parameters");
  Region r;
  if (F == -1.0) {
    if (G == 0.0) {
      r.shape = RegionShape::FullPlane;
      r.case_index = 3;
      return r;
    }
    // Stored in the taxonomy's form {G x <= 2}.
    r.shape = RegionShape::HalfPlane;
    r.case_index = 4;
    r.bound = 2.0 / G;
    r.side = G > 0.0 ? HalfPlaneSide::LessEq : HalfPlaneSide::GreaterEq;
    return r;
  }
  const double disc = snap(1.0 - F * F + G * G, opt.discriminant_tol, opt.exact);
  // Completing the square in (1-F) - (1+F)|sigma|^2 >= 2 G Re[sigma] puts the
  // circle at -G/(1+F) with radius^2 = (1-F^2+G^2)/(1+F)^2.
  if (F < -1.0) {
    if (disc <= 0.0) {
      r.shape = RegionShape::FullPlane;
      r.case_index = 1;
      return r;
    }
    r.shape = RegionShape::DiskComplement;
    r.case_index = 2;
  } else if (disc > 0.0) {
    r.shape = RegionShape::Disk;
    r.case_index = 5;
  } else if (disc == 0.0) {
    r.shape = RegionShape::Point;
    r.case_index = 6;
    r.center = Complex{-G / (1.0 + F), 0.0};
    return r;
  } else {
    r.shape = RegionShape::Empty;
    r.case_index = 7;
    return r;
  }
  r.center = Complex{-G / (1.0 + F), 0.0};
  r.radius = std::sqrt(disc) / std::abs(1.0 + F);
  return r;
}

bool contains(const Region& r, Complex sigma, double tol) {
  switch (r.shape) {
    case RegionShape::FullPlane:
      return true;
    case RegionShape::Empty:
      return false;
    case RegionShape::HalfPlane:
      return r.side == HalfPlaneSide::GreaterEq ? sigma.real() >= r.bound - tol
                                                : sigma.real() <= r.bound + tol;
    case RegionShape::Disk:
      return std::norm(sigma - r.center) <= r.radius * r.radius + tol;
    case RegionShape::DiskComplement:
      return std::norm(sigma - r.center) >= r.radius * r.radius - tol;
    case RegionShape::Point:
      return std::norm(sigma - r.center) <= tol;
  }
  return false;
}

namespace {

// sum_j |s|^{2j} v_j
double effective_weight(const std::vector<double>& v, Complex s) {
  const double s2 = std::norm(s);
  double acc = 0.0, s_pow = 1.0;
  for (double x : v) {
    acc += x * s_pow;
    s_pow *= s2;
  }
  return acc;
}

}  // namespace

Region region_of_params(const AdmittanceParams& p, Complex s,
                        const ClassifyOptions& opt) {
  validate(p);
  if (!(s.real() > 0.0)) throw ValidationError("region_of_params: need Re[s] > 0");
  return classify_admittance(effective_weight(p.c, s), effective_weight(p.d, s), opt);
}

Region region_of_params(const ScatteringParams& p, Complex s,
                        const ClassifyOptions& opt) {
  validate(p);
  if (!(s.real() > 0.0)) throw ValidationError("region_of_params: need Re[s] > 0");
  // The Kronecker terms contribute exactly |s|^0 = 1 and stay outside the
  // effective weights.
  return classify_scattering(effective_weight(p.F, s), effective_weight(p.G, s), opt);
}

Region region_of_params(const Params& p, Complex s, const ClassifyOptions& opt) {
  if (std::holds_alternative<AdmittanceParams>(p))
    return region_of_params(std::get<AdmittanceParams>(p), s, opt);
  return region_of_params(std::get<ScatteringParams>(p), s, opt);
}

std::vector<Complex> boundary_points(const Region& r, int n, const Viewport& vp) {
  if (n < 2) throw ValidationError("boundary_points: need at least two points");
  std::vector<Complex> pts;
  switch (r.shape) {
    case RegionShape::FullPlane:
    case RegionShape::Empty:
      break;
    case RegionShape::Point:
      pts.push_back(r.center);
      break;
    case RegionShape::HalfPlane: {
      if (r.bound < vp.x_min || r.bound > vp.x_max) break;
      for (int i = 0; i < n; ++i)
        pts.emplace_back(r.bound,
                         vp.y_min + (vp.y_max - vp.y_min) * static_cast<double>(i) / (n - 1));
      break;
    }
    case RegionShape::Disk:
    case RegionShape::DiskComplement: {
      for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * static_cast<double>(i) / n;
        pts.push_back(r.center + r.radius * Complex{std::cos(theta), std::sin(theta)});
      }
      break;
    }
  }
  return pts;
}

}  // namespace pseudopass
