#pragma once

#include <string>
#include <vector>

#include "pseudopass/common.hpp"
#include "pseudopass/timedomain.hpp"

namespace pseudopass {

enum class RegionShape { FullPlane, HalfPlane, Disk, DiskComplement, Point, Empty };

enum class HalfPlaneSide { GreaterEq, LessEq };  // Re[sigma] >= bound / <= bound

// The admissible transfer-value set of one parameter pair: where W(s) may
// live under the corresponding range inequality.
struct Region {
  RegionShape shape = RegionShape::FullPlane;
  int case_index = 0;  // 1-based taxonomy case
  Complex center{0.0, 0.0};
  double radius = 0.0;
  double bound = 0.0;
  HalfPlaneSide side = HalfPlaneSide::GreaterEq;

  std::string shape_name() const;
  std::string case_label() const;  // "i".."vii"
};

struct ClassifyOptions {
  double discriminant_tol = kDefaultDiscriminantTol;
  bool exact = false;  // disables the tolerance on the discriminant
};

// {sigma : Re[sigma] >= c + d |sigma|^2} by case:
//   (i)   d<0, 1-4cd<=0   full plane
//   (ii)  d<0, 1-4cd>0    outside-and-on circle, center 1/(2d), radius sqrt(1-4cd)/(2|d|)
//   (iii) d=0             half-plane Re >= c
//   (iv)  d>0, 1-4cd>0    inside-and-on the same circle
//   (v)   d>0, 1-4cd=0    the single point 1/(2d)
//   (vi)  d>0, 1-4cd<0    empty
Region classify_admittance(double c, double d, const ClassifyOptions& opt = {});

// {sigma : (1-F) - (1+F)|sigma|^2 >= 2 G Re[sigma]} by case:
//   (i)   F<-1, 1-F^2+G^2<=0  full plane
//   (ii)  F<-1, 1-F^2+G^2>0   outside circle, center -G/(1+F), radius sqrt(1-F^2+G^2)/|1+F|
//   (iii) F=-1, G=0           full plane
//   (iv)  F=-1, G!=0          half-plane {G x <= 2}
//   (v)   F>-1, 1-F^2+G^2>0   inside the circle
//   (vi)  F>-1, 1-F^2+G^2=0   the point -G/(1+F)
//   (vii) F>-1, 1-F^2+G^2<0   empty
Region classify_scattering(double F, double G, const ClassifyOptions& opt = {});

// Boundary-inclusive membership; tol is applied to the region's defining
// inequality (squared form for disks), not to Euclidean distance.
bool contains(const Region& r, Complex sigma, double tol = 0.0);

// Collapses the order-N inequality at fixed s to the scalar form via the
// effective weights sum_j |s|^{2j} c_j etc., then classifies.
Region region_of_params(const AdmittanceParams& p, Complex s,
                        const ClassifyOptions& opt = {});
Region region_of_params(const ScatteringParams& p, Complex s,
                        const ClassifyOptions& opt = {});
Region region_of_params(const Params& p, Complex s, const ClassifyOptions& opt = {});

struct Viewport {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
};

// Samples the region boundary for rendering: n points around the circle for
// disk shapes, the clipped vertical segment for half-planes, the point
// itself for point regions, nothing for full/empty.
std::vector<Complex> boundary_points(const Region& r, int n, const Viewport& vp);

}  // namespace pseudopass
